"""Weighted planar graphs with rotation systems, matchgates and matchgrids.

Rotation convention: ``rotation[v]`` lists the edges at ``v`` in
counterclockwise order.  Faces are traced so that the face lies to the left
of every dart, which makes bounded faces counterclockwise and the outer face
clockwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import (
    DanglingExternalNode,
    DoubleWiredNode,
    EmbeddingInconsistent,
    ExternalOrderingViolation,
    GraphError,
    OverlappingExternalNodes,
    SelfLoop,
)
from .scalar import ONE, ZERO, GaussianRational, parse_scalar

Edge = Tuple[int, int, GaussianRational]


def _weight(w) -> GaussianRational:
    if isinstance(w, GaussianRational):
        return w
    return parse_scalar(w) if isinstance(w, str) else GaussianRational(w)


@dataclass(frozen=True)
class PlanarGraph:
    vertex_count: int
    edges: Tuple[Edge, ...]
    rotation: Optional[Tuple[Tuple[int, ...], ...]] = None

    def __init__(self, vertex_count: int, edges: Iterable, rotation: Optional[Mapping] = None):
        n = int(vertex_count)
        if n < 0:
            raise GraphError("negative vertex count")
        merged: List[list] = []
        slot: Dict[Tuple[int, int], int] = {}
        remap: Dict[int, Optional[int]] = {}
        for idx, e in enumerate(edges):
            u, v, w = int(e[0]), int(e[1]), _weight(e[2] if len(e) > 2 else 1)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {idx} has an endpoint outside 0..{n - 1}")
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in slot:
                # parallel edges merge by summing weights; the later copy leaves the embedding
                j = slot[key]
                merged[j][2] = merged[j][2] + w
                remap[idx] = None
            else:
                slot[key] = len(merged)
                remap[idx] = len(merged)
                merged.append([u, v, w])
        object.__setattr__(self, "vertex_count", n)
        object.__setattr__(self, "edges", tuple((u, v, w) for u, v, w in merged))
        rot = None
        if rotation is not None:
            rot = []
            for vtx in range(n):
                raw = rotation.get(vtx, rotation.get(str(vtx), ())) if isinstance(rotation, Mapping) else rotation[vtx]
                cyc = tuple(remap[int(e)] for e in raw if remap.get(int(e)) is not None)
                rot.append(cyc)
            rot = tuple(rot)
            self._check_rotation(rot)
        object.__setattr__(self, "rotation", rot)
        object.__setattr__(self, "_adj", None)

    def _check_rotation(self, rot) -> None:
        inc = [[] for _ in range(self.vertex_count)]
        for idx, (u, v, _) in enumerate(self.edges):
            inc[u].append(idx)
            inc[v].append(idx)
        for vtx in range(self.vertex_count):
            if sorted(rot[vtx]) != sorted(inc[vtx]):
                raise EmbeddingInconsistent(f"rotation at vertex {vtx} does not list exactly its incident edges")

    # basic queries

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def adjacency(self) -> List[List[Tuple[int, GaussianRational]]]:
        if self._adj is None:
            adj = [[] for _ in range(self.vertex_count)]
            for u, v, w in self.edges:
                adj[u].append((v, w))
                adj[v].append((u, w))
            object.__setattr__(self, "_adj", adj)
        return self._adj

    def degree(self, v: int) -> int:
        return len(self.adjacency()[v])

    def weight(self, u: int, v: int) -> GaussianRational:
        for x, w in self.adjacency()[u]:
            if x == v:
                return w
        return ZERO

    def components(self) -> List[List[int]]:
        seen = [False] * self.vertex_count
        adj = self.adjacency()
        comps = []
        for s in range(self.vertex_count):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                x = stack.pop()
                comp.append(x)
                for y, _ in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def without_rotation(self) -> "PlanarGraph":
        return PlanarGraph(self.vertex_count, self.edges)

    def induced(self, keep: Sequence[int]) -> Tuple["PlanarGraph", Dict[int, int]]:
        """Subgraph on ``keep`` (relabelled 0..len-1, order preserved)."""
        index = {v: i for i, v in enumerate(keep)}
        edges, emap = [], {}
        for idx, (u, v, w) in enumerate(self.edges):
            if u in index and v in index:
                emap[idx] = len(edges)
                edges.append((index[u], index[v], w))
        rot = None
        if self.rotation is not None:
            # deleting vertices keeps the inherited rotation a valid embedding
            rot = [[emap[e] for e in self.rotation[v] if e in emap] for v in keep]
        return PlanarGraph(len(keep), edges, rot), index

    # embedding

    def other(self, e: int, v: int) -> int:
        u, x, _ = self.edges[e]
        return x if u == v else u

    def faces(self) -> List[List[Tuple[int, int]]]:
        """Face walks as lists of darts (tail, edge index)."""
        if self.rotation is None:
            raise EmbeddingInconsistent("graph has no rotation system")
        rot = self.rotation
        pos = [{e: i for i, e in enumerate(r)} for r in rot]
        seen = set()
        faces = []
        for e, (u, v, _) in enumerate(self.edges):
            for tail in (u, v):
                if (tail, e) in seen:
                    continue
                walk = []
                t, ed = tail, e
                while (t, ed) not in seen:
                    seen.add((t, ed))
                    walk.append((t, ed))
                    head = self.other(ed, t)
                    r = rot[head]
                    ed = r[pos[head][ed] - 1]
                    t = head
                faces.append(walk)
        return faces

    def face_vertices(self, face: Sequence[Tuple[int, int]]) -> List[int]:
        return [t for t, _ in face]

    def euler_ok(self) -> bool:
        if self.rotation is None:
            return True
        faces = self.faces()
        comp_of = {}
        comps = self.components()
        for ci, comp in enumerate(comps):
            for v in comp:
                comp_of[v] = ci
        nf = [0] * len(comps)
        for f in faces:
            nf[comp_of[f[0][0]]] += 1
        ne = [0] * len(comps)
        for u, _, _ in self.edges:
            ne[comp_of[u]] += 1
        for ci, comp in enumerate(comps):
            f = nf[ci] if ne[ci] else 1
            if len(comp) - ne[ci] + f != 2:
                return False
        return True


def _match_cyclic(walk: Sequence[int], required: Sequence[int]) -> Optional[List[int]]:
    """Walk positions visiting ``required`` in order within one lap, if any."""
    L = len(walk)
    for start in range(L):
        if walk[start] != required[0]:
            continue
        hits = [start]
        k = 1
        for step in range(1, L):
            if k == len(required):
                break
            if walk[(start + step) % L] == required[k]:
                hits.append((start + step) % L)
                k += 1
        if k == len(required):
            return hits
    return None


def _non_crossing(labels: Sequence[int]) -> bool:
    """No two labels interleave as a..b..a..b around the cycle."""
    kinds = sorted(set(labels))
    for i, a in enumerate(kinds):
        for b in kinds[i + 1:]:
            seq = [x for x in labels if x in (a, b)]
            runs = sum(1 for j in range(len(seq)) if seq[j] != seq[j - 1])
            if runs > 2:
                return False
    return True


@dataclass(frozen=True)
class Matchgate:
    graph: PlanarGraph
    inputs: Tuple[int, ...]
    outputs: Tuple[int, ...]
    # component id -> index of the face carrying its external nodes
    outer_faces: Optional[Tuple[Tuple[int, int], ...]] = None
    # external node -> edge after which (counterclockwise) its outer corner opens
    corners: Optional[Tuple[Tuple[int, Optional[int]], ...]] = None

    @property
    def arity(self) -> int:
        return len(self.inputs) + len(self.outputs)

    @property
    def kind(self) -> str:
        if not self.inputs:
            return "generator"
        if not self.outputs:
            return "recognizer"
        return "transducer"

    @property
    def externals(self) -> Tuple[int, ...]:
        """External nodes in signature bit order (inputs then outputs)."""
        return self.inputs + self.outputs

    @property
    def ccw_externals(self) -> Tuple[int, ...]:
        return self.inputs + tuple(reversed(self.outputs))

    @property
    def embedded(self) -> bool:
        return self.graph.rotation is not None and self.outer_faces is not None

    def corner_of(self, v: int) -> Optional[int]:
        return dict(self.corners or ()).get(v)


def find_outer_face(graph: PlanarGraph, ccw_required: Sequence[int], faces=None):
    """(face index, {vertex: corner edge}) for a face showing the required order."""
    faces = graph.faces() if faces is None else faces
    if len(ccw_required) == 1 and graph.degree(ccw_required[0]) == 0:
        return -1, {ccw_required[0]: None}
    for fi, face in enumerate(faces):
        # traced walks keep the face on the left; the outer boundary read
        # counterclockwise is the traced walk reversed
        darts = face[::-1]
        hits = _match_cyclic([t for t, _ in darts], ccw_required)
        if hits is not None:
            return fi, {darts[h][0]: darts[h][1] for h in hits}
    return None


def outer_faces_for(graph: PlanarGraph, ccw_required: Sequence[int]):
    """Per-component outer faces and corners realising the cyclic order, or None."""
    if not ccw_required:
        return (), ()
    comps = _component_ids(graph, ccw_required)
    if not _non_crossing(comps):
        return None
    faces = graph.faces()
    chosen, corners = [], {}
    for c in sorted(set(comps)):
        sub = [v for v, cv in zip(ccw_required, comps) if cv == c]
        found = find_outer_face(graph, sub, faces)
        if found is None:
            return None
        chosen.append((c, found[0]))
        corners.update(found[1])
    return tuple(chosen), tuple(sorted(corners.items()))


def build_matchgate(graph: PlanarGraph, inputs: Sequence[int] = (), outputs: Sequence[int] = ()) -> Matchgate:
    ins = tuple(int(v) for v in inputs)
    outs = tuple(int(v) for v in outputs)
    for v in ins + outs:
        if not 0 <= v < graph.vertex_count:
            raise GraphError(f"external node {v} is not a vertex")
    if set(ins) & set(outs):
        raise OverlappingExternalNodes(f"nodes {sorted(set(ins) & set(outs))} are both inputs and outputs")
    if len(set(ins)) != len(ins) or len(set(outs)) != len(outs):
        raise OverlappingExternalNodes("external node listed twice")
    outer = corners = None
    if graph.rotation is not None:
        if not graph.euler_ok():
            raise EmbeddingInconsistent("rotation system violates Euler's formula")
        found = outer_faces_for(graph, ins + tuple(reversed(outs)))
        if found is None:
            raise ExternalOrderingViolation(
                "no face visits the inputs then the reversed outputs counterclockwise")
        outer, corners = found
    return Matchgate(graph, ins, outs, outer, corners)


def _component_ids(graph: PlanarGraph, verts):
    comp_of = {}
    for ci, comp in enumerate(graph.components()):
        for v in comp:
            comp_of[v] = ci
    return [comp_of[v] for v in verts]


# drawings


def _half(d) -> int:
    x, y = d
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def _angle_cmp(a, b) -> int:
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    cross = a[0] * b[1] - a[1] * b[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def rotation_from_layout(vertex_count: int, edges: Sequence, pos: Mapping[int, Tuple], paths: Mapping[int, Sequence] = None) -> Dict[int, List[int]]:
    """Counterclockwise rotations of a straight-line (or polyline) drawing.

    ``pos`` holds exact coordinates.  ``paths`` optionally maps an edge index
    to interior bend points, so only the first segment at each end matters.
    """
    paths = paths or {}
    out: Dict[int, List[Tuple[tuple, int]]] = {v: [] for v in range(vertex_count)}
    for idx, e in enumerate(edges):
        u, v = e[0], e[1]
        bends = list(paths.get(idx, ()))
        pu = bends[0] if bends else pos[v]
        pv = bends[-1] if bends else pos[u]
        du = (Fraction(pu[0]) - Fraction(pos[u][0]), Fraction(pu[1]) - Fraction(pos[u][1]))
        dv = (Fraction(pv[0]) - Fraction(pos[v][0]), Fraction(pv[1]) - Fraction(pos[v][1]))
        out[u].append((du, idx))
        out[v].append((dv, idx))
    rot = {}
    for v, items in out.items():
        items.sort(key=cmp_to_key(lambda a, b: _angle_cmp(a[0], b[0])))
        for a, b in zip(items, items[1:]):
            if _angle_cmp(a[0], b[0]) == 0:
                raise GraphError(f"two edges leave vertex {v} in the same direction")
        rot[v] = [idx for _, idx in items]
    return rot


# gluing


def glue(parts: Sequence[Matchgate], wires: Sequence[Tuple[Tuple[int, int], Tuple[int, int]]],
         inputs: Sequence[Tuple[int, int]] = (), outputs: Sequence[Tuple[int, int]] = (),
         validate: bool = True) -> Tuple[Matchgate, bool]:
    """Disjoint union of matchgates joined by unit wires.

    ``wires`` and the new external lists name vertices as (part, vertex).
    When every part carries an embedding, wires are inserted at outer-face
    corners and the result is validated; the flag reports whether that
    planar certificate succeeded.
    """
    v_off, e_off = [], []
    nv = ne = 0
    for p in parts:
        v_off.append(nv)
        e_off.append(ne)
        nv += p.graph.vertex_count
        ne += p.graph.edge_count
    edges = []
    for pi, p in enumerate(parts):
        for u, v, w in p.graph.edges:
            edges.append((u + v_off[pi], v + v_off[pi], w))
    gid = lambda ref: v_off[ref[0]] + ref[1]
    for a, b in wires:
        edges.append((gid(a), gid(b), ONE))
    ins = [gid(r) for r in inputs]
    outs = [gid(r) for r in outputs]
    if validate and all(p.embedded for p in parts):
        rot = {}
        for pi, p in enumerate(parts):
            for v in range(p.graph.vertex_count):
                rot[v + v_off[pi]] = [e + e_off[pi] for e in p.graph.rotation[v]]
        ok = True
        for wi, (a, b) in enumerate(wires):
            for pi, v in (a, b):
                p = parts[pi]
                g = gid((pi, v))
                if not rot[g]:
                    rot[g] = [ne + wi]
                    continue
                if v not in p.externals:
                    ok = False
                    break
                anchor = p.corner_of(v)
                # the walk through the corner leaves along ``anchor``; the
                # corner opens just counterclockwise of it
                rot[g].insert(rot[g].index(anchor + e_off[pi]) + 1, ne + wi)
            if not ok:
                break
        if ok:
            try:
                return build_matchgate(PlanarGraph(nv, edges, rot), ins, outs), True
            except (EmbeddingInconsistent, ExternalOrderingViolation):
                pass
    return build_matchgate(PlanarGraph(nv, edges), ins, outs), False


@dataclass(frozen=True)
class Matchgrid:
    generators: Tuple[Matchgate, ...]
    recognizers: Tuple[Matchgate, ...]
    wires: Tuple[Tuple[int, int, int, int], ...]

    def __init__(self, generators, recognizers, wires):
        object.__setattr__(self, "generators", tuple(generators))
        object.__setattr__(self, "recognizers", tuple(recognizers))
        object.__setattr__(self, "wires", tuple(tuple(int(x) for x in w) for w in wires))


def check_wiring(grid: Matchgrid) -> None:
    used = set()
    for g, gp, r, rp in grid.wires:
        if not (0 <= g < len(grid.generators) and 0 <= gp < len(grid.generators[g].outputs)):
            raise DanglingExternalNode(f"wire names missing generator port ({g}, {gp})")
        if not (0 <= r < len(grid.recognizers) and 0 <= rp < len(grid.recognizers[r].inputs)):
            raise DanglingExternalNode(f"wire names missing recognizer port ({r}, {rp})")
        for key in (("g", g, gp), ("r", r, rp)):
            if key in used:
                raise DoubleWiredNode(f"port {key} lies on two wires")
            used.add(key)
    for gi, m in enumerate(grid.generators):
        if m.inputs:
            raise GraphError(f"generator {gi} has input nodes")
        for p in range(len(m.outputs)):
            if ("g", gi, p) not in used:
                raise DanglingExternalNode(f"generator {gi} output {p} is not wired")
    for ri, m in enumerate(grid.recognizers):
        if m.outputs:
            raise GraphError(f"recognizer {ri} has output nodes")
        for p in range(len(m.inputs)):
            if ("r", ri, p) not in used:
                raise DanglingExternalNode(f"recognizer {ri} input {p} is not wired")


def assemble_matchgrid(grid: Matchgrid) -> PlanarGraph:
    check_wiring(grid)
    parts = list(grid.generators) + list(grid.recognizers)
    ng = len(grid.generators)
    wires = [((g, grid.generators[g].outputs[gp]), (ng + r, grid.recognizers[r].inputs[rp]))
             for g, gp, r, rp in grid.wires]
    mg, _ = glue(parts, wires, validate=False)
    return mg.graph
