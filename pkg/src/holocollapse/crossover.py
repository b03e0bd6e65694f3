"""The crossover gadget and planarization of straight-line drawings."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import DegenerateDrawing
from .graph import Matchgate, PlanarGraph, build_matchgate, rotation_from_layout
from .scalar import ONE, GaussianRational

Point = Tuple[Fraction, Fraction]

# four external nodes counterclockwise, then four internal ones
CROSSOVER_EDGES = (
    (0, 4, 1), (1, 5, 1), (2, 6, 1), (3, 7, 1),
    (0, 5, -1), (2, 7, 1),
    (5, 6, 1), (7, 4, -1), (4, 6, 1),
)
CROSSOVER_TEMPLATE = (
    (2, 0), (0, 2), (-2, 0), (0, -2),
    (1, 0), (0, 1), (-1, 0), (0, -1),
)
CROSSOVER_SIGNATURE = {0b0000: 1, 0b0101: 1, 0b1010: 1, 0b1111: -1}


def crossover_gadget() -> Matchgate:
    """The gadget as an arity-4 generator.

    Generators list their outputs clockwise, so the template is mirrored.
    """
    pos = {v: (Fraction(x), Fraction(-y)) for v, (x, y) in enumerate(CROSSOVER_TEMPLATE)}
    edges = [(u, v, GaussianRational(w)) for u, v, w in CROSSOVER_EDGES]
    g = PlanarGraph(8, edges, rotation_from_layout(8, edges, pos))
    return build_matchgate(g, [], [0, 1, 2, 3])


def _pt(p) -> Point:
    return Fraction(p[0]), Fraction(p[1])


def _sub(a, b):
    return a[0] - b[0], a[1] - b[1]


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


def segment_crossing(a: Point, b: Point, c: Point, d: Point) -> Optional[Tuple[Fraction, Fraction]]:
    """Parameters (s, t) of a proper interior crossing of ab and cd, or None.

    Raises DegenerateDrawing for overlaps and for an endpoint touching the
    other segment, which planarization cannot resolve.
    """
    r, s = _sub(b, a), _sub(d, c)
    den = _cross(r, s)
    ca = _sub(c, a)
    if den == 0:
        if _cross(ca, r) == 0:
            # collinear: overlapping interiors are degenerate
            rr = _dot(r, r)
            t0, t1 = sorted((_dot(ca, r) / rr, _dot(_sub(d, a), r) / rr))
            if t1 > 0 and t0 < 1:
                raise DegenerateDrawing("collinear overlapping edges")
        return None
    u = _cross(ca, s) / den
    v = _cross(ca, r) / den
    if 0 < u < 1 and 0 < v < 1:
        return u, v
    if 0 <= u <= 1 and 0 <= v <= 1:
        raise DegenerateDrawing("an edge passes through a vertex")
    return None


def _sq_dist_point_segment(p: Point, a: Point, b: Point) -> Fraction:
    ab, ap = _sub(b, a), _sub(p, a)
    t = _dot(ap, ab) / _dot(ab, ab)
    t = min(max(t, Fraction(0)), Fraction(1))
    q = (a[0] + t * ab[0], a[1] + t * ab[1])
    dq = _sub(p, q)
    return _dot(dq, dq)


def find_crossings(edges: Sequence, pos: Mapping[int, Point]):
    """All proper crossings as (edge i, edge j, param on i, param on j, point)."""
    out = []
    for i, j in combinations(range(len(edges)), 2):
        u1, v1 = edges[i][0], edges[i][1]
        u2, v2 = edges[j][0], edges[j][1]
        if {u1, v1} & {u2, v2}:
            a, b, c, d = pos[u1], pos[v1], pos[u2], pos[v2]
            r, s = _sub(b, a), _sub(d, c)
            if _cross(r, s) == 0 and _dot(r, s) != 0:
                shared = ({u1, v1} & {u2, v2}).pop()
                o1 = v1 if u1 == shared else u1
                o2 = v2 if u2 == shared else u2
                if _dot(_sub(pos[o1], pos[shared]), _sub(pos[o2], pos[shared])) > 0:
                    raise DegenerateDrawing("edges leave a vertex along the same ray")
            continue
        hit = segment_crossing(pos[u1], pos[v1], pos[u2], pos[v2])
        if hit:
            s, t = hit
            a, b = pos[u1], pos[v1]
            p = (a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1]))
            out.append((i, j, s, t, p))
    for k, e in enumerate(edges):
        for v, p in pos.items():
            if v in (e[0], e[1]):
                continue
            a, b = pos[e[0]], pos[e[1]]
            if _cross(_sub(b, a), _sub(p, a)) == 0 and 0 < _dot(_sub(p, a), _sub(b, a)) < _dot(_sub(b, a), _sub(b, a)):
                raise DegenerateDrawing(f"vertex {v} lies on edge {k}")
    points = [c[4] for c in out]
    if len(set(points)) != len(points):
        raise DegenerateDrawing("three or more edges meet at one crossing point")
    return out


def planarize(g: Matchgate, layout: Mapping[int, Sequence]) -> Tuple[Matchgate, Dict[int, Point]]:
    """Replace every crossing of a straight-line drawing by a crossover gadget.

    Each crossed edge becomes a chain whose first piece keeps the original
    weight and whose other pieces have weight 1.  A drawing without
    crossings is returned unchanged.
    """
    pos = {v: _pt(p) for v, p in layout.items()}
    edges = list(g.graph.edges)
    crossings = find_crossings(edges, pos)
    if not crossings:
        if g.graph.rotation is None:
            rot = rotation_from_layout(g.graph.vertex_count, edges, pos)
            g = build_matchgate(PlanarGraph(g.graph.vertex_count, edges, rot), g.inputs, g.outputs)
        return g, pos
    features = list(pos.values()) + [c[4] for c in crossings]
    new_pos = dict(pos)
    n = g.graph.vertex_count
    stops: Dict[int, List[Tuple[Fraction, int, int]]] = {k: [] for k in range(len(edges))}
    gadget_edges = []
    for i, j, s, t, p in crossings:
        da = _sub(pos[edges[i][1]], pos[edges[i][0]])
        db = _sub(pos[edges[j][1]], pos[edges[j][0]])
        flip = _cross(da, db) < 0
        if flip:
            db = (-db[0], -db[1])
        d2 = min([_dot(_sub(p, f), _sub(p, f)) for f in features if f != p] +
                 [_sq_dist_point_segment(p, pos[e[0]], pos[e[1]]) for k, e in enumerate(edges) if k not in (i, j)])
        m2 = max(_dot(da, da), _dot(db, db))
        rho = Fraction(1)
        while rho * rho * m2 * 16 >= d2:
            rho /= 2
        base = n
        for v, (x, y) in enumerate(CROSSOVER_TEMPLATE):
            new_pos[base + v] = (p[0] + rho * (x * da[0] + y * db[0]) / 2, p[1] + rho * (x * da[1] + y * db[1]) / 2)
        for u, v, w in CROSSOVER_EDGES:
            gadget_edges.append((base + u, base + v, GaussianRational(w)))
        # entry and exit nodes along each passage, in edge direction
        stops[i].append((s, base + 2, base + 0))
        stops[j].append((t, base + 1, base + 3) if flip else (t, base + 3, base + 1))
        n += 8
    new_edges = []
    for k, (u, v, w) in enumerate(edges):
        chain = sorted(stops[k])
        if not chain:
            new_edges.append((u, v, w))
            continue
        prev = u
        weight = w
        for _, enter, leave in chain:
            new_edges.append((prev, enter, weight))
            weight = ONE
            prev = leave
        new_edges.append((prev, v, weight))
    new_edges += gadget_edges
    rot = rotation_from_layout(n, new_edges, new_pos)
    graph = PlanarGraph(n, new_edges, rot)
    return build_matchgate(graph, g.inputs, g.outputs), new_pos
