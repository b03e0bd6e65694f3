"""Seeded random planar matchgates.

Graphs are subgraphs of random triangulations of a polygon, so the rotation
system comes for free from the triangle list and planarity never has to be
tested.  External nodes are polygon corners taken counterclockwise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import BoundsError, ExternalOrderingViolation
from .graph import Matchgate, PlanarGraph, build_matchgate
from .scalar import GaussianRational, gr

DEFAULT_WEIGHTS = (gr(1), gr(2), gr(-1), gr(3), gr(0, 1), gr(1, 1), gr(-2), gr(1, -1))


@dataclass(frozen=True)
class CorpusSpec:
    seed: int = 0
    count: int = 100
    max_vertices: int = 12
    blocks: int = 2
    block_size: int = 2
    weight_pool: Tuple[GaussianRational, ...] = DEFAULT_WEIGHTS
    inputs: int = 0
    keep_probability: Optional[float] = None

    @property
    def arity(self) -> int:
        return self.blocks * self.block_size


def random_triangulation(hull: int, interior: int, rng: random.Random) -> Tuple[List[Tuple[int, int, int]], int]:
    """Counterclockwise triangles of a triangulated polygon 0..hull-1."""
    faces = [(0, i, i + 1) for i in range(1, hull - 1)]
    n = hull
    for _ in range(interior):
        a, b, c = faces.pop(rng.randrange(len(faces)))
        faces += [(a, b, n), (b, c, n), (c, a, n)]
        n += 1
    # a few random flips mix the fan so hull corners do not all share vertex 0
    for _ in range(2 * n):
        _random_flip(faces, hull, rng)
    return faces, n


def _random_flip(faces, hull, rng) -> None:
    i = rng.randrange(len(faces))
    a, b, c = faces[i]
    k = rng.randrange(3)
    a, b, c = (a, b, c)[k:] + (a, b, c)[:k]
    # look for the triangle on the other side of (a, b)
    for j, f in enumerate(faces):
        if j == i:
            continue
        for s in range(3):
            x, y, z = f[s:] + f[:s]
            if x == b and y == a:
                edges = {frozenset(t) for tri in faces for t in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0]))}
                if frozenset((c, z)) in edges or _is_hull_edge(a, b, hull):
                    return
                # triangles (a,b,c) and (b,a,z) become (c,a,z) and (z,b,c)
                if _orient_ok(a, b, c, z):
                    faces[i] = (c, a, z)
                    faces[j] = (z, b, c)
                return


def _is_hull_edge(a, b, hull) -> bool:
    return a < hull and b < hull and (a - b) % hull in (1, hull - 1)


def _orient_ok(a, b, c, z) -> bool:
    # combinatorially every flip of two adjacent triangles is a valid
    # triangulation of the sphere; convexity does not matter here
    return True


def rotation_from_faces(n: int, faces: Sequence[Tuple[int, int, int]], hull: int) -> Dict[int, List[int]]:
    """Counterclockwise neighbour order at each vertex."""
    nxt: Dict[Tuple[int, int], int] = {}
    for a, b, c in faces:
        nxt[(a, b)] = c
        nxt[(b, c)] = a
        nxt[(c, a)] = b
    order = {}
    for v in range(n):
        start = (v + 1) % hull if v < hull else next(b for (a, b) in nxt if a == v)
        seq = [start]
        cur = start
        while (v, cur) in nxt:
            cur = nxt[(v, cur)]
            if cur == start:
                break
            seq.append(cur)
        order[v] = seq
    return order


def random_matchgate(rng: random.Random, arity: int, inputs: int, max_vertices: int,
                     weights: Sequence[GaussianRational], keep: Optional[float] = None) -> Matchgate:
    hull = min(max_vertices, arity + rng.randint(0, 2))
    hull = max(hull, arity, 3)
    interior = rng.randint(0, max(0, max_vertices - hull))
    faces, n = random_triangulation(hull, interior, rng)
    nbr = rotation_from_faces(n, faces, hull)
    keep = rng.uniform(0.45, 0.9) if keep is None else keep
    edge_index: Dict[frozenset, int] = {}
    edges = []
    for v in range(n):
        for u in nbr[v]:
            key = frozenset((u, v))
            if key in edge_index:
                continue
            edge_index[key] = -1
            if rng.random() < keep:
                edge_index[key] = len(edges)
                edges.append((min(u, v), max(u, v), rng.choice(list(weights))))
    rot = {v: [edge_index[frozenset((u, v))] for u in nbr[v] if edge_index[frozenset((u, v))] >= 0] for v in range(n)}
    g = PlanarGraph(n, edges, rot)
    corners = sorted(rng.sample(range(hull), arity))
    shift = rng.randrange(arity) if arity else 0
    corners = corners[shift:] + corners[:shift]
    ins = corners[:inputs]
    outs = list(reversed(corners[inputs:]))
    return build_matchgate(g, ins, outs)


def generate_corpus(spec: CorpusSpec) -> List[Matchgate]:
    if spec.count < 0 or spec.max_vertices < 1 or spec.blocks < 1 or spec.block_size < 1:
        raise BoundsError("corpus bounds must be positive")
    if spec.arity > spec.max_vertices:
        raise BoundsError(f"arity {spec.arity} needs at least that many vertices")
    if not 0 <= spec.inputs <= spec.arity:
        raise BoundsError("input count outside 0..arity")
    if not spec.weight_pool:
        raise BoundsError("empty weight pool")
    rng = random.Random(spec.seed)
    return [random_matchgate(rng, spec.arity, spec.inputs, spec.max_vertices, spec.weight_pool, spec.keep_probability)
            for _ in range(spec.count)]
