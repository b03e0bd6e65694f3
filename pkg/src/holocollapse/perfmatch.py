"""Perfect-matching polynomials: exhaustive enumeration and the FKT Pfaffian."""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from math import lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from gmpy2 import mpq

from .errors import EmbeddingInconsistent, InstanceTooLarge, NotSkewSymmetric
from .graph import PlanarGraph
from .scalar import ONE, ZERO, GaussianRational

DEFAULT_ENUM_CAP = 24


def enumeration_cap() -> int:
    return int(os.environ.get("HOLOCOLLAPSE_ENUM_CAP", DEFAULT_ENUM_CAP))


class MatchingCounter:
    """Memoised branch-on-lowest-vertex enumeration for one graph.

    Weights are scaled to Gaussian integers by a common denominator so the
    inner loop is plain integer arithmetic; one counter can answer many
    vertex-deletion queries (as a standard signature needs) from a shared memo.
    """

    def __init__(self, graph: PlanarGraph, cap: Optional[int] = None):
        cap = enumeration_cap() if cap is None else cap
        if graph.vertex_count > cap:
            raise InstanceTooLarge(f"{graph.vertex_count} vertices exceeds enumeration cap {cap}")
        self.n = graph.vertex_count
        den = 1
        for _, _, w in graph.edges:
            den = lcm(den, w.re.denominator, w.im.denominator)
        self.den = den
        nbrs: List[List[Tuple[int, int, int]]] = [[] for _ in range(self.n)]
        for u, v, w in graph.edges:
            a, b = int(w.re * den), int(w.im * den)
            if a == 0 and b == 0:
                continue
            nbrs[u].append((v, a, b))
            nbrs[v].append((u, a, b))
        self.nbrs = nbrs
        self.memo: Dict[int, Tuple[int, int]] = {0: (1, 0)}

    def _count(self, mask: int) -> Tuple[int, int]:
        memo = self.memo
        hit = memo.get(mask)
        if hit is not None:
            return hit
        low = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << low)
        re = im = 0
        for v, a, b in self.nbrs[low]:
            if rest >> v & 1:
                sr, si = self._count(rest ^ (1 << v))
                if sr or si:
                    re += a * sr - b * si
                    im += a * si + b * sr
        memo[mask] = (re, im)
        return re, im

    def count(self, removed: Iterable[int] = ()) -> GaussianRational:
        mask = (1 << self.n) - 1
        for v in removed:
            mask &= ~(1 << v)
        size = bin(mask).count("1")
        if size % 2:
            return ZERO
        re, im = self._count(mask)
        scale = self.den ** (size // 2)
        return GaussianRational(mpq(re, scale), mpq(im, scale))


def perfmatch_bruteforce(graph: PlanarGraph, cap: Optional[int] = None) -> GaussianRational:
    if graph.vertex_count % 2:
        if graph.vertex_count > (enumeration_cap() if cap is None else cap):
            raise InstanceTooLarge(f"{graph.vertex_count} vertices exceeds enumeration cap")
        return ZERO
    return MatchingCounter(graph, cap).count()


@dataclass(frozen=True)
class SkewMatrix:
    dimension: int
    entries: Tuple[Tuple[GaussianRational, ...], ...]

    def __init__(self, entries: Sequence[Sequence]):
        rows = tuple(tuple(x if isinstance(x, GaussianRational) else GaussianRational(x) for x in r) for r in entries)
        n = len(rows)
        for i, r in enumerate(rows):
            if len(r) != n:
                raise NotSkewSymmetric("matrix is not square")
            if r[i]:
                raise NotSkewSymmetric(f"nonzero diagonal entry at {i}")
            for j in range(i + 1, n):
                if r[j] != -rows[j][i]:
                    raise NotSkewSymmetric(f"entries ({i},{j}) and ({j},{i}) are not negatives")
        object.__setattr__(self, "dimension", n)
        object.__setattr__(self, "entries", rows)


def pfaffian(m: SkewMatrix) -> GaussianRational:
    """Exact Pfaffian by skew-congruent elimination."""
    n = m.dimension
    if n % 2:
        return ZERO
    a = [list(r) for r in m.entries]
    result = ONE
    for k in range(0, n - 1, 2):
        piv = next((j for j in range(k + 1, n) if a[k][j]), None)
        if piv is None:
            return ZERO
        if piv != k + 1:
            a[k + 1], a[piv] = a[piv], a[k + 1]
            for row in a:
                row[k + 1], row[piv] = row[piv], row[k + 1]
            result = -result
        p = a[k][k + 1]
        result = result * p
        inv = p.inverse()
        rk1 = a[k + 1]
        for i in range(k + 2, n):
            if not a[k][i]:
                continue
            f = a[k][i] * inv
            # row_i -= f row_{k+1}; col_i -= f col_{k+1}
            ri = a[i]
            for j in range(k, n):
                if rk1[j]:
                    ri[j] = ri[j] - f * rk1[j]
            for row in a[k:]:
                if row[k + 1]:
                    row[i] = row[i] - f * row[k + 1]
    return result


def kasteleyn_orientation(graph: PlanarGraph) -> List[bool]:
    """For each edge, True when oriented from its first to its second endpoint.

    Every face except one root face per component ends up with an odd number
    of edges pointing against its face-on-the-left walk.
    """
    if graph.rotation is None:
        raise EmbeddingInconsistent("FKT needs a rotation system")
    if not graph.euler_ok():
        raise EmbeddingInconsistent("rotation system violates Euler's formula")
    m = graph.edge_count
    forward = [True] * m
    adj = [[] for _ in range(graph.vertex_count)]
    for idx, (u, v, _) in enumerate(graph.edges):
        adj[u].append((v, idx))
        adj[v].append((u, idx))
    in_tree = [False] * m
    seen = [False] * graph.vertex_count
    for s in range(graph.vertex_count):
        if seen[s]:
            continue
        seen[s] = True
        q = deque([s])
        while q:
            x = q.popleft()
            for y, idx in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    in_tree[idx] = True
                    q.append(y)
    faces = graph.faces()
    sides: List[List[int]] = [[] for _ in range(m)]
    for fi, face in enumerate(faces):
        for _, e in face:
            sides[e].append(fi)
    dual = [[] for _ in faces]
    for e in range(m):
        if not in_tree[e]:
            f, g = sides[e]
            dual[f].append((g, e))
            dual[g].append((f, e))
    parent_edge = [None] * len(faces)
    order = []
    visited = [False] * len(faces)
    for root in range(len(faces)):
        if visited[root]:
            continue
        visited[root] = True
        stack = [root]
        while stack:
            f = stack.pop()
            order.append(f)
            for g, e in dual[f]:
                if not visited[g]:
                    visited[g] = True
                    parent_edge[g] = e
                    stack.append(g)
    for f in reversed(order):
        e = parent_edge[f]
        if e is None:
            continue
        against = 0
        own = None
        for tail, ed in faces[f]:
            if ed == e:
                own = tail
                continue
            if (graph.edges[ed][0] == tail) != forward[ed]:
                against += 1
        # choose the parent edge so the face's count is odd
        want_against = against % 2 == 0
        forward[e] = (graph.edges[e][0] == own) != want_against
    return forward


def _perm_sign(perm: Sequence[int]) -> int:
    perm = list(perm)
    sign = 1
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


def perfmatch_fkt(graph: PlanarGraph) -> GaussianRational:
    n = graph.vertex_count
    if n == 0:
        return ONE
    if n % 2:
        return ZERO
    forward = kasteleyn_orientation(graph)
    nxg = nx.Graph()
    nxg.add_nodes_from(range(n))
    nxg.add_edges_from((u, v) for u, v, w in graph.edges if w)
    matching = nx.max_weight_matching(nxg, maxcardinality=True)
    if len(matching) * 2 != n:
        return ZERO
    a = [[ZERO] * n for _ in range(n)]
    orient = {}
    for idx, (u, v, w) in enumerate(graph.edges):
        s, t = (u, v) if forward[idx] else (v, u)
        a[s][t] = w
        a[t][s] = -w
        orient[(s, t)] = 1
        orient[(t, s)] = -1
    pf = pfaffian(SkewMatrix(a))
    # the reference matching's Pfaffian term fixes the global sign
    perm = []
    sign = 1
    for u, v in matching:
        i, j = min(u, v), max(u, v)
        perm += [i, j]
        sign *= orient[(i, j)]
    sign *= _perm_sign(perm)
    return pf if sign > 0 else -pf


class DeletionCounter:
    """Perfect-matching sums of vertex-deleted subgraphs of one graph.

    Small graphs share a memoised enumeration; larger embedded graphs fall
    back to one Pfaffian per query.
    """

    def __init__(self, graph: PlanarGraph, cap: Optional[int] = None):
        cap = enumeration_cap() if cap is None else cap
        self.graph = graph
        self._enum = MatchingCounter(graph, cap) if graph.vertex_count <= cap else None
        if self._enum is None and graph.rotation is None:
            raise InstanceTooLarge(f"{graph.vertex_count} vertices exceeds enumeration cap {cap} and no embedding is available")

    def count(self, removed: Iterable[int] = ()) -> GaussianRational:
        if self._enum is not None:
            return self._enum.count(removed)
        gone = set(removed)
        keep = [v for v in range(self.graph.vertex_count) if v not in gone]
        if len(keep) % 2:
            return ZERO
        sub, _ = self.graph.induced(keep)
        return perfmatch_fkt(sub)
