"""Independent reference implementations used to freeze expected values.

Nothing here imports from holocollapse: scalars are pairs of Fractions and
matchings are enumerated by plain recursion over an edge list.
"""

from fractions import Fraction
import random


def cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def cadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


ZERO = (Fraction(0), Fraction(0))
ONE = (Fraction(1), Fraction(0))


def perfect_matching_sum(n, edges, removed=()):
    """Sum over perfect matchings of the vertices not in ``removed``.

    ``edges`` holds (u, v, (re, im)); parallel edges contribute separately.
    """
    alive = frozenset(range(n)) - frozenset(removed)

    def go(rest):
        if not rest:
            return ONE
        v = min(rest)
        total = ZERO
        for a, b, w in edges:
            other = b if a == v else a if b == v else None
            if other is None or other not in rest or other == v:
                continue
            total = cadd(total, cmul(w, go(rest - {v, other})))
        return total

    return go(alive)


def pair(z):
    """A package scalar as an oracle pair."""
    return (Fraction(z.re), Fraction(z.im))


def oracle_edges(graph):
    return [(u, v, pair(w)) for u, v, w in graph.edges]


def signature_by_removal(n, edges, externals):
    """Standard signature with the first external as the most significant bit."""
    N = len(externals)
    out = []
    for x in range(2 ** N):
        gone = [externals[i] for i in range(N) if x >> (N - 1 - i) & 1]
        out.append(perfect_matching_sum(n, edges, gone))
    return out


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _proper_cross(p1, p2, p3, p4):
    if len({p1, p2, p3, p4}) < 4:
        return False
    d1, d2 = _cross(p3, p4, p1), _cross(p3, p4, p2)
    d3, d4 = _cross(p1, p2, p3), _cross(p1, p2, p4)
    return d1 * d2 < 0 and d3 * d4 < 0


def _on_segment(p, a, b):
    return (_cross(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def straight_line_planar(n, rng: random.Random, density=0.6, weights=None):
    """Random points plus non-crossing straight edges: (points, edges)."""
    weights = weights or [(re, im) for re in range(-3, 4) for im in range(-2, 3) if re or im]
    while True:
        pts = [(rng.randint(0, 60), rng.randint(0, 60)) for _ in range(n)]
        if len(set(pts)) == n:
            break
    cand = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rng.shuffle(cand)
    edges = []
    for i, j in cand:
        if rng.random() > density:
            continue
        if any(_proper_cross(pts[i], pts[j], pts[a], pts[b]) for a, b, _ in edges):
            continue
        if any(k not in (i, j) and _on_segment(pts[k], pts[i], pts[j]) for k in range(n)):
            continue
        re, im = rng.choice(weights)
        edges.append((i, j, (Fraction(re), Fraction(im))))
    return pts, edges
