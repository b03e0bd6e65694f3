"""Right inverses of full-rank generator signatures.

The construction row- and column-reduces a full-rank cluster block of the
generator's matrix form with small transducer gadgets until the generator
carries a unit edge between each block node and its paired column node.  A
recognizer built from those pairs then inverts the reduced signature, and
undoing the gadgets gives a recognizer for the original one.

Column bits of a matrix form are numbered 1..K(n-1) skipping block t; the
first ``split = K(t-1)`` of them sit before block t.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .cluster import Cluster, find_full_rank_column_cluster
from .crossover import planarize
from .errors import (
    BadIndices,
    NotFullRank,
    PseudoSignatureViolated,
    SingularBlock,
    ZeroScale,
)
from .graph import Matchgate, PlanarGraph, build_matchgate, rotation_from_layout
from .signature import GENERATOR, MatrixForm, verify_all_mgi, e, is_pseudo_signature, standard_signature, transducer_signature, matrix_form
from .scalar import ONE, ZERO, GaussianRational

Matrix = List[List[GaussianRational]]

GADGET_KINDS = ("swap_single", "scale", "add_pair", "swap_two", "add_single")


def _bit(x: int, pos: int, width: int) -> int:
    return x >> (width - pos) & 1


def _to_slots(x: int, order: Sequence[int], width: int) -> int:
    """Re-index a bit-coordinate string into slot coordinates."""
    out = 0
    for s, b in enumerate(order):
        out = out << 1 | _bit(x, b, width)
    return out


# gadget matrices by direct semantics (slot coordinates, rows = outputs)


def _intended(kind: str, N: int, p: dict) -> Matrix:
    size = 2 ** N
    T = [[ZERO] * size for _ in range(size)]
    if kind == "swap_single":
        u = e(p["j"], N)
        for y in range(size):
            T[y][y ^ u] = ONE
    elif kind == "scale":
        inv = p["c"].inverse()
        for y in range(size):
            if p.get("bit") is None:
                T[y][y] = inv
            else:
                T[y][y] = inv if not _bit(y, p["bit"], N) else ONE
    elif kind == "add_pair":
        uj, uk = e(p["j"], N), e(p["k"], N)
        for y in range(size):
            T[y][y] = ONE
            if not y & uj and not y & uk:
                T[y][y ^ uj ^ uk] = -p["b"]
    elif kind == "swap_two":
        j, h = p["j"], p["h"]
        for y in range(size):
            x = y & ~(e(j, N) | e(h, N))
            if _bit(y, j, N):
                x |= e(h, N)
            if _bit(y, h, N):
                x |= e(j, N)
            T[y][x] = ONE
    elif kind == "add_single":
        uj, uh = e(p["j"], N), e(p["h"], N)
        for y in range(size):
            T[y][y] = ONE
            if not y & uj and y & uh:
                T[y][y ^ uj ^ uh] = -p["b"]
    return T


def _layout(N: int) -> Dict[int, Tuple[Fraction, Fraction]]:
    """Inputs down a straight left column, outputs on a bulging right arc.

    The right arc is strictly convex so chords between output nodes cross the
    intermediate horizontal edges, and its uneven heights keep every crossing
    a simple one.
    """
    pos = {}
    c = Fraction(N + 1, 2)
    eps = Fraction(1, 4 * N * N)
    for nu in range(1, N + 1):
        pos[nu - 1] = (Fraction(0), Fraction(-nu))
        pos[N + nu - 1] = (1 - eps * (nu - c) ** 2, Fraction(-nu) - eps * Fraction(nu * nu, 4 * N))
    return pos


def _raw_gadget(kind: str, N: int, p: dict, extra_weight: GaussianRational):
    """Non-planar gadget graph with its straight-line layout (slot coordinates)."""
    ins = list(range(N))
    outs = [N + nu for nu in range(N)]
    pos = _layout(N)
    edges = []
    n = 2 * N

    def ident(nu, w=ONE):
        edges.append((ins[nu - 1], outs[nu - 1], w))

    if kind == "swap_single":
        for nu in range(1, N + 1):
            if nu == p["j"]:
                mid = n
                n += 1
                a, b = pos[ins[nu - 1]], pos[outs[nu - 1]]
                pos[mid] = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
                edges.append((ins[nu - 1], mid, ONE))
                edges.append((mid, outs[nu - 1], ONE))
            else:
                ident(nu)
    elif kind == "scale":
        for nu in range(1, N + 1):
            ident(nu, p["c"].inverse() if p.get("bit") == nu else ONE)
        if p.get("bit") is None:
            # one free edge of weight 1/c multiplies every entry
            a, b = n, n + 1
            n += 2
            pos[a] = (Fraction(1, 4), Fraction(1, 2))
            pos[b] = (Fraction(3, 4), Fraction(1, 2))
            edges.append((a, b, p["c"].inverse()))
    elif kind == "add_pair":
        for nu in range(1, N + 1):
            ident(nu)
        edges.append((outs[p["j"] - 1], outs[p["k"] - 1], extra_weight))
    elif kind == "swap_two":
        j, h = p["j"], p["h"]
        for nu in range(1, N + 1):
            if nu not in (j, h):
                ident(nu)
        edges.append((ins[j - 1], outs[h - 1], ONE))
        edges.append((ins[h - 1], outs[j - 1], ONE))
    elif kind == "add_single":
        for nu in range(1, N + 1):
            ident(nu)
        edges.append((ins[p["h"] - 1], outs[p["j"] - 1], extra_weight))
    g = build_matchgate(PlanarGraph(n, edges), ins, outs)
    return g, pos


@dataclass
class GadgetTransducer:
    """A transducer realising one row or column operation.

    ``matrix`` is the intended signature, ``signature`` the brute-forced
    signature of the planar ``matchgate``; both use bit coordinates with
    rows indexed by outputs.  ``exact`` lists the entries on which the two
    must agree exactly; elsewhere they agree up to sign.
    """

    kind: str
    params: dict
    size: int
    order: Tuple[int, ...]
    raw: Matchgate
    layout: dict
    matchgate: Matchgate
    planar_layout: dict
    matrix: Matrix
    signature: Matrix
    exact: Tuple[Tuple[int, int], ...] = ()
    sign_fixed: bool = False

    @property
    def crossings(self) -> int:
        return (self.matchgate.graph.vertex_count - self.raw.graph.vertex_count) // 8

    def left_factor(self, realized: bool = False) -> Matrix:
        return self.signature if realized else self.matrix

    def right_factor(self, realized: bool = False) -> Matrix:
        return linalg.transpose(self.left_factor(realized))

    def faithful(self) -> bool:
        return gadget_faithful(self)


def _permute(T_slot: Matrix, order: Sequence[int]) -> Matrix:
    N = len(order)
    size = 2 ** N
    idx = [_to_slots(x, order, N) for x in range(size)]
    return [[T_slot[idx[y]][idx[x]] for x in range(size)] for y in range(size)]


def gadget_faithful(g: GadgetTransducer) -> bool:
    """Same support, entries equal up to sign, exact where the pipeline relies on it.

    Crossovers may negate entries in which both strands pass through them, so
    only the identity-like gadgets are required to keep an exact diagonal.
    """
    for y, (rm, rs) in enumerate(zip(g.matrix, g.signature)):
        for x, (a, b) in enumerate(zip(rm, rs)):
            if a != b and a != -b:
                return False
            if (y, x) in g.exact and a != b:
                return False
            if x == y and g.kind != "swap_two" and a != b:
                return False
    return True


def build_gadget(kind: str, size: int, *, j: int = None, k: int = None, h: int = None,
                 b=None, c=None, bit: int = None, order: Optional[Sequence[int]] = None,
                 distinguished: Optional[Tuple[int, int]] = None) -> GadgetTransducer:
    """Build, planarize and certify a gadget on ``size`` input/output pairs.

    Positions ``j``, ``k``, ``h`` and ``bit`` are layout slots (1-based).
    ``order[s-1]`` names the bit position held by slot s, so the returned
    matrices are in bit coordinates.  ``distinguished`` is the bit-coordinate
    entry (row, column) the caller relies on exactly; for the weighted gadgets
    its sign is repaired by negating the extra edge when planarization flips it.
    """
    if kind not in GADGET_KINDS:
        raise BadIndices(f"unknown gadget kind {kind!r}")
    N = size
    order = tuple(order) if order is not None else tuple(range(1, N + 1))
    if sorted(order) != list(range(1, N + 1)):
        raise BadIndices("order must permute 1..size")
    p: dict = {}
    for name, val in (("j", j), ("k", k), ("h", h), ("bit", bit)):
        if val is not None:
            if not 1 <= val <= N:
                raise BadIndices(f"{name}={val} outside 1..{N}")
            p[name] = val
    need = {"swap_single": ("j",), "scale": (), "add_pair": ("j", "k"), "swap_two": ("j", "h"), "add_single": ("j", "h")}[kind]
    for name in need:
        if name not in p:
            raise BadIndices(f"{kind} needs {name}")
    if kind in ("add_pair", "swap_two", "add_single"):
        second = p.get("k", p.get("h"))
        if second == p["j"]:
            raise BadIndices("the two positions must differ")
    if kind == "add_pair" and p["j"] > p["k"]:
        p["j"], p["k"] = p["k"], p["j"]
    if kind == "scale":
        c = c if isinstance(c, GaussianRational) else GaussianRational(c)
        if not c:
            raise ZeroScale("cannot scale by 1/0")
        p["c"] = c
    if kind in ("add_pair", "add_single"):
        p["b"] = b if isinstance(b, GaussianRational) else GaussianRational(b or 0)
    intended = _permute(_intended(kind, N, p), order)
    exact = []
    if distinguished is not None:
        exact.append(tuple(distinguished))
    sign = -1
    for attempt in range(2):
        weight = p["b"] * sign if "b" in p else ONE
        raw, layout = _raw_gadget(kind, N, p, weight)
        raw_sig = _permute(transducer_signature(raw), order)
        if raw_sig != _permute(_intended(kind, N, {**p, "b": -weight} if "b" in p else p), order):
            raise AssertionError(f"{kind} gadget graph disagrees with its intended matrix")
        planar, planar_pos = planarize(raw, layout)
        sig = _permute(transducer_signature(planar), order)
        gadget = GadgetTransducer(kind, dict(p), N, order, raw, layout, planar, planar_pos,
                                  intended, sig, tuple(exact), attempt == 1)
        if distinguished is None or "b" not in p:
            break
        y, x = distinguished
        if sig[y][x] == intended[y][x]:
            break
        sign = 1
    return gadget


# reducedness


def full_position(col_bit: int, K: int, t: int) -> int:
    """1-based external position of a column bit."""
    split = K * (t - 1)
    return col_bit if col_bit <= split else col_bit + K


def paired_positions(cluster_positions: Sequence[int], K: int, t: int) -> List[int]:
    """Order the cluster positions so block node i pairs with the i-th one.

    Positions before block t are taken in descending order, then those after
    it, also descending; this nests the pairs around block t.
    """
    split = K * (t - 1)
    before = [p for p in cluster_positions if p <= split]
    after = [p for p in cluster_positions if p > split]
    return sorted(before, reverse=True) + sorted(after, reverse=True)


def is_reduced_at(g: Matchgate, i: int, t: int, q: Sequence[int], K: int) -> bool:
    """Block-t node i and column node q_i share a unit edge and nothing else."""
    ext = g.externals
    if not 1 <= i <= len(q):
        return False
    a = ext[K * (t - 1) + i - 1]
    b = ext[full_position(q[i - 1], K, t) - 1]
    adj = g.graph.adjacency()
    return len(adj[a]) == 1 and len(adj[b]) == 1 and adj[a][0] == (b, ONE)


def paired_column(tau: int, q: Sequence[int], base: int, C: int) -> int:
    """Column index whose paired bits are ``tau`` and other bits follow ``base``."""
    K = len(q)
    col = base
    for i in range(1, K + 1):
        if _bit(tau, i, K):
            col ^= e(q[i - 1], C)
    return col


def paired_block(W: Matrix, q: Sequence[int], base: int, C: int) -> Matrix:
    K = len(q)
    cols = [paired_column(tau, q, base, C) for tau in range(2 ** K)]
    return [[W[s][c] for c in cols] for s in range(2 ** K)]


def block_relations_hold(H: Matrix, upto: int) -> bool:
    """Reducedness relations for paired bits 1..upto on a paired block."""
    K = len(H).bit_length() - 1
    for a in range(1, upto + 1):
        u = e(a, K)
        for s in range(2 ** K):
            for t_ in range(2 ** K):
                if _bit(s, a, K) != _bit(t_, a, K):
                    if H[s][t_]:
                        return False
                elif H[s ^ u][t_ ^ u] != H[s][t_]:
                    return False
    return True


def stage_conditions_hold(H: Matrix, i: int) -> bool:
    """Corner and edge-entry conditions that make the next pair reduced."""
    K = len(H).bit_length() - 1
    one = 2 ** (K - i) - 1
    nxt = one ^ e(i + 1, K)
    if H[one][one] != ONE or H[nxt][nxt] != ONE:
        return False
    lo = 2 * (K - i) - 2
    rows_ok = [s for s in range(2 ** K) if s < 2 ** (K - i)]
    for s in rows_ok:
        for t_ in rows_ok:
            w = bin(s).count("1") + bin(t_).count("1")
            if not lo <= w < 2 * (K - i):
                continue
            if (s, t_) in ((one, one), (nxt, nxt)):
                continue
            if s in (one, nxt) or t_ in (one, nxt):
                if H[s][t_]:
                    return False
    return True


# the reduction pipeline


@dataclass
class ReductionTrace:
    K: int
    C: int
    t: int
    cluster: Cluster
    q: Tuple[int, ...]
    left_factors: List[GadgetTransducer] = field(default_factory=list)
    right_factors: List[GadgetTransducer] = field(default_factory=list)
    # (side, index into the factor list) in application order
    steps: List[Tuple[str, int]] = field(default_factory=list)
    snapshots: List[Matrix] = field(default_factory=list)
    stage: int = 0
    # multiply by the matchgates' own signatures instead of the intended matrices
    realized: bool = False

    @property
    def split(self) -> int:
        return self.K * (self.t - 1)

    @property
    def arc_order(self) -> Tuple[int, ...]:
        """Column bits in the order a column gadget's inputs meet them."""
        return tuple(range(self.split + 1, self.C + 1)) + tuple(range(1, self.split + 1))

    def block(self, W: Matrix) -> Matrix:
        return paired_block(W, self.q, self.cluster.base, self.C)

    def col(self, tau: int) -> int:
        return paired_column(tau, self.q, self.cluster.base, self.C)

    def left_product(self) -> Matrix:
        out = linalg.identity(2 ** self.K)
        for g in self.left_factors:
            out = linalg.matmul(g.left_factor(self.realized), out)
        return out

    def right_product(self) -> Matrix:
        out = linalg.identity(2 ** self.C)
        for g in self.right_factors:
            out = linalg.matmul(out, g.right_factor(self.realized))
        return out

    def replay(self, W0: Matrix) -> List[Matrix]:
        W = [list(r) for r in W0]
        out = []
        for side, idx in self.steps:
            if side == "L":
                W = linalg.matmul(self.left_factors[idx].left_factor(self.realized), W)
            else:
                W = linalg.matmul(W, self.right_factors[idx].right_factor(self.realized))
            out.append(W)
        return out


def _record(trace: ReductionTrace, W: Matrix) -> Matrix:
    # gadgets of stage i never touch paired bits 1..i
    if not block_relations_hold(trace.block(W), trace.stage):
        raise AssertionError(f"a stage-{trace.stage} gadget broke reducedness at earlier pairs")
    trace.snapshots.append(W)
    return W


def _apply_left(trace: ReductionTrace, W: Matrix, g: GadgetTransducer) -> Matrix:
    trace.left_factors.append(g)
    trace.steps.append(("L", len(trace.left_factors) - 1))
    return _record(trace, linalg.matmul(g.left_factor(trace.realized), W))


def _apply_right(trace: ReductionTrace, W: Matrix, g: GadgetTransducer) -> Matrix:
    trace.right_factors.append(g)
    trace.steps.append(("R", len(trace.right_factors) - 1))
    return _record(trace, linalg.matmul(W, g.right_factor(trace.realized)))


def _col_slot(trace: ReductionTrace, col_bit: int) -> int:
    return trace.arc_order.index(col_bit) + 1


def _left(trace, kind, dist=None, **kw) -> GadgetTransducer:
    return build_gadget(kind, trace.K, distinguished=dist, **kw)


def _right(trace, kind, dist=None, **kw) -> GadgetTransducer:
    """Column gadget; positions given as column bits, ``dist`` in column indices."""
    slots = {name: _col_slot(trace, v) for name, v in kw.items() if name in ("j", "k", "h", "bit") and v is not None}
    rest = {name: v for name, v in kw.items() if name not in ("j", "k", "h", "bit")}
    return build_gadget(kind, trace.C, order=trace.arc_order, distinguished=dist, **slots, **rest)


def reduce_step(trace: ReductionTrace, W: Matrix, i: int) -> Tuple[ReductionTrace, Matrix]:
    """Make the generator reduced at pair i+1, given pairs 1..i are reduced.

    ``trace`` is extended in place and returned alongside the new matrix.
    """
    K, C = trace.K, trace.C
    if trace.stage != i:
        raise BadIndices(f"trace is at stage {trace.stage}, not {i}")
    if not block_relations_hold(trace.block(W), i):
        raise BadIndices(f"matrix is not reduced at pairs 1..{i}")
    q = trace.q
    one = 2 ** (K - i) - 1
    inner = range(2 ** (K - i))

    # step 1: a unit entry at (one, one)
    H = trace.block(W)
    if not H[one][one]:
        hit = next(((s, t_) for s in inner for t_ in inner if H[s][t_]), None)
        if hit is None:
            raise SingularBlock(f"the remaining {2 ** (K - i)}-square block is zero")
        s, t_ = hit
        for j in range(i + 1, K + 1):
            if not _bit(s, j, K):
                W = _apply_left(trace, W, _left(trace, "swap_single", j=j))
        for j in range(i + 1, K + 1):
            if not _bit(t_, j, K):
                W = _apply_right(trace, W, _right(trace, "swap_single", j=q[j - 1]))
        H = trace.block(W)
    c = H[one][one]
    if c != ONE:
        W = _apply_left(trace, W, _left(trace, "scale", c=c))
        H = trace.block(W)
    assert H[one][one] == ONE

    # step 2: clear row and column `one` two flips away, reverse lexicographic
    pairs = sorted(((j, k) for j in range(i + 1, K + 1) for k in range(j + 1, K + 1)),
                   key=lambda jk: one ^ e(jk[0], K) ^ e(jk[1], K), reverse=True)
    for j, k in pairs:
        row = one ^ e(j, K) ^ e(k, K)
        b = trace.block(W)[row][one]
        if b:
            W = _apply_left(trace, W, _left(trace, "add_pair", j=j, k=k, b=b, dist=(row, one)))
            assert trace.block(W)[row][one] == ZERO
    for j, k in pairs:
        colp = one ^ e(j, K) ^ e(k, K)
        b = trace.block(W)[one][colp]
        if b:
            dist = (trace.col(colp), trace.col(one))
            W = _apply_right(trace, W, _right(trace, "add_pair", j=q[j - 1], k=q[k - 1], b=b, dist=dist))
            assert trace.block(W)[one][colp] == ZERO
    H = trace.block(W)
    for j in range(i + 1, K + 1):
        assert not H[one ^ e(j, K)][one] and not H[one][one ^ e(j, K)], "parity violated"

    # step 3: a unit entry one flip away on the next pair
    nxt = one ^ e(i + 1, K)
    if not H[nxt][nxt]:
        hit = next(((j, k) for j in range(i + 1, K + 1) for k in range(i + 1, K + 1)
                    if H[one ^ e(j, K)][one ^ e(k, K)]), None)
        if hit is None:
            raise SingularBlock("no nonzero entry one flip away from the corner")
        j, k = hit
        if j != i + 1:
            W = _apply_left(trace, W, _left(trace, "swap_two", j=j, h=i + 1))
        if k != i + 1:
            W = _apply_right(trace, W, _right(trace, "swap_two", j=q[k - 1], h=q[i]))
        H = trace.block(W)
    c2 = H[nxt][nxt]
    if not c2:
        raise SingularBlock("swaps failed to place a nonzero entry")
    if c2 != ONE:
        W = _apply_left(trace, W, _left(trace, "scale", c=c2, bit=i + 1))
    assert trace.block(W)[nxt][nxt] == ONE and trace.block(W)[one][one] == ONE

    # step 4: clear the rest of row and column `nxt`, reverse lexicographic
    for a in range(K, i + 1, -1):
        row = one ^ e(a, K)
        b = trace.block(W)[row][nxt]
        if b:
            W = _apply_left(trace, W, _left(trace, "add_single", j=a, h=i + 1, b=b, dist=(row, nxt)))
            assert trace.block(W)[row][nxt] == ZERO
    for a in range(K, i + 1, -1):
        colp = one ^ e(a, K)
        b = trace.block(W)[nxt][colp]
        if b:
            dist = (trace.col(colp), trace.col(nxt))
            W = _apply_right(trace, W, _right(trace, "add_single", j=q[a - 1], h=q[i], b=b, dist=dist))
            assert trace.block(W)[nxt][colp] == ZERO

    H = trace.block(W)
    if not stage_conditions_hold(H, i):
        raise AssertionError(f"stage {i}: corner or edge entries not normalised")
    if not block_relations_hold(H, i + 1):
        raise AssertionError(f"stage {i}: reducedness relations fail")
    trace.stage = i + 1
    return trace, W


def toy_recognizer_matrix(K: int, C: int, q: Sequence[int], base: int) -> Matrix:
    """Recognizer matrix form (rows: columns of the generator, cols: block t)."""
    R = [[ZERO] * (2 ** K) for _ in range(2 ** C)]
    for s in range(2 ** K):
        R[paired_column(s, q, base, C)][s] = ONE
    return R


def toy_recognizer(K: int, n: int, t: int, q: Sequence[int], base: int) -> Matchgate:
    """Unit edges joining block node i to node q_i, plus pendant fixers.

    Other column nodes keep a unit pendant edge when the base has a 0 there
    and a two-edge path when it has a 1; the far end becomes the external node.
    """
    C = K * (n - 1)
    N = K * n
    pos = {v: (Fraction(v + 1), Fraction((v + 1) ** 2)) for v in range(N)}
    edges = []
    ext = list(range(N))
    nv = N
    for i in range(1, K + 1):
        edges.append((K * (t - 1) + i - 1, full_position(q[i - 1], K, t) - 1, ONE))
    for cb in range(1, C + 1):
        if cb in q:
            continue
        v = full_position(cb, K, t) - 1
        x, y = pos[v]
        if _bit(base, cb, C):
            pos[nv] = (x, y + Fraction(1, 3))
            pos[nv + 1] = (x, y + Fraction(2, 3))
            edges += [(v, nv, ONE), (nv, nv + 1, ONE)]
            ext[v] = nv + 1
            nv += 2
        else:
            pos[nv] = (x, y + Fraction(1, 2))
            edges.append((v, nv, ONE))
            ext[v] = nv
            nv += 1
    g = PlanarGraph(nv, edges, rotation_from_layout(nv, edges, pos))
    return build_matchgate(g, ext, [])


def toy_generator(K: int, n: int, t: int, q: Sequence[int], base: int) -> Matchgate:
    """A generator reduced at every pair; other column nodes fixed by the base."""
    N = K * n
    C = K * (n - 1)
    pos = {v: (Fraction(v + 1), -Fraction((v + 1) ** 2)) for v in range(N)}
    edges = []
    nv = N
    for i in range(1, K + 1):
        edges.append((K * (t - 1) + i - 1, full_position(q[i - 1], K, t) - 1, ONE))
    for cb in range(1, C + 1):
        if cb in q:
            continue
        v = full_position(cb, K, t) - 1
        if not _bit(base, cb, C):
            x, y = pos[v]
            pos[nv] = (x, y - Fraction(1, 2))
            edges.append((v, nv, ONE))
            nv += 1
    g = PlanarGraph(nv, edges, rotation_from_layout(nv, edges, pos))
    return build_matchgate(g, [], list(range(N)))


@dataclass
class InverseResult:
    recognizer: Matrix  # 2^C x 2^K, rows indexed by the generator's columns
    trace: ReductionTrace
    toy: Matrix
    toy_matchgate: Matchgate
    reduced: Matrix

    def block_form(self) -> MatrixForm:
        """Transpose of R: rows indexed by block t, as a generator-style form."""
        tr = self.trace
        return MatrixForm.from_rows(linalg.transpose(self.recognizer), tr.K, tr.C, tr.split)

    def to_matrix_form(self) -> MatrixForm:
        tr = self.trace
        return MatrixForm.from_rows(self.recognizer, tr.K, tr.C, tr.split, role="recognizer", t=tr.t,
                                    blocks=tr.C // tr.K + 1, letters=2 ** tr.K)


def construct_right_inverse(gamma, K: int, t: int, check_pseudo: bool = True,
                            realized: Optional[bool] = None) -> InverseResult:
    """Recognizer matrix R with gamma . R = I, built from certified gadgets.

    With ``realized`` the reduction multiplies by the planar gadgets' own
    brute-forced signatures, so when gamma is a genuine standard signature
    every intermediate is one too and R is the signature of an actual
    recognizer.  Otherwise it multiplies by the gadgets' intended matrices,
    which differ from the realized ones only in signs; that is the right
    choice for pseudo-signatures lacking the planar sign pattern.  The
    default picks realized mode exactly when gamma satisfies every
    matchgate identity.
    """
    rows = gamma.block_rows() if isinstance(gamma, MatrixForm) else [list(r) for r in gamma]
    if len(rows) != 2 ** K:
        raise BadIndices(f"expected {2 ** K} rows, got {len(rows)}")
    C = (len(rows[0])).bit_length() - 1
    if C % K or 2 ** C != len(rows[0]):
        raise BadIndices("column count must be 2^(K(n-1))")
    n = C // K + 1
    if not 1 <= t <= n:
        raise BadIndices(f"block {t} outside 1..{n}")
    if linalg.rank(rows) != 2 ** K:
        raise NotFullRank(f"rank {linalg.rank(rows)} < {2 ** K}")
    if check_pseudo:
        ok, cert = is_pseudo_signature(MatrixForm.from_rows(rows, K, C, K * (t - 1), role=GENERATOR))
        if not ok:
            raise PseudoSignatureViolated("input fails the matchgate identities", cert)
    form = MatrixForm.from_rows(rows, K, C, K * (t - 1), role=GENERATOR)
    if realized is None:
        realized = verify_all_mgi(form)[0]
    cluster = find_full_rank_column_cluster(rows, 2 ** K)
    q = tuple(paired_positions(cluster.positions, K, t))
    trace = ReductionTrace(K, C, t, cluster, q, realized=realized)
    W = [list(r) for r in rows]
    for i in range(K):
        trace, W = reduce_step(trace, W, i)
    if trace.replay(rows) != trace.snapshots:
        raise AssertionError("replaying the factors does not reproduce the recorded matrices")
    H = trace.block(W)
    if H != linalg.identity(2 ** K):
        raise AssertionError("reduced block is not the paired identity")
    toy = toy_recognizer_matrix(K, C, q, cluster.base)
    toy_gate = toy_recognizer(K, n, t, q, cluster.base)
    toy_sig = matrix_form(standard_signature(toy_gate, n, K), t).as_list()
    if toy_sig != toy:
        raise AssertionError("toy recognizer matchgate disagrees with its matrix")
    R = linalg.matmul(linalg.matmul(trace.right_product(), toy), trace.left_product())
    if linalg.matmul(rows, R) != linalg.identity(2 ** K):
        raise AssertionError("constructed recognizer is not a right inverse")
    return InverseResult(R, trace, toy, toy_gate, W)
