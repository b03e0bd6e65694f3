"""Signatures, matrix forms and the matchgate identities.

Bitstrings are stored as Python ints.  Position 1 is the most significant
bit, and a 1 in position j means external node j is removed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from . import linalg
from .errors import (
    ArityMismatch,
    BadBlockIndex,
    IndexOutOfRange,
    InconsistentEdgeEntries,
    ZeroCorner,
)
from .graph import Matchgate
from .perfmatch import DeletionCounter
from .scalar import ONE, ZERO, GaussianRational

GENERATOR = "generator"
RECOGNIZER = "recognizer"

# exhaustive MGI enumeration up to this many column bits, sampling above
MGI_EXHAUSTIVE_COL_BITS = 6
MGI_SAMPLE_SIZE = 4000
MGI_SEED = 20240601


def e(pos: int, width: int) -> int:
    """Indicator of 1-based position ``pos`` in a ``width``-bit string."""
    return 1 << (width - pos)


def positions(x: int, width: int) -> List[int]:
    """1-based positions of the set bits of ``x``, ascending."""
    return [p for p in range(1, width + 1) if x >> (width - p) & 1]


def weight(x: int) -> int:
    return bin(x).count("1")


def bitstr(x: int, width: int) -> str:
    return format(x, f"0{width}b") if width else ""


@dataclass(frozen=True)
class SignatureTensor:
    """Dense signature vector.

    ``letters`` is the number of values one block index takes: 2**block_size
    for standard signatures, the domain size k for domain signatures.
    """

    role: str
    blocks: int
    letters: int
    entries: Tuple[GaussianRational, ...]
    block_size: Optional[int] = None

    def __post_init__(self):
        if len(self.entries) != self.letters ** self.blocks:
            raise ArityMismatch(f"expected {self.letters ** self.blocks} entries, got {len(self.entries)}")

    @classmethod
    def standard(cls, role: str, blocks: int, block_size: int, entries: Sequence) -> "SignatureTensor":
        return cls(role, blocks, 2 ** block_size, tuple(_scalar(x) for x in entries), block_size)

    @classmethod
    def domain(cls, role: str, blocks: int, k: int, entries: Sequence) -> "SignatureTensor":
        return cls(role, blocks, k, tuple(_scalar(x) for x in entries))

    @property
    def is_standard(self) -> bool:
        return self.block_size is not None

    @property
    def bits(self) -> Optional[int]:
        return None if self.block_size is None else self.blocks * self.block_size

    def __getitem__(self, index: int) -> GaussianRational:
        return self.entries[index]

    def block_digits(self, index: int) -> List[int]:
        out = []
        for _ in range(self.blocks):
            index, r = divmod(index, self.letters)
            out.append(r)
        return out[::-1]

    def index_of(self, digits: Sequence[int]) -> int:
        idx = 0
        for d in digits:
            idx = idx * self.letters + d
        return idx


def _scalar(x) -> GaussianRational:
    return x if isinstance(x, GaussianRational) else GaussianRational(x)


def standard_signature(g: Matchgate, blocks: int, block_size: int) -> SignatureTensor:
    if g.arity != blocks * block_size:
        raise ArityMismatch(f"matchgate arity {g.arity} != {blocks} x {block_size}")
    ext = g.externals
    counter = DeletionCounter(g.graph)
    n = len(ext)
    vals = []
    for alpha in range(2 ** n):
        vals.append(counter.count(ext[j] for j in range(n) if alpha >> (n - 1 - j) & 1))
    role = RECOGNIZER if g.inputs and not g.outputs else GENERATOR
    return SignatureTensor(role, blocks, 2 ** block_size, tuple(vals), block_size)


def transducer_signature(g: Matchgate) -> List[List[GaussianRational]]:
    """Matrix with rows indexed by output bits and columns by input bits."""
    counter = DeletionCounter(g.graph)
    ni, no = len(g.inputs), len(g.outputs)
    rows = []
    for y in range(2 ** no):
        removed_out = [g.outputs[j] for j in range(no) if y >> (no - 1 - j) & 1]
        row = []
        for x in range(2 ** ni):
            removed_in = [g.inputs[j] for j in range(ni) if x >> (ni - 1 - j) & 1]
            row.append(counter.count(removed_in + removed_out))
        rows.append(row)
    return rows


@dataclass(frozen=True)
class MatrixForm:
    """A signature viewed as a matrix at block ``t``.

    ``entries`` is stored in the role's orientation: generator forms have rows
    indexed by block t, recognizer forms are the transpose.  ``row_bits`` and
    ``col_bits`` describe the block-t orientation (None for domain forms),
    and ``split`` counts the column bits that precede block t.
    """

    entries: Tuple[Tuple[GaussianRational, ...], ...]
    row_bits: Optional[int] = None
    col_bits: Optional[int] = None
    split: Optional[int] = None
    role: str = GENERATOR
    t: Optional[int] = None
    blocks: Optional[int] = None
    letters: Optional[int] = None

    @classmethod
    def from_rows(cls, rows, row_bits=None, col_bits=None, split=None, role=GENERATOR, **kw) -> "MatrixForm":
        ent = tuple(tuple(_scalar(x) for x in r) for r in rows)
        if row_bits is None and ent and _is_pow2(len(ent)) and _is_pow2(len(ent[0])):
            r, c = (len(ent), len(ent[0])) if role == GENERATOR else (len(ent[0]), len(ent))
            row_bits, col_bits = r.bit_length() - 1, c.bit_length() - 1
        return cls(ent, row_bits, col_bits, split, role, **kw)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.entries), len(self.entries[0]) if self.entries else 0

    def block_rows(self) -> List[List[GaussianRational]]:
        """Matrix with rows indexed by block t (the generator orientation)."""
        if self.role == GENERATOR:
            return [list(r) for r in self.entries]
        return linalg.transpose(self.entries)

    def transpose(self) -> "MatrixForm":
        """Transpose taken as a new block-row matrix (rows become the old columns)."""
        rows = self.block_rows()
        return MatrixForm(tuple(tuple(r) for r in linalg.transpose(rows)), self.col_bits, self.row_bits,
                          None, GENERATOR)

    def as_list(self) -> List[List[GaussianRational]]:
        return [list(r) for r in self.entries]


def _is_pow2(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0


def matrix_form(s: SignatureTensor, t: int) -> MatrixForm:
    if not 1 <= t <= s.blocks:
        raise BadBlockIndex(f"block index {t} outside 1..{s.blocks}")
    k, n = s.letters, s.blocks
    ncols = k ** (n - 1)
    rows = [[ZERO] * ncols for _ in range(k)]
    before = k ** (t - 1)
    after = k ** (n - t)
    for idx, val in enumerate(s.entries):
        hi, rest = divmod(idx, k * after)
        a, lo = divmod(rest, after)
        rows[a][hi * after + lo] = val
    if s.role == RECOGNIZER:
        ent = tuple(zip(*rows))
    else:
        ent = tuple(tuple(r) for r in rows)
    kw = dict(role=s.role, t=t, blocks=n, letters=k)
    if s.is_standard:
        l = s.block_size
        return MatrixForm(ent, l, l * (n - 1), l * (t - 1), **kw)
    return MatrixForm(ent, **kw)


def flatten(m: MatrixForm) -> SignatureTensor:
    """Inverse of :func:`matrix_form`."""
    rows = m.block_rows()
    k = len(rows)
    n, t = m.blocks, m.t
    after = k ** (n - t)
    vals = [ZERO] * (k ** n)
    for a, row in enumerate(rows):
        for c, val in enumerate(row):
            hi, lo = divmod(c, after)
            vals[(hi * k + a) * after + lo] = val
    if m.row_bits is not None:
        return SignatureTensor(m.role, n, k, tuple(vals), m.row_bits)
    return SignatureTensor(m.role, n, k, tuple(vals))


# parity


@dataclass(frozen=True)
class ParityViolation:
    first: int
    second: int


def check_parity(s) -> object:
    """'even', 'odd', 'zero', or a ParityViolation naming two witnesses.

    Accepts a SignatureTensor or a MatrixForm; in the latter case indices
    are (row, column) pairs encoded as row * cols + column.
    """
    if isinstance(s, MatrixForm):
        rows = s.block_rows()
        ncols = len(rows[0]) if rows else 0
        items = ((r * ncols + c, weight(r) + weight(c), v) for r, row in enumerate(rows) for c, v in enumerate(row))
    else:
        items = ((i, weight(i), v) for i, v in enumerate(s.entries))
    seen = {}
    for idx, w, v in items:
        if v:
            seen.setdefault(w % 2, idx)
            if len(seen) == 2:
                return ParityViolation(seen[0], seen[1])
    if not seen:
        return "zero"
    return "even" if 0 in seen else "odd"


# matchgate identities


@dataclass(frozen=True)
class MgiInstance:
    sigma: int
    tau: int
    zeta: int
    eta: int
    row_bits: int
    col_bits: int
    split: Optional[int] = None

    def __post_init__(self):
        for v, w in ((self.sigma, self.row_bits), (self.tau, self.row_bits), (self.zeta, self.col_bits), (self.eta, self.col_bits)):
            if not 0 <= v < 2 ** w:
                raise IndexOutOfRange(f"index {v} does not fit in {w} bits")

    @property
    def p(self) -> List[int]:
        return positions(self.sigma ^ self.tau, self.row_bits)

    @property
    def q(self) -> List[int]:
        return positions(self.zeta ^ self.eta, self.col_bits)

    @property
    def d(self) -> int:
        return weight(self.sigma ^ self.tau)

    @property
    def d_prime(self) -> int:
        return weight(self.zeta ^ self.eta)

    @property
    def before_count(self) -> Optional[int]:
        """How many q's precede block t."""
        if self.split is None:
            return None
        return sum(1 for q in self.q if q <= self.split)

    @property
    def epsilon(self) -> Optional[int]:
        a = self.before_count
        if a is None or self.d % 2:
            return None
        return 1 if a % 2 else -1

    def rhs_signs(self, before: Optional[int] = None) -> List[int]:
        a = self.before_count if before is None else before
        d = self.d
        return [(-1) ** (a + j) if j <= a else (-1) ** (a + d + j) for j in range(1, self.d_prime + 1)]

    def label(self) -> Tuple[str, str, str, str]:
        r, c = self.row_bits, self.col_bits
        return bitstr(self.sigma, r), bitstr(self.tau, r), bitstr(self.zeta, c), bitstr(self.eta, c)


@dataclass(frozen=True)
class MgiResult:
    status: str  # holds | holds_up_to_sign | violated
    lhs: GaussianRational
    rhs: GaussianRational
    residual: GaussianRational = ZERO

    @property
    def ok(self) -> bool:
        return self.status != "violated"


def mgi_sides(rows, inst: MgiInstance) -> Tuple[GaussianRational, List[GaussianRational]]:
    """Left side and the unsigned right-hand products of the identity."""
    r, c = inst.row_bits, inst.col_bits
    p, q = inst.p, inst.q
    s, t, z, h = inst.sigma, inst.tau, inst.zeta, inst.eta
    e1 = e(p[0], r)
    lhs = ZERO
    for i, pi in enumerate(p):
        flip = e1 ^ e(pi, r)
        term = rows[s ^ flip][z] * rows[t ^ flip][h]
        lhs = lhs + term if i % 2 == 0 else lhs - term
    prods = [rows[s ^ e1][z ^ e(qj, c)] * rows[t ^ e1][h ^ e(qj, c)] for qj in q]
    return lhs, prods


def verify_mgi(m, inst: MgiInstance) -> MgiResult:
    rows = m.block_rows() if isinstance(m, MatrixForm) else m
    if inst.d == 0:
        raise IndexOutOfRange("sigma and tau must differ")
    lhs, prods = mgi_sides(rows, inst)
    if (inst.d + inst.d_prime) % 2 and not lhs and not any(prods):
        return MgiResult("holds", ZERO, ZERO)
    if inst.split is not None:
        rhs = _signed(prods, inst.rhs_signs())
        if lhs == rhs:
            return MgiResult("holds", lhs, rhs)
        if lhs == -rhs:
            return MgiResult("holds_up_to_sign", lhs, rhs, lhs - rhs)
        return MgiResult("violated", lhs, rhs, lhs - rhs)
    # block position unknown: accept any sign pattern the rule can produce
    rhs0 = None
    for a in range(inst.d_prime + 1):
        rhs = _signed(prods, inst.rhs_signs(a))
        rhs0 = rhs if rhs0 is None else rhs0
        if lhs == rhs or lhs == -rhs:
            return MgiResult("holds_up_to_sign", lhs, rhs)
    return MgiResult("violated", lhs, rhs0, lhs - rhs0)


def _signed(prods, signs) -> GaussianRational:
    out = ZERO
    for v, sg in zip(prods, signs):
        if v:
            out = out + v if sg > 0 else out - v
    return out


def mgi_instances(row_bits: int, col_bits: int, split: Optional[int] = None,
                  even_only: bool = False, sample: Optional[int] = None, seed: int = MGI_SEED) -> Iterator[MgiInstance]:
    """sigma < tau (so d >= 1) with every ordered column pair."""
    R, C = 2 ** row_bits, 2 ** col_bits
    pairs = [(s, t) for s in range(R) for t in range(s + 1, R) if not even_only or weight(s ^ t) % 2 == 0]
    if sample is None:
        for s, t in pairs:
            for z in range(C):
                for h in range(C):
                    yield MgiInstance(s, t, z, h, row_bits, col_bits, split)
        return
    rng = random.Random(seed)
    for _ in range(sample):
        s, t = rng.choice(pairs)
        yield MgiInstance(s, t, rng.randrange(C), rng.randrange(C), row_bits, col_bits, split)


def verify_all_mgi(m: MatrixForm, exhaustive_limit: int = MGI_EXHAUSTIVE_COL_BITS) -> Tuple[bool, Optional[MgiInstance], int]:
    """Check every identity (sampled above the limit); returns (ok, first failure, count)."""
    rows = m.block_rows()
    K, C, split = m.row_bits, m.col_bits, m.split
    if C > exhaustive_limit:
        n = 0
        for inst in mgi_instances(K, C, split, sample=MGI_SAMPLE_SIZE):
            n += 1
            if verify_mgi(rows, inst).status != "holds":
                return False, inst, n
        return True, None, n
    parity_ok = not isinstance(check_parity(m), ParityViolation)
    bad = _sweep(rows, K, C, split, skip_odd=parity_ok)
    total = (2 ** K) * (2 ** K - 1) // 2 * 4 ** C
    if bad is None:
        return True, None, total
    return False, MgiInstance(*bad, K, C, split), total


def _sweep(rows, K: int, C: int, split: Optional[int], skip_odd: bool, up_to_sign: bool = False,
           even_only: bool = False):
    """First (sigma, tau, zeta, eta) failing its identity, or None.

    With ``skip_odd`` the instances with d + d' odd are skipped: under the
    parity condition every product in them has a zero factor.
    """
    R, Cn = 2 ** K, 2 ** C
    col_units = [1 << (C - q) for q in range(1, C + 1)]
    for s in range(R):
        for t in range(s + 1, R):
            diff = s ^ t
            d = weight(diff)
            if even_only and d % 2:
                continue
            p = positions(diff, K)
            e1 = e(p[0], K)
            flips = [e1 ^ e(pi, K) for pi in p]
            rs1, rt1 = rows[s ^ e1], rows[t ^ e1]
            lrows = [(rows[s ^ f], rows[t ^ f], i % 2 == 0) for i, f in enumerate(flips)]
            for z in range(Cn):
                for h in range(Cn):
                    zh = z ^ h
                    dp = weight(zh)
                    if skip_odd and (d + dp) % 2:
                        continue
                    lhs = ZERO
                    for ra, rb, plus in lrows:
                        x = ra[z]
                        if x:
                            y = rb[h]
                            if y:
                                lhs = lhs + x * y if plus else lhs - x * y
                    rhs = ZERO
                    a = 0
                    j = 0
                    if split is not None:
                        a = weight(zh >> (C - split)) if split else 0
                    for qi in range(C):
                        if not zh >> (C - 1 - qi) & 1:
                            continue
                        j += 1
                        u = col_units[qi]
                        x = rs1[z ^ u]
                        if not x:
                            continue
                        y = rt1[h ^ u]
                        if not y:
                            continue
                        if up_to_sign:
                            sign = (-1) ** (j + 1)
                        else:
                            sign = (-1) ** (a + j) if j <= a else (-1) ** (a + d + j)
                        rhs = rhs + x * y if sign > 0 else rhs - x * y
                    if lhs != rhs and not (up_to_sign and lhs == -rhs):
                        return s, t, z, h
    return None


def is_pseudo_signature(m) -> Tuple[bool, Optional[Tuple[str, ...]]]:
    """Parity plus the even-d identities up to sign, exhaustively.

    A failed identity is certified by its (sigma, tau, zeta, eta) labels, a
    parity failure by ("parity", "row:col", "row:col").
    """
    if not isinstance(m, MatrixForm):
        m = MatrixForm.from_rows(m)
    rows = m.block_rows()
    par = check_parity(m)
    if isinstance(par, ParityViolation):
        # two nonzero entries of opposite parity, as (row, column) labels
        ncols = len(rows[0])
        (r1, c1), (r2, c2) = divmod(par.first, ncols), divmod(par.second, ncols)
        return False, ("parity", f"{bitstr(r1, m.row_bits)}:{bitstr(c1, m.col_bits)}",
                       f"{bitstr(r2, m.row_bits)}:{bitstr(c2, m.col_bits)}")
    bad = _sweep(rows, m.row_bits, m.col_bits, None, skip_odd=True, up_to_sign=True, even_only=True)
    if bad is None:
        return True, None
    r, c = m.row_bits, m.col_bits
    return False, (bitstr(bad[0], r), bitstr(bad[1], r), bitstr(bad[2], c), bitstr(bad[3], c))


# degeneracy


def is_degenerate(s: SignatureTensor) -> Tuple[bool, Optional[List[List[GaussianRational]]]]:
    for t in range(1, s.blocks + 1):
        if linalg.rank(matrix_form(s, t).block_rows()) > 1:
            return False, None
    k, n = s.letters, s.blocks
    pivot = next((i for i, v in enumerate(s.entries) if v), None)
    if pivot is None:
        return True, [[ZERO] * k for _ in range(n)]
    digits = s.block_digits(pivot)
    factors = []
    for t in range(n):
        vec = []
        for x in range(k):
            d = list(digits)
            d[t] = x
            vec.append(s.entries[s.index_of(d)])
        factors.append(vec)
    scale = s.entries[pivot] ** (n - 1)
    factors[0] = [v / scale for v in factors[0]]
    return True, factors


def tensor_product(vectors: Sequence[Sequence[GaussianRational]]) -> List[GaussianRational]:
    out = [ONE]
    for v in vectors:
        out = [a * b for a in out for b in v]
    return out


# reconstruction from edge entries


def reconstruct_from_edge_entries(corner, edge_entries: Dict[Tuple[int, int], GaussianRational],
                                  size: int, split: int = 0) -> MatrixForm:
    """Fill a 2^K x 2^K matrix from its corner at (1^K, 1^K) and edge entries.

    ``edge_entries`` maps (row, column) with weight sum 2K-1 or 2K-2 to
    values.  Remaining entries follow by downward induction on the weight
    sum, solving one base identity each time.
    """
    corner = _scalar(corner)
    if not corner:
        raise ZeroCorner("corner entry must be nonzero")
    K = size
    full = 2 ** K - 1
    N = 2 * K
    vals: Dict[Tuple[int, int], GaussianRational] = {(full, full): corner}
    for (r, c), v in edge_entries.items():
        vals[(r, c)] = _scalar(v)
    inv = corner.inverse()

    def pos_full(kind: str, p: int) -> int:
        # full-index order: columns before the block, the rows, the rest
        if kind == "c":
            return p if p <= split else p + K
        return split + p

    def get(r, c):
        if (weight(r) + weight(c)) % 2:
            return ZERO
        return vals[(r, c)]

    cells = sorted(((r, c) for r in range(2 ** K) for c in range(2 ** K)
                    if weight(r) + weight(c) < N - 2), key=lambda rc: -(weight(rc[0]) + weight(rc[1])))
    for r, c in cells:
        if (weight(r) + weight(c)) % 2:
            vals[(r, c)] = ZERO
            continue
        zr, zc = positions(full ^ r, K), positions(full ^ c, K)
        if zr:
            a_row, a_col = r ^ e(zr[0], K), c
            b_row, b_col = full ^ e(zr[0], K), full
            pivot = ("r", zr[0])
        else:
            a_row, a_col = r, c ^ e(zc[0], K)
            b_row, b_col = full, full ^ e(zc[0], K)
            pivot = ("c", zc[0])
        diff = sorted([(pos_full("r", p), "r", p) for p in zr] + [(pos_full("c", q), "c", q) for q in zc])
        total = ZERO
        target_sign = None
        for k, (_, kind, p) in enumerate(diff):
            sign = -1 if k % 2 == 0 else 1
            if (kind, p) == pivot:
                target_sign = sign
                continue
            if kind == "r":
                term = get(a_row ^ e(p, K), a_col) * get(b_row ^ e(p, K), b_col)
            else:
                term = get(a_row, a_col ^ e(p, K)) * get(b_row, b_col ^ e(p, K))
            total = total + term if sign > 0 else total - term
        # target_sign * x * corner + total = 0
        x = -total * inv
        vals[(r, c)] = x if target_sign > 0 else -x
    rows = [[get(r, c) if (r, c) in vals or (weight(r) + weight(c)) % 2 else ZERO for c in range(2 ** K)]
            for r in range(2 ** K)]
    m = MatrixForm.from_rows(rows, K, K, split)
    ok, cert = is_pseudo_signature(m)
    if not ok:
        raise InconsistentEdgeEntries(f"reconstructed matrix fails an identity at {cert}")
    return m
