"""Exterior-square checks on signature columns.

Everything here is a verifier: each function evaluates a consequence of the
matchgate identities on a concrete matrix and reports whether it held.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .errors import DimensionMismatch, PreconditionUnmet, RelationNotNull
from .signature import MatrixForm, bitstr, e, positions, weight
from .scalar import ZERO, GaussianRational


@dataclass(frozen=True)
class WedgeCoefficients:
    dimension: int
    coeffs: Dict[Tuple[int, int], GaussianRational]

    def is_zero(self) -> bool:
        return not any(self.coeffs.values())

    def vector(self) -> List[GaussianRational]:
        return [self.coeffs[k] for k in sorted(self.coeffs)]

    def __add__(self, other: "WedgeCoefficients") -> "WedgeCoefficients":
        return WedgeCoefficients(self.dimension, {k: v + other.coeffs[k] for k, v in self.coeffs.items()})

    def scale(self, a) -> "WedgeCoefficients":
        return WedgeCoefficients(self.dimension, {k: v * a for k, v in self.coeffs.items()})


def wedge(u: Sequence, v: Sequence) -> WedgeCoefficients:
    if len(u) != len(v):
        raise DimensionMismatch(f"vectors of length {len(u)} and {len(v)}")
    n = len(u)
    return WedgeCoefficients(n, {(s, t): u[s] * v[t] - u[t] * v[s] for s in range(n) for t in range(s + 1, n)})


def _zero_wedge(n: int) -> WedgeCoefficients:
    return WedgeCoefficients(n, {(s, t): ZERO for s in range(n) for t in range(s + 1, n)})


def _columns(m) -> List[List[GaussianRational]]:
    rows = m.block_rows() if isinstance(m, MatrixForm) else m
    return linalg.transpose(rows)


def _epsilon(zeta: int, eta: int, col_bits: int, split: Optional[int]) -> int:
    if not split:
        before = 0
    else:
        before = weight((zeta ^ eta) >> (col_bits - split))
    return 1 if before % 2 else -1


def transferred_relation(m: MatrixForm, relation: Sequence[Tuple]) -> WedgeCoefficients:
    """Sum over the relation of eps * a * sum_i (-1)^(i+1) (col z^e_i) wedge (col h^e_i)."""
    cols = _columns(m)
    C = m.col_bits
    total = _zero_wedge(len(cols[0]))
    for a, z, h in relation:
        if not a:
            continue
        eps = _epsilon(z, h, C, m.split)
        for i, p in enumerate(positions(z ^ h, C)):
            u = e(p, C)
            w = wedge(cols[z ^ u], cols[h ^ u])
            total = total + w.scale(a * eps if i % 2 == 0 else -(a * eps))
    return total


def relation_value(m: MatrixForm, relation: Sequence[Tuple]) -> WedgeCoefficients:
    cols = _columns(m)
    total = _zero_wedge(len(cols[0]))
    for a, z, h in relation:
        if a:
            total = total + wedge(cols[z], cols[h]).scale(a)
    return total


def check_wedge_transfer(m: MatrixForm, relation: Sequence[Tuple]) -> bool:
    """Relation among column wedges of one parity => the transferred relation.

    ``relation`` is a list of (a, zeta, eta) with zeta xor eta of even weight.
    """
    for _, z, h in relation:
        if weight(z ^ h) % 2:
            raise PreconditionUnmet(f"columns {z} and {h} differ in an odd number of places")
    if not relation_value(m, relation).is_zero():
        raise RelationNotNull("the supplied wedge relation does not vanish")
    return transferred_relation(m, relation).is_zero()


def null_relations(m: MatrixForm, parity: int = 0, limit: int = 8) -> List[List[Tuple]]:
    """Exact kernel vectors of the wedge map on same-parity column pairs."""
    cols = _columns(m)
    C = m.col_bits
    pairs = [(z, h) for z, h in combinations(range(2 ** C), 2) if weight(z) % 2 == parity and weight(h) % 2 == parity]
    if not pairs:
        return []
    mat = linalg.transpose([wedge(cols[z], cols[h]).vector() for z, h in pairs])
    basis = linalg.nullspace(mat)
    out = []
    for vec in basis[:limit]:
        out.append([(a, z, h) for a, (z, h) in zip(vec, pairs) if a])
    return out


def dependent(u: Sequence, v: Sequence) -> Tuple[bool, Optional[Tuple[int, int]]]:
    """Are two vectors linearly dependent?  Otherwise a nonzero 2x2 minor."""
    for (s, t), val in wedge(u, v).coeffs.items():
        if val:
            return False, (s, t)
    return True, None


def check_lindep_propagation(m: MatrixForm, zeta: int, eta: int) -> Tuple[bool, Optional[Tuple[int, int]]]:
    """Dependent neighbour pairs force dependent columns zeta, eta."""
    C = m.col_bits
    if weight(zeta ^ eta) % 2:
        raise PreconditionUnmet("zeta xor eta must have even weight")
    cols = _columns(m)
    for p in positions(zeta ^ eta, C):
        u = e(p, C)
        if not dependent(cols[zeta ^ u], cols[eta ^ u])[0]:
            raise PreconditionUnmet(f"neighbour pair at position {p} is independent")
    ok, minor = dependent(cols[zeta], cols[eta])
    return ok, minor


def check_lindep_omission(m: MatrixForm, zeta: int, eta: int, omit: int) -> Tuple[bool, Optional[Tuple[int, int]]]:
    """All neighbour pairs but one dependent, plus zeta, eta dependent => that one too.

    ``omit`` is the 1-based index into the differing positions.
    """
    C = m.col_bits
    if weight(zeta ^ eta) % 2:
        raise PreconditionUnmet("zeta xor eta must have even weight")
    ps = positions(zeta ^ eta, C)
    if not 1 <= omit <= len(ps):
        raise PreconditionUnmet(f"omitted index {omit} outside 1..{len(ps)}")
    cols = _columns(m)
    for j, p in enumerate(ps, 1):
        if j == omit:
            continue
        u = e(p, C)
        if not dependent(cols[zeta ^ u], cols[eta ^ u])[0]:
            raise PreconditionUnmet(f"neighbour pair at position {p} is independent")
    if not dependent(cols[zeta], cols[eta])[0]:
        raise PreconditionUnmet("columns zeta and eta are independent")
    u = e(ps[omit - 1], C)
    return dependent(cols[zeta ^ u], cols[eta ^ u])


def span_exclusion_support(C: int, zeta0: int, eta: int, others: Sequence[int]) -> List[int]:
    """Neighbour columns whose independence forbids zeta0 in span(others)."""
    seen: List[int] = []
    for z in [zeta0, *others]:
        for p in positions(z ^ eta, C):
            u = e(p, C)
            for s in (eta ^ u, z ^ u):
                if s not in seen:
                    seen.append(s)
    return seen


def check_span_exclusion(m: MatrixForm, zeta0: int, eta: int, others: Sequence[int],
                         dropped: Optional[int] = None) -> bool:
    """Column zeta0 lies outside the span of the columns in ``others``.

    ``dropped`` (1-based, only when zeta0 and eta differ in at least four
    places) removes zeta0 xor e_p from the set whose independence is required.
    """
    C = m.col_bits
    if zeta0 == eta:
        raise PreconditionUnmet("zeta0 must differ from eta")
    if len(set(others)) != len(others) or zeta0 in others:
        raise PreconditionUnmet("indices must be distinct and exclude zeta0")
    if len({weight(z) % 2 for z in others}) > 1:
        raise PreconditionUnmet("indices in T must share a parity")
    support = span_exclusion_support(C, zeta0, eta, others)
    if dropped is not None:
        ps = positions(zeta0 ^ eta, C)
        if len(ps) < 4 or not 1 <= dropped <= len(ps):
            raise PreconditionUnmet("dropping a column needs zeta0 and eta to differ in at least four places")
        support = [s for s in support if s != zeta0 ^ e(ps[dropped - 1], C)]
    cols = _columns(m)
    if linalg.rank([cols[s] for s in support]) != len(support):
        raise PreconditionUnmet("the neighbour columns are not linearly independent")
    base = [cols[z] for z in others]
    r0 = linalg.rank(base) if base else 0
    return linalg.rank(base + [cols[zeta0]]) == r0 + 1


def determinant_pair(m: MatrixForm, sigma: int, tau: int, zeta: int, eta: int) -> Tuple[GaussianRational, GaussianRational]:
    """The two 2x2 determinants related when rows and columns each differ in two places."""
    rows = m.block_rows()
    K, C = m.row_bits, m.col_bits
    ps, qs = positions(sigma ^ tau, K), positions(zeta ^ eta, C)
    if len(ps) != 2 or len(qs) != 2:
        raise PreconditionUnmet("rows and columns must each differ in exactly two places")
    left = rows[sigma][zeta] * rows[tau][eta] - rows[sigma][eta] * rows[tau][zeta]
    r1, r2 = sigma ^ e(ps[0], K), sigma ^ e(ps[1], K)
    c1, c2 = zeta ^ e(qs[0], C), zeta ^ e(qs[1], C)
    right = rows[r1][c1] * rows[r2][c2] - rows[r1][c2] * rows[r2][c1]
    return left, right
