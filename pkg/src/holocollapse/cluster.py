"""Clusters of bitstrings, rank rigidity, and full-rank cluster search."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from . import linalg
from .errors import NoClusterFound, NotApplicable
from .signature import MatrixForm, bitstr, e, is_pseudo_signature, positions
from .scalar import GaussianRational


@dataclass(frozen=True)
class Cluster:
    width: int
    base: int
    positions: Tuple[int, ...]

    def __post_init__(self):
        mask = sum(e(p, self.width) for p in self.positions)
        object.__setattr__(self, "base", self.base & ~mask)
        object.__setattr__(self, "positions", tuple(sorted(self.positions)))

    @property
    def dimension(self) -> int:
        return len(self.positions)

    def member(self, u: int) -> int:
        """Member for the J-indicator ``u``; its first bit picks the first position."""
        m = self.dimension
        x = self.base
        for i, p in enumerate(self.positions):
            if u >> (m - 1 - i) & 1:
                x ^= e(p, self.width)
        return x

    def members(self) -> List[int]:
        return [self.member(u) for u in range(2 ** self.dimension)]

    def to_json(self) -> dict:
        return {"base": bitstr(self.base, self.width), "positions": list(self.positions)}


def recognize_cluster(strings: Iterable[Union[str, int]], width: Optional[int] = None) -> Optional[Cluster]:
    """The cluster with exactly these members, or None."""
    items = list(strings)
    if not items:
        return None
    if isinstance(items[0], str):
        width = len(items[0])
        vals = {int(s, 2) if s else 0 for s in items}
    else:
        vals = set(items)
    if width is None:
        raise ValueError("width is required for integer members")
    size = len(vals)
    if size & (size - 1):
        return None
    first = min(vals)
    diff = 0
    for v in vals:
        diff |= v ^ first
    c = Cluster(width, first, tuple(positions(diff, width)))
    if 2 ** c.dimension != size or set(c.members()) != vals:
        return None
    return c


def rank_exact(m) -> int:
    rows = m.block_rows() if isinstance(m, MatrixForm) else m
    return linalg.rank(rows)


@dataclass(frozen=True)
class RigidityResult:
    ok: bool
    rank: int


def verify_rank_rigidity(m: MatrixForm) -> RigidityResult:
    pseudo, cert = is_pseudo_signature(m)
    if not pseudo:
        raise NotApplicable("matrix is not a pseudo-signature", cert)
    r = rank_exact(m)
    return RigidityResult(r & (r - 1) == 0, r)


def cluster_dimension(k: int) -> int:
    return max(0, (k - 1).bit_length())


def _columns_of(rows) -> List[List[GaussianRational]]:
    return linalg.transpose(rows)


def find_full_rank_column_cluster(m, k: int) -> Cluster:
    """First column cluster of dimension ceil(log2 k) with full column rank.

    Positions run in lexicographic order on the outside, bases ascending
    inside, so the result is reproducible.
    """
    rows = m.block_rows() if isinstance(m, MatrixForm) else [list(r) for r in m]
    ncols = len(rows[0]) if rows else 0
    C = ncols.bit_length() - 1
    kappa = cluster_dimension(k)
    if kappa > C or 2 ** kappa > len(rows):
        raise NoClusterFound(f"no {kappa}-cluster fits a {len(rows)}x{ncols} matrix")
    cols = _columns_of(rows)
    for pos in combinations(range(1, C + 1), kappa):
        mask = sum(e(p, C) for p in pos)
        for base in range(2 ** C):
            if base & mask:
                continue
            c = Cluster(C, base, pos)
            if linalg.rank([cols[z] for z in c.members()]) == 2 ** kappa:
                return c
    raise NoClusterFound(f"no full-rank {kappa}-cluster of columns")


@dataclass(frozen=True)
class ClusterSubmatrix:
    row_cluster: Cluster
    col_cluster: Cluster
    entries: Tuple[Tuple[GaussianRational, ...], ...]

    def determinant(self) -> GaussianRational:
        return linalg.det(self.entries)


def restrict(rows, row_members: Sequence[int], col_members: Sequence[int]):
    return tuple(tuple(rows[r][c] for c in col_members) for r in row_members)


def find_cluster_submatrix(m, k: int) -> ClusterSubmatrix:
    rows = m.block_rows() if isinstance(m, MatrixForm) else [list(r) for r in m]
    col = find_full_rank_column_cluster(rows, k)
    narrow = [[r[c] for c in col.members()] for r in rows]
    row = find_full_rank_column_cluster(linalg.transpose(narrow), 2 ** col.dimension)
    return ClusterSubmatrix(row, col, restrict(rows, row.members(), col.members()))
