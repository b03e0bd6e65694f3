"""Bases, Holants, and shrinking a basis without changing the Holant.

Domain signatures are :class:`SignatureTensor` objects whose ``letters`` is
the domain size k; standard signatures have ``letters = 2**block_size``.
A basis M (2^ell x k) links them: generators satisfy M^{(x)n} G = standard G,
recognizers satisfy (standard R) M^{(x)n} = R.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .cluster import Cluster, find_full_rank_column_cluster
from .errors import (
    BadIndices,
    ClusterNotFound,
    InconsistentSystem,
    InformationLoss,
    NoClusterFound,
    NoFullRankGenerator,
    RankDeficient,
    ShapeMismatch,
    SingularMZ,
    UnverifiedBasis,
)
from .graph import Matchgate, Matchgrid, PlanarGraph, assemble_matchgrid, build_matchgate, check_wiring
from .groupinv import InverseResult, construct_right_inverse
from .perfmatch import perfmatch_bruteforce
from .scalar import ONE, ZERO, GaussianRational
from .signature import (
    GENERATOR,
    RECOGNIZER,
    MatrixForm,
    SignatureTensor,
    matrix_form,
    standard_signature,
)

Matrix = List[List[GaussianRational]]


@dataclass(frozen=True)
class Basis:
    entries: Tuple[Tuple[GaussianRational, ...], ...]

    def __init__(self, entries):
        rows = linalg.as_matrix(entries)
        if not rows or not rows[0]:
            raise ShapeMismatch("empty basis")
        ell = len(rows).bit_length() - 1
        if 2 ** ell != len(rows) or any(len(r) != len(rows[0]) for r in rows):
            raise ShapeMismatch("a basis needs 2^ell equal-length rows")
        object.__setattr__(self, "entries", tuple(tuple(r) for r in rows))

    @property
    def ell(self) -> int:
        return len(self.entries).bit_length() - 1

    @property
    def k(self) -> int:
        return len(self.entries[0])

    @property
    def matrix(self) -> Matrix:
        return [list(r) for r in self.entries]

    def rank(self) -> int:
        return linalg.rank(self.matrix)

    @property
    def is_square(self) -> bool:
        return 2 ** self.ell == self.k

    def columns(self, indices: Sequence[int]) -> "Basis":
        return Basis([[r[i] for i in indices] for r in self.entries])

    def rows(self, indices: Sequence[int]) -> Matrix:
        return [list(self.entries[i]) for i in indices]

    @classmethod
    def identity(cls, ell: int) -> "Basis":
        return cls(linalg.identity(2 ** ell))


def contract(entries: Sequence[GaussianRational], dims: Sequence[int], mats: Sequence[Matrix]) -> List[GaussianRational]:
    """Apply ``mats[i]`` (out x in) along axis i of a row-major tensor."""
    vals = list(entries)
    dims = list(dims)
    for axis, A in enumerate(mats):
        din = dims[axis]
        if any(len(r) != din for r in A):
            raise ShapeMismatch(f"axis {axis}: matrix has {len(A[0]) if A else 0} columns, tensor has {din}")
        dout = len(A)
        before = 1
        for d in dims[:axis]:
            before *= d
        after = 1
        for d in dims[axis + 1:]:
            after *= d
        out = [ZERO] * (before * dout * after)
        nz = [[(b, a) for b, a in enumerate(row) if a] for row in A]
        for hi in range(before):
            src = hi * din * after
            dst = hi * dout * after
            for o, terms in enumerate(nz):
                base = dst + o * after
                for b, a in terms:
                    off = src + b * after
                    for lo in range(after):
                        v = vals[off + lo]
                        if v:
                            out[base + lo] = out[base + lo] + a * v
        vals = out
        dims[axis] = dout
    return vals


def _power(sig: SignatureTensor, A: Matrix, role: str, block_size: Optional[int]) -> SignatureTensor:
    vals = contract(sig.entries, [sig.letters] * sig.blocks, [A] * sig.blocks)
    return SignatureTensor(role, sig.blocks, len(A), tuple(vals), block_size)


def realize_generator(sig: SignatureTensor, M: Basis) -> SignatureTensor:
    """Standard generator signature M^{(x)n} G of a domain generator."""
    if sig.letters != M.k:
        raise ShapeMismatch(f"signature domain {sig.letters} != basis domain {M.k}")
    return _power(sig, M.matrix, GENERATOR, M.ell)


def recognizer_on_basis(sig: SignatureTensor, M: Basis) -> SignatureTensor:
    """Domain recognizer signature (standard R) M^{(x)n}."""
    if sig.letters != 2 ** M.ell:
        raise ShapeMismatch(f"signature has {sig.letters} letters, basis has {2 ** M.ell} rows")
    return _power(sig, linalg.transpose(M.matrix), RECOGNIZER, None)


def apply_basis(sig: SignatureTensor, M: Basis) -> SignatureTensor:
    """Domain generator -> standard generator, or standard recognizer -> domain recognizer."""
    if sig.role == GENERATOR:
        if sig.is_standard:
            raise ShapeMismatch("generators are mapped from domain signatures")
        return realize_generator(sig, M)
    return recognizer_on_basis(sig, M)


def generator_on_basis(sig: SignatureTensor, M: Basis) -> SignatureTensor:
    """Domain generator G with M^{(x)n} G equal to the standard ``sig``.

    Needs M of full column rank, where G is unique when it exists.
    """
    if sig.letters != 2 ** M.ell:
        raise ShapeMismatch(f"signature has {sig.letters} letters, basis has {2 ** M.ell} rows")
    if M.rank() != M.k:
        raise UnverifiedBasis("generator signatures are not determined on a basis without full column rank")
    Mt = linalg.transpose(M.matrix)
    left = linalg.matmul(linalg.inverse(linalg.matmul(Mt, M.matrix)), Mt)
    g = _power(sig, left, GENERATOR, None)
    if realize_generator(g, M).entries != sig.entries:
        raise InconsistentSystem("standard signature is not realizable on this basis")
    return g


def compose_transducer(sig: SignatureTensor, T: Matrix) -> SignatureTensor:
    """(standard R) T^{(x)n}: a recognizer with T's input count per block."""
    if len(T) != sig.letters:
        raise ShapeMismatch(f"transducer has {len(T)} output patterns, signature blocks have {sig.letters}")
    s = len(T[0]).bit_length() - 1
    if 2 ** s != len(T[0]):
        raise ShapeMismatch("transducer column count must be a power of two")
    return _power(sig, linalg.transpose(T), RECOGNIZER, s)


def sub_signature(sig: SignatureTensor, indices: Sequence[int]) -> SignatureTensor:
    """Entries whose every block letter lies in ``indices`` (0-based, in that order)."""
    idx = list(indices)
    if len(set(idx)) != len(idx) or any(not 0 <= i < sig.letters for i in idx):
        raise BadIndices(f"indices {idx} must be distinct letters in 0..{sig.letters - 1}")
    sel = [[ONE if j == i else ZERO for j in range(sig.letters)] for i in idx]
    return _power(sig, sel, sig.role, None)


# holants


@dataclass(frozen=True)
class SignatureGrid:
    """Domain-level matchgrid: wires join generator block ``gb`` of ``g`` to recognizer block ``rb`` of ``r``."""

    generators: Tuple[SignatureTensor, ...]
    recognizers: Tuple[SignatureTensor, ...]
    wires: Tuple[Tuple[int, int, int, int], ...]

    def __init__(self, generators, recognizers, wires):
        object.__setattr__(self, "generators", tuple(generators))
        object.__setattr__(self, "recognizers", tuple(recognizers))
        object.__setattr__(self, "wires", tuple(tuple(int(x) for x in w) for w in wires))
        self._check()

    def _check(self):
        seen = set()
        letters = {s.letters for s in self.generators + self.recognizers}
        if len(letters) > 1:
            raise ShapeMismatch(f"signatures disagree on the domain: {sorted(letters)}")
        for g, gb, r, rb in self.wires:
            if not (0 <= g < len(self.generators) and 0 <= gb < self.generators[g].blocks):
                raise ShapeMismatch(f"wire names missing generator block ({g}, {gb})")
            if not (0 <= r < len(self.recognizers) and 0 <= rb < self.recognizers[r].blocks):
                raise ShapeMismatch(f"wire names missing recognizer block ({r}, {rb})")
            for key in (("g", g, gb), ("r", r, rb)):
                if key in seen:
                    raise ShapeMismatch(f"block {key} lies on two wires")
                seen.add(key)
        for tag, sigs in (("g", self.generators), ("r", self.recognizers)):
            for i, s in enumerate(sigs):
                for b in range(s.blocks):
                    if (tag, i, b) not in seen:
                        raise ShapeMismatch(f"block {(tag, i, b)} is not wired")

    def replace(self, generators=None, recognizers=None) -> "SignatureGrid":
        return SignatureGrid(generators if generators is not None else self.generators,
                             recognizers if recognizers is not None else self.recognizers, self.wires)


def holant_signatures(grid: SignatureGrid) -> GaussianRational:
    """Sum over wire letters of the product of all signature entries."""
    if not grid.wires:
        out = ONE
        for s in grid.generators + grid.recognizers:
            out = out * s.entries[0]
        return out
    k = (grid.generators + grid.recognizers)[0].letters
    gen_slots = [[None] * s.blocks for s in grid.generators]
    rec_slots = [[None] * s.blocks for s in grid.recognizers]
    for w, (g, gb, r, rb) in enumerate(grid.wires):
        gen_slots[g][gb] = w
        rec_slots[r][rb] = w
    # index of every signature as a linear form in the wire letters
    def strides(slots, blocks):
        st = [0] * len(grid.wires)
        for b, w in enumerate(slots):
            st[w] += k ** (blocks - 1 - b)
        return st
    factors = [(s.entries, strides(sl, s.blocks)) for s, sl in zip(grid.generators, gen_slots)]
    factors += [(s.entries, strides(sl, s.blocks)) for s, sl in zip(grid.recognizers, rec_slots)]
    total = ZERO
    for z in itertools.product(range(k), repeat=len(grid.wires)):
        term = ONE
        for ent, st in factors:
            v = ent[sum(a * b for a, b in zip(z, st))]
            if not v:
                term = ZERO
                break
            term = term * v
        if term:
            total = total + term
    return total


def _block_wires(grid: Matchgrid, ell: int) -> List[Tuple[int, int, int, int]]:
    """Group node-level wires into ell-node block wires."""
    by_port = {(g, gp): (r, rp) for g, gp, r, rp in grid.wires}
    out = []
    for g, m in enumerate(grid.generators):
        if len(m.outputs) % ell:
            raise ShapeMismatch(f"generator {g} arity {len(m.outputs)} is not a multiple of {ell}")
        for b in range(len(m.outputs) // ell):
            targets = [by_port[(g, b * ell + j)] for j in range(ell)]
            r, rp0 = targets[0]
            if rp0 % ell or any(t != (r, rp0 + j) for j, t in enumerate(targets)):
                raise ShapeMismatch(f"generator {g} block {b} is not wired to one recognizer block in order")
            out.append((g, b, r, rp0 // ell))
    return out


def grid_signatures(grid: Matchgrid, M: Basis) -> SignatureGrid:
    """Domain signatures of every matchgate in ``grid`` under basis M."""
    check_wiring(grid)
    ell = M.ell
    wires = _block_wires(grid, ell)
    gens, recs = [], []
    for g in grid.generators:
        std = standard_signature(g, g.arity // ell, ell)
        gens.append(std if M.is_square and M.matrix == linalg.identity(M.k) else generator_on_basis(std, M))
    for r in grid.recognizers:
        if r.arity % ell:
            raise ShapeMismatch(f"recognizer arity {r.arity} is not a multiple of {ell}")
        std = standard_signature(r, r.arity // ell, ell)
        recs.append(recognizer_on_basis(std, M))
    if M.is_square and M.matrix == linalg.identity(M.k):
        gens = [SignatureTensor(GENERATOR, s.blocks, s.letters, s.entries) for s in gens]
    return SignatureGrid(gens, recs, wires)


def holant(grid: Matchgrid, M: Basis) -> GaussianRational:
    return holant_signatures(grid_signatures(grid, M))


def verify_holant_theorem(grid: Matchgrid, M: Optional[Basis] = None) -> bool:
    """Holant over M against the perfect-matching sum of the assembled grid.

    Bases that are neither square and invertible nor the identity raise
    :class:`UnverifiedBasis`: the generator side is not pinned down there.
    """
    if M is None:
        M = Basis.identity(1)
    if not M.is_square or M.rank() != M.k:
        raise UnverifiedBasis(f"{2 ** M.ell}x{M.k} basis is not square and invertible")
    return holant(grid, M) == perfmatch_bruteforce(assemble_matchgrid(grid))


# reducing the domain size


def coefficient_vectors(R: SignatureTensor) -> List[List[GaussianRational]]:
    """For each letter w, entries of R with w in one block and anything elsewhere.

    Blocks are taken in order; within a block the other letters run
    lexicographically.
    """
    k, n = R.letters, R.blocks
    vecs = []
    for w in range(k):
        v = []
        for t in range(1, n + 1):
            after = k ** (n - t)
            for rest in range(k ** (n - 1)):
                hi, lo = divmod(rest, after)
                v.append(R.entries[(hi * k + w) * after + lo])
        vecs.append(v)
    return vecs


def find_spanning_letters(R: SignatureTensor, r: int) -> Tuple[Tuple[int, ...], int]:
    """First letters (lexicographic) whose sub-signature has rank r at some block."""
    for idx in itertools.combinations(range(R.letters), r):
        sub = sub_signature(R, idx)
        for t in range(1, R.blocks + 1):
            if linalg.rank(matrix_form(sub, t).as_list()) == r:
                return idx, t
    raise RankDeficient(f"no {r} letters give a rank-{r} sub-signature")


def solve_basis_coefficients(R1: SignatureTensor, indices: Sequence[int]) -> Matrix:
    """The r x k matrix X expressing every basis column through the chosen ones."""
    idx = list(indices)
    if len(set(idx)) != len(idx) or any(not 0 <= i < R1.letters for i in idx):
        raise BadIndices(f"indices {idx} must be distinct letters in 0..{R1.letters - 1}")
    r = len(idx)
    sub = sub_signature(R1, idx)
    if not any(linalg.rank(matrix_form(sub, t).as_list()) == r for t in range(1, R1.blocks + 1)):
        raise RankDeficient(f"sub-signature on {idx} has rank below {r} at every block")
    b = coefficient_vectors(R1)
    A = linalg.transpose([b[i] for i in idx])
    X = [[ZERO] * R1.letters for _ in range(r)]
    for w in range(R1.letters):
        x = linalg.solve(A, [[v] for v in b[w]])
        if x is None:
            raise InconsistentSystem(f"letter {w} is not a combination of letters {idx}")
        for j in range(r):
            X[j][w] = x[j][0]
    return X


def complete_coefficients(X: Matrix, indices: Sequence[int]) -> Matrix:
    """Invertible k x k X' with X X' = (I_r | 0)."""
    r, k = len(X), len(X[0])
    rest = [w for w in range(k) if w not in indices]
    cols = []
    for j, i in enumerate(indices):
        cols.append([ONE if v == i else ZERO for v in range(k)])
    for w in rest:
        c = [ZERO] * k
        c[w] = ONE
        for j, i in enumerate(indices):
            c[i] = c[i] - X[j][w]
        cols.append(c)
    Xp = linalg.transpose(cols)
    target = [[ONE if (c == j) else ZERO for c in range(k)] for j in range(r)]
    if linalg.matmul(X, Xp) != target:
        raise InconsistentSystem("coefficient matrix does not fix the chosen letters")
    return Xp


@dataclass
class SubSignatureBundle:
    indices: Tuple[int, ...]
    block: int  # where the chosen letters reach rank r
    X: Matrix
    X_prime: Matrix
    recognizers: List[SignatureTensor]  # domain r
    generators: List[SignatureTensor]  # domain r
    holant_before: Optional[GaussianRational] = None
    holant_after: Optional[GaussianRational] = None

    @property
    def r(self) -> int:
        return len(self.indices)


def reduce_domain(recs: Sequence[SignatureTensor], gens: Sequence[SignatureTensor], r: int,
                  wires: Optional[Sequence[Tuple[int, int, int, int]]] = None) -> SubSignatureBundle:
    """Move signatures on domain k to domain r without changing the Holant.

    ``recs[0]`` must reach rank r at some block.  With ``wires`` the Holants
    of both signature grids are computed and compared exactly.
    """
    if not recs:
        raise RankDeficient("need at least one recognizer")
    k = recs[0].letters
    if not 1 <= r <= k:
        raise BadIndices(f"target domain {r} outside 1..{k}")
    idx, t = find_spanning_letters(recs[0], r)
    X = solve_basis_coefficients(recs[0], idx)
    Xp = complete_coefficients(X, idx)
    Xp_inv = linalg.inverse(Xp)
    keep = list(range(r))
    new_recs, new_gens = [], []
    for j, R in enumerate(recs):
        moved = _power(R, linalg.transpose(Xp), RECOGNIZER, None)
        if any(v for i, v in enumerate(moved.entries) if any(d >= r for d in moved.block_digits(i))):
            raise InformationLoss(f"recognizer {j} has weight outside the first {r} letters")
        checked = sub_signature(moved, keep)
        if checked.entries != sub_signature(R, idx).entries:
            raise InformationLoss(f"recognizer {j}: reduced signature differs from its restriction")
        new_recs.append(checked)
    for j, G in enumerate(gens):
        moved = _power(G, Xp_inv, GENERATOR, None)
        checked = sub_signature(moved, keep)
        # generators are not literal restrictions; basis-free, the reduced one is X^{(x)n} G
        if checked.entries != _power(G, X, GENERATOR, None).entries:
            raise InformationLoss(f"generator {j}: reduced signature is not its coefficient image")
        new_gens.append(checked)
    out = SubSignatureBundle(tuple(idx), t, X, Xp, new_recs, new_gens)
    if wires is not None:
        before = holant_signatures(SignatureGrid(gens, recs, wires))
        after = holant_signatures(SignatureGrid(new_gens, new_recs, wires))
        if before != after:
            raise InformationLoss(f"Holant changed from {before} to {after}")
        out.holant_before, out.holant_after = before, after
    return out


def lift_basis(M_small: Basis, X: Matrix) -> Basis:
    """Basis on the original domain: M_small X."""
    if M_small.k != len(X):
        raise ShapeMismatch(f"basis has {M_small.k} columns, coefficients have {len(X)} rows")
    return Basis(linalg.matmul(M_small.matrix, X))


def lifted_recognizer(checked: SignatureTensor, X: Matrix) -> SignatureTensor:
    """checked X^{(x)n}: the original-domain recognizer."""
    return _power(checked, linalg.transpose(X), RECOGNIZER, None)


def realizes(M: Basis, std: Sequence[SignatureTensor], dom: Sequence[SignatureTensor]) -> bool:
    """Every pair (standard, domain) is related by M exactly."""
    for s, d in zip(std, dom):
        if d.role == GENERATOR:
            if realize_generator(d, M).entries != s.entries:
                return False
        elif recognizer_on_basis(s, M).entries != d.entries:
            return False
    return True


# collapsing a 2^K domain to basis size K


@dataclass
class Bundle:
    """Signatures used together, with the basis that realizes them."""

    basis: Basis
    recognizers: List[SignatureTensor]  # standard
    generators: List[SignatureTensor]  # standard
    recognizer_domain: List[SignatureTensor]
    generator_domain: List[SignatureTensor]
    wires: Optional[List[Tuple[int, int, int, int]]] = None
    generator_gates: Optional[List[Optional[Matchgate]]] = None

    def realized(self) -> bool:
        M = self.basis
        return (realizes(M, self.recognizers, self.recognizer_domain)
                and realizes(M, self.generators, self.generator_domain))

    def domain_grid(self) -> SignatureGrid:
        return SignatureGrid(self.generator_domain, self.recognizer_domain, self.wires)

    def standard_grid(self) -> SignatureGrid:
        # with the identity basis a standard signature is its own domain signature
        gens = [SignatureTensor(GENERATOR, s.blocks, s.letters, s.entries) for s in self.generators]
        recs = [SignatureTensor(RECOGNIZER, s.blocks, s.letters, s.entries) for s in self.recognizers]
        return SignatureGrid(gens, recs, self.wires)


def restrict_blocks(sig: SignatureTensor, members: Sequence[int], keep_block: Optional[int] = None) -> SignatureTensor:
    """Restrict each block's index to ``members`` (block ``keep_block`` left whole)."""
    full = sig.letters
    sel = [[ONE if j == m else ZERO for j in range(full)] for m in members]
    eye = linalg.identity(full)
    mats = [eye if b + 1 == keep_block else sel for b in range(sig.blocks)]
    vals = contract(sig.entries, [full] * sig.blocks, mats)
    K = len(members).bit_length() - 1
    if keep_block is None:
        return SignatureTensor(sig.role, sig.blocks, len(members), tuple(vals), K)
    # mixed block sizes: keep it as a flat vector
    return SignatureTensor(sig.role, 1, len(vals), tuple(vals))


def mixed_matrix_form(vals: Sequence[GaussianRational], blocks: int, t: int, small: int, big: int) -> Matrix:
    """Rows: the big block t; columns: the small blocks in order."""
    after = small ** (blocks - t)
    cols = small ** (blocks - 1)
    rows = [[ZERO] * cols for _ in range(big)]
    for idx, v in enumerate(vals):
        hi, rest = divmod(idx, big * after)
        a, lo = divmod(rest, after)
        rows[a][hi * after + lo] = v
    return rows


def pendant_restriction(g: Matchgate, blocks: int, ell: int, cluster: Cluster) -> Matchgate:
    """Pin every block to a cluster: unit pendants where the base has a 1.

    Pendants go into the outer corner of their node, so an embedded input
    stays embedded and the new outputs are checked against the outer face.
    """
    edges = list(g.graph.edges)
    nv = g.graph.vertex_count
    rot = [list(r) for r in g.graph.rotation] if g.embedded else None
    outs = []
    base = cluster.base
    for b in range(blocks):
        for p in range(1, ell + 1):
            node = g.outputs[b * ell + p - 1]
            if base >> (ell - p) & 1:
                if rot is not None:
                    new_edge = len(edges)
                    cyc = rot[node]
                    if cyc:
                        cyc.insert(cyc.index(g.corner_of(node)) + 1, new_edge)
                    else:
                        cyc.append(new_edge)
                    rot.append([new_edge])
                edges.append((node, nv, ONE))
                nv += 1
        outs += [g.outputs[b * ell + p - 1] for p in cluster.positions]
    return build_matchgate(PlanarGraph(nv, edges, rot), [], outs)


@dataclass
class CollapseResult:
    bundle: Bundle  # on the new basis
    cluster: Cluster
    t: int
    transducer: Matrix  # T = M (M^Z)^-1, rows 2^ell, columns 2^K
    inverse: InverseResult
    checks: Dict[str, bool] = field(default_factory=dict)
    holant_before: Optional[GaussianRational] = None
    holant_after: Optional[GaussianRational] = None


def collapse_power_of_two(bundle: Bundle, full_rank: int = 0) -> CollapseResult:
    """Re-realize every signature on a 2^K x 2^K basis.

    ``full_rank`` names the generator whose domain matrix form has rank 2^K.
    """
    M = bundle.basis
    k = M.k
    K = k.bit_length() - 1
    if 2 ** K != k:
        raise ShapeMismatch(f"domain size {k} is not a power of two")
    if not bundle.realized():
        raise ShapeMismatch("bundle signatures are not realized on its basis")
    gens = bundle.generators
    if not 0 <= full_rank < len(gens):
        raise NoFullRankGenerator("no generator at that index")
    G = bundle.generator_domain[full_rank]
    Gs = gens[full_rank]
    if linalg.rank(matrix_form(G, 1).as_list()) != k:
        raise NoFullRankGenerator(f"generator {full_rank} is not of full rank")
    if M.rank() != k:
        raise SingularMZ("basis does not have full column rank")
    ell = M.ell
    cluster, t = None, None
    for tt in range(1, Gs.blocks + 1):
        rows = matrix_form(Gs, tt).as_list()
        try:
            cluster = find_full_rank_column_cluster(linalg.transpose(rows), k)
            t = tt
            break
        except NoClusterFound:
            continue
    if cluster is None:
        raise ClusterNotFound("no full-rank row cluster in any matrix form")
    members = cluster.members()
    MZ = M.rows(members)
    if linalg.det(MZ) == ZERO:
        raise SingularMZ("rows of the basis on the cluster are singular")
    T = linalg.matmul(M.matrix, linalg.inverse(MZ))
    checks: Dict[str, bool] = {}
    MZb = Basis(MZ)

    # the restricted generator and its half-restricted sibling
    star = restrict_blocks(Gs, members)
    checks["restriction_equals_basis_rows"] = star.entries == realize_generator(G, MZb).entries
    half = restrict_blocks(Gs, members, keep_block=t)
    half_form = mixed_matrix_form(half.entries, Gs.blocks, t, k, 2 ** ell)
    star_form = matrix_form(star, t).as_list()
    checks["transducer_relation"] = half_form == linalg.matmul(T, star_form)
    inv = construct_right_inverse(matrix_form(star, t), K, t)
    checks["transducer_factorization"] = linalg.matmul(half_form, inv.recognizer) == T
    if bundle.generator_gates and bundle.generator_gates[full_rank] is not None:
        pinned = pendant_restriction(bundle.generator_gates[full_rank], Gs.blocks, ell, cluster)
        checks["pendant_certificate"] = standard_signature(pinned, Gs.blocks, K).entries == star.entries

    new_recs = [compose_transducer(R, T) for R in bundle.recognizers]
    new_gens = [restrict_blocks(g, members) for g in gens]
    out = Bundle(MZb, new_recs, new_gens, list(bundle.recognizer_domain), list(bundle.generator_domain),
                 bundle.wires, None)
    checks["reproduces_signatures"] = out.realized()
    res = CollapseResult(out, cluster, t, T, inv, checks)
    if bundle.wires is not None:
        before = holant_signatures(bundle.domain_grid())
        res.holant_before = before
        res.holant_after = holant_signatures(out.standard_grid())
        checks["holant_old_standard"] = holant_signatures(bundle.standard_grid()) == before
        checks["holant_invariant"] = res.holant_after == before
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        raise InconsistentSystem(f"collapse checks failed: {failed}")
    return res
