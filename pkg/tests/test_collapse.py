import random

import pytest
from hypothesis import given, strategies as st

from holocollapse import linalg
from holocollapse.collapse import (
    Basis,
    SignatureGrid,
    apply_basis,
    collapse_power_of_two,
    complete_coefficients,
    compose_transducer,
    contract,
    generator_on_basis,
    holant,
    holant_signatures,
    lift_basis,
    lifted_recognizer,
    realize_generator,
    realizes,
    recognizer_on_basis,
    reduce_domain,
    solve_basis_coefficients,
    sub_signature,
    verify_holant_theorem,
)
from holocollapse.corpus import DEFAULT_WEIGHTS, random_matchgate
from holocollapse.errors import (
    BadIndices,
    InformationLoss,
    NoFullRankGenerator,
    ShapeMismatch,
    UnverifiedBasis,
)
from holocollapse.graph import Matchgrid, assemble_matchgrid, glue
from holocollapse.perfmatch import perfmatch_bruteforce
from holocollapse.scalar import ONE, ZERO, GaussianRational, gr
from holocollapse.signature import SignatureTensor, matrix_form, standard_signature, transducer_signature
from holocollapse.synthetic import (
    collapse_instance,
    domain_reduction_instance,
    edge_pair_grid,
    random_matchgrid,
    unrealizable_variant,
)


def rand_matrix(rng, r, c, lo=-3, hi=3):
    return [[gr(rng.randint(lo, hi), rng.randint(-1, 1)) for _ in range(c)] for _ in range(r)]


def test_identity_basis_changes_nothing():
    rng = random.Random(0)
    G = SignatureTensor.domain("generator", 3, 4, [gr(rng.randint(-5, 5)) for _ in range(64)])
    assert apply_basis(G, Basis.identity(2)).entries == G.entries
    R = SignatureTensor.standard("recognizer", 2, 2, [gr(rng.randint(-5, 5)) for _ in range(16)])
    assert apply_basis(R, Basis.identity(2)).entries == R.entries


def test_single_block_is_matrix_vector():
    rng = random.Random(1)
    M = rand_matrix(rng, 4, 3)
    g = [gr(rng.randint(-4, 4)) for _ in range(3)]
    G = SignatureTensor.domain("generator", 1, 3, g)
    assert list(apply_basis(G, Basis(M)).entries) == linalg.matvec(M, g)
    r = [gr(rng.randint(-4, 4)) for _ in range(4)]
    R = SignatureTensor.standard("recognizer", 1, 2, r)
    assert list(apply_basis(R, Basis(M)).entries) == linalg.matvec(linalg.transpose(M), r)


def test_basis_shape_errors():
    with pytest.raises(ShapeMismatch):
        Basis([[gr(1)], [gr(2)], [gr(3)]])
    G = SignatureTensor.domain("generator", 2, 3, [gr(1)] * 9)
    with pytest.raises(ShapeMismatch):
        apply_basis(G, Basis.identity(1))


@given(st.integers(0, 10 ** 6))
def test_contract_matches_kron(seed):
    rng = random.Random(seed)
    A, B = rand_matrix(rng, 2, 3), rand_matrix(rng, 3, 2)
    v = [gr(rng.randint(-3, 3)) for _ in range(6)]
    assert contract(v, [3, 2], [A, B]) == linalg.matvec(linalg.kron(A, B), v)


def test_generator_on_square_basis_round_trips():
    rng = random.Random(3)
    while True:
        M = Basis(rand_matrix(rng, 2, 2))
        if M.rank() == 2:
            break
    G = SignatureTensor.domain("generator", 2, 2, [gr(rng.randint(-3, 3)) for _ in range(4)])
    std = realize_generator(G, M)
    assert generator_on_basis(std, M).entries == G.entries
    with pytest.raises(UnverifiedBasis):
        generator_on_basis(std, Basis([[gr(1), gr(1)], [gr(2), gr(2)]]))


def test_compose_transducer_algebra():
    rng = random.Random(4)
    R = SignatureTensor.standard("recognizer", 2, 1, [gr(rng.randint(-3, 3)) for _ in range(4)])
    assert compose_transducer(R, linalg.identity(2)).entries == R.entries
    R1 = SignatureTensor.standard("recognizer", 1, 2, [gr(v) for v in (1, 2, 3, 4)])
    swap = [[ONE if x == y ^ 0b10 else ZERO for x in range(4)] for y in range(4)]
    assert list(compose_transducer(R1, swap).entries) == [gr(v) for v in (3, 4, 1, 2)]
    with pytest.raises(ShapeMismatch):
        compose_transducer(R1, linalg.identity(2))


@pytest.mark.parametrize("seed", range(4))
def test_compose_transducer_matches_glued_matchgate(seed):
    rng = random.Random(seed)
    n, ell, s = 2, 2, 1
    rec = random_matchgate(rng, n * ell, n * ell, 8, DEFAULT_WEIGHTS)
    tr = random_matchgate(rng, s + ell, s, 6, DEFAULT_WEIGHTS)
    T = transducer_signature(tr)
    parts = [rec] + [tr] * n
    wires = [((1 + b, tr.outputs[j]), (0, rec.inputs[b * ell + j])) for b in range(n) for j in range(ell)]
    ins = [(1 + b, v) for b in range(n) for v in tr.inputs]
    glued, _ = glue(parts, wires, inputs=ins)
    direct = standard_signature(glued, n, s)
    assert direct.entries == compose_transducer(standard_signature(rec, n, ell), T).entries


def test_sub_signature_cases():
    rng = random.Random(5)
    R = SignatureTensor.domain("recognizer", 2, 3, [gr(rng.randint(-3, 3)) for _ in range(9)])
    assert sub_signature(R, [0, 1, 2]).entries == R.entries
    v = SignatureTensor.domain("recognizer", 1, 3, [gr(7), gr(8), gr(9)])
    assert list(sub_signature(v, [2, 0]).entries) == [gr(9), gr(7)]
    with pytest.raises(BadIndices):
        sub_signature(R, [1, 1])


@given(st.integers(0, 10 ** 6))
def test_sub_signature_is_basis_restriction(seed):
    rng = random.Random(seed)
    M = Basis(rand_matrix(rng, 4, 3))
    std = SignatureTensor.standard("recognizer", 2, 2, [gr(rng.randint(-3, 3)) for _ in range(16)])
    idx = rng.sample(range(3), 2)
    lhs = sub_signature(recognizer_on_basis(std, M), idx)
    assert lhs.entries == recognizer_on_basis(std, M.columns(idx)).entries


def test_solve_basis_coefficients():
    inst = domain_reduction_instance(0)
    sub = reduce_domain(inst.recognizers, inst.generators, 2)
    X = solve_basis_coefficients(inst.recognizers[0], sub.indices)
    M = inst.basis
    assert linalg.matmul(M.columns(sub.indices).matrix, X) == M.matrix
    with pytest.raises(BadIndices):
        solve_basis_coefficients(inst.recognizers[0], [0, 0])
    R = SignatureTensor.domain("recognizer", 2, 2, [gr(1), gr(0), gr(0), gr(1)])
    assert solve_basis_coefficients(R, [0, 1]) == linalg.identity(2)


def test_complete_coefficients():
    X = [[gr(1), gr(0), gr(2)], [gr(0), gr(1), gr(-1)]]
    Xp = complete_coefficients(X, [0, 1])
    assert linalg.matmul(X, Xp) == [[gr(1), gr(0), gr(0)], [gr(0), gr(1), gr(0)]]
    assert linalg.det(Xp) != 0


@pytest.mark.parametrize("seed", range(3))
def test_reduce_domain_preserves_holant_and_lifts(seed):
    inst = domain_reduction_instance(seed, ell=1 + seed % 2)
    sub = reduce_domain(inst.recognizers, inst.generators, 2, inst.wires)
    assert sub.holant_before == sub.holant_after
    lifted = lift_basis(inst.basis.columns(sub.indices), sub.X)
    assert lifted == inst.basis
    for c, R in zip(sub.recognizers, inst.recognizers):
        assert lifted_recognizer(c, sub.X).entries == R.entries
    assert realizes(lifted, inst.recognizers_std + inst.generators_std, inst.recognizers + inst.generators)
    small = inst.basis.columns(sub.indices)
    assert realizes(small, inst.recognizers_std, sub.recognizers)
    assert realizes(small, inst.generators_std, sub.generators)


def test_reduce_domain_full_rank_is_identity():
    inst = domain_reduction_instance(1, k=2)
    sub = reduce_domain(inst.recognizers, inst.generators, 2, inst.wires)
    assert sub.X == linalg.identity(2) and sub.indices == (0, 1)
    assert [s.entries for s in sub.recognizers] == [s.entries for s in inst.recognizers]
    assert sub.holant_before == sub.holant_after


def test_reduce_domain_detects_unrealizable():
    inst = unrealizable_variant(domain_reduction_instance(0))
    with pytest.raises(InformationLoss):
        reduce_domain(inst.recognizers, inst.generators, 2, inst.wires)


def test_lift_basis_cases():
    small = Basis([[gr(1), gr(2)], [gr(3), gr(4)]])
    X = [[gr(1), gr(0), gr(0)], [gr(0), gr(1), gr(0)]]
    assert lift_basis(small, X).matrix == [[gr(1), gr(2), gr(0)], [gr(3), gr(4), gr(0)]]
    with pytest.raises(ShapeMismatch):
        lift_basis(small, [[gr(1), gr(0)]])


def test_edge_pair_holant():
    w, v = gr(3, 1), gr(-2)
    grid = edge_pair_grid(w, v)
    assert holant(grid, Basis.identity(1)) == w * v + 1
    assert perfmatch_bruteforce(assemble_matchgrid(grid)) == w * v + 1
    assert verify_holant_theorem(grid)


def test_empty_grid():
    grid = Matchgrid([], [], [])
    assert holant(grid, Basis.identity(1)) == 1
    assert verify_holant_theorem(grid)


def test_holant_is_sum_of_products():
    # brute sum over wire assignments, written out independently
    rng = random.Random(8)
    grid = random_matchgrid(rng, max_vertices=14, max_wires=4)
    gsig = [standard_signature(g, len(g.outputs), 1).entries for g in grid.generators]
    rsig = [standard_signature(r, len(r.inputs), 1).entries for r in grid.recognizers]
    total = gr(0)
    for bits in range(2 ** len(grid.wires)):
        gi = [[0] * len(g.outputs) for g in grid.generators]
        ri = [[0] * len(r.inputs) for r in grid.recognizers]
        for w, (g, gp, r, rp) in enumerate(grid.wires):
            b = bits >> w & 1
            gi[g][gp] = ri[r][rp] = b
        term = gr(1)
        for sig, idx in zip(gsig + rsig, gi + ri):
            term = term * sig[int("".join(map(str, idx)) or "0", 2)]
        total = total + term
    assert holant(grid, Basis.identity(1)) == total


def test_square_basis_holant():
    rng = random.Random(10)
    while True:
        M = Basis(rand_matrix(rng, 2, 2))
        if M.rank() == 2:
            break
    for _ in range(5):
        grid = random_matchgrid(rng, max_vertices=14)
        assert verify_holant_theorem(grid, M)
    with pytest.raises(UnverifiedBasis):
        verify_holant_theorem(grid, Basis([[gr(1), gr(0), gr(1)], [gr(0), gr(1), gr(1)]]))


@pytest.mark.parametrize("K,ell,seed", [(1, 1, 0), (1, 2, 1), (2, 2, 2), (2, 3, 0), (2, 3, 3)])
def test_collapse_power_of_two(K, ell, seed):
    b = collapse_instance(seed, K=K, ell=ell)
    res = collapse_power_of_two(b)
    assert res.bundle.basis.ell == K and res.bundle.basis.k == 2 ** K
    assert all(res.checks.values())
    assert res.checks["transducer_relation"] and res.checks["reproduces_signatures"]
    assert res.holant_before == res.holant_after
    assert linalg.matmul(res.transducer, res.bundle.basis.matrix) == b.basis.matrix


def test_collapse_errors():
    b = collapse_instance(0, K=1, ell=2)
    with pytest.raises(NoFullRankGenerator):
        collapse_power_of_two(b, full_rank=5)
    flat = SignatureTensor.domain("generator", 2, 2, [gr(1)] * 4)
    b.generator_domain[1] = flat
    b.generators[1] = realize_generator(flat, b.basis)
    with pytest.raises(NoFullRankGenerator):
        collapse_power_of_two(b, full_rank=1)
