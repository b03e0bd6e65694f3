import random

import pytest
from hypothesis import given, strategies as st

from holocollapse import linalg
from holocollapse.collapse import Basis, realize_generator, recognizer_on_basis
from holocollapse.crossover import crossover_gadget
from holocollapse.errors import ArityMismatch, BadBlockIndex, IndexOutOfRange, ZeroCorner
from holocollapse.graph import PlanarGraph, build_matchgate
from holocollapse.scalar import ZERO, GaussianRational, gr
from holocollapse.signature import (
    MatrixForm,
    MgiInstance,
    ParityViolation,
    SignatureTensor,
    check_parity,
    flatten,
    is_degenerate,
    is_pseudo_signature,
    matrix_form,
    reconstruct_from_edge_entries,
    standard_signature,
    tensor_product,
    verify_all_mgi,
    verify_mgi,
    weight,
)

from oracle import oracle_edges, pair, signature_by_removal

entry = st.builds(GaussianRational, st.integers(-3, 3), st.integers(-2, 2))


def diag(*vals):
    return MatrixForm.from_rows([[gr(v) if i == j else gr(0) for j in range(len(vals))] for i, v in enumerate(vals)])


def test_single_edge_signature(edge_generator):
    s = standard_signature(edge_generator, 1, 2)
    assert list(s.entries) == [7, 0, 0, 1]


def test_crossover_signature():
    s = standard_signature(crossover_gadget(), 1, 4)
    expected = {0b0000: 1, 0b0101: 1, 0b1010: 1, 0b1111: -1}
    assert list(s.entries) == [expected.get(i, 0) for i in range(16)]


def test_path_with_internal_middle():
    w1, w2 = gr(2), gr(0, 5)
    g = build_matchgate(PlanarGraph(3, [(0, 1, w1), (1, 2, w2)], [[0], [0, 1], [1]]), [], [0, 2])
    assert list(standard_signature(g, 1, 2).entries) == [0, w1, w2, 0]


def test_arity_mismatch(edge_generator):
    with pytest.raises(ArityMismatch):
        standard_signature(edge_generator, 2, 2)


def test_signature_matches_oracle(small_corpus):
    spec, gates = small_corpus
    for g in gates[:6]:
        s = standard_signature(g, spec.blocks, spec.block_size)
        ref = signature_by_removal(g.graph.vertex_count, oracle_edges(g.graph), g.externals)
        assert [pair(v) for v in s.entries] == ref


def test_matrix_form_layout():
    s = SignatureTensor.standard("generator", 2, 2, [gr(i) for i in range(16)])
    m1, m2 = matrix_form(s, 1).as_list(), matrix_form(s, 2).as_list()
    for a in range(4):
        for b in range(4):
            assert m1[a][b] == s.entries[4 * a + b]
            assert m2[a][b] == s.entries[4 * b + a]
    with pytest.raises(BadBlockIndex):
        matrix_form(s, 3)


@given(st.integers(1, 3), st.integers(1, 2), st.sampled_from(["generator", "recognizer"]), st.data())
def test_flatten_inverts_matrix_form(n, ell, role, data):
    vals = data.draw(st.lists(entry, min_size=4 ** ell if n == 2 else 2 ** (n * ell),
                              max_size=4 ** ell if n == 2 else 2 ** (n * ell)))
    s = SignatureTensor.standard(role, n, ell, vals)
    for t in range(1, n + 1):
        assert flatten(matrix_form(s, t)) == s


@given(st.integers(2, 4), st.data())
def test_flatten_inverts_domain_forms(k, data):
    vals = data.draw(st.lists(entry, min_size=k ** 2, max_size=k ** 2))
    s = SignatureTensor.domain("recognizer", 2, k, vals)
    assert matrix_form(s, 2).shape == (k, k)
    assert flatten(matrix_form(s, 2)) == s


def test_parity_examples(edge_generator, small_corpus):
    assert check_parity(standard_signature(edge_generator, 1, 2)) == "even"
    assert check_parity(SignatureTensor.standard("generator", 1, 2, [0] * 4)) == "zero"
    bad = check_parity(SignatureTensor.standard("generator", 1, 2, [1, 1, 0, 0]))
    assert isinstance(bad, ParityViolation) and {bad.first, bad.second} == {0, 1}
    spec, gates = small_corpus
    for g in gates:
        assert not isinstance(check_parity(standard_signature(g, 2, 2)), ParityViolation)


def test_mgi_on_zero_and_planted_matrix():
    zero = diag(0, 0, 0, 0)
    inst = MgiInstance(0b00, 0b11, 0b00, 0b11, 2, 2, 0)
    assert verify_mgi(zero, inst).status == "holds"
    res = verify_mgi(diag(1, 1, 1, 0), inst)
    assert res.status == "violated"
    assert res.lhs == 0 and res.rhs in (1, -1)
    with pytest.raises(IndexOutOfRange):
        MgiInstance(4, 0, 0, 0, 2, 2)


def test_corpus_satisfies_every_identity(small_corpus):
    spec, gates = small_corpus
    for g in gates:
        s = standard_signature(g, 2, 2)
        for t in (1, 2):
            ok, inst, count = verify_all_mgi(matrix_form(s, t))
            assert ok, inst.label()
            assert count == 6 * 16


def test_pseudo_signature_examples(small_corpus):
    assert is_pseudo_signature(diag(1, 1, 1, 1)) == (True, None)
    ok, cert = is_pseudo_signature(diag(1, 1, 1, 0))
    assert not ok and cert == ("00", "11", "00", "11")
    spec, gates = small_corpus
    from holocollapse.cluster import find_cluster_submatrix
    for g in gates:
        m = matrix_form(standard_signature(g, 2, 2), 1)
        r = linalg.rank(m.as_list())
        if r >= 2:
            sub = find_cluster_submatrix(m, 2)
            assert is_pseudo_signature(MatrixForm.from_rows(sub.entries))[0]
        assert is_pseudo_signature(m.transpose())[0]


def test_degeneracy():
    rng = random.Random(1)
    vecs = [[gr(rng.randint(-3, 3), rng.randint(-1, 1)) for _ in range(4)] for _ in range(2)]
    vecs[0][0] = vecs[1][0] = gr(1)
    s = SignatureTensor.standard("generator", 2, 2, tensor_product(vecs))
    ok, factors = is_degenerate(s)
    assert ok and tensor_product(factors) == list(s.entries)
    ident = SignatureTensor.standard("generator", 2, 2, [gr(1) if i in (0, 5, 10, 15) else ZERO for i in range(16)])
    assert not is_degenerate(ident)[0]
    bumped = list(s.entries)
    bumped[5] = bumped[5] + 1
    assert not is_degenerate(SignatureTensor.standard("generator", 2, 2, bumped))[0]


@given(st.integers(0, 10 ** 6))
def test_basis_relation_on_matrix_forms(seed):
    # M^{(x)n}G at block t is M G(t) (M^T)^{(x)(n-1)}, and dually for recognizers
    rng = random.Random(seed)
    n = 3
    M = [[gr(rng.randint(-2, 2)) for _ in range(2)] for _ in range(2)]
    G = SignatureTensor.domain("generator", n, 2, [gr(rng.randint(-3, 3)) for _ in range(8)])
    std = realize_generator(G, Basis(M))
    Mt = linalg.transpose(M)
    R = SignatureTensor.standard("recognizer", n, 1, [gr(rng.randint(-3, 3)) for _ in range(8)])
    dom = recognizer_on_basis(R, Basis(M))
    for t in range(1, n + 1):
        lhs = matrix_form(std, t).as_list()
        rhs = linalg.matmul(linalg.matmul(M, matrix_form(G, t).as_list()), linalg.kron_power(Mt, n - 1))
        assert lhs == rhs
        lhs = matrix_form(dom, t).as_list()
        rhs = linalg.matmul(linalg.matmul(linalg.kron_power(Mt, n - 1), matrix_form(R, t).as_list()), M)
        assert lhs == rhs


def _edge_entries(rows, K):
    top = 2 * K
    return {(r, c): rows[r][c] for r in range(2 ** K) for c in range(2 ** K)
            if top - 2 <= weight(r) + weight(c) < top and (r, c) != (2 ** K - 1, 2 ** K - 1)}


def test_reconstruct_identity_pattern():
    # the identity pairs bit i with bit i, which crosses; the exact identities
    # then force the all-zero corner to -1 and the identity is recovered up to sign
    rows = diag(1, 1, 1, 1).as_list()
    m = reconstruct_from_edge_entries(gr(1), _edge_entries(rows, 2), 2)
    assert m.as_list() == diag(-1, 1, 1, 1).as_list()
    assert verify_all_mgi(m)[0]
    assert not verify_all_mgi(diag(1, 1, 1, 1))[0]
    assert is_pseudo_signature(diag(1, 1, 1, 1))[0]


def test_reconstruct_nested_pairing():
    # bit 1 with bit 2 of the other block: planar, so reproduced exactly
    rows = [[gr(1) if c == ((r & 1) << 1 | r >> 1) else gr(0) for c in range(4)] for r in range(4)]
    m = reconstruct_from_edge_entries(gr(1), _edge_entries(rows, 2), 2)
    assert m.as_list() == rows


def test_reconstruct_corpus_signatures(small_corpus):
    spec, gates = small_corpus
    done = 0
    for g in gates:
        rows = matrix_form(standard_signature(g, 2, 2), 1).as_list()
        if not rows[3][3]:
            continue
        m = reconstruct_from_edge_entries(rows[3][3], _edge_entries(rows, 2), 2)
        assert m.as_list() == rows
        done += 1
    assert done


def test_zero_corner():
    with pytest.raises(ZeroCorner):
        reconstruct_from_edge_entries(0, {}, 2)
