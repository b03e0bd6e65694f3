import random
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from holocollapse import linalg
from holocollapse.errors import DimensionMismatch, PreconditionUnmet, RelationNotNull
from holocollapse.multilinear import (
    check_lindep_omission,
    check_lindep_propagation,
    check_span_exclusion,
    check_wedge_transfer,
    dependent,
    determinant_pair,
    null_relations,
    wedge,
)
from holocollapse.scalar import GaussianRational, gr
from holocollapse.signature import MatrixForm, matrix_form, positions, standard_signature, weight

entry = st.builds(GaussianRational, st.integers(-3, 3), st.integers(-2, 2))
vec4 = st.lists(entry, min_size=4, max_size=4)


def forms(gates):
    for g in gates:
        s = standard_signature(g, 2, 2)
        for t in (1, 2):
            yield matrix_form(s, t)


def identity4():
    return MatrixForm.from_rows(linalg.identity(4), 2, 2, 0)


def test_wedge_examples():
    w = wedge([gr(1), gr(0), gr(0)], [gr(0), gr(1), gr(0)])
    assert w.coeffs == {(0, 1): 1, (0, 2): 0, (1, 2): 0}
    u = [gr(1), gr(2), gr(0, 1)]
    assert wedge(u, [x * gr(3, 1) for x in u]).is_zero()
    with pytest.raises(DimensionMismatch):
        wedge([gr(1)], [gr(1), gr(2)])


@given(vec4, vec4)
def test_wedge_antisymmetric(u, v):
    assert wedge(u, v).vector() == [-x for x in wedge(v, u).vector()]


@given(st.integers(2, 4), st.integers(0, 10 ** 6))
def test_wedges_of_independent_vectors_are_independent(n, seed):
    rng = random.Random(seed)
    vs = [[gr(rng.randint(-4, 4), rng.randint(-1, 1)) for _ in range(5)] for _ in range(n)]
    if linalg.rank(vs) < n:
        return
    ws = [wedge(vs[i], vs[j]).vector() for i, j in combinations(range(n), 2)]
    assert linalg.rank(ws) == len(ws)


def test_wedge_transfer(small_corpus):
    _, gates = small_corpus
    m0 = next(forms(gates))
    assert check_wedge_transfer(m0, [(gr(0), 0, 3)])
    checked = 0
    for m in forms(gates):
        for parity in (0, 1):
            for rel in null_relations(m, parity):
                assert check_wedge_transfer(m, rel)
                checked += 1
    assert checked
    with pytest.raises(RelationNotNull):
        check_wedge_transfer(identity4(), [(gr(1), 0, 3)])
    with pytest.raises(PreconditionUnmet):
        check_wedge_transfer(identity4(), [(gr(1), 0, 1)])


def test_lindep_propagation(small_corpus):
    _, gates = small_corpus
    m = identity4()
    assert check_lindep_propagation(m, 2, 2) == (True, None)
    with pytest.raises(PreconditionUnmet):
        check_lindep_propagation(m, 0, 3)
    checked = 0
    for m in forms(gates):
        for z in range(4):
            for h in range(4):
                if weight(z ^ h) % 2:
                    continue
                try:
                    ok, _ = check_lindep_propagation(m, z, h)
                except PreconditionUnmet:
                    continue
                assert ok
                checked += 1
    assert checked


def test_lindep_omission(small_corpus):
    _, gates = small_corpus
    checked = 0
    for m in forms(gates):
        for z in range(4):
            for h in range(4):
                if z == h or weight(z ^ h) % 2:
                    continue
                for omit in (1, 2):
                    try:
                        ok, _ = check_lindep_omission(m, z, h, omit)
                    except PreconditionUnmet:
                        continue
                    assert ok
                    checked += 1
    assert checked
    with pytest.raises(PreconditionUnmet):
        check_lindep_omission(identity4(), 0, 3, 5)


def test_span_exclusion(small_corpus):
    _, gates = small_corpus
    assert check_span_exclusion(identity4(), 0, 3, [])
    zero = MatrixForm.from_rows([[gr(0)] * 4 for _ in range(4)], 2, 2, 0)
    with pytest.raises(PreconditionUnmet):
        check_span_exclusion(zero, 0, 3, [])
    checked = 0
    for m in forms(gates):
        for z0 in range(4):
            for h in range(4):
                for others in ([], [x for x in range(4) if x not in (z0,) and weight(x) % 2 == weight(h) % 2][:1]):
                    if z0 == h:
                        continue
                    try:
                        assert check_span_exclusion(m, z0, h, others)
                        checked += 1
                    except PreconditionUnmet:
                        pass
    assert checked


def test_two_by_two_determinants_vanish_together(small_corpus):
    _, gates = small_corpus
    for m in forms(gates):
        for s, t in ((0, 3), (1, 2)):
            for z, h in ((0, 3), (1, 2)):
                left, right = determinant_pair(m, s, t, z, h)
                assert left == right or left == -right
                assert (left == 0) == (right == 0)


def test_dependent_reports_minor():
    ok, minor = dependent([gr(1), gr(0)], [gr(0), gr(1)])
    assert not ok and minor == (0, 1)
