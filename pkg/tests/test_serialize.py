import json
import random

import pytest
from hypothesis import given, strategies as st

from holocollapse import serialize as ser
from holocollapse.collapse import Basis
from holocollapse.cluster import Cluster
from holocollapse.errors import ShapeMismatch
from holocollapse.graph import Matchgate, Matchgrid, PlanarGraph
from holocollapse.scalar import GaussianRational, gr
from holocollapse.signature import MatrixForm, SignatureTensor, matrix_form, standard_signature
from holocollapse.synthetic import collapse_instance, edge_pair_grid, random_matchgrid

from fractions import Fraction

scalars = st.builds(GaussianRational, st.fractions(max_denominator=50), st.fractions(max_denominator=50))


def roundtrip(obj):
    """Encode, push through real JSON text, decode."""
    return ser.load(json.loads(ser.dumps(obj)))


def all_strings(node):
    if isinstance(node, list):
        return all(all_strings(x) for x in node)
    if isinstance(node, dict):
        return all(all_strings(x) for x in node.values())
    return not isinstance(node, float)


def test_graph_uses_flat_edge_form():
    g = PlanarGraph(2, [(0, 1, GaussianRational(Fraction(3, 2), Fraction(-1)))], [[0], [0]])
    d = ser.graph_to_json(g)
    assert d == {"kind": "graph", "vertices": 2, "edges": [[0, 1, "3/2", "-1"]], "rotation": {"0": [0], "1": [0]}}
    assert roundtrip(d) == g


def test_graph_loader_accepts_combined_scalar_edges():
    d = {"kind": "graph", "vertex_count": 2, "edges": [[0, 1, "2-i"]], "rotation": [[0], [0]]}
    g = ser.load(d)
    assert g.edges[0][2] == gr(2, -1)


def test_matchgate_flat_and_nested(edge_generator):
    flat = ser.matchgate_to_json(edge_generator)
    assert flat["outputs"] == [0, 1] and flat["vertices"] == 2
    assert roundtrip(flat) == edge_generator
    nested = {"kind": "matchgate", "graph": ser.graph_to_json(edge_generator.graph), "inputs": [], "outputs": [0, 1]}
    assert ser.load(nested) == edge_generator


def test_matchgrid_by_name():
    grid = edge_pair_grid(2, 5)
    d = ser.matchgrid_to_json(grid)
    assert d["wires"][0][0] == "g0" and d["wires"][0][2] == "r0"
    assert roundtrip(d) == grid


def test_random_matchgrids_round_trip():
    rng = random.Random(4)
    for _ in range(5):
        grid = random_matchgrid(rng, max_vertices=10)
        assert roundtrip(ser.matchgrid_to_json(grid)) == grid


@given(st.lists(scalars, min_size=16, max_size=16))
def test_signature_and_form_round_trip(vals):
    s = SignatureTensor.standard("generator", 2, 2, vals)
    assert roundtrip(ser.signature_to_json(s)) == s
    m = matrix_form(s, 1)
    back = roundtrip(ser.matrix_form_to_json(m))
    assert back.entries == m.entries and back.t == 1
    assert all_strings(ser.signature_to_json(s))


def test_bare_list_is_matrix_form():
    m = ser.load([["1", "0"], ["0", "i"]])
    assert isinstance(m, MatrixForm)
    assert m.entries[1][1] == gr(0, 1)


def test_cluster_round_trip():
    c = Cluster(4, 0b0101, (2, 4))
    assert ser.cluster_from_json(ser.cluster_to_json(c)) == c


def test_bundle_round_trip():
    b = collapse_instance(0)
    back = roundtrip(ser.bundle_to_json(b))
    assert back.basis == b.basis
    assert [s.entries for s in back.generators] == [s.entries for s in b.generators]
    assert back.wires == b.wires
    assert back.generator_gates == b.generator_gates


def test_basis_round_trip():
    M = Basis([[gr(1), gr(0, 1)], [gr(2), gr(-1)]])
    assert roundtrip(ser.basis_to_json(M)) == M


def test_unknown_kind():
    with pytest.raises(ShapeMismatch):
        ser.load({"kind": "teapot"})
