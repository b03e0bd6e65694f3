import random

import pytest
from hypothesis import settings

from holocollapse.corpus import CorpusSpec, generate_corpus
from holocollapse.graph import PlanarGraph, build_matchgate, rotation_from_layout
from holocollapse.scalar import GaussianRational, gr

from oracle import straight_line_planar

settings.register_profile("repo", max_examples=40, deadline=None)
settings.load_profile("repo")


def to_gr(p):
    return GaussianRational(p[0], p[1])


def planar_graph(n, rng, density=0.6):
    pts, edges = straight_line_planar(n, rng, density)
    es = [(u, v, to_gr(w)) for u, v, w in edges]
    rot = rotation_from_layout(n, es, dict(enumerate(pts)))
    return PlanarGraph(n, es, rot), edges


@pytest.fixture(scope="session")
def small_corpus():
    spec = CorpusSpec(seed=11, count=12, max_vertices=10)
    return spec, generate_corpus(spec)


@pytest.fixture
def edge_generator():
    """Single edge of weight 7 with both endpoints as outputs."""
    g = PlanarGraph(2, [(0, 1, gr(7))], [[0], [0]])
    return build_matchgate(g, [], [0, 1])


@pytest.fixture
def rng():
    return random.Random(2024)
