"""Seeded instances whose signatures are realized on a known basis.

Standard generator signatures are built by feeding small matchgate
generators through transducer signatures, so they stay realizable while
the basis keeps more rows than its rank.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from . import linalg
from .collapse import Basis, Bundle, SignatureGrid, contract, holant_signatures, recognizer_on_basis
from .corpus import DEFAULT_WEIGHTS, random_matchgate
from .errors import BoundsError
from .graph import Matchgate, glue
from .scalar import ONE, ZERO, GaussianRational
from .signature import GENERATOR, RECOGNIZER, SignatureTensor, matrix_form, standard_signature, transducer_signature

MAX_TRIES = 2000
# some shapes make every Holant vanish; stop resampling after this many grids
HOLANT_TRIES = 40


def _rank_at_least(sig: SignatureTensor, r: int) -> bool:
    return any(linalg.rank(matrix_form(sig, t).as_list()) >= r for t in range(1, sig.blocks + 1))


def _gate(rng, arity, inputs, max_vertices, want=None):
    for _ in range(MAX_TRIES):
        g = random_matchgate(rng, arity, inputs, max_vertices, DEFAULT_WEIGHTS)
        if want is None or want(g):
            return g
    raise BoundsError("could not sample a matchgate with the requested rank")


def _invertible(rng, k) -> List[List[GaussianRational]]:
    while True:
        m = [[GaussianRational(rng.randint(-2, 2)) for _ in range(k)] for _ in range(k)]
        if linalg.det(m) != ZERO:
            return m


def _full_row_rank(rng, r, k) -> List[List[GaussianRational]]:
    while True:
        m = [[GaussianRational(rng.randint(-2, 2)) for _ in range(k)] for _ in range(r)]
        if linalg.rank(m) == r:
            return m


def _power(sig_entries, blocks, letters, A):
    return contract(sig_entries, [letters] * blocks, [A] * blocks)


def _wires(gens: int, recs: int, blocks: int) -> List[Tuple[int, int, int, int]]:
    """Generator g block b meets recognizer b block g (needs gens == recs == blocks)."""
    return [(g, b, b, g) for g in range(gens) for b in range(blocks)]


def compose_generator(small: Matchgate, tr: Matchgate, blocks: int) -> Matchgate:
    """Each block of ``small`` feeds the inputs of its own copy of ``tr``."""
    K = len(tr.inputs)
    parts = [small] + [tr] * blocks
    wires = [((0, small.outputs[b * K + j]), (1 + b, tr.inputs[j])) for b in range(blocks) for j in range(K)]
    outs = [(1 + b, y) for b in range(blocks) for y in tr.outputs]
    gate, planar = glue(parts, wires, (), outs)
    if not planar:
        raise BoundsError("composed generator lost its planar embedding")
    return gate


def _composite_generator(rng, K, n, ell, tr, M0_inv, max_vertices, full_rank):
    k = 2 ** K
    T = transducer_signature(tr)
    want = (lambda g: linalg.rank(matrix_form(standard_signature(g, n, K), 1).as_list()) == k) if full_rank else None
    small = _gate(rng, K * n, 0, max_vertices, want)
    std_small = standard_signature(small, n, K)
    dom = SignatureTensor(GENERATOR, n, k, tuple(_power(std_small.entries, n, k, M0_inv)))
    std = SignatureTensor(GENERATOR, n, 2 ** ell, tuple(_power(std_small.entries, n, k, T)), ell)
    return compose_generator(small, tr, n), std, dom


def collapse_instance(seed: int = 0, K: int = 2, ell: int = 3, n: int = 2, max_vertices: int = 10) -> Bundle:
    """Bundle on a 2^ell x 2^K basis of rank 2^K with full-rank generator 0.

    Two generators and two recognizers of ``n`` blocks each, wired so every
    generator meets every recognizer once (requires n == 2).
    """
    if ell < K or n != 2:
        raise BoundsError("need ell >= K and n == 2")
    rng = random.Random(seed)
    k = 2 ** K
    tr = _gate(rng, K + ell, K, max_vertices,
               lambda g: linalg.rank(transducer_signature(g)) == k)
    T = transducer_signature(tr)
    M0 = _invertible(rng, k)
    M = Basis(linalg.matmul(T, M0))
    M0_inv = linalg.inverse(M0)
    gates, gens_std, gens_dom = [], [], []
    for i in range(2):
        gate, std, dom = _composite_generator(rng, K, n, ell, tr, M0_inv, max_vertices, full_rank=(i == 0))
        gates.append(gate)
        gens_std.append(std)
        gens_dom.append(dom)
    wires = _wires(2, 2, n)
    for _ in range(HOLANT_TRIES):
        recs_std, recs_dom = [], []
        for _ in range(2):
            rg = _gate(rng, n * ell, n * ell, max_vertices + 2)
            std = standard_signature(rg, n, ell)
            recs_std.append(std)
            recs_dom.append(recognizer_on_basis(std, M))
        if holant_signatures(SignatureGrid(gens_dom, recs_dom, wires)):
            break
    return Bundle(M, recs_std, gens_std, recs_dom, gens_dom, wires, gates)


@dataclass
class DomainInstance:
    basis: Basis
    recognizers: List[SignatureTensor]  # domain
    generators: List[SignatureTensor]  # domain
    recognizers_std: List[SignatureTensor]
    generators_std: List[SignatureTensor]
    wires: List[Tuple[int, int, int, int]]


def domain_reduction_instance(seed: int = 0, k: int = 3, ell: int = 1, n: int = 2,
                              max_vertices: int = 8) -> DomainInstance:
    """Domain-k signatures on a 2^ell x k basis of rank 2.

    Generators come from arity-n matchgates pushed through a one-input
    transducer; recognizer 0 reaches rank 2 at some block.
    """
    if k < 2 or n != 2:
        raise BoundsError("need k >= 2 and n == 2")
    rng = random.Random(seed)
    r = 2
    if ell == 1:
        T = [[ONE, ZERO], [ZERO, ONE]]
    else:
        tr = _gate(rng, 1 + ell, 1, max_vertices, lambda g: linalg.rank(transducer_signature(g)) == r)
        T = transducer_signature(tr)
    X = _full_row_rank(rng, r, k)
    M = Basis(linalg.matmul(T, X))
    Xt = linalg.transpose(X)
    X_right = linalg.matmul(Xt, linalg.inverse(linalg.matmul(X, Xt)))
    gens_std, gens_dom = [], []
    for _ in range(2):
        small = _gate(rng, n, 0, max_vertices)
        std_small = standard_signature(small, n, 1)
        gens_dom.append(SignatureTensor(GENERATOR, n, k, tuple(_power(std_small.entries, n, r, X_right))))
        gens_std.append(SignatureTensor(GENERATOR, n, 2 ** ell, tuple(_power(std_small.entries, n, r, T)), ell))
    wires = _wires(2, 2, n)
    for _ in range(HOLANT_TRIES):
        recs_std, recs_dom = [], []
        for i in range(2):
            for _ in range(MAX_TRIES):
                rg = _gate(rng, n * ell, n * ell, max_vertices)
                std = standard_signature(rg, n, ell)
                dom = recognizer_on_basis(std, M)
                if i or _rank_at_least(dom, r):
                    break
            else:
                raise BoundsError("could not sample a rank-2 recognizer")
            recs_std.append(std)
            recs_dom.append(dom)
        if holant_signatures(SignatureGrid(gens_dom, recs_dom, wires)):
            break
    return DomainInstance(M, recs_dom, gens_dom, recs_std, gens_std, wires)


def unrealizable_variant(inst: DomainInstance, seed: int = 1) -> DomainInstance:
    """Same instance with recognizer 1 replaced by random entries."""
    rng = random.Random(seed)
    R = inst.recognizers[1]
    junk = SignatureTensor(RECOGNIZER, R.blocks, R.letters,
                           tuple(GaussianRational(rng.randint(-3, 3)) for _ in R.entries))
    return DomainInstance(inst.basis, [inst.recognizers[0], junk], inst.generators,
                          inst.recognizers_std, inst.generators_std, inst.wires)


def _split(rng, total: int, parts: int) -> List[int]:
    cuts = sorted(rng.sample(range(1, total), parts - 1)) if parts > 1 else []
    bounds = [0] + cuts + [total]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def random_matchgrid(rng: random.Random, max_vertices: int = 20, max_wires: int = 5) -> "Matchgrid":
    """Generators and recognizers joined by a random perfect wiring of ports."""
    from .graph import Matchgrid

    for _ in range(MAX_TRIES):
        w = rng.randint(1, max_wires)
        ng = rng.randint(1, min(2, w))
        nr = rng.randint(1, min(2, w))
        budget = max_vertices // (ng + nr)
        g_ar, r_ar = _split(rng, w, ng), _split(rng, w, nr)
        if max(g_ar + r_ar) > budget:
            continue
        gens = [random_matchgate(rng, a, 0, rng.randint(a, budget), DEFAULT_WEIGHTS) for a in g_ar]
        recs = [random_matchgate(rng, a, a, rng.randint(a, budget), DEFAULT_WEIGHTS) for a in r_ar]
        if sum(m.graph.vertex_count for m in gens + recs) > max_vertices:
            continue
        gports = [(g, p) for g, a in enumerate(g_ar) for p in range(a)]
        rports = [(r, p) for r, a in enumerate(r_ar) for p in range(a)]
        rng.shuffle(rports)
        wires = [(g, gp, r, rp) for (g, gp), (r, rp) in zip(gports, rports)]
        return Matchgrid(gens, recs, wires)
    raise BoundsError("could not fit a matchgrid in the vertex budget")


def edge_pair_grid(w, v) -> "Matchgrid":
    """One weighted edge as a generator, one as a recognizer, joined into a 4-cycle."""
    from .graph import Matchgrid, PlanarGraph, build_matchgate

    gen = build_matchgate(PlanarGraph(2, [(0, 1, w)], [[0], [0]]), [], [0, 1])
    rec = build_matchgate(PlanarGraph(2, [(0, 1, v)], [[0], [0]]), [0, 1], [])
    return Matchgrid([gen], [rec], [(0, 0, 0, 0), (0, 1, 0, 1)])
