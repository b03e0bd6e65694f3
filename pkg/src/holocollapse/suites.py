"""Seeded verification sweeps with machine-readable reports."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional

from . import linalg
from .cluster import find_cluster_submatrix, rank_exact
from .collapse import Basis, collapse_power_of_two, holant, lift_basis, lifted_recognizer, realizes, reduce_domain
from .corpus import CorpusSpec, generate_corpus
from .errors import HolocollapseError, UnknownSuite
from .graph import Matchgate
from .groupinv import construct_right_inverse
from .perfmatch import perfmatch_bruteforce
from .graph import assemble_matchgrid
from .scalar import format_scalar
from .signature import (
    ParityViolation,
    bitstr,
    check_parity,
    is_pseudo_signature,
    matrix_form,
    standard_signature,
    verify_all_mgi,
)
from .synthetic import collapse_instance, domain_reduction_instance, random_matchgrid


@dataclass
class SuiteReport:
    suite: str
    seed: int
    count: int
    checked: int = 0
    failures: List[dict] = field(default_factory=list)
    notes: Dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        out = asdict(self)
        out["ok"] = self.ok
        return out


def _forms(g: Matchgate, spec: CorpusSpec):
    s = standard_signature(g, spec.blocks, spec.block_size)
    return s, [matrix_form(s, t) for t in range(1, spec.blocks + 1)]


def _parity(i, g, spec):
    s, _ = _forms(g, spec)
    res = check_parity(s)
    if isinstance(res, ParityViolation):
        return 1, [{"instance": i, "first": bitstr(res.first, s.bits), "second": bitstr(res.second, s.bits)}]
    return 1, []


def _mgi(i, g, spec):
    _, forms = _forms(g, spec)
    bad = []
    for m in forms:
        ok, inst, _ = verify_all_mgi(m)
        if not ok:
            bad.append({"instance": i, "t": m.t, "mgi": list(inst.label())})
    return len(forms), bad


def _rigidity(i, g, spec):
    _, forms = _forms(g, spec)
    bad = []
    for m in forms:
        r = rank_exact(m)
        if r & (r - 1):
            bad.append({"instance": i, "t": m.t, "rank": r})
    return len(forms), bad


def _cluster(i, g, spec):
    _, forms = _forms(g, spec)
    bad, n = [], 0
    for m in forms:
        r = rank_exact(m)
        for k in (2, 3, 4):
            if r < k:
                continue
            n += 1
            try:
                sub = find_cluster_submatrix(m, k)
                if linalg.rank(sub.entries) != len(sub.entries):
                    bad.append({"instance": i, "t": m.t, "k": k, "reason": "singular submatrix"})
            except HolocollapseError as exc:
                bad.append({"instance": i, "t": m.t, "k": k, "reason": str(exc)})
    return n, bad


def _inverse(i, g, spec):
    _, forms = _forms(g, spec)
    K = spec.block_size
    bad, n = [], 0
    for m in forms:
        if rank_exact(m) != 2 ** K:
            continue
        n += 1
        try:
            res = construct_right_inverse(m, K, m.t)
            gadgets = res.trace.left_factors + res.trace.right_factors
            if not is_pseudo_signature(res.block_form())[0]:
                bad.append({"instance": i, "t": m.t, "reason": "inverse is not a pseudo-signature"})
            elif not all(x.faithful() for x in gadgets):
                bad.append({"instance": i, "t": m.t, "reason": "gadget signature disagrees with its matrix"})
        except HolocollapseError as exc:
            bad.append({"instance": i, "t": m.t, "reason": str(exc)})
        except AssertionError as exc:
            bad.append({"instance": i, "t": m.t, "reason": f"internal check: {exc}"})
    return n, bad


def _corpus_suite(check: Callable) -> Callable:
    def run(spec: CorpusSpec, workers: int = 1):
        gates = generate_corpus(spec)
        jobs = list(enumerate(gates))
        if workers > 1:
            with ProcessPoolExecutor(workers) as ex:
                results = list(ex.map(check, [i for i, _ in jobs], [g for _, g in jobs], [spec] * len(jobs)))
        else:
            results = [check(i, g, spec) for i, g in jobs]
        return results
    return run


def _holant_suite(spec: CorpusSpec, workers: int = 1):
    rng = random.Random(spec.seed)
    out = []
    for i in range(spec.count):
        grid = random_matchgrid(rng, max_vertices=max(spec.max_vertices, 4))
        h = holant(grid, Basis.identity(1))
        p = perfmatch_bruteforce(assemble_matchgrid(grid))
        out.append((1, [] if h == p else [{"instance": i, "holant": format_scalar(h), "perfmatch": format_scalar(p)}]))
    return out


def _collapse_suite(spec: CorpusSpec, workers: int = 1):
    out = []
    for i in range(spec.count):
        seed = spec.seed + i
        bad = []
        try:
            inst = domain_reduction_instance(seed, ell=1 + i % 2)
            sub = reduce_domain(inst.recognizers, inst.generators, 2, inst.wires)
            lifted = lift_basis(inst.basis.columns(sub.indices), sub.X)
            if lifted != inst.basis or not realizes(lifted, inst.recognizers_std + inst.generators_std,
                                                    inst.recognizers + inst.generators):
                bad.append({"instance": i, "stage": "reduce", "reason": "lifted basis does not reproduce signatures"})
            elif any(lifted_recognizer(c, sub.X).entries != R.entries for c, R in zip(sub.recognizers, inst.recognizers)):
                bad.append({"instance": i, "stage": "reduce", "reason": "recognizers not recovered"})
        except HolocollapseError as exc:
            bad.append({"instance": i, "stage": "reduce", "reason": str(exc)})
        try:
            collapse_power_of_two(collapse_instance(seed))
        except HolocollapseError as exc:
            bad.append({"instance": i, "stage": "pow2", "reason": str(exc)})
        out.append((2, bad))
    return out


SUITES: Dict[str, Callable] = {
    "parity": _corpus_suite(_parity),
    "mgi": _corpus_suite(_mgi),
    "rigidity": _corpus_suite(_rigidity),
    "cluster": _corpus_suite(_cluster),
    "inverse": _corpus_suite(_inverse),
    "holant": _holant_suite,
    "collapse": _collapse_suite,
}


def run_suite(name: str, spec: Optional[CorpusSpec] = None, workers: int = 1) -> SuiteReport:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    spec = spec or CorpusSpec()
    report = SuiteReport(name, spec.seed, spec.count)
    report.notes["corpus"] = {"blocks": spec.blocks, "block_size": spec.block_size,
                              "max_vertices": spec.max_vertices, "inputs": spec.inputs}
    for checked, bad in SUITES[name](spec, workers):
        report.checked += checked
        report.failures.extend(bad)
    return report
