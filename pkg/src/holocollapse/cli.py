"""Command-line entry point.

Exit status: 0 when every check passes, 1 when a counterexample or failed
check is reported, 2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import linalg
from .cluster import find_cluster_submatrix, rank_exact, verify_rank_rigidity
from .collapse import (
    Basis,
    Bundle,
    collapse_power_of_two,
    holant,
    lift_basis,
    lifted_recognizer,
    realizes,
    reduce_domain,
    verify_holant_theorem,
)
from .corpus import CorpusSpec, generate_corpus
from .errors import (
    ClusterNotFound,
    HolocollapseError,
    InconsistentSystem,
    InformationLoss,
    NoClusterFound,
    NoFullRankGenerator,
    NotApplicable,
    NotFullRank,
    PseudoSignatureViolated,
    RankDeficient,
    RelationNotNull,
    SingularBlock,
    SingularMZ,
)
from .graph import Matchgate, PlanarGraph
from .groupinv import construct_right_inverse
from .multilinear import check_lindep_omission, check_lindep_propagation, check_span_exclusion, check_wedge_transfer
from .perfmatch import perfmatch_bruteforce, perfmatch_fkt
from .scalar import format_scalar, parse_scalar
from .signature import (
    MatrixForm,
    ParityViolation,
    SignatureTensor,
    bitstr,
    check_parity,
    matrix_form,
    standard_signature,
    verify_all_mgi,
)
from .suites import SUITES, run_suite
from . import serialize as ser

PASS, FAIL, USAGE = 0, 1, 2

# errors that mean the input was read fine but a check on it failed
CHECK_FAILURES = (ClusterNotFound, InconsistentSystem, InformationLoss, NoClusterFound, NoFullRankGenerator,
                  NotApplicable, NotFullRank, PseudoSignatureViolated, RankDeficient, RelationNotNull,
                  SingularBlock, SingularMZ)


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    if isinstance(obj, str):
        print(obj)
    else:
        print(ser.dumps(obj))


def _load(path: str):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}")
    return data


def _as_form(path: str, t: Optional[int]) -> MatrixForm:
    obj = ser.load(_load(path))
    if isinstance(obj, SignatureTensor):
        if t is None:
            raise UsageError("a signature needs --t to pick its matrix form")
        return matrix_form(obj, t)
    if isinstance(obj, MatrixForm):
        return obj
    raise UsageError(f"{path} holds neither a signature nor a matrix form")


def _bits(s: str) -> int:
    return int(s, 2) if s else 0


def cmd_perfmatch(a) -> int:
    obj = ser.load(_load(a.graph))
    g = obj.graph if isinstance(obj, Matchgate) else obj
    if not isinstance(g, PlanarGraph):
        raise UsageError("expected a graph or matchgate")
    val = perfmatch_fkt(g) if a.method == "fkt" else perfmatch_bruteforce(g)
    _emit(format_scalar(val))
    return PASS


def cmd_signature(a) -> int:
    g = ser.load(_load(a.matchgate))
    if not isinstance(g, Matchgate):
        raise UsageError("expected a matchgate")
    s = standard_signature(g, a.blocks, a.block_size)
    _emit(ser.matrix_form_to_json(matrix_form(s, a.t)) if a.t else ser.signature_to_json(s))
    return PASS


def cmd_verify_mgi(a) -> int:
    m = _as_form(a.matrix, a.t)
    parity = check_parity(m)
    ok, inst, count = verify_all_mgi(m)
    report = {"ok": ok and not isinstance(parity, ParityViolation), "instances_checked": count,
              "parity": parity if isinstance(parity, str) else
              {"violation": [bitstr(parity.first, (m.row_bits or 0) + (m.col_bits or 0)),
                             bitstr(parity.second, (m.row_bits or 0) + (m.col_bits or 0))]},
              "violation": list(inst.label()) if inst is not None else None}
    _emit(report)
    return PASS if report["ok"] else FAIL


def cmd_rank(a) -> int:
    m = _as_form(a.matrix, a.t)
    try:
        res = verify_rank_rigidity(m)
    except NotApplicable as exc:
        _emit({"rank": rank_exact(m), "pseudo_signature": False,
               "certificate": list(exc.certificate) if exc.certificate else None})
        return FAIL
    _emit({"rank": res.rank, "pseudo_signature": True, "power_of_two": res.ok})
    return PASS if res.ok else FAIL


def cmd_find_cluster(a) -> int:
    m = _as_form(a.matrix, a.t)
    try:
        sub = find_cluster_submatrix(m, a.k)
    except NoClusterFound as exc:
        _emit({"found": False, "reason": str(exc)})
        return FAIL
    out = sub.col_cluster.to_json()
    out.update({"found": True, "row_cluster": sub.row_cluster.to_json(),
                "determinant": format_scalar(sub.determinant()), "submatrix": ser.matrix_to_json(sub.entries)})
    _emit(out)
    return PASS


def cmd_invert(a) -> int:
    m = _as_form(a.signature, a.t)
    res = construct_right_inverse(m, a.K, a.t)
    product = linalg.matmul(m.block_rows(), res.recognizer)
    ok = product == linalg.identity(2 ** a.K)
    _emit({"recognizer": ser.matrix_form_to_json(res.to_matrix_form()), "trace": ser.trace_to_json(res.trace),
           "identity_product": ok})
    return PASS if ok else FAIL


def cmd_holant(a) -> int:
    grid = ser.load(_load(a.grid))
    M = ser.basis_from_json(_load(a.basis)) if a.basis else Basis.identity(1)
    _emit(format_scalar(holant(grid, M)))
    return PASS


def cmd_verify_holant(a) -> int:
    from .graph import assemble_matchgrid

    grid = ser.load(_load(a.grid))
    M = ser.basis_from_json(_load(a.basis)) if a.basis else Basis.identity(1)
    ok = verify_holant_theorem(grid, M)
    _emit({"ok": ok, "holant": format_scalar(holant(grid, M)),
           "perfmatch": format_scalar(perfmatch_bruteforce(assemble_matchgrid(grid)))})
    return PASS if ok else FAIL


def _reduce(b: Bundle, r: int):
    sub = reduce_domain(b.recognizer_domain, b.generator_domain, r, b.wires)
    small = b.basis.columns(sub.indices)
    lifted = lift_basis(small, sub.X)
    report = {"reduction": ser.sub_bundle_to_json(sub),
              "lift_round_trip": lifted == b.basis and realizes(lifted, b.recognizers + b.generators,
                                                                b.recognizer_domain + b.generator_domain)
              and all(lifted_recognizer(c, sub.X).entries == R.entries
                      for c, R in zip(sub.recognizers, b.recognizer_domain))}
    reduced = Bundle(small, b.recognizers, b.generators, sub.recognizers, sub.generators, b.wires, b.generator_gates)
    return sub, reduced, report


def _pow2(b: Bundle, full_rank: int):
    res = collapse_power_of_two(b, full_rank)
    report = {"bundle": ser.bundle_to_json(res.bundle), "cluster": res.cluster.to_json(), "t": res.t,
              "transducer": ser.matrix_to_json(res.transducer), "checks": res.checks,
              "holant_before": format_scalar(res.holant_before) if res.holant_before is not None else None,
              "holant_after": format_scalar(res.holant_after) if res.holant_after is not None else None,
              "inverse_trace": ser.trace_to_json(res.inverse.trace)}
    return res, report


def cmd_collapse(a) -> int:
    b = ser.load(_load(a.bundle))
    if not isinstance(b, Bundle):
        raise UsageError("expected a bundle")
    if a.mode == "reduce":
        if a.r is None:
            raise UsageError("--mode reduce needs --r")
        _, _, report = _reduce(b, a.r)
        _emit(report)
        return PASS if report["lift_round_trip"] else FAIL
    if a.mode == "pow2":
        res, report = _pow2(b, a.full_rank)
        _emit(report)
        return PASS if all(res.checks.values()) else FAIL
    # full: shrink the domain to r when asked, then collapse a power-of-two domain
    report = {}
    target = b
    sub = None
    if a.r is not None and a.r < b.basis.k:
        sub, target, report["reduce"] = _reduce(b, a.r)
    k = target.basis.k
    if k & (k - 1):
        raise UsageError(f"domain size {k} is not a power of two; pass --r")
    res, report["pow2"] = _pow2(target, a.full_rank)
    final = res.bundle.basis
    if sub is not None:
        final = lift_basis(final, sub.X)
        report["lifted_basis"] = ser.basis_to_json(final)
        # the collapsed standard signatures realize the original domain ones on the lifted basis
        report["lifted_realizes_original"] = realizes(
            final, res.bundle.recognizers + res.bundle.generators, b.recognizer_domain + b.generator_domain)
    _emit(report)
    ok = (all(res.checks.values()) and report.get("reduce", {}).get("lift_round_trip", True)
          and report.get("lifted_realizes_original", True))
    return PASS if ok else FAIL


def cmd_corpus(a) -> int:
    spec = CorpusSpec(seed=a.seed, count=a.count, max_vertices=a.max_vertices, blocks=a.blocks,
                      block_size=a.block_size, inputs=a.inputs)
    _emit({"kind": "corpus", "seed": a.seed, "matchgates": [ser.matchgate_to_json(g) for g in generate_corpus(spec)]})
    return PASS


def cmd_suite(a) -> int:
    spec = CorpusSpec(seed=a.seed, count=a.count, max_vertices=a.max_vertices, blocks=a.blocks,
                      block_size=a.block_size, inputs=a.inputs)
    report = run_suite(a.name, spec, workers=a.workers)
    _emit(report.to_json())
    return PASS if report.ok else FAIL


def cmd_oracle(a) -> int:
    m = _as_form(a.matrix, a.t)
    inst = _load(a.instance)
    if a.which == "wedge-transfer":
        rel = [(parse_scalar(c), _bits(z), _bits(h)) for c, z, h in inst["relation"]]
        ok = check_wedge_transfer(m, rel)
        _emit({"ok": ok})
    elif a.which == "lindep":
        z, h = _bits(inst["zeta"]), _bits(inst["eta"])
        if inst.get("omit") is not None:
            ok, minor = check_lindep_omission(m, z, h, inst["omit"])
        else:
            ok, minor = check_lindep_propagation(m, z, h)
        _emit({"ok": ok, "minor": list(minor) if minor else None})
    else:
        ok = check_span_exclusion(m, _bits(inst["zeta0"]), _bits(inst["eta"]),
                                  [_bits(x) for x in inst["others"]], inst.get("dropped"))
        _emit({"ok": ok})
    return PASS if ok else FAIL


def _corpus_args(p, count=100):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=count)
    p.add_argument("--max-vertices", type=int, default=12)
    p.add_argument("--blocks", type=int, default=2)
    p.add_argument("--block-size", type=int, default=2)
    p.add_argument("--inputs", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="holocollapse", description="Exact matchgate signatures, identities and basis collapse.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("perfmatch", help="perfect-matching sum of a graph")
    p.add_argument("graph")
    p.add_argument("--method", choices=["brute", "fkt"], default="fkt")
    p.set_defaults(func=cmd_perfmatch)

    p = sub.add_parser("signature", help="standard signature of a matchgate")
    p.add_argument("matchgate")
    p.add_argument("--blocks", type=int, required=True)
    p.add_argument("--block-size", type=int, required=True)
    p.add_argument("--t", type=int, help="emit the matrix form at this block instead")
    p.set_defaults(func=cmd_signature)

    for name, func, extra in (("verify-mgi", cmd_verify_mgi, None), ("rank", cmd_rank, None),
                              ("find-cluster", cmd_find_cluster, "k")):
        p = sub.add_parser(name)
        p.add_argument("matrix")
        p.add_argument("--t", type=int)
        if extra:
            p.add_argument("--k", type=int, required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("invert", help="right-inverse recognizer of a full-rank generator")
    p.add_argument("signature")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--K", type=int, required=True)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("holant")
    p.add_argument("grid")
    p.add_argument("--basis")
    p.set_defaults(func=cmd_holant)

    p = sub.add_parser("verify-holant")
    p.add_argument("grid")
    p.add_argument("--basis")
    p.set_defaults(func=cmd_verify_holant)

    p = sub.add_parser("collapse")
    p.add_argument("bundle")
    p.add_argument("--mode", choices=["reduce", "pow2", "full"], default="full")
    p.add_argument("--r", type=int)
    p.add_argument("--full-rank", type=int, default=0, help="index of the full-rank generator")
    p.set_defaults(func=cmd_collapse)

    p = sub.add_parser("corpus")
    _corpus_args(p, count=10)
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("suite")
    p.add_argument("name", choices=sorted(SUITES))
    _corpus_args(p)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("oracle", help="column-wedge and dependence oracles")
    p.add_argument("which", choices=["wedge-transfer", "lindep", "span"])
    p.add_argument("matrix")
    p.add_argument("instance")
    p.add_argument("--t", type=int)
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except CHECK_FAILURES as exc:
        print(f"check failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return FAIL
    except HolocollapseError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
