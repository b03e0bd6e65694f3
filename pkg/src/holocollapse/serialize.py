"""JSON encodings.  Scalars are always strings ("3/2", "-1+2i"), never floats.

Every object carries a ``kind`` tag so loaders can tell a signature from a
matrix form.  Bitstring indices are written as strings of 0/1.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, List, Optional, Sequence

from .cluster import Cluster
from .collapse import Basis, Bundle, SubSignatureBundle
from .errors import ShapeMismatch
from .graph import Matchgate, Matchgrid, PlanarGraph, build_matchgate
from .scalar import GaussianRational, format_scalar, parse_scalar
from .signature import MatrixForm, SignatureTensor, bitstr


def scalar(z: GaussianRational) -> str:
    return format_scalar(z)


def matrix_to_json(m) -> List[List[str]]:
    return [[format_scalar(x) for x in row] for row in m]


def matrix_from_json(data) -> List[List[GaussianRational]]:
    if isinstance(data, dict):
        data = data["entries"]
    return [[parse_scalar(x) for x in row] for row in data]


def _edge_to_json(u: int, v: int, w: GaussianRational) -> list:
    return [u, v, _q(w.re), _q(w.im)]


def _q(x) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _edge_from_json(e) -> tuple:
    # [u, v, "re", "im"], or [u, v, "re+im i"]
    if len(e) == 4:
        return e[0], e[1], GaussianRational(Fraction(str(e[2])), Fraction(str(e[3])))
    return e[0], e[1], parse_scalar(e[2]) if len(e) > 2 else 1


def _graph_fields(g: PlanarGraph) -> dict:
    out = {"vertices": g.vertex_count, "edges": [_edge_to_json(*e) for e in g.edges]}
    if g.rotation is not None:
        out["rotation"] = {str(v): list(r) for v, r in enumerate(g.rotation)}
    return out


def graph_to_json(g: PlanarGraph) -> dict:
    return {"kind": "graph", **_graph_fields(g)}


def graph_from_json(d: dict) -> PlanarGraph:
    n = d["vertices"] if "vertices" in d else d["vertex_count"]
    return PlanarGraph(n, [_edge_from_json(e) for e in d["edges"]], d.get("rotation"))


def matchgate_to_json(g: Matchgate) -> dict:
    return {"kind": "matchgate", **_graph_fields(g.graph), "inputs": list(g.inputs), "outputs": list(g.outputs)}


def matchgate_from_json(d: dict) -> Matchgate:
    graph = graph_from_json(d["graph"] if "graph" in d else d)
    return build_matchgate(graph, d.get("inputs", []), d.get("outputs", []))


def signature_to_json(s: SignatureTensor) -> dict:
    return {"kind": "signature", "role": s.role, "blocks": s.blocks, "letters": s.letters,
            "block_size": s.block_size, "entries": [format_scalar(x) for x in s.entries]}


def signature_from_json(d: dict) -> SignatureTensor:
    return SignatureTensor(d["role"], d["blocks"], d["letters"], tuple(parse_scalar(x) for x in d["entries"]),
                           d.get("block_size"))


def matrix_form_to_json(m: MatrixForm) -> dict:
    return {"kind": "matrix_form", "role": m.role, "row_bits": m.row_bits, "col_bits": m.col_bits,
            "split": m.split, "t": m.t, "blocks": m.blocks, "letters": m.letters,
            "entries": matrix_to_json(m.entries)}


def matrix_form_from_json(d) -> MatrixForm:
    if isinstance(d, list):
        return MatrixForm.from_rows(matrix_from_json(d))
    return MatrixForm(tuple(tuple(r) for r in matrix_from_json(d["entries"])), d.get("row_bits"), d.get("col_bits"),
                      d.get("split"), d.get("role", "generator"), d.get("t"), d.get("blocks"), d.get("letters"))


def basis_to_json(M: Basis) -> dict:
    return {"kind": "basis", "entries": matrix_to_json(M.entries)}


def basis_from_json(d) -> Basis:
    return Basis(matrix_from_json(d))


def matchgrid_to_json(g: Matchgrid) -> dict:
    """Matchgates by name, wires as [generator, port, recognizer, port] by name."""
    gates = {f"g{i}": matchgate_to_json(m) for i, m in enumerate(g.generators)}
    gates.update({f"r{i}": matchgate_to_json(m) for i, m in enumerate(g.recognizers)})
    return {"kind": "matchgrid", "matchgates": gates,
            "generators": [f"g{i}" for i in range(len(g.generators))],
            "recognizers": [f"r{i}" for i in range(len(g.recognizers))],
            "wires": [[f"g{a}", p, f"r{b}", q] for a, p, b, q in g.wires]}


def matchgrid_from_json(d: dict) -> Matchgrid:
    named = d.get("matchgates", {})

    def gate(ref):
        return matchgate_from_json(named[ref] if isinstance(ref, str) else ref)

    gens, recs = d["generators"], d["recognizers"]
    gidx = {name: i for i, name in enumerate(gens) if isinstance(name, str)}
    ridx = {name: i for i, name in enumerate(recs) if isinstance(name, str)}
    wires = [(gidx.get(a, a), p, ridx.get(b, b), q) for a, p, b, q in d["wires"]]
    return Matchgrid([gate(m) for m in gens], [gate(m) for m in recs], wires)


def cluster_to_json(c: Cluster) -> dict:
    return c.to_json()


def cluster_from_json(d: dict) -> Cluster:
    width = len(d["base"])
    return Cluster(width, int(d["base"], 2) if width else 0, tuple(d["positions"]))


def _sigs(items: Optional[Sequence]) -> list:
    return [signature_to_json(s) for s in items or []]


def bundle_to_json(b: Bundle) -> dict:
    out = {"kind": "bundle", "basis": basis_to_json(b.basis),
           "recognizers": _sigs(b.recognizers), "generators": _sigs(b.generators),
           "recognizer_domain": _sigs(b.recognizer_domain), "generator_domain": _sigs(b.generator_domain),
           "wires": [list(w) for w in b.wires] if b.wires is not None else None}
    if b.generator_gates:
        out["generator_gates"] = [matchgate_to_json(g) if g is not None else None for g in b.generator_gates]
    return out


def bundle_from_json(d: dict) -> Bundle:
    gates = d.get("generator_gates")
    return Bundle(basis_from_json(d["basis"]),
                  [signature_from_json(s) for s in d.get("recognizers", [])],
                  [signature_from_json(s) for s in d.get("generators", [])],
                  [signature_from_json(s) for s in d.get("recognizer_domain", [])],
                  [signature_from_json(s) for s in d.get("generator_domain", [])],
                  [tuple(w) for w in d["wires"]] if d.get("wires") is not None else None,
                  [matchgate_from_json(g) if g is not None else None for g in gates] if gates else None)


def sub_bundle_to_json(s: SubSignatureBundle) -> dict:
    return {"kind": "sub_signature_bundle", "indices": list(s.indices), "block": s.block,
            "X": matrix_to_json(s.X), "X_prime": matrix_to_json(s.X_prime),
            "recognizers": _sigs(s.recognizers), "generators": _sigs(s.generators),
            "holant_before": format_scalar(s.holant_before) if s.holant_before is not None else None,
            "holant_after": format_scalar(s.holant_after) if s.holant_after is not None else None}


def gadget_to_json(g) -> dict:
    params = {k: (format_scalar(v) if isinstance(v, GaussianRational) else v) for k, v in g.params.items()}
    return {"kind": g.kind, "params": params, "size": g.size, "order": list(g.order),
            "crossings": g.crossings, "sign_fixed": g.sign_fixed, "faithful": g.faithful(),
            "matrix": matrix_to_json(g.matrix), "signature": matrix_to_json(g.signature)}


def trace_to_json(trace) -> dict:
    return {"K": trace.K, "t": trace.t, "cluster": trace.cluster.to_json(), "pairs": list(trace.q),
            "realized": trace.realized,
            "steps": [{"side": side, **gadget_to_json((trace.left_factors if side == "L" else trace.right_factors)[i])}
                      for side, i in trace.steps]}


_LOADERS = {
    "graph": graph_from_json,
    "matchgate": matchgate_from_json,
    "signature": signature_from_json,
    "matrix_form": matrix_form_from_json,
    "basis": basis_from_json,
    "matchgrid": matchgrid_from_json,
    "bundle": bundle_from_json,
}


def load(data: Any):
    """Decode any tagged object; bare nested lists are read as matrix forms."""
    if isinstance(data, list):
        return matrix_form_from_json(data)
    kind = data.get("kind")
    if kind not in _LOADERS:
        raise ShapeMismatch(f"unknown object kind {kind!r}")
    return _LOADERS[kind](data)


def load_file(path: str):
    with open(path) as fh:
        return load(json.load(fh))


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
