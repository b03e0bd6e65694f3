"""Exact matchgate signatures, matchgate identities, right inverses and basis collapse."""

from .scalar import GaussianRational, format_scalar, gr, parse_scalar
from .graph import Matchgate, Matchgrid, PlanarGraph, build_matchgate
from .perfmatch import perfmatch_bruteforce, perfmatch_fkt
from .signature import MatrixForm, SignatureTensor, matrix_form, standard_signature, verify_all_mgi, is_pseudo_signature
from .cluster import find_cluster_submatrix, verify_rank_rigidity
from .groupinv import construct_right_inverse
from .collapse import Basis, collapse_power_of_two, holant, reduce_domain, verify_holant_theorem

__all__ = [
    "GaussianRational", "format_scalar", "gr", "parse_scalar",
    "Matchgate", "Matchgrid", "PlanarGraph", "build_matchgate",
    "perfmatch_bruteforce", "perfmatch_fkt",
    "MatrixForm", "SignatureTensor", "matrix_form", "standard_signature", "verify_all_mgi", "is_pseudo_signature",
    "find_cluster_submatrix", "verify_rank_rigidity",
    "construct_right_inverse",
    "Basis", "collapse_power_of_two", "holant", "reduce_domain", "verify_holant_theorem",
]
