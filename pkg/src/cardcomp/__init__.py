"""Decision procedures for comparative cardinality logics.

Three logics are covered: finite sets (``fin``), Dedekind-finite sets
(``ded``) and arbitrary sets without Choice (``card``).
"""

from .algebra import AtomSet, AtomSpace, atomize, cone_member, ideal_top, indicator, is_balanced
from .decide import (
    CancellationCertificate,
    Logic,
    entails,
    extend_to_total_order,
    kps_measure,
    sat,
    verify_certificate,
    verify_unsat,
    verify_witness,
)
from .semantics import MeasuresModel, brute_force_sat, eval_formula, model_satisfies, symbolic_zf_witness
from .syntax import parse_formula, parse_term

__version__ = "0.1.0"

__all__ = [
    "AtomSet", "AtomSpace", "atomize", "cone_member", "ideal_top", "indicator", "is_balanced",
    "CancellationCertificate", "Logic", "entails", "extend_to_total_order", "kps_measure", "sat",
    "verify_certificate", "verify_unsat", "verify_witness", "MeasuresModel", "brute_force_sat", "eval_formula", "model_satisfies",
    "symbolic_zf_witness", "parse_formula", "parse_term",
]
