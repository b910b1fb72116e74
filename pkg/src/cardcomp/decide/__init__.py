"""Decision procedures, certificates, witnesses and KPS representation."""

from .certificate import (
    NONTRIVIALITY,
    AtomLiteral,
    CancellationCertificate,
    Logic,
    atomize_branch,
    verify_certificate,
)
from .core import (
    BranchSat,
    BranchUnsat,
    Closure,
    Entailed,
    NotEntailed,
    Sat,
    Unsat,
    WitnessBundle,
    WitnessNote,
    closure,
    derivable,
    entailment_formula,
    entails,
    problem_space,
    sat,
    sat_branch,
    verify_unsat,
    verify_witness,
)
from .kps import BalancedWitness, TotalOrder, extend_to_total_order, kps_measure, subsets

__all__ = [
    "NONTRIVIALITY", "AtomLiteral", "CancellationCertificate", "Logic", "atomize_branch",
    "verify_certificate", "BranchSat", "BranchUnsat", "Closure", "Entailed", "NotEntailed", "Sat",
    "Unsat", "WitnessBundle", "WitnessNote", "closure", "derivable", "entailment_formula", "entails",
    "problem_space", "sat", "sat_branch", "verify_unsat", "verify_witness", "BalancedWitness",
    "TotalOrder", "extend_to_total_order", "kps_measure", "subsets",
]
