"""The formula language: ASTs, concrete syntax, sugar and axiom schemas."""

from .ast import (
    EMPTY,
    FULL,
    And,
    Comp,
    Empty,
    Formula,
    Full,
    Geq,
    Iff,
    Implies,
    Join,
    Label,
    Literal,
    Meet,
    Not,
    Or,
    SetTerm,
    Xor,
    card_eq,
    card_gt,
    card_leq,
    conjunction,
    formula_labels,
    intersection,
    set_equal,
    subset,
    term_labels,
    union,
)
from .parser import format_formula, format_term, parse_formula, parse_term, tokenize
from .schemas import FullBinaryTree, cgfc_schema, fc_schema, gfc_schema, overlap_term
from .transform import expand_abbreviations, is_core, to_dnf

__all__ = [
    "EMPTY", "FULL", "And", "Comp", "Empty", "Formula", "Full", "Geq", "Iff", "Implies",
    "Join", "Label", "Literal", "Meet", "Not", "Or", "SetTerm", "Xor", "card_eq", "card_gt",
    "card_leq", "conjunction", "formula_labels", "intersection", "set_equal", "subset",
    "term_labels", "union", "format_formula", "format_term", "parse_formula", "parse_term",
    "tokenize", "FullBinaryTree", "cgfc_schema", "fc_schema", "gfc_schema", "overlap_term",
    "expand_abbreviations", "is_core", "to_dnf",
]
