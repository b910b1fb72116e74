"""Curated formulas shared by the decide, CLI and acceptance tests."""

from itertools import combinations

from cardcomp.syntax import parse_formula

INCOMPARABLE = "!(|a| >= |b|) /\\ !(|b| >= |a|)"
GFC_COUNTER = "(e & f) sub 0 /\\ |e + f| <= |e| /\\ !(|f| <= |0|)"
NONTRIVIAL = "|1| <= |0|"

# formula text -> expected verdict per logic
VERDICTS = {
    INCOMPARABLE: {"fin": "unsat", "ded": "sat", "card": "sat"},
    GFC_COUNTER: {"fin": "unsat", "ded": "unsat", "card": "sat"},
    NONTRIVIAL: {"fin": "unsat", "ded": "unsat", "card": "unsat"},
}


def disjoint(names):
    return [parse_formula(f"{u} & {v} = 0") for u, v in combinations(names, 2)]


def subtraction(covered: bool = False):
    """x, y, z pairwise disjoint and |x + z| <= |y + z| give |x| <= |y|.

    With ``covered`` the hypothesis |z| <= |y| is added, which keeps z
    inside the ideal of y.
    """
    gamma = disjoint("xyz") + [parse_formula("|x + z| <= |y + z|")]
    if covered:
        gamma.append(parse_formula("|z| <= |y|"))
    return gamma, parse_formula("|x| <= |y|")


def division(m: int):
    """m disjoint equal a's below m disjoint equal b's give |a1| <= |b1|."""
    a = [f"a{i}" for i in range(1, m + 1)]
    b = [f"b{i}" for i in range(1, m + 1)]
    gamma = disjoint(a + b)
    gamma += [parse_formula(f"|{a[0]}| = |{x}|") for x in a[1:]]
    gamma += [parse_formula(f"|{b[0]}| = |{x}|") for x in b[1:]]
    gamma.append(parse_formula(f"|{' + '.join(a)}| <= |{' + '.join(b)}|"))
    return gamma, parse_formula("|a1| <= |b1|")
