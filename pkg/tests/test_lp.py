from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cardcomp.errors import DimensionMismatch, LimitExceeded
from cardcomp.lp import Budget, Infeasible, LinearSystem, Point, fm_feasible, integerize, solve


def test_strict_row_normalises_to_one():
    sys_ = LinearSystem(1)
    sys_.ge([1])
    sys_.gt([1])
    res = solve(sys_)
    assert res == Point((Fraction(1),))
    assert res.check(sys_)


def test_contradiction_has_unit_duals():
    sys_ = LinearSystem(1)
    sys_.ge([1], 1)
    sys_.ge([-1])
    res = solve(sys_)
    assert isinstance(res, Infeasible)
    assert res.multipliers == (1, 1)
    assert res.check(sys_)


def test_two_atom_strict_order():
    # mu(t1) > mu(t2) > 0 after normalisation
    sys_ = LinearSystem(2)
    sys_.gt([1, -1])
    sys_.gt([0, 1])
    res = solve(sys_)
    assert res == Point((Fraction(2), Fraction(1)))


def test_strict_homogeneous_cycle_is_infeasible():
    sys_ = LinearSystem(2)
    sys_.gt([1, -1])
    sys_.gt([-1, 1])
    res = solve(sys_)
    assert isinstance(res, Infeasible) and res.check(sys_)
    coeffs, const = res.combination(sys_)
    assert const == 0 and all(c <= 0 for c in coeffs)


def test_equalities_and_dual_signs():
    sys_ = LinearSystem(2)
    sys_.eq([1, 1], 1)
    sys_.ge([1, 0], 2)
    res = solve(sys_)
    assert isinstance(res, Infeasible) and res.check(sys_)


def test_dimension_checks():
    sys_ = LinearSystem(2)
    with pytest.raises(DimensionMismatch):
        sys_.ge([1])
    with pytest.raises(DimensionMismatch):
        solve(LinearSystem(0))
    with pytest.raises(ValueError):
        sys_.add([1, 1], "<")


def test_budget_exhaustion():
    sys_ = LinearSystem(3)
    for i in range(3):
        sys_.gt([1 if j == i else 0 for j in range(3)])
    with pytest.raises(LimitExceeded):
        solve(sys_, Budget(1))


def test_integerize():
    assert integerize([Fraction(1, 2), Fraction(1, 3)]) == (3, 2)
    assert integerize([Fraction(4), Fraction(7)]) == (4, 7)
    assert integerize([Fraction(0), Fraction(0)]) == (0, 0)


def test_fourier_motzkin_examples():
    sys_ = LinearSystem(1)
    sys_.ge([1])
    sys_.gt([1])
    assert fm_feasible(sys_)
    bad = LinearSystem(1)
    bad.ge([1], 1)
    bad.ge([-1])
    assert not fm_feasible(bad)
    with pytest.raises(ValueError):
        fm_feasible(LinearSystem(9))


rows = st.lists(
    st.tuples(st.lists(st.integers(-3, 3), min_size=3, max_size=3),
              st.sampled_from([">=", "=", ">"]),
              st.integers(-2, 2)),
    min_size=1, max_size=6)


@settings(max_examples=300, deadline=None)
@given(rows)
def test_simplex_agrees_with_fourier_motzkin(spec):
    sys_ = LinearSystem(3)
    for coeffs, rel, const in spec:
        sys_.add(coeffs, rel, const)
    res = solve(sys_)
    assert res.check(sys_)
    assert isinstance(res, Point) == fm_feasible(sys_)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.lists(st.integers(-3, 3), min_size=3, max_size=3),
                          st.sampled_from([">=", "=", ">"])), min_size=1, max_size=6))
def test_homogeneous_points_scale(spec):
    sys_ = LinearSystem(3)
    for coeffs, rel in spec:
        sys_.add(coeffs, rel, 0)
    res = solve(sys_)
    if isinstance(res, Point):
        assert Point(tuple(2 * v for v in res.values)).check(sys_)
        ints = integerize(res.values)
        assert Point(tuple(Fraction(v) for v in ints)).check(sys_)
