import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cardcomp.algebra import (
    AtomSet,
    AtomSpace,
    Member,
    NotMember,
    atomize,
    cone_member,
    counts,
    ideal_top,
    indicator,
    is_balanced,
    term_for,
    vsub,
)
from cardcomp.errors import DimensionMismatch, LimitExceeded, UnknownLabel
from cardcomp.syntax import EMPTY, FULL, Comp, Join, Label, Meet, parse_term

from _gen import random_atomset

a, b, c = Label("a"), Label("b"), Label("c")


def truth(t, valuation):
    """Membership of one atom in ``t``, read straight off the label valuation."""
    if isinstance(t, Label):
        return valuation[t.name]
    if isinstance(t, Comp):
        return not truth(t.arg, valuation)
    if isinstance(t, Meet):
        return truth(t.left, valuation) and truth(t.right, valuation)
    if isinstance(t, Join):
        return truth(t.left, valuation) or truth(t.right, valuation)
    return t == FULL


def test_atomize_examples():
    space = AtomSpace.of(["a", "b"])
    assert atomize(a, space) == AtomSet(0b1010, 4)
    assert atomize(b, space) == AtomSet(0b1100, 4)
    assert atomize(parse_term("a & b'"), space) == AtomSet.of([1], 4)
    assert atomize(parse_term("a & a'"), space) == space.empty
    assert atomize(parse_term("a + a'"), space) == space.full
    assert atomize(EMPTY, ["a"]) == AtomSet(0, 2)
    with pytest.raises(UnknownLabel):
        atomize(c, space)


def test_atom_names_and_label_order():
    space = AtomSpace.of(["b", "a"])
    assert space.labels == ("a", "b")
    assert space.atom_name(1) == "a & b'"
    assert space.atom_name(3) == "a & b"
    assert AtomSpace.of([]).atom_name(0) == "1"
    with pytest.raises(LimitExceeded):
        AtomSpace.of([f"x{i}" for i in range(17)])
    with pytest.raises(LimitExceeded):
        AtomSpace.of(["a", "b", "c"], max_labels=2)


label_st = st.sampled_from(["a", "b", "c"]).map(Label)
terms = st.recursive(
    st.one_of(label_st, st.just(EMPTY), st.just(FULL)),
    lambda sub: st.one_of(sub.map(Comp), st.builds(Meet, sub, sub), st.builds(Join, sub, sub)),
    max_leaves=8)


@settings(max_examples=300, deadline=None)
@given(terms)
def test_atomize_matches_pointwise_truth(t):
    space = AtomSpace.of(["a", "b", "c"])
    got = atomize(t, space)
    for atom in range(space.size):
        val = {name: bool(atom >> i & 1) for i, name in enumerate(space.labels)}
        assert (atom in got) == truth(t, val)


@settings(max_examples=200, deadline=None)
@given(terms, terms)
def test_atomize_is_homomorphism(s, t):
    space = AtomSpace.of(["a", "b", "c"])
    x, y = atomize(s, space), atomize(t, space)
    assert atomize(Meet(s, t), space) == x & y
    assert atomize(Join(s, t), space) == x | y
    assert atomize(Comp(s), space) == x.complement()
    assert atomize(term_for(x, space), space) == x


def test_atomset_operations():
    x, y = AtomSet(0b0110, 4), AtomSet(0b0011, 4)
    assert (x & y).atoms() == (1,)
    assert (x | y).atoms() == (0, 1, 2)
    assert (x - y).atoms() == (2,)
    assert ~x == AtomSet(0b1001, 4)
    assert AtomSet(0b0010, 4).issubset(x) and not y.issubset(x)
    assert x.isdisjoint(AtomSet(0b1000, 4))
    assert len(x) == 2 and 2 in x and 0 not in x
    assert not AtomSet.empty(4) and AtomSet.full(4)
    with pytest.raises(DimensionMismatch):
        x & AtomSet(1, 8)


def test_is_balanced_examples():
    u = [AtomSet(bits, 4) for bits in (0b0011, 0b0101, 0b1100)]
    assert is_balanced(u, list(reversed(u)))
    assert is_balanced([AtomSet(0b0011, 4)], [AtomSet(0b0001, 4), AtomSet(0b0010, 4)])
    assert not is_balanced([AtomSet(0b0011, 4)], [AtomSet(0b0001, 4)])
    assert is_balanced([], [])
    assert is_balanced([AtomSet(0, 4)], [])
    with pytest.raises(DimensionMismatch):
        is_balanced([AtomSet(1, 4)], [AtomSet(1, 8)])


def test_is_balanced_matches_indicator_sums():
    rng = random.Random(11)
    for _ in range(500):
        size = rng.choice([2, 4, 8])
        left = [random_atomset(rng, size) for _ in range(rng.randint(0, 4))]
        right = [random_atomset(rng, size) for _ in range(rng.randint(0, 4))]
        if rng.random() < 0.3:
            right = list(left)
            rng.shuffle(right)
        lsum = [sum(col) for col in zip(*([indicator(x) for x in left] or [(0,) * size]))]
        rsum = [sum(col) for col in zip(*([indicator(x) for x in right] or [(0,) * size]))]
        assert is_balanced(left, right) == (lsum == rsum)
        assert counts(left, size) == lsum


def test_cone_member_subtraction():
    # one generator, target equal to it
    g = (1, -1, 0, 0)
    res = cone_member(g, [g])
    assert res == Member((1,), 1)
    assert res.check(g, [g])


def test_cone_member_division_by_two_needs_scale_two():
    # coordinates a1, a2, b1, b2, rest
    def e(i):
        return tuple(1 if j == i else 0 for j in range(5))

    a1, a2, b1, b2 = e(0), e(1), e(2), e(3)
    gens = [vsub(a1, a2), vsub(a2, a1), vsub(b1, b2), vsub(b2, b1),
            vsub(tuple(x + y for x, y in zip(a1, a2)), tuple(x + y for x, y in zip(b1, b2)))]
    target = vsub(a1, b1)
    res = cone_member(target, gens)
    assert isinstance(res, Member)
    assert res.scale == 2
    assert res.check(target, gens)
    assert not Member(res.multipliers, 1).check(target, gens)


def test_cone_member_non_member():
    gens = [(1, -1, 0), (0, 1, -1)]
    target = (-1, 1, 0)
    res = cone_member(target, gens)
    assert isinstance(res, NotMember)
    assert res.check(target, gens)
    assert not NotMember(tuple(-x for x in res.separator)).check(target, gens)
    assert isinstance(cone_member((1, 0), []), NotMember)
    assert cone_member((0, 0), [(1, 1)]) == Member((0,), 1)
    with pytest.raises(DimensionMismatch):
        cone_member((1, 0), [(1, 0, 0)])


def test_cone_member_agrees_with_enumeration():
    # small integer combinations found by search must be reported as members
    rng = random.Random(5)
    for _ in range(150):
        gens = [tuple(rng.randint(-1, 1) for _ in range(3)) for _ in range(rng.randint(1, 3))]
        found = None
        for mults in itertools.product(range(3), repeat=len(gens)):
            vec = tuple(sum(m * g[i] for m, g in zip(mults, gens)) for i in range(3))
            if any(vec):
                found = vec
                break
        target = found or tuple(rng.randint(-1, 1) for _ in range(3))
        res = cone_member(target, gens)
        assert res.check(target, gens)
        if found:
            assert isinstance(res, Member)


def test_member_check_rejects_bad_certificates():
    gens = [(1, -1)]
    assert not Member((1,), 0).check((1, -1), gens)
    assert not Member((-1,), 1).check((-1, 1), gens)
    assert not NotMember((Fraction(0), Fraction(0))).check((1, -1), gens)


def test_ideal_top_examples():
    size = 8
    x, y, z = AtomSet.of([0], size), AtomSet.of([1], size), AtomSet.of([2, 3], size)
    prem = [(x, y), (y, z), (AtomSet.of([5], size), AtomSet.of([6], size))]
    it = ideal_top(x, prem)
    assert it.top == AtomSet.of([0, 1, 2, 3], size)
    assert it.steps == (0, 1)
    assert z in it and AtomSet.of([6], size) not in it
    assert it.chain_for(y, prem) == (0,)
    assert it.chain_for(x, prem) == ()
    with pytest.raises(ValueError):
        it.chain_for(AtomSet.of([7], size), prem)
    assert ideal_top(AtomSet.empty(size), prem).top == AtomSet.empty(size)


def test_ideal_top_with_oracle_adds_atoms():
    size = 4
    it = ideal_top(AtomSet.of([0], size), [], derivable=lambda s, t: s == AtomSet.of([3], size))
    assert it.top == AtomSet.of([0, 3], size)
    assert it.steps == (("atom", 3),)
    assert it.chain_for(AtomSet.of([3], size), []) == (("atom", 3),)


def test_ideal_top_is_least_closed_superset():
    rng = random.Random(17)
    size = 4
    for _ in range(200):
        prem = [(random_atomset(rng, size), random_atomset(rng, size)) for _ in range(rng.randint(0, 4))]
        f = random_atomset(rng, size)
        closed = [AtomSet(bits, size) for bits in range(1 << size)
                  if f.bits & ~bits == 0
                  and all(not x.issubset(AtomSet(bits, size)) or y.issubset(AtomSet(bits, size))
                          for x, y in prem)]
        least = min(closed, key=len)
        assert all(least.issubset(s) for s in closed)
        assert ideal_top(f, prem).top == least
