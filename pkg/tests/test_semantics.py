import random

import numpy as np
import pytest

from cardcomp.algebra import AtomSet, AtomSpace
from cardcomp.errors import BoundsTooLarge
from cardcomp.semantics import (
    INF,
    MeasuresModel,
    NotFoundWithinBounds,
    brute_force_sat,
    eval_batch,
    eval_formula,
    model_satisfies,
    random_model,
    symbolic_zf_witness,
)
from cardcomp.syntax import Literal, Label, cgfc_schema, gfc_schema, parse_formula

from _gen import as_terms, balanced_instance, cover_sets, model_tensor, random_atomset, random_tree

INCOMPARABLE = "!(|a| >= |b|) /\\ !(|b| >= |a|)"
GFC_COUNTER = "(e & f) sub 0 /\\ |e + f| <= |e| /\\ !(|f| <= |0|)"
NONTRIVIAL = "|1| <= |0|"


def test_eval_examples():
    m = MeasuresModel("finitary", ("a", "b"), ((0, 2, 1, 0),))
    assert eval_formula(m, parse_formula("|a| > |b|"))
    assert not eval_formula(m, parse_formula("|a| <= |b|"))
    assert eval_formula(m, parse_formula("(a & b) sub 0"))
    two = MeasuresModel("infinitary", ("a", "b"), ((0, 1, 0, 0), (0, 0, 1, 0)))
    assert eval_formula(two, parse_formula(INCOMPARABLE))
    inf = MeasuresModel("infinitary", ("a",), ((1, INF),))
    assert eval_formula(inf, parse_formula("|a| = |a + a'|"))
    assert eval_formula(inf, parse_formula("|a| > |a'|"))


def test_model_satisfies_takes_literals_and_formulas():
    m = MeasuresModel("finitary", ("a", "b"), ((0, 2, 1, 0),))
    a, b = Label("a"), Label("b")
    assert model_satisfies(m, [Literal(True, a, b), Literal(False, b, a)])
    assert model_satisfies(m, [parse_formula("|a| >= |b|")])
    assert not model_satisfies(m, [Literal(True, b, a)])
    assert model_satisfies(m, [])


def test_admissibility_and_validation():
    with pytest.raises(ValueError):
        MeasuresModel("finitary", ("a",), ((0, 0),))
    with pytest.raises(ValueError):
        MeasuresModel("finitary", ("a",), ((0, INF),))
    with pytest.raises(ValueError):
        MeasuresModel("infinitary", ("a",), ((1, -1),))
    with pytest.raises(ValueError):
        MeasuresModel("infinitary", ("a",), ((1, 0, 0),))
    with pytest.raises(ValueError):
        MeasuresModel("sometimes", ("a",), ((1, 0),))
    with pytest.raises(ValueError):
        MeasuresModel("infinitary", ("a",), ())
    # a vanishing measure is fine next to an admissible one
    MeasuresModel("infinitary", ("a",), ((0, 0), (0, 1)))


def test_json_round_trip():
    m = MeasuresModel("infinitary", ("b", "a"), ((1, INF, 0, 3), (0, 0, 2, 0)))
    data = m.to_json()
    assert data["labels"] == ["a", "b"]
    assert data["measures"][0] == ["1", "inf", "0", "3"]
    assert data["valuation"] == {"a": [1, 3], "b": [2, 3]}
    assert MeasuresModel.from_json(data) == m
    bad = dict(data, valuation={"a": [1], "b": [2, 3]})
    with pytest.raises(ValueError):
        MeasuresModel.from_json(bad)
    with pytest.raises(ValueError):
        MeasuresModel.from_json(dict(data, atoms=8))


def test_random_model_properties():
    for seed in range(200):
        m = random_model(["a", "b"], "finitary", seed, max_measures=2, max_value=3)
        assert m == random_model(["a", "b"], "finitary", seed, max_measures=2, max_value=3)
        assert 1 <= len(m.measures) <= 2
        assert all(0 <= v <= 3 for mu in m.measures for v in mu)
        assert any(sum(mu) >= 1 for mu in m.measures)
    kinds = {v == INF for seed in range(100)
             for mu in random_model(["a"], "infinitary", seed, infinity_probability=0.5).measures for v in mu}
    assert kinds == {True, False}
    with pytest.raises(ValueError):
        random_model(["a"], max_measures=0)


def test_oracle_incomparability():
    f = parse_formula(INCOMPARABLE)
    assert brute_force_sat(f, "finitary", max_measures=1) == NotFoundWithinBounds(1, 4)
    m = brute_force_sat(f, "finitary")
    assert m.measures == ((0, 0, 1, 0), (0, 1, 0, 0))
    assert brute_force_sat(f, "infinitary").measures == ((0, 0, 1, 0), (0, 1, 0, 0))


def test_oracle_gfc_counterexample():
    f = parse_formula(GFC_COUNTER)
    assert isinstance(brute_force_sat(f, "finitary"), NotFoundWithinBounds)
    m = brute_force_sat(f, "infinitary")
    # atoms: 1 = e only, 2 = f only; e infinite absorbs f
    assert m.measures == ((0, INF, 1, 0),)
    assert eval_formula(m, f)


def test_oracle_nontriviality_and_budget():
    f = parse_formula(NONTRIVIAL)
    for kind in ("finitary", "infinitary"):
        assert isinstance(brute_force_sat(f, kind, labels=["a"]), NotFoundWithinBounds)
    # least admissible single measure in rank order
    assert brute_force_sat(parse_formula("|a| >= |a|"), "finitary").measures == ((0, 1),)
    with pytest.raises(BoundsTooLarge):
        brute_force_sat(parse_formula("|a| >= |b| /\\ |c| >= |d|"), "infinitary", step_budget=1000)


def test_oracle_found_models_satisfy():
    rng = random.Random(9)
    pool = ["a", "b", "a'", "a & b", "a + b", "0", "1", "a & b'"]
    for _ in range(60):
        parts = []
        for _ in range(rng.randint(1, 3)):
            atom = f"|{rng.choice(pool)}| >= |{rng.choice(pool)}|"
            parts.append(atom if rng.random() < 0.5 else f"!({atom})")
        f = parse_formula(" /\\ ".join(parts))
        for kind in ("finitary", "infinitary"):
            m = brute_force_sat(f, kind, labels=["a", "b"])
            if isinstance(m, MeasuresModel):
                assert eval_formula(m, f)


def test_zf_witness_text():
    m = MeasuresModel("infinitary", ("a", "b"), ((0, INF, 1, 0), (0, 0, 2, 1)))
    w = symbolic_zf_witness(m)
    assert w.families == ("A_mu1", "A_mu2")
    assert w.expressions["a"] == "ω × A_mu1 ⊔ 1 × A_mu2"
    assert w.expressions["b"] == "1 × A_mu1 ⊔ 3 × A_mu2"
    assert w.dedekind_infinite == {"a": True, "b": False}
    assert "a* = ω × A_mu1 ⊔ 1 × A_mu2    [Dedekind-infinite]" in w.text
    assert "b* = 1 × A_mu1 ⊔ 3 × A_mu2    [Dedekind-finite]" in w.text
    a, b = m.valuation["a"], m.valuation["b"]
    # mu1 puts a above b, mu2 puts b above a
    assert not w.leq(b, a) and not w.leq(a, b)
    assert w.leq(a & b, a) and w.leq(a & b, b)
    empty = symbolic_zf_witness(MeasuresModel("finitary", ("a",), ((1, 0),)))
    assert empty.expressions["a"] == "∅"


def test_preorder_laws():
    size = 4
    sets = [AtomSet(bits, size) for bits in range(1 << size)]
    for seed in range(30):
        for kind in ("finitary", "infinitary"):
            m = random_model(["a", "b"], kind, seed)
            empty, full = AtomSet.empty(size), AtomSet.full(size)
            assert not m.leq(full, empty)
            for x in sets:
                assert m.leq(x, x) and m.leq(empty, x)
                for y in sets:
                    if x.issubset(y):
                        assert m.leq(x, y)
                    if m.leq(x, y):
                        assert all(m.leq(x, z) for z in sets if m.leq(y, z))
            single = MeasuresModel(kind, m.labels, m.measures[:1]) if sum(m.measures[0]) >= 1 else None
            if single is not None:
                assert all(single.leq(x, y) or single.leq(y, x) for x in sets for y in sets)


def test_gfc_and_cgfc_sound_on_sample():
    rng = random.Random(21)
    labels = ["a", "b", "c"]
    space = AtomSpace.of(labels)
    fin, _ = model_tensor(labels, "finitary", range(20))
    inf, _ = model_tensor(labels, "infinitary", range(20))
    for _ in range(40):
        k, l = rng.randint(0, 3), rng.randint(1, 3)
        s, e, t, f = balanced_instance(rng, space.size, k, l)
        phi = gfc_schema(k, l, as_terms(s, space), *as_terms([e], space), as_terms(t, space),
                         *as_terms([f], space))
        assert all(eval_formula(m, phi) for m in fin)
        tree = random_tree(rng)
        root = random_atomset(rng, space.size)
        u = cover_sets(rng, tree, root)
        psi = cgfc_schema(k, l, tree, as_terms(s, space), *as_terms([e], space), as_terms(t, space),
                          *as_terms([f], space), {n: x for n, x in zip(u, as_terms(u.values(), space))})
        assert all(eval_formula(m, psi) for m in inf)


def test_gfc_fails_in_some_infinitary_model():
    # the counterexample formula is the negation of a GFC instance's consequence
    m = MeasuresModel("infinitary", ("e", "f"), ((0, INF, 1, 0),))
    assert eval_formula(m, parse_formula(GFC_COUNTER))


def test_eval_batch_matches_eval_formula():
    rng = random.Random(4)
    labels = ["a", "b"]
    space = AtomSpace.of(labels)
    models, arr = model_tensor(labels, "infinitary", range(50))
    pool = ["a", "b", "a'", "a & b", "a + b", "0", "1"]
    for _ in range(80):
        text = f"|{rng.choice(pool)}| >= |{rng.choice(pool)}|"
        if rng.random() < 0.5:
            text = f"!({text}) \\/ |{rng.choice(pool)}| > |{rng.choice(pool)}|"
        if rng.random() < 0.3:
            text = f"({text}) <-> |{rng.choice(pool)}| >= |{rng.choice(pool)}|"
        f = parse_formula(text)
        got = eval_batch(arr, f, space)
        assert got.dtype == np.bool_
        assert list(got) == [eval_formula(m, f) for m in models]
