import random

from hypothesis import given
from hypothesis import strategies as st
import pytest

from frobperf.corering import LEX, PolyRing
from frobperf.groebner import (
    BudgetExceeded,
    Ideal,
    budgets,
    eliminate,
    normal_form,
    radical_membership,
    saturate,
)

import gbchecks
import oracles


def gb_strings(p, gens, order=LEX, names=("x", "y")):
    ring = PolyRing(p, names, order)
    return [str(g) for g in Ideal(ring, gens).groebner().elements]


def test_groebner_examples():
    assert sorted(gb_strings(3, ["x^2 - 1", "x*y - 1"])) == sorted(["x - y", "y^2 - 1"])
    assert sorted(gb_strings(2, ["x^2 - y", "y^2 - x"])) == sorted(["x + y^2", "y^4 + y"])
    assert gb_strings(5, ["1"]) == ["1"]


def test_groebner_examples_against_zero_sets():
    # same points over F_p as the generators, and over the closure the ideals are radical here
    ring = PolyRing(3, ["x", "y"], LEX)
    I = Ideal(ring, ["x^2 - 1", "x*y - 1"])
    G = I.groebner().elements
    assert oracles.zero_set(G, 2, 3) == oracles.zero_set(I.generators, 2, 3) == {(1, 1), (2, 2)}


def test_normal_form_examples():
    ring = PolyRing(3, ["x", "y"], LEX)
    G = Ideal(ring, ["x - y"]).groebner()
    assert normal_form(ring.parse("x - y"), G).is_zero()
    G2 = Ideal(PolyRing(2, ["x", "y"], LEX), ["x + y"]).groebner()
    assert normal_form(G2.ring.parse("x^2 + y^2"), G2).is_zero()
    G3 = Ideal(ring, ["x^2 - 1", "x*y - 1"]).groebner()
    assert normal_form(ring.parse("x^2"), G3) == ring.one()


def test_eliminate_examples():
    ring = PolyRing(7, ["x", "a", "b"])
    E = eliminate(Ideal(ring, ["a - x^2", "b - x^3"]), ["a", "b"])
    assert [str(g) for g in E.generators] in (["a^3 - b^2"], ["-a^3 + b^2"])
    # the cusp relation vanishes on the parameterization
    g = E.generators[0]
    for t in range(7):
        assert oracles.evaluate(g, (t * t % 7, t**3 % 7), 7) == 0
    r2 = PolyRing(3, ["x", "y"])
    assert eliminate(Ideal(r2, ["x - y"]), ["y"]).is_zero()
    assert [str(g) for g in eliminate(Ideal(r2, ["x", "y - 1"]), ["y"]).generators] == ["y - 1"]


def test_saturate_examples():
    ring = PolyRing(5, ["x", "y"])
    x = ring.gen("x")
    assert saturate(Ideal(ring, ["x*y"]), x).same_as(Ideal(ring, ["y"]))
    assert saturate(Ideal(ring, ["x^2"]), x).is_unit()
    assert saturate(Ideal(ring, ["x^2*(x - 1)"]), x).same_as(Ideal(ring, ["x - 1"]))


def test_radical_membership_examples():
    ring = PolyRing(3, ["x", "y"])
    assert radical_membership(ring.parse("x"), Ideal(ring, ["x^2"]))
    assert not radical_membership(ring.parse("x"), Ideal(ring, ["y"]))
    assert radical_membership(ring.parse("x + y"), Ideal(ring, ["x^2", "y^2"]))


def test_budget_is_explicit():
    ring = PolyRing(5, ["x", "y", "z"])
    gens = ["x^2*y - z", "x*y^2 - x", "y*z - x^2"]
    I = Ideal(ring, gens)
    with budgets(max_pairs=1):
        with pytest.raises(BudgetExceeded) as err:
            I.groebner()
    assert err.value.status == "budget_exceeded"
    with budgets(max_degree=2):
        with pytest.raises(BudgetExceeded):
            Ideal(ring, ["x^3 - y*z", "y^3 - x*z"]).groebner()
    # the budget did not poison a later unbudgeted run
    assert Ideal(ring, gens).groebner().pairs_processed > 1


def test_lift_requires_tracking():
    ring = PolyRing(3, ["x"])
    with pytest.raises(ValueError):
        Ideal(ring, ["x"]).groebner().lift(ring.gen("x"))


@given(st.integers(0, 2**32))
def test_random_ideal_properties(seed):
    rng = random.Random(seed)
    I = gbchecks.random_ideal(rng)
    for name, ok in gbchecks.check_ideal(I, rng):
        assert ok, name


@given(st.integers(0, 2**32))
def test_saturation_catches_killed_elements(seed):
    rng = random.Random(seed)
    ring = PolyRing(rng.choice([3, 5]), ["x", "y"])
    g = gbchecks.random_poly(rng, ring, 2, 2)
    h = gbchecks.random_poly(rng, ring, 2, 3)
    if g.is_zero():
        return
    extra = gbchecks.random_poly(rng, ring, 3, 2)
    I = Ideal(ring, [g * h, extra])
    S = saturate(I, g).groebner()
    assert S.reduce(h).is_zero()
