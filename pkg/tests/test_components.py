import random

from hypothesis import given
from hypothesis import strategies as st
import pytest

from frobperf.components import (
    BEST_EFFORT,
    CERTIFIED,
    NotComaximal,
    groupoid_pi0,
    idempotent_from_comaximal,
    pi0_ring,
    split_components,
)
from frobperf.corering import PolyRing, StructuralError
from frobperf.fpalg import AlgebraPresentation as AP
from frobperf.groebner import Ideal, radical_membership
from frobperf.subalg import SubalgebraHandle

import oracles


def shown(A):
    d = split_components(A)
    return [str(e) for e in d.idempotents], d.connected


def test_two_points():
    A = AP(None, ["x", "y"], ["x*y", "x + y - 1"], p=5)
    assert shown(A) == (["x", "y"], [CERTIFIED, CERTIFIED])


def test_line_is_connected():
    assert shown(AP(None, ["x"], [], p=5)) == (["1"], [CERTIFIED])


def test_fat_point_and_point():
    A = AP(None, ["x"], ["x^2*(x - 1)"], p=5)
    idems, conn = shown(A)
    assert idems == ["x^2", "-x^2 + 1"] and conn == [CERTIFIED, CERTIFIED]
    # the x^2 idempotent is 1 on the (x - 1) piece and 0 on the fat point
    e = A.ring.parse("x^2")
    assert Ideal(A.ring, ["x - 1"]).contains(e - 1)
    assert Ideal(A.ring, ["x^2"]).contains(e)


def test_three_points_and_irreducible_quadratics():
    A = AP(None, ["x"], ["x*(x - 1)*(x - 2)"], p=5)
    assert len(split_components(A)) == 3
    B = AP(None, ["x", "y"], ["x^2 + 1", "y^2 + 1"], p=3)
    # F_9 (x) F_9 splits in two
    assert len(split_components(B)) == 2


def test_node_is_one_component():
    assert shown(AP(None, ["x", "y"], ["x*y"], p=3)) == (["1"], [CERTIFIED])


def test_hyperbola_is_one_best_effort_component():
    d = split_components(AP(None, ["x", "y"], ["x*y - 1"], p=3))
    assert len(d) == 1 and d.connected == [BEST_EFFORT] and not d.exact


def test_over_a_base_is_refused():
    A = AP(AP(None, ["u"], [], p=3), ["x"], [], p=3)
    with pytest.raises(StructuralError):
        split_components(A)


def test_idempotent_from_comaximal_examples():
    ring = PolyRing(5, ["x"])
    e = idempotent_from_comaximal(Ideal(ring, ["x^2"]), Ideal(ring, ["x - 1"]))
    assert str(e) == "x^2"
    e = idempotent_from_comaximal(Ideal(ring, ["x"]), Ideal(ring, ["x - 1"]))
    assert str(e) == "x"
    with pytest.raises(NotComaximal):
        idempotent_from_comaximal(Ideal(ring, ["x"]), Ideal(ring, ["x"]))


def test_pi0_ring_examples():
    P, inc = pi0_ring(split_components(AP(None, ["x", "y"], ["x*y", "x + y - 1"], p=5)))
    assert P.describe() == "GF(5)[e1]/(e1^2 - e1)"
    P, inc = pi0_ring(split_components(AP(None, ["x"], [], p=5)))
    assert P.generators == () and P.dimension() == 1
    A = AP(None, ["x"], ["x*(x - 1)*(x - 2)"], p=5)
    P, inc = pi0_ring(split_components(A))
    assert P.dimension() == 3
    assert inc.is_injective()


def test_groupoid_pi0_examples():
    assert groupoid_pi0([1, 2, 3], [(1, 2)]) == [[1, 2], [3]]
    assert groupoid_pi0([1, 2, 3], []) == [[1], [2], [3]]
    assert groupoid_pi0([1, 2, 3], [(1, 2), (2, 3), (3, 1)]) == [[1, 2, 3]]
    assert groupoid_pi0(["a", "b"], {"f": ("b", "a")}) == [["a", "b"]]


SAMPLES = [
    (5, ["x", "y"], ["x*y", "x + y - 1"]),
    (5, ["x"], ["x^2*(x - 1)"]),
    (5, ["x"], ["x*(x - 1)*(x - 2)"]),
    (3, ["x", "y"], ["x^2 + 1", "y^2 + 1"]),
    (3, ["x", "y"], ["x*y*(x - 1)", "y^2 - y"]),
    (5, ["x", "y"], ["x^2 - y^2", "x^3 - x"]),
]


@pytest.mark.parametrize("p,gens,rels", SAMPLES)
def test_decomposition_invariants(p, gens, rels):
    A = AP(None, gens, rels, p=p)
    d = split_components(A)
    es = [A.element(e) for e in d.idempotents]
    for e in es:
        assert A.equal_elements(e * e, e)
        assert A.equal_elements(e ** p, e)
    for i in range(len(es)):
        for j in range(i + 1, len(es)):
            assert A.is_zero_element(es[i] * es[j])
    assert A.equal_elements(sum(es, A.ring.zero()), A.ring.one())
    # every relation lies in every component ideal; the components cover V(A)
    for J in d.component_ideals:
        assert all(J.contains(f) for f in A.ideal.generators)
    prod = A.ring.one()
    for J in d.component_ideals:
        prod = prod * J.generators[-1]
    for f in A.ideal.generators:
        assert all(radical_membership(f, J) for J in d.component_ideals)
    # F_p-points of the components partition the F_p-points of A
    pts = oracles.zero_set(A.ideal.generators, len(gens), p)
    parts = [oracles.zero_set(J.generators, len(gens), p) for J in d.component_ideals]
    assert set().union(*parts) == pts
    assert sum(len(q) for q in parts) == len(pts)
    # the pi0 ring's image is fixed by Frobenius: B_1 of it is everything
    P, inc = pi0_ring(d)
    H = SubalgebraHandle(A, [inc.images[g] ** p for g in P.generators])
    assert all(H.member(inc.images[g]).is_member for g in P.generators)


@given(st.integers(0, 2**32))
def test_groupoid_pi0_matches_search(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 50)
    objects = list(range(n))
    edges = [(rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, n))]
    got = sorted(sorted(c) for c in groupoid_pi0(objects, edges))
    assert got == oracles.reachable_classes(objects, edges)
