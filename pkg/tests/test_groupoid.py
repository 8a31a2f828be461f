import dataclasses
import json
import random
from pathlib import Path

from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from frobperf.groupoid import (
    Groupoid,
    InconsistentPregroupoid,
    Pregroupoid,
    check_morphism,
    cyclic_group,
    factorizations,
    from_compositions,
    groupoid_closure,
    groupoid_form_bijective,
    is_isomorphism_onto,
    is_pregroupoid_morphism,
    pair_groupoid,
    tree_pregroupoid,
    validate_pregroupoid,
    verify_universal_property,
)

import oracles

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def tree():
    return tree_pregroupoid([1, 2, 3], {"a": (1, 2), "b": (2, 3)})


def forest():
    obj = json.loads((SCRIPTS / "forest.json").read_text())
    return Pregroupoid.from_json(obj["pregroupoid"])


def loop():
    return tree_pregroupoid(["*"], {"a": ("*", "*")})


def endpoints(G):
    return {(G.s[a], G.t[a]) for a in G.R}


def samples(C, n=2):
    """Targets for the universal property: pair groupoid, Z/n with edge weights, the closure."""
    P = C.source
    out = []
    pg = pair_groupoid(P.U)
    out.append((pg, {x: x for x in P.U}, {r: (P.s[r], P.t(r)) for r in P.R}))
    Z = cyclic_group(n)
    fR = {}
    for r in P.R:
        if r.startswith("1_"):
            fR[r] = 0
        elif r.endswith("^-1"):
            fR[r] = (-1) % n
        else:
            fR[r] = 1
    out.append((Z, {x: "*" for x in P.U}, fR))
    out.append((C.groupoid, {x: x for x in P.U}, dict(C.arrow_map)))
    return out


# validation


def test_tree_is_valid():
    P = tree()
    assert validate_pregroupoid(P) == []
    assert (len(P.R), len(P.D), len(P.E)) == (7, 15, 31)


def test_corrupted_composition_is_reported():
    P = tree()
    c = dict(P.c)
    c[("a", "1_1")] = "a^-1"
    bad = validate_pregroupoid(dataclasses.replace(P, c=c))
    assert bad and "maps" not in {v.condition for v in bad}
    assert any(v.identity == "c lambda = 1" and v.witness == "a" for v in bad)


def test_missing_lambda_pair_is_reported():
    P = tree()
    gone = P.lam["a"]
    D = tuple(d for d in P.D if d != gone)
    P2 = dataclasses.replace(
        P, D=D,
        i_D={d: v for d, v in P.i_D.items() if d != gone},
        p1={d: v for d, v in P.p1.items() if d != gone},
        c={d: v for d, v in P.c.items() if d != gone},
    )
    bad = validate_pregroupoid(P2)
    assert any(v.condition == "maps" and v.witness == "a" for v in bad)
    with pytest.raises(InconsistentPregroupoid):
        groupoid_closure(P2)


def test_groupoids_are_pregroupoids():
    for G in (pair_groupoid([1, 2, 3]), cyclic_group(4)):
        assert G.validate() == []
        P = G.to_pregroupoid()
        assert validate_pregroupoid(P) == []
        assert groupoid_form_bijective(P)
    assert not groupoid_form_bijective(tree())


# closure


def test_tree_closes_to_the_pair_groupoid():
    C = groupoid_closure(tree())
    assert C.status == "closed" and C.iterations == 1
    G = C.groupoid
    assert sorted(G.R) == sorted(
        ["1_1", "1_2", "1_3", "a", "a^-1", "b", "b^-1", "b*a", "a^-1*b^-1"]
    )
    assert G.validate() == []
    assert endpoints(G) == oracles.transitive_closure([1, 2, 3], [(1, 2), (2, 3)])
    assert G.comp[("b", "a")] == "b*a"
    assert G.i["b*a"] == "a^-1*b^-1"


def test_forest_matches_the_equivalence_relation():
    P = forest()
    C = groupoid_closure(P)
    G = C.groupoid
    assert C.status == "closed" and len(G.R) == 13
    pairs = {(P.s[r], P.t(r)) for r in P.R}
    rel = oracles.transitive_closure(P.U, pairs)
    assert endpoints(G) == rel and len(G.R) == len(rel)


@pytest.mark.parametrize("make", [tree, forest])
def test_closure_invariants(make):
    P = make()
    C = groupoid_closure(P)
    G = C.groupoid
    Gp = G.to_pregroupoid()
    assert validate_pregroupoid(Gp) == [] and groupoid_form_bijective(Gp)
    # canonical map is a morphism of pregroupoids
    assert check_morphism(P, G, {x: x for x in P.U}, C.arrow_map) == []
    assert is_pregroupoid_morphism(P, Gp, *C.canonical_map())
    # the closure of a groupoid is itself
    C2 = groupoid_closure(Gp)
    assert C2.status == "closed" and C2.iterations == 0 and is_isomorphism_onto(C2)
    # orbits are unchanged
    orbits = oracles.reachable_classes(P.U, [(P.s[r], P.t(r)) for r in P.R])
    assert oracles.reachable_classes(G.U, [(G.s[a], G.t[a]) for a in G.R]) == orbits


@pytest.mark.parametrize("make", [tree, forest])
def test_universal_property(make):
    C = groupoid_closure(make())
    ok, results = verify_universal_property(C, samples(C, 2) + samples(C, 3)[1:2])
    assert ok is True and len(results) == 4


def test_factorization_statuses():
    C = groupoid_closure(tree())
    P = C.source
    # sending everything to a single non-identity arrow of Z/2 is not a morphism
    Z = cyclic_group(2)
    with pytest.raises(ValueError):
        factorizations(C, Z, {x: "*" for x in P.U}, {r: 1 for r in P.R})


def test_relation_closes_to_cyclic_group():
    P = from_compositions(
        ["*"],
        {"1": ("*", "*"), "a": ("*", "*"), "a^-1": ("*", "*")},
        {"*": "1"},
        {"1": "1", "a": "a^-1", "a^-1": "a"},
        [("a", "a", "a^-1")],
    )
    assert validate_pregroupoid(P) == []
    C = groupoid_closure(P)
    assert C.status == "closed" and len(C.groupoid.R) == 3
    Z3 = cyclic_group(3)
    f = {"1": 0, "a": 1, "a^-1": 2}
    assert factorizations(C, Z3, {"*": "*"}, f).status == "unique"


def test_free_loop_hits_the_iteration_cap():
    C = groupoid_closure(loop(), max_iterations=3)
    assert C.status == "max_iterations" and C.groupoid is None
    assert validate_pregroupoid(C.partial) == []
    assert C.iterations == 3


def test_json_round_trip():
    P = tree()
    again = Pregroupoid.from_json(json.loads(json.dumps(P.to_json())))
    assert again.to_json() == P.to_json()
    assert validate_pregroupoid(again) == []
    G = groupoid_closure(P).groupoid
    H = Groupoid.from_json(json.loads(json.dumps(G.to_json())))
    assert H.to_json() == G.to_json() and H.validate() == []


def test_compact_json():
    obj = {
        "objects": ["x", "y"],
        "arrows": {"1x": ["x", "x"], "1y": ["y", "y"], "f": ["x", "y"], "g": ["y", "x"]},
        "identities": {"x": "1x", "y": "1y"},
        "inverses": {"1x": "1x", "1y": "1y", "f": "g", "g": "f"},
        "compositions": [],
    }
    P = Pregroupoid.from_json(obj)
    assert validate_pregroupoid(P) == []
    assert len(groupoid_closure(P).groupoid.R) == 4


def random_forest(rng, n):
    edges = {}
    for k in range(1, n):
        if rng.random() < 0.75:
            edges[f"e{k}"] = (rng.randrange(k), k) if rng.random() < 0.5 else (k, rng.randrange(k))
    return tree_pregroupoid(list(range(n)), edges)


@settings(max_examples=25)
@given(st.integers(0, 2**32), st.integers(1, 5))
def test_random_forests(seed, n):
    P = random_forest(random.Random(seed), n)
    assert validate_pregroupoid(P) == []
    C = groupoid_closure(P)
    assert C.status == "closed"
    G = C.groupoid
    rel = oracles.transitive_closure(P.U, [(P.s[r], P.t(r)) for r in P.R])
    assert endpoints(G) == rel and len(G.R) == len(rel)
    assert G.validate() == []
    assert is_pregroupoid_morphism(P, G.to_pregroupoid(), *C.canonical_map())
    ok, _ = verify_universal_property(C, samples(C)[::2])
    assert ok is True
