"""Groebner basis property checks shared by the unit and acceptance suites."""

import random

from frobperf.corering import PolyRing
from frobperf.corering.monomial import mono_div, mono_lcm
from frobperf.groebner import Ideal, eliminate, normal_form, saturate

NAMES = ("x", "y", "z")


def random_poly(rng, ring, max_deg=3, max_terms=4):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, max_deg)
        e = [0] * ring.nvars
        for _ in range(d):
            e[rng.randrange(ring.nvars)] += 1
        terms[tuple(e)] = rng.randrange(1, ring.p)
    return ring.from_dict(terms)


def random_ideal(rng):
    p = rng.choice([3, 5])
    ring = PolyRing(p, NAMES[: rng.randint(1, 3)])
    gens = [random_poly(rng, ring) for _ in range(rng.randint(1, 3))]
    return Ideal(ring, gens)


def s_polynomial(f, g):
    ring = f.ring
    inv = ring.field.inv
    m = mono_lcm(f.lm(), g.lm())
    return f.mul_term(mono_div(m, f.lm()), inv(f.lc())) - g.mul_term(mono_div(m, g.lm()), inv(g.lc()))


def check_ideal(I, rng=None):
    """Every property as (name, ok) pairs."""
    rng = rng or random.Random(0)
    gb = I.groebner(track_cofactors=True)
    G = gb.elements
    out = []
    out.append(("buchberger", all(
        normal_form(s_polynomial(G[i], G[j]), gb).is_zero()
        for i in range(len(G)) for j in range(i + 1, len(G))
    )))
    out.append(("generators reduce to 0", all(gb.reduce(g).is_zero() for g in I.generators)))
    ok = True
    for k, g in enumerate(G):
        acc = I.ring.zero()
        for c, h in zip(gb.cofactors[k], I.generators):
            acc = acc + c * h
        ok &= acc == g
    out.append(("cofactor reconstruction", ok))
    f = random_poly(rng, I.ring, max_deg=4, max_terms=6)
    nf = normal_form(f, gb)
    out.append(("normal form idempotent", normal_form(nf, gb) == nf))
    out.append(("normal form difference in ideal", gb.reduce(f - nf).is_zero()))
    if gb.is_unit():
        out.append(("lift of 1", _lift_ok(gb, I)))
    keep = I.ring.names[-1:]
    E = eliminate(I, keep)
    out.append(("eliminate contained", all(
        gb.reduce(e.embed(I.ring)).is_zero() and set(e.variables()) <= set(keep)
        for e in E.generators
    )))
    g = random_poly(rng, I.ring, max_deg=2, max_terms=2)
    if g.is_zero():
        g = I.ring.gen(I.ring.names[0])
    S = saturate(I, g)
    sgb = S.groebner()
    out.append(("saturation contains I", all(sgb.reduce(h).is_zero() for h in I.generators)))
    return out


def _lift_ok(gb, I):
    cof = gb.lift(I.ring.one())
    acc = I.ring.zero()
    for c, h in zip(cof, I.generators):
        acc = acc + c * h
    return acc == I.ring.one()
