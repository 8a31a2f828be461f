"""Buchberger-based ideal calculus over F_p.

Gebauer-Moeller pair pruning with the normal selection strategy. All heavy
loops work on raw term dicts ``{exponent tuple: coeff}``; basis polynomials
are kept monic so a reduction step never needs an inverse.
"""

import heapq
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, replace

from .corering import PolyRing, Polynomial, StructuralError, block_order
from .corering.monomial import mono_divides, mono_lcm


class BudgetExceeded(RuntimeError):
    """A Groebner computation hit its pair or degree budget.

    Callers that produce reports turn this into an explicit
    ``budget_exceeded`` / ``indeterminate`` status.
    """

    status = "budget_exceeded"


@dataclass(frozen=True)
class Budget:
    max_pairs: int = 200_000
    max_degree: int = 256
    threads: int = 1


_budget = ContextVar("frobperf_budget", default=Budget())


def current_budget():
    return _budget.get()


@contextmanager
def budgets(**kw):
    """Temporarily override budget fields, e.g. ``with budgets(max_pairs=10):``."""
    token = _budget.set(replace(_budget.get(), **kw))
    try:
        yield _budget.get()
    finally:
        _budget.reset(token)


def _mask(m):
    b = 0
    for i, x in enumerate(m):
        if x:
            b |= 1 << i
    return b


class _Reducer:
    """A list of monic polynomials indexed for divisor lookup."""

    __slots__ = ("items",)

    def __init__(self):
        self.items = []  # (lm, mask, terms, tag)

    def add(self, lm, terms, tag):
        self.items.append((lm, _mask(lm), terms, tag))

    def find(self, m):
        mm = _mask(m)
        for lm, mask, terms, tag in self.items:
            if mask & ~mm:
                continue
            for a, b in zip(lm, m):
                if a > b:
                    break
            else:
                return lm, terms, tag
        return None


def _reduce(f, reducer, key, p, quotients=None, max_degree=None):
    """Fully reduce the term dict ``f``; returns the remainder dict.

    When ``quotients`` is a dict, it accumulates ``tag -> {monomial: coeff}``
    such that ``f = sum(q_tag * g_tag) + remainder``.
    """
    f = dict(f)
    rem = {}
    heap = [(-key(m), m) for m in f]
    heapq.heapify(heap)
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        _, m = pop(heap)
        c = f.pop(m, None)
        if c is None:
            continue
        hit = reducer.find(m)
        if hit is None:
            rem[m] = c
            continue
        lm, g, tag = hit
        q = tuple(a - b for a, b in zip(m, lm))
        if max_degree is not None and sum(m) > max_degree:
            raise BudgetExceeded(f"degree {sum(m)} exceeds max_degree={max_degree}")
        for gm, gc in g.items():
            if gm == lm:
                continue
            nm = tuple(a + b for a, b in zip(gm, q))
            old = f.get(nm)
            if old is None:
                f[nm] = (-c * gc) % p
                push(heap, (-key(nm), nm))
            else:
                v = (old - c * gc) % p
                if v:
                    f[nm] = v
                else:
                    del f[nm]
        if quotients is not None:
            qd = quotients.setdefault(tag, {})
            v = (qd.get(q, 0) + c) % p
            if v:
                qd[q] = v
            else:
                qd.pop(q, None)
    return rem


def _make_monic(terms, key, p):
    lm = max(terms, key=key)
    inv = pow(terms[lm], -1, p)
    if inv == 1:
        return lm, dict(terms), 1
    return lm, {m: c * inv % p for m, c in terms.items()}, inv


# cofactor vectors: list (one entry per input generator) of term dicts


def _vec_axpy(acc, c, mono, vec, p):
    """acc -= c * mono * vec (in place)."""
    for i, comp in enumerate(vec):
        if not comp:
            continue
        tgt = acc[i]
        for m, a in comp.items():
            nm = tuple(x + y for x, y in zip(m, mono))
            v = (tgt.get(nm, 0) - c * a) % p
            if v:
                tgt[nm] = v
            else:
                tgt.pop(nm, None)


def _vec_scale(vec, c, mono, p):
    return [
        {tuple(x + y for x, y in zip(m, mono)): a * c % p for m, a in comp.items()} for comp in vec
    ]


def _vec_apply_quotients(vec, quotients, cofs, p):
    for tag, qd in quotients.items():
        for q, c in qd.items():
            _vec_axpy(vec, c, q, cofs[tag], p)


class Ideal:
    """An ideal of ``ring`` given by generators (zeros dropped)."""

    def __init__(self, ring, generators=()):
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = ring.parse(g)
            elif not isinstance(g, Polynomial):
                g = ring.const(g)
            if g.ring != ring:
                raise StructuralError(f"generator {g} not in {ring!r}")
            if g:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._gb = {}

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.generators))})"

    def __add__(self, other):
        if isinstance(other, Ideal):
            other = other.generators
        return Ideal(self.ring, self.generators + tuple(other))

    def embed(self, ring):
        return Ideal(ring, [g.embed(ring) for g in self.generators])

    def groebner(self, track_cofactors=False, budget=None):
        gb = self._gb.get(track_cofactors) or self._gb.get(True)
        if gb is None:
            gb = groebner_basis(self, track_cofactors, budget)
            self._gb[track_cofactors] = gb
        return gb

    def contains(self, f):
        return self.groebner().reduce(f).is_zero()

    def is_unit(self):
        return self.groebner().is_unit()

    def is_zero(self):
        return not self.generators

    def same_as(self, other):
        """Ideal equality by mutual containment."""
        return all(map(self.contains, other.generators)) and all(
            map(other.contains, self.generators)
        )


class GroebnerBasis:
    """Reduced Groebner basis, sorted by increasing leading monomial.

    ``cofactors[k][j]`` is the coefficient of ``ideal.generators[j]`` in the
    expansion of ``elements[k]`` (only when computed with tracking).
    """

    def __init__(self, ideal, elements, cofactors=None, pairs_processed=0):
        self.ideal = ideal
        self.ring = ideal.ring
        self.elements = tuple(elements)
        self.cofactors = cofactors
        self.pairs_processed = pairs_processed
        self._reducer = _Reducer()
        for k, g in enumerate(self.elements):
            self._reducer.add(g.lm(), g.terms, k)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(map(str, self.elements))}])"

    @property
    def order(self):
        return self.ring.order

    def is_unit(self):
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def reduce(self, f):
        """Normal form of ``f``: zero iff ``f`` lies in the ideal."""
        if f.ring != self.ring:
            raise StructuralError(f"{f} is not in {self.ring!r}")
        r = _reduce(f.terms, self._reducer, self.ring.key, self.ring.p)
        return Polynomial(self.ring, r)

    def lift(self, f):
        """Cofactors ``a_j`` with ``f = sum a_j * generators[j]``, or None if f not in the ideal."""
        if self.cofactors is None:
            raise ValueError("lift needs a basis computed with track_cofactors=True")
        quotients = {}
        r = _reduce(f.terms, self._reducer, self.ring.key, self.ring.p, quotients)
        if r:
            return None
        p = self.ring.p
        m = len(self.ideal.generators)
        acc = [{} for _ in range(m)]
        raw = [[c.terms for c in row] for row in self.cofactors]
        _vec_apply_quotients(acc, quotients, raw, p)
        return [Polynomial(self.ring, {k: (-v) % p for k, v in comp.items()}) for comp in acc]

    def standard_monomials(self, limit=100_000):
        """Monomials outside the leading-term ideal, or None if infinitely many."""
        n = self.ring.nvars
        lms = [g.lm() for g in self.elements]
        # zero-dimensional iff every variable has a pure power among the lms
        bounds = []
        for i in range(n):
            pure = [m[i] for m in lms if all(x == 0 for j, x in enumerate(m) if j != i)]
            if not pure:
                return None
            bounds.append(min(pure))
        out = []

        def rec(i, cur):
            if len(out) > limit:
                raise BudgetExceeded("too many standard monomials")
            if i == n:
                m = tuple(cur)
                if not any(mono_divides(lm, m) for lm in lms):
                    out.append(m)
                return
            for e in range(bounds[i]):
                cur.append(e)
                rec(i + 1, cur)
                cur.pop()

        if self.is_unit():
            return []
        rec(0, [])
        out.sort(key=self.ring.key)
        return out

    def dimension(self):
        """F_p-dimension of ring/ideal, or None if infinite."""
        sm = self.standard_monomials()
        return None if sm is None else len(sm)


def groebner_basis(ideal, track_cofactors=False, budget=None):
    """Reduced Groebner basis of ``ideal`` for its ring's order.

    Raises :class:`BudgetExceeded` when the pair or degree budget runs out.
    """
    budget = budget or current_budget()
    ring = ideal.ring
    key = ring.key
    p = ring.p
    gens = ideal.generators
    ngen = len(gens)
    max_degree = budget.max_degree

    polys = []  # index -> (lm, terms)
    cofs = []  # index -> cofactor vector (tracking only)
    reducer = _Reducer()
    active = []  # indices currently in G
    pairs = {}  # (i, j) -> lcm
    heap = []
    processed = 0

    def unit_vector(j, c):
        v = [{} for _ in range(ngen)]
        v[j] = {(0,) * ring.nvars: c}
        return v

    def insert(lm, terms, cof):
        h = len(polys)
        polys.append((lm, terms))
        if track_cofactors:
            cofs.append(cof)
        # Gebauer-Moeller update
        cands = [(g, mono_lcm(polys[g][0], lm)) for g in active]
        keep = []
        for idx, (g, l) in enumerate(cands):
            glm = polys[g][0]
            coprime = all(a == 0 or b == 0 for a, b in zip(glm, lm))
            if coprime:
                keep.append((g, l, True))
                continue
            dominated = False
            for j, (g2, l2) in enumerate(cands):
                if j != idx and mono_divides(l2, l) and (l2 != l or j < idx):
                    dominated = True
                    break
            if not dominated:
                keep.append((g, l, False))
        for (i, j), l in list(pairs.items()):
            if (
                mono_divides(lm, l)
                and mono_lcm(polys[i][0], lm) != l
                and mono_lcm(polys[j][0], lm) != l
            ):
                del pairs[(i, j)]
        for g, l, coprime in keep:
            if not coprime:
                pairs[(g, h)] = l
                heapq.heappush(heap, (key(l), g, h))
        active[:] = [g for g in active if not mono_divides(lm, polys[g][0])]
        active.append(h)
        reducer.items = []
        for g in active:
            reducer.add(polys[g][0], polys[g][1], g)

    unit_found = None
    for j, g in enumerate(gens):
        if g.degree() > max_degree:
            raise BudgetExceeded(f"generator degree exceeds max_degree={max_degree}")
        quotients = {} if track_cofactors else None
        r = _reduce(g.terms, reducer, key, p, quotients, max_degree)
        if not r:
            continue
        lm, terms, inv = _make_monic(r, key, p)
        cof = None
        if track_cofactors:
            cof = unit_vector(j, 1)
            _vec_apply_quotients(cof, quotients, cofs, p)
            cof = _vec_scale(cof, inv, (0,) * ring.nvars, p)
        insert(lm, terms, cof)
        if not any(lm):
            unit_found = len(polys) - 1
            break

    while heap and unit_found is None:
        _, i, j = heapq.heappop(heap)
        l = pairs.pop((i, j), None)
        if l is None:
            continue
        processed += 1
        if processed > budget.max_pairs:
            raise BudgetExceeded(f"more than max_pairs={budget.max_pairs} S-pairs")
        if sum(l) > max_degree:
            raise BudgetExceeded(f"S-pair degree {sum(l)} exceeds max_degree={max_degree}")
        (lmi, fi), (lmj, fj) = polys[i], polys[j]
        qi = tuple(a - b for a, b in zip(l, lmi))
        qj = tuple(a - b for a, b in zip(l, lmj))
        s = {}
        for m, c in fi.items():
            if m != lmi:
                s[tuple(a + b for a, b in zip(m, qi))] = c
        for m, c in fj.items():
            if m != lmj:
                nm = tuple(a + b for a, b in zip(m, qj))
                v = (s.get(nm, 0) - c) % p
                if v:
                    s[nm] = v
                else:
                    s.pop(nm, None)
        quotients = {} if track_cofactors else None
        r = _reduce(s, reducer, key, p, quotients, max_degree)
        if not r:
            continue
        lm, terms, inv = _make_monic(r, key, p)
        if sum(lm) > max_degree:
            raise BudgetExceeded(f"degree {sum(lm)} exceeds max_degree={max_degree}")
        cof = None
        if track_cofactors:
            cof = _vec_scale(cofs[i], 1, qi, p)
            _vec_axpy(cof, 1, qj, cofs[j], p)
            _vec_apply_quotients(cof, quotients, cofs, p)
            cof = _vec_scale(cof, inv, (0,) * ring.nvars, p)
        insert(lm, terms, cof)
        if not any(lm):
            unit_found = len(polys) - 1

    if unit_found is not None:
        active = [unit_found]

    # inter-reduce the minimal basis, smallest leading monomial first
    active.sort(key=lambda g: key(polys[g][0]))
    final = []
    final_cofs = []
    for g in active:
        lm, terms = polys[g]
        others = _Reducer()
        for h in active:
            if h != g:
                others.add(polys[h][0], polys[h][1], h)
        tail = {m: c for m, c in terms.items() if m != lm}
        quotients = {} if track_cofactors else None
        r = _reduce(tail, others, key, p, quotients)
        r[lm] = 1
        final.append(Polynomial(ring, r))
        if track_cofactors:
            cof = [dict(c) for c in cofs[g]]
            _vec_apply_quotients(cof, quotients, cofs, p)
            final_cofs.append(tuple(Polynomial(ring, c) for c in cof))
    return GroebnerBasis(
        ideal, final, tuple(final_cofs) if track_cofactors else None, processed
    )


def normal_form(f, G):
    return G.reduce(f)


def fresh_name(prefix, taken, start=0):
    taken = set(taken)
    i = start
    while f"{prefix}{i}" in taken:
        i += 1
    return f"{prefix}{i}"


def eliminate(ideal, keep, budget=None, result_ring=None):
    """Generators of ``ideal`` intersected with F_p[keep].

    Uses a block order with the eliminated variables in the leading block.
    The result lives in ``result_ring`` (default: the keep variables, in the
    original relative order, grevlex).
    """
    ring = ideal.ring
    keep = [n for n in ring.names if n in set(keep)]
    for k in keep:
        ring.index(k)
    drop = [n for n in ring.names if n not in set(keep)]
    elim_ring = PolyRing(ring.field, drop + keep, block_order(len(drop)))
    gb = ideal.embed(elim_ring).groebner(budget=budget)
    out_ring = result_ring or PolyRing(ring.field, keep)
    kept = set(keep)
    gens = [g.embed(out_ring) for g in gb.elements if set(g.variables()) <= kept]
    return Ideal(out_ring, gens)


def saturate(ideal, g, budget=None):
    """I : g^infinity, via I + (g*z - 1) and elimination of z."""
    if g.is_zero():
        raise ValueError("cannot saturate by zero")
    ring = ideal.ring
    z = fresh_name("z", ring.names)
    big = PolyRing(ring.field, (z,) + ring.names, ring.order)
    zz = big.gen(z)
    J = Ideal(big, [h.embed(big) for h in ideal.generators] + [g.embed(big) * zz - 1])
    return eliminate(J, ring.names, budget, result_ring=ring)


def radical_membership(f, ideal, budget=None):
    """True iff f lies in the radical of ``ideal`` (1 in I + (f*z - 1))."""
    ring = ideal.ring
    if f.is_zero():
        return True
    z = fresh_name("z", ring.names)
    big = PolyRing(ring.field, ring.names + (z,))
    J = Ideal(big, [h.embed(big) for h in ideal.generators] + [f.embed(big) * big.gen(z) - 1])
    return J.groebner(budget=budget).is_unit()


def is_unit_ideal(ideal, budget=None):
    return ideal.groebner(budget=budget).is_unit()
