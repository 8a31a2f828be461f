"""Connected components of Spec A for A finitely presented over F_p.

The relation ideal is split into pieces whose product lies in the radical of
I. Pieces that meet (their ideals are not comaximal) are merged with a
union-find, so the clusters are pairwise disjoint and cover Spec A. A
cluster is reported connected only when that is certified; otherwise the
decomposition is a certified coarsening flagged ``best_effort``.
"""

import itertools
import random
from dataclasses import dataclass, field

from .corering import PolyRing, StructuralError, univariate_factor
from .fpalg import AlgebraMorphism, AlgebraPresentation, EngineFault
from .groebner import BudgetExceeded, Ideal, eliminate, fresh_name, saturate
from .unionfind import UnionFind

CERTIFIED, BEST_EFFORT = "certified", "best_effort"


class NotComaximal(ValueError):
    pass


def ideal_product(I, J):
    gens = [a * b for a in I.groebner().elements for b in J.groebner().elements]
    return Ideal(I.ring, Ideal(I.ring, gens).groebner().elements)


def idempotent_from_comaximal(I, J):
    """e in I with e = 1 mod J, from a cofactor expression 1 = a + b.

    e is reduced modulo I*J, so e^2 = e modulo the intersection of I and J.
    """
    if I.ring != J.ring:
        raise StructuralError("ideals live in different rings")
    S = I + J
    gb = S.groebner(track_cofactors=True)
    if not gb.is_unit():
        raise NotComaximal(f"{I} and {J} are not comaximal")
    cof = gb.lift(I.ring.one())
    m = len(I.generators)
    a = I.ring.zero()
    for c, g in zip(cof[:m], S.generators[:m]):
        a = a + c * g
    return ideal_product(I, J).groebner().reduce(a)


def lift_idempotent(e, A, max_rounds=64):
    """Newton iteration e -> 3e^2 - 2e^3 until e^2 = e in A (e^2 - e nilpotent)."""
    e = A.reduce(e)
    for _ in range(max_rounds):
        if A.equal_elements(e * e, e):
            return e
        e2 = A.reduce(e * e)
        e = A.reduce(e2 * 3 - e2 * e * 2)
    raise EngineFault("idempotent lifting did not converge")


@dataclass
class Piece:
    ideal: Ideal
    connected: bool


def _eliminant(I, form):
    """Generator of (I + (z - form)) intersected with F_p[z], or None if that is zero."""
    ring = I.ring
    z = fresh_name("z", ring.names)
    big = PolyRing(ring.p, ring.names + (z,))
    E = eliminate(I.embed(big) + [big.gen(z) - form.embed(big)], [z])
    if not E.generators:
        return None
    return min(E.generators, key=lambda g: g.degree())


def _at(f, form, ring):
    """Substitute ``form`` for the single variable of f."""
    return f.subs({f.ring.names[0]: form}, ring)


def _forms(ring, seed, extra=4):
    """Candidate separating elements: the variables, then seeded linear forms."""
    out = [ring.gen(x) for x in ring.names]
    if len(ring.names) > 1:
        rng = random.Random(seed)
        for _ in range(extra):
            f = ring.gen(ring.names[0])
            for x in ring.names[1:]:
                f = f + ring.gen(x) * rng.randrange(1, ring.p)
            out.append(f)
    return out


def _is_linear(I):
    return all(g.degree() <= 1 for g in I.groebner().elements)


def _split(I, depth, max_depth, seed, out, notes):
    try:
        if I.is_unit():
            return
        if depth >= max_depth:
            notes.append("recursion depth reached")
            out.append(Piece(I, False))
            return
        if _is_linear(I):
            # a polynomial ring: connected
            out.append(Piece(I, True))
            return
        zero_dim = I.groebner().dimension() is not None
        forms = _forms(I.ring, seed) if zero_dim else [I.ring.gen(x) for x in I.ring.names]
        local = False
        rdim = None
        for form in forms:
            g = _eliminant(I, form)
            if g is None:
                continue
            _, facs = univariate_factor(g, seed)
            if len(facs) > 1:
                for f, k in facs:
                    _split(I + [_at(f, form, I.ring) ** k], depth + 1, max_depth, seed, out, notes)
                return
            if zero_dim and not local and facs:
                if rdim is None:
                    rdim = _reduced_dimension(I)
                local = facs[0][0].degree() == rdim
        if zero_dim and local:
            # the reduced quotient is F_p[form]/(f) with f irreducible: a field
            out.append(Piece(I, True))
            return
        for g in I.groebner().elements:
            for x in g.variables():
                i = I.ring.index(x)
                if g.is_constant() or not all(m[i] for m in g.terms):
                    continue
                J1 = I + [I.ring.gen(x)]
                J2 = Ideal(I.ring, saturate(I, I.ring.gen(x)).generators)
                if J1.is_unit() or J2.is_unit():
                    continue
                _split(J1, depth + 1, max_depth, seed, out, notes)
                _split(J2, depth + 1, max_depth, seed, out, notes)
                return
    except BudgetExceeded as exc:
        notes.append(f"budget: {exc}")
    out.append(Piece(I, False))


def _reduced_dimension(I):
    """dim over F_p of the radical quotient, for zero-dimensional I.

    Adding the square-free part of every variable eliminant gives the radical.
    """
    rad = I
    for x in I.ring.names:
        v = I.ring.gen(x)
        _, facs = univariate_factor(_eliminant(I, v))
        sq = I.ring.one()
        for f, _k in facs:
            sq = sq * _at(f, v, I.ring)
        rad = rad + [sq]
    return rad.groebner().dimension()


@dataclass
class ComponentDecomposition:
    algebra: AlgebraPresentation
    component_ideals: list
    idempotents: list  # display representatives in algebra.ring
    connected: list  # CERTIFIED / BEST_EFFORT per component
    disjoint: str = CERTIFIED
    notes: list = field(default_factory=list)

    def __len__(self):
        return len(self.idempotents)

    @property
    def exact(self):
        return all(c == CERTIFIED for c in self.connected)

    def to_dict(self):
        return {
            "components": len(self.idempotents),
            "idempotents": [str(e) for e in self.idempotents],
            "connected": list(self.connected),
            "disjoint": self.disjoint,
            "component_ideals": [[str(g) for g in I.generators] for I in self.component_ideals],
            "notes": list(self.notes),
        }


def _simplifier(A):
    """Pick the representative with fewest terms over variable orders of A."""
    names = A.ring.names
    perms = list(itertools.permutations(names)) if len(names) <= 5 else [names]
    bases = []
    for perm in perms:
        ring = PolyRing(A.p, perm)
        bases.append((ring, A.ideal.embed(ring).groebner()))

    def simplify(e):
        best = None
        for ring, gb in bases:
            r = gb.reduce(e.embed(ring)).embed(A.ring)
            k = (len(r.terms), str(r))
            if best is None or k < best[0]:
                best = (k, r)
        return best[1]

    return simplify


def split_components(A, seed=0, max_depth=8):
    if A.base is not None:
        raise StructuralError("component splitting needs an algebra over F_p")
    I = A.ideal
    notes = []
    pieces = []
    _split(I, 0, max_depth, seed, pieces, notes)
    if not pieces:
        raise EngineFault("splitting lost every piece of a nonzero algebra")
    uf = UnionFind(range(len(pieces)))
    for i, j in itertools.combinations(range(len(pieces)), 2):
        if uf.same(i, j):
            continue
        try:
            if not (pieces[i].ideal + pieces[j].ideal).is_unit():
                uf.union(i, j)
        except BudgetExceeded as exc:
            notes.append(f"budget: {exc}")
            uf.union(i, j)
    clusters = uf.classes()
    ideals = []
    for c in clusters:
        J = pieces[c[0]].ideal
        for k in c[1:]:
            J = ideal_product(J, pieces[k].ideal)
        ideals.append(J)
    connected = [
        CERTIFIED if all(pieces[k].connected for k in c) else BEST_EFFORT for c in clusters
    ]
    one = A.ring.one()
    if len(clusters) == 1:
        idems = [one]
    else:
        idems = []
        for i in range(len(clusters)):
            others = [ideals[j] for j in range(len(clusters)) if j != i]
            K = others[0]
            for J in others[1:]:
                K = ideal_product(K, J)
            e = idempotent_from_comaximal(K, ideals[i])
            idems.append(lift_idempotent(e, A))
        idems[-1] = A.reduce(one - sum(idems[:-1], A.ring.zero()))
    simplify = _simplifier(A)
    shown = [simplify(e) for e in idems]
    order = sorted(range(len(shown)), key=lambda i: (len(shown[i].terms), str(shown[i])))
    shown = [shown[i] for i in order]
    connected = [connected[i] for i in order]
    _check_idempotents(A, shown)
    comps = [A.ideal + [one - e] for e in shown]
    return ComponentDecomposition(A, comps, shown, connected, CERTIFIED, notes)


def _check_idempotents(A, es):
    for e in es:
        if not A.equal_elements(e * e, e):
            raise EngineFault(f"{e} is not idempotent")
    for a, b in itertools.combinations(es, 2):
        if not A.is_zero_element(a * b):
            raise EngineFault(f"{a} and {b} are not orthogonal")
    if not A.equal_elements(sum(es, A.ring.zero()), A.ring.one()):
        raise EngineFault("idempotents do not sum to 1")


def pi0_ring(decomp):
    """F_p[e_1..e_(k-1)]/(e_i^2 - e_i, e_i e_j) with e_i -> the i-th idempotent.

    The last idempotent is 1 - (e_1 + ... + e_(k-1)).
    """
    A = decomp.algebra
    k = len(decomp.idempotents)
    names = [f"e{i}" for i in range(1, k)]
    ring = PolyRing(A.p, names)
    rels = [ring.gen(e) ** 2 - ring.gen(e) for e in names]
    rels += [ring.gen(a) * ring.gen(b) for a, b in itertools.combinations(names, 2)]
    P = AlgebraPresentation(None, names, rels, p=A.p, name="pi0")
    inc = AlgebraMorphism(P, A, dict(zip(names, decomp.idempotents[: k - 1])), name="pi0->A")
    return P, inc


def groupoid_pi0(objects, arrows):
    """Orbits of the relation generated by s(r) ~ t(r).

    ``arrows`` is an iterable of (source, target) pairs or a mapping
    arrow -> (source, target). Classes come in order of first appearance
    in ``objects``.
    """
    if isinstance(arrows, dict):
        arrows = arrows.values()
    objects = list(objects)
    uf = UnionFind(objects)
    known = set(objects)
    for s, t in arrows:
        if s not in known or t not in known:
            raise ValueError(f"arrow {s} -> {t} leaves the object set")
        uf.union(s, t)
    out = {}
    for x in objects:
        out.setdefault(uf.find(x), []).append(x)
    return list(out.values())
