"""Finite pregroupoids, groupoids, and the groupoid closure.

A pregroupoid is stored through its generating data
``(U, (R,i), (D,i), (E,i), s, c, e, p1, lambda, mu, q12, nu)``; the other maps
come from the symmetry identities::

    t = s i,  p2 = i p1 i,  lambda+ = i lambda i,  mu+ = mu i,
    q23 = i q12 i,  nu+ = i nu i

Composable pairs (a, b) of a groupoid satisfy s(a) = t(b), and c(a, b) is
"a after b".
"""

import itertools
from dataclasses import dataclass, field

_MISSING = object()


def _sid(x):
    if isinstance(x, tuple):
        return "(" + ",".join(_sid(y) for y in x) + ")"
    return str(x)


def _sorted(xs):
    return sorted(xs, key=_sid)


# pregroupoids


@dataclass
class Pregroupoid:
    U: tuple
    R: tuple
    D: tuple
    E: tuple
    s: dict
    e: dict
    i_R: dict
    i_D: dict
    i_E: dict
    p1: dict
    c: dict
    lam: dict
    mu: dict
    q12: dict
    nu: dict

    # derived maps (None where some ingredient is undefined)

    def t(self, r):
        return _ap(self.s, _ap(self.i_R, r))

    def p2(self, d):
        return _ap(self.i_R, _ap(self.p1, _ap(self.i_D, d)))

    def lam_plus(self, r):
        return _ap(self.i_D, _ap(self.lam, _ap(self.i_R, r)))

    def mu_plus(self, r):
        return _ap(self.mu, _ap(self.i_R, r))

    def q23(self, x):
        return _ap(self.i_D, _ap(self.q12, _ap(self.i_E, x)))

    def nu_plus(self, x):
        return _ap(self.i_D, _ap(self.nu, _ap(self.i_E, x)))

    def composable_pairs(self):
        """(R/U)^2: pairs (a, b) with s(a) = t(b)."""
        by_t = {}
        for b in self.R:
            by_t.setdefault(self.t(b), []).append(b)
        return [(a, b) for a in self.R for b in by_t.get(self.s[a], ())]

    def to_json(self):
        def table(m, dom):
            return {_sid(x): _sid(m[x]) for x in dom if x in m}

        return {
            "objects": [_sid(x) for x in self.U],
            "arrows": [_sid(x) for x in self.R],
            "D": [_sid(x) for x in self.D],
            "E": [_sid(x) for x in self.E],
            "s": table(self.s, self.R),
            "e": table(self.e, self.U),
            "i_R": table(self.i_R, self.R),
            "i_D": table(self.i_D, self.D),
            "i_E": table(self.i_E, self.E),
            "p1": table(self.p1, self.D),
            "c": table(self.c, self.D),
            "lambda": table(self.lam, self.R),
            "mu": table(self.mu, self.R),
            "q12": table(self.q12, self.E),
            "nu": table(self.nu, self.E),
        }

    @classmethod
    def from_json(cls, obj):
        if "D" not in obj:
            return from_compositions(
                obj["objects"],
                {a: tuple(st) for a, st in obj["arrows"].items()},
                obj["identities"],
                obj["inverses"],
                [tuple(x) for x in obj.get("compositions", ())],
            )
        return cls(
            tuple(obj["objects"]), tuple(obj["arrows"]), tuple(obj["D"]), tuple(obj["E"]),
            dict(obj["s"]), dict(obj["e"]), dict(obj["i_R"]), dict(obj["i_D"]),
            dict(obj["i_E"]), dict(obj["p1"]), dict(obj["c"]), dict(obj["lambda"]),
            dict(obj["mu"]), dict(obj["q12"]), dict(obj["nu"]),
        )


def _ap(m, x):
    if x is None:
        return None
    return m.get(x)


def from_compositions(objects, arrows, identities, inverses, compositions=()):
    """Pregroupoid from arrows with partial composition.

    ``arrows`` maps arrow -> (source, target), ``identities`` object -> arrow,
    ``inverses`` arrow -> arrow, and ``compositions`` lists (a, b, c(a, b)).
    D gets the given pairs, the pairs forced by lambda, lambda+, mu, mu+ and
    the images under i. E gets every triple whose four faces lie in D and on
    which c is associative, as long as its image under i qualifies too.
    """
    U = tuple(objects)
    R = tuple(arrows)
    s = {a: st[0] for a, st in arrows.items()}
    t = {a: st[1] for a, st in arrows.items()}
    e = dict(identities)
    i_R = dict(inverses)
    comp = {}
    for a, b, ab in compositions:
        comp[(a, b)] = ab
    for r in R:
        comp.setdefault((r, e[s[r]]), r)
        comp.setdefault((e[t[r]], r), r)
        comp.setdefault((i_R[r], r), e[s[r]])
        comp.setdefault((r, i_R[r]), e[t[r]])
    for (a, b), ab in list(comp.items()):
        comp.setdefault((i_R[b], i_R[a]), i_R[ab])
    D = tuple(_sorted(comp))
    i_D = {(a, b): (i_R[b], i_R[a]) for (a, b) in D}
    p1 = {d: d[0] for d in D}
    c = {d: comp[d] for d in D}
    lam = {r: (r, e[s[r]]) for r in R}
    mu = {r: (i_R[r], r) for r in R}

    def ok(x):
        a, b, z = x
        if not all(k in comp for k in ((a, b), (b, z))):
            return False
        return (a, comp[(b, z)]) in comp and (comp[(a, b)], z) in comp and (
            comp[(a, comp[(b, z)])] == comp[(comp[(a, b)], z)]
        )

    def inv3(x):
        a, b, z = x
        return (i_R[z], i_R[b], i_R[a])

    E = []
    for (a, b) in D:
        for (b2, z) in D:
            if b2 == b and ok((a, b, z)) and ok(inv3((a, b, z))):
                E.append((a, b, z))
    E = tuple(_sorted(E))
    i_E = {x: inv3(x) for x in E}
    q12 = {x: (x[0], x[1]) for x in E}
    nu = {x: (x[0], comp[(x[1], x[2])]) for x in E}
    return Pregroupoid(U, R, D, E, s, e, i_R, i_D, i_E, p1, c, lam, mu, q12, nu)


@dataclass(frozen=True)
class Violation:
    condition: str
    identity: str
    witness: object

    def to_dict(self):
        return {"condition": self.condition, "identity": self.identity, "witness": _sid(self.witness)}


def validate_pregroupoid(P):
    """Every failure of conditions (1)-(5), pointwise. Empty means valid."""
    out = []
    U, R, D, E = set(P.U), set(P.R), set(P.D), set(P.E)
    for name, m, dom, cod in [
        ("s", P.s, P.R, U), ("e", P.e, P.U, R), ("i_R", P.i_R, P.R, R),
        ("i_D", P.i_D, P.D, D), ("i_E", P.i_E, P.E, E), ("p1", P.p1, P.D, R),
        ("c", P.c, P.D, R), ("lambda", P.lam, P.R, D), ("mu", P.mu, P.R, D),
        ("q12", P.q12, P.E, D), ("nu", P.nu, P.E, D),
    ]:
        for x in dom:
            y = m.get(x, _MISSING)
            if y is _MISSING or y not in cod:
                out.append(Violation("maps", f"{name} defined with values in its codomain", x))
    if out:
        return out

    s, e, i, iD, iE = P.s.get, P.e.get, P.i_R.get, P.i_D.get, P.i_E.get
    p1, c, lam, mu, q12, nu = P.p1.get, P.c.get, P.lam.get, P.mu.get, P.q12.get, P.nu.get
    t, p2, lamp, mup, q23, nup = P.t, P.p2, P.lam_plus, P.mu_plus, P.q23, P.nu_plus

    def check(cond, ident, dom, lhs, rhs):
        for x in dom:
            if lhs(x) != rhs(x):
                out.append(Violation(cond, ident, x))

    ident = lambda x: x  # noqa: E731
    check("1", "s e = 1", P.U, lambda x: s(e(x)), ident)
    check("1", "t e = 1", P.U, lambda x: t(e(x)), ident)
    check("1", "i i = 1 on R", P.R, lambda r: i(i(r)), ident)
    check("1", "s i = t", P.R, lambda r: s(i(r)), t)
    check("1", "t i = s", P.R, lambda r: t(i(r)), s)
    check("2", "i i = 1 on D", P.D, lambda d: iD(iD(d)), ident)
    check("2", "s p1 = t p2", P.D, lambda d: s(p1(d)), lambda d: t(p2(d)))
    check("2", "p1 i = i p2", P.D, lambda d: p1(iD(d)), lambda d: i(p2(d)))
    check("3.a", "p1 lambda = 1", P.R, lambda r: p1(lam(r)), ident)
    check("3.a", "p2 lambda = e s", P.R, lambda r: p2(lam(r)), lambda r: e(s(r)))
    check("3.a", "p1 lambda+ = e t", P.R, lambda r: p1(lamp(r)), lambda r: e(t(r)))
    check("3.a", "p2 lambda+ = 1", P.R, lambda r: p2(lamp(r)), ident)
    check("3.a", "lambda i = i lambda+", P.R, lambda r: lam(i(r)), lambda r: iD(lamp(r)))
    check("3.a", "c lambda = 1", P.R, lambda r: c(lam(r)), ident)
    check("3.a", "c lambda+ = 1", P.R, lambda r: c(lamp(r)), ident)
    check("3.b", "p1 mu = i", P.R, lambda r: p1(mu(r)), i)
    check("3.b", "p2 mu = 1", P.R, lambda r: p2(mu(r)), ident)
    check("3.b", "p1 mu+ = 1", P.R, lambda r: p1(mup(r)), ident)
    check("3.b", "p2 mu+ = i", P.R, lambda r: p2(mup(r)), i)
    check("3.b", "c mu = e s", P.R, lambda r: c(mu(r)), lambda r: e(s(r)))
    check("3.b", "c mu+ = e t", P.R, lambda r: c(mup(r)), lambda r: e(t(r)))
    check("4", "i i = 1 on E", P.E, lambda x: iE(iE(x)), ident)
    check("4", "p2 q12 = p1 q23", P.E, lambda x: p2(q12(x)), lambda x: p1(q23(x)))
    check("4", "q12 i = i q23", P.E, lambda x: q12(iE(x)), lambda x: iD(q23(x)))
    check("5", "p1 nu = q1", P.E, lambda x: p1(nu(x)), lambda x: p1(q12(x)))
    check("5", "p2 nu = c q23", P.E, lambda x: p2(nu(x)), lambda x: c(q23(x)))
    check("5", "p1 nu+ = c q12", P.E, lambda x: p1(nup(x)), lambda x: c(q12(x)))
    check("5", "p2 nu+ = q3", P.E, lambda x: p2(nup(x)), lambda x: p2(q23(x)))
    check("5", "nu i = i nu+", P.E, lambda x: nu(iE(x)), lambda x: iD(nup(x)))
    check("5", "c nu = c nu+", P.E, lambda x: c(nu(x)), lambda x: c(nup(x)))
    return out


def groupoid_form_bijective(P):
    """Both maps (p1,p2): D -> (R/U)^2 and (q12,q23): E -> D x_R D are bijections."""
    pairs = set(P.composable_pairs())
    img = [(P.p1[d], P.p2(d)) for d in P.D]
    if len(set(img)) != len(img) or set(img) != pairs:
        return False
    dd = {(d1, d2) for d1 in P.D for d2 in P.D if P.p2(d1) == P.p1[d2]}
    img = [(P.q12[x], P.q23(x)) for x in P.E]
    return len(set(img)) == len(img) and set(img) == dd


# groupoids


@dataclass
class Groupoid:
    U: tuple
    R: tuple
    s: dict
    t: dict
    comp: dict  # (a, b) -> a after b, total on composable pairs
    e: dict
    i: dict

    def composable_pairs(self):
        by_t = {}
        for b in self.R:
            by_t.setdefault(self.t[b], []).append(b)
        return [(a, b) for a in self.R for b in by_t.get(self.s[a], ())]

    def validate(self):
        """Groupoid axioms, pointwise. Empty list means valid."""
        out = []
        for x in self.U:
            if self.s[self.e[x]] != x or self.t[self.e[x]] != x:
                out.append(("identity endpoints", x))
        for a, b in self.composable_pairs():
            ab = self.comp.get((a, b))
            if ab is None:
                out.append(("composition total", (a, b)))
            elif self.s[ab] != self.s[b] or self.t[ab] != self.t[a]:
                out.append(("composite endpoints", (a, b)))
        if out:
            return out
        for a in self.R:
            if self.comp[(a, self.e[self.s[a]])] != a or self.comp[(self.e[self.t[a]], a)] != a:
                out.append(("unit", a))
            ia = self.i[a]
            if self.s[ia] != self.t[a] or self.t[ia] != self.s[a]:
                out.append(("inverse endpoints", a))
            elif self.comp[(ia, a)] != self.e[self.s[a]] or self.comp[(a, ia)] != self.e[self.t[a]]:
                out.append(("inverse", a))
        for (a, b) in self.composable_pairs():
            for z in self.R:
                if self.t[z] == self.s[b]:
                    if self.comp[(self.comp[(a, b)], z)] != self.comp[(a, self.comp[(b, z)])]:
                        out.append(("associativity", (a, b, z)))
        return out

    def to_pregroupoid(self):
        """The pregroupoid with D = (R/U)^2 and E = (R/U)^3."""
        comps = [(a, b, self.comp[(a, b)]) for a, b in self.composable_pairs()]
        return from_compositions(
            self.U, {a: (self.s[a], self.t[a]) for a in self.R}, self.e, self.i, comps
        )

    def to_json(self):
        return {
            "objects": [_sid(x) for x in self.U],
            "arrows": {_sid(a): [_sid(self.s[a]), _sid(self.t[a])] for a in self.R},
            "identities": {_sid(x): _sid(self.e[x]) for x in self.U},
            "inverses": {_sid(a): _sid(self.i[a]) for a in self.R},
            "compositions": sorted(
                [_sid(a), _sid(b), _sid(self.comp[(a, b)])] for a, b in self.composable_pairs()
            ),
        }

    @classmethod
    def from_json(cls, obj):
        arrows = obj["arrows"]
        return cls(
            tuple(obj["objects"]), tuple(arrows),
            {a: st[0] for a, st in arrows.items()}, {a: st[1] for a, st in arrows.items()},
            {(a, b): ab for a, b, ab in obj["compositions"]},
            dict(obj["identities"]), dict(obj["inverses"]),
        )


def pair_groupoid(objects):
    """One arrow x -> y for every ordered pair; arrow ids are (x, y) read as "y from x"."""
    U = tuple(objects)
    R = tuple((x, y) for x in U for y in U)
    s = {r: r[0] for r in R}
    t = {r: r[1] for r in R}
    comp = {((y, z), (x, y2)): (x, z) for (y, z) in R for (x, y2) in R if y2 == y}
    return Groupoid(U, R, s, t, comp, {x: (x, x) for x in U}, {r: (r[1], r[0]) for r in R})


def cyclic_group(n, obj="*"):
    """Z/n as a one-object groupoid, arrows 0..n-1."""
    R = tuple(range(n))
    comp = {(a, b): (a + b) % n for a in R for b in R}
    return Groupoid((obj,), R, {a: obj for a in R}, {a: obj for a in R}, comp, {obj: 0},
                    {a: (-a) % n for a in R})


# closure


class _Congruence:
    """Union-find over arrows; representatives prefer original arrows, then short labels."""

    def __init__(self):
        self.parent = {}
        self.rank = {}

    def add(self, a, rank):
        self.parent[a] = a
        self.rank[a] = rank

    def find(self, a):
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[rb] < self.rank[ra]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


class InconsistentPregroupoid(ValueError):
    pass


@dataclass
class Closure:
    status: str  # "closed" or "max_iterations"
    iterations: int
    groupoid: Groupoid = None
    partial: Pregroupoid = None
    arrow_map: dict = field(default_factory=dict)  # R -> arrows of the result
    source: Pregroupoid = None

    def canonical_map(self):
        """(f_U, f_R, f_D, f_E) of the canonical morphism P -> P^gpd."""
        P, f = self.source, self.arrow_map
        fU = {x: x for x in P.U}
        fD = {d: (f[P.p1[d]], f[P.p2(d)]) for d in P.D}
        fE = {x: (f[P.p1[P.q12[x]]], f[P.p1[P.q23(x)]], f[P.p2(P.q23(x))]) for x in P.E}
        return fU, dict(f), fD, fE

    def to_json(self):
        out = {"status": self.status, "iterations": self.iterations}
        if self.groupoid is not None:
            out["groupoid"] = self.groupoid.to_json()
            out["arrows"] = len(self.groupoid.R)
        if self.partial is not None:
            out["partial"] = self.partial.to_json()
        out["canonical_map"] = {_sid(r): _sid(v) for r, v in self.arrow_map.items()}
        return out


class _State:
    def __init__(self, P):
        self.uf = _Congruence()
        self.src, self.tgt = {}, {}
        self.labels = set()
        self.counter = itertools.count()
        for r in P.R:
            self._new(r, P.s[r], P.t(r), (0, 0, _sid(r)))
        self.e = dict(P.e)
        self.i = dict(P.i_R)
        self.comp = {}
        for d in P.D:
            self.set_comp(P.p1[d], P.p2(d), P.c[d])

    def _new(self, a, s, t, rank):
        self.uf.add(a, rank)
        self.src[a], self.tgt[a] = s, t
        self.labels.add(a)

    def new_arrow(self, a, b):
        label = f"{_sid(a)}*{_sid(b)}"
        base = label
        while label in self.labels:
            label = f"{base}#{next(self.counter)}"
        self._new(label, self.src[b], self.tgt[a], (1, len(label), label))
        return label

    def f(self, a):
        return self.uf.find(a)

    def union(self, a, b):
        fa, fb = self.f(a), self.f(b)
        if fa == fb:
            return False
        if (self.src[fa], self.tgt[fa]) != (self.src[fb], self.tgt[fb]):
            raise InconsistentPregroupoid(f"forced to identify {fa} and {fb} with different endpoints")
        return self.uf.union(fa, fb)

    def set_comp(self, a, b, ab):
        key = (self.f(a), self.f(b))
        old = self.comp.get(key)
        if old is None:
            self.comp[key] = ab
            return True
        return self.union(old, ab)

    def get(self, a, b):
        return self.comp.get((self.f(a), self.f(b)))

    def arrows(self):
        return sorted({self.f(a) for a in self.src}, key=lambda a: self.uf.rank[a])

    def saturate(self):
        """Congruence closure for the groupoid axioms and compatibility with =."""
        changed = True
        while changed:
            changed = False
            # re-key composition and inverses on representatives
            old, self.comp = self.comp, {}
            for (a, b), ab in old.items():
                key = (self.f(a), self.f(b))
                if key in self.comp:
                    changed |= self.union(self.comp[key], ab)
                else:
                    self.comp[key] = ab
            inv = {}
            for a, ia in self.i.items():
                fa = self.f(a)
                if fa in inv:
                    changed |= self.union(inv[fa], ia)
                else:
                    inv[fa] = ia
            self.i = {a: self.f(ia) for a, ia in inv.items()}
            self.comp = {k: self.f(v) for k, v in self.comp.items()}
            arrows = self.arrows()
            for x, ex in self.e.items():
                changed |= self.union(self.i.get(self.f(ex), ex), ex)
            for a in arrows:
                es, et = self.e[self.src[a]], self.e[self.tgt[a]]
                ia = self.i.get(a)
                changed |= self.set_comp(a, es, a)
                changed |= self.set_comp(et, a, a)
                if ia is not None:
                    changed |= self.set_comp(ia, a, es)
                    changed |= self.set_comp(a, ia, et)
                    iia = self.i.get(self.f(ia))
                    if iia is not None:
                        changed |= self.union(iia, a)
            # associativity and inverse of a composite
            right = {}
            for (b, z), bz in list(self.comp.items()):
                right.setdefault(b, []).append((z, bz))
            for (a, b), ab in list(self.comp.items()):
                for z, bz in right.get(b, ()):
                    x, y = self.get(ab, z), self.get(a, bz)
                    if x is not None and y is not None:
                        changed |= self.union(x, y)
                    elif x is not None:
                        changed |= self.set_comp(a, bz, x)
                    elif y is not None:
                        changed |= self.set_comp(ab, z, y)
                ia, ib = self.i.get(self.f(a)), self.i.get(self.f(b))
                iab = self.i.get(self.f(ab))
                if ia is not None and ib is not None:
                    if iab is not None:
                        changed |= self.set_comp(ib, ia, iab)
                    else:
                        w = self.get(ib, ia)
                        if w is not None:
                            self.i[self.f(ab)] = self.f(w)
                            changed = True

    def missing_pairs(self):
        arrows = self.arrows()
        by_t = {}
        for b in arrows:
            by_t.setdefault(self.tgt[b], []).append(b)
        return [
            (a, b) for a in arrows for b in by_t.get(self.src[a], ()) if (a, b) not in self.comp
        ]

    def groupoid(self, U):
        R = tuple(self.arrows())
        return Groupoid(
            tuple(U), R,
            {a: self.src[a] for a in R}, {a: self.tgt[a] for a in R},
            {k: self.f(v) for k, v in self.comp.items()},
            {x: self.f(a) for x, a in self.e.items()},
            {a: self.f(self.i[a]) for a in R},
        )

    def partial(self, U):
        R = self.arrows()
        comps = [(a, b, self.f(v)) for (a, b), v in self.comp.items()]
        return from_compositions(
            U, {a: (self.src[a], self.tgt[a]) for a in R},
            {x: self.f(a) for x, a in self.e.items()},
            {a: self.f(self.i[a]) for a in R}, comps,
        )


def groupoid_closure(P, max_iterations=16, max_arrows=20000):
    """P^gpd as the colimit of iterated pushouts R' = (R x_{s,U,t} R) + R / D.

    Each round adjoins a composite for every composable pair lacking one and
    then identifies arrows forced equal (units, inverses, associativity, and
    c on D). The loop stops once composition is total, that is once
    (p1,p2): D -> (R/U)^2 is a bijection.
    """
    bad = validate_pregroupoid(P)
    if bad:
        raise InconsistentPregroupoid(f"not a pregroupoid: {bad[0]}")
    st = _State(P)
    st.saturate()
    it = 0
    while True:
        missing = st.missing_pairs()
        if not missing:
            G = st.groupoid(P.U)
            amap = {r: st.f(r) for r in P.R}
            return Closure("closed", it, G, None, amap, P)
        if it >= max_iterations or len(st.src) > max_arrows:
            amap = {r: st.f(r) for r in P.R}
            return Closure("max_iterations", it, None, st.partial(P.U), amap, P)
        it += 1
        new = {}
        for a, b in missing:
            new[(a, b)] = st.new_arrow(a, b)
            st.comp[(a, b)] = new[(a, b)]
        for (a, b), ab in new.items():
            st.i[ab] = st.get(st.i[b], st.i[a])
        st.saturate()


# morphisms and the universal property


def check_morphism(P, G, fU, fR):
    """Is (fU, fR) a morphism from the pregroupoid P to the groupoid G?

    The maps on D and E are forced: d -> (f p1 d, f p2 d), x -> its faces.
    Returns a list of failures.
    """
    out = []
    for r in P.R:
        a = fR.get(r)
        if a is None or a not in G.s:
            out.append(("R", r))
            continue
        if G.s[a] != fU[P.s[r]] or G.t[a] != fU[P.t(r)]:
            out.append(("endpoints", r))
        if G.i[a] != fR.get(P.i_R[r]):
            out.append(("inverse", r))
    for x in P.U:
        if fR.get(P.e[x]) != G.e[fU[x]]:
            out.append(("identity", x))
    if out:
        return out
    for d in P.D:
        a, b = fR[P.p1[d]], fR[P.p2(d)]
        if G.comp.get((a, b)) != fR[P.c[d]]:
            out.append(("composition", d))
    return out


def is_pregroupoid_morphism(P, Q, fU, fR, fD, fE):
    """Do the maps commute with every structure map of the two pregroupoids?"""
    squares = [
        (P.R, lambda r: fU[P.s[r]], lambda r: Q.s[fR[r]]),
        (P.U, lambda x: fR[P.e[x]], lambda x: Q.e[fU[x]]),
        (P.R, lambda r: fR[P.i_R[r]], lambda r: Q.i_R[fR[r]]),
        (P.D, lambda d: fD[P.i_D[d]], lambda d: Q.i_D[fD[d]]),
        (P.E, lambda x: fE[P.i_E[x]], lambda x: Q.i_E[fE[x]]),
        (P.D, lambda d: fR[P.p1[d]], lambda d: Q.p1[fD[d]]),
        (P.D, lambda d: fR[P.c[d]], lambda d: Q.c[fD[d]]),
        (P.R, lambda r: fD[P.lam[r]], lambda r: Q.lam[fR[r]]),
        (P.R, lambda r: fD[P.mu[r]], lambda r: Q.mu[fR[r]]),
        (P.E, lambda x: fD[P.q12[x]], lambda x: Q.q12[fE[x]]),
        (P.E, lambda x: fD[P.nu[x]], lambda x: Q.nu[fE[x]]),
    ]
    try:
        return all(a(x) == b(x) for dom, a, b in squares for x in dom)
    except KeyError:
        return False


@dataclass(frozen=True)
class Factorization:
    status: str  # unique / none / multiple / indeterminate
    solutions: tuple = ()

    def to_dict(self):
        return {"status": self.status, "count": len(self.solutions)}


def factorizations(closure, target, fU, fR, max_nodes=200000):
    """All groupoid morphisms g: P^gpd -> target with g o kappa = f (at most two kept).

    Exhaustive backtracking: each arrow of the closure ranges over the target
    arrows with matching endpoints; composition, units and inverses are checked
    as soon as their arrows are assigned.
    """
    G = closure.groupoid
    if check_morphism(closure.source, target, fU, fR):
        raise ValueError("sample map is not a morphism of pregroupoids")
    order = list(G.R)
    cand = {
        a: [b for b in target.R if target.s[b] == fU[G.s[a]] and target.t[b] == fU[G.t[a]]]
        for a in order
    }
    forced = {}
    for r, a in closure.arrow_map.items():
        if forced.get(a, fR[r]) != fR[r]:
            return Factorization("none")
        forced[a] = fR[r]
    for x in G.U:
        ex = G.e[x]
        if forced.get(ex, target.e[fU[x]]) != target.e[fU[x]]:
            return Factorization("none")
        forced[ex] = target.e[fU[x]]
    pos = {a: k for k, a in enumerate(order)}
    constraints = {a: [] for a in order}
    for (a, b), ab in G.comp.items():
        last = max((a, b, ab), key=pos.get)
        constraints[last].append(("c", a, b, ab))
    for a in order:
        last = max((a, G.i[a]), key=pos.get)
        constraints[last].append(("i", a, G.i[a]))

    g = {}
    found = []
    nodes = [0]

    def ok(a):
        for con in constraints[a]:
            if con[0] == "c":
                _, x, y, xy = con
                if target.comp.get((g[x], g[y])) != g[xy]:
                    return False
            else:
                _, x, ix = con
                if target.i[g[x]] != g[ix]:
                    return False
        return True

    def rec(k):
        if len(found) > 1:
            return
        nodes[0] += 1
        if nodes[0] > max_nodes:
            raise _SearchBudget
        if k == len(order):
            found.append(dict(g))
            return
        a = order[k]
        for b in [forced[a]] if a in forced else cand[a]:
            g[a] = b
            if ok(a):
                rec(k + 1)
            del g[a]

    try:
        rec(0)
    except _SearchBudget:
        return Factorization("indeterminate", tuple(found))
    status = {0: "none", 1: "unique"}.get(len(found), "multiple")
    return Factorization(status, tuple(found))


class _SearchBudget(Exception):
    pass


def verify_universal_property(closure, samples, max_nodes=200000):
    """True when every sample (target, fU, fR) factors uniquely; None if a search ran out."""
    results = [factorizations(closure, T, fU, fR, max_nodes) for T, fU, fR in samples]
    if any(r.status == "indeterminate" for r in results):
        return None, results
    return all(r.status == "unique" for r in results), results


def is_isomorphism_onto(closure):
    """Is the canonical map P -> P^gpd bijective on arrows (P already a groupoid)?"""
    vals = list(closure.arrow_map.values())
    return closure.groupoid is not None and len(set(vals)) == len(vals) == len(closure.groupoid.R)


def tree_pregroupoid(objects, edges):
    """Identities, the given edges, their inverses, and only the forced compositions.

    ``edges`` maps a name to (source, target); the inverse of ``a`` is ``a^-1``.
    """
    arrows = {f"1_{x}": (x, x) for x in objects}
    inverses = {f"1_{x}": f"1_{x}" for x in objects}
    for a, (x, y) in edges.items():
        arrows[a] = (x, y)
        arrows[f"{a}^-1"] = (y, x)
        inverses[a], inverses[f"{a}^-1"] = f"{a}^-1", a
    return from_compositions(objects, arrows, {x: f"1_{x}" for x in objects}, inverses)
