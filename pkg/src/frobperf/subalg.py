"""R-subalgebras of a presented algebra, via tag-variable elimination.

For generators g_1..g_k of a subalgebra of A = R[x]/I, adjoin tags y_i with
relations y_i - g_i and compute a Groebner basis for a block order with the
x-block above (tags, base variables). An element lies in R<g_1..g_k> iff its
normal form involves only tags and base variables; that normal form is then
a polynomial witness w(y) with w(g) = the element.
"""

from dataclasses import dataclass

from .corering import PolyRing, Polynomial, block_order
from .fpalg import AlgebraMorphism, AlgebraPresentation, EngineFault, morphism_kernel
from .groebner import BudgetExceeded, Ideal, fresh_name

YES, NO, INDETERMINATE = "yes", "no", "indeterminate"


@dataclass(frozen=True)
class Membership:
    status: str
    witness: Polynomial = None  # in the tag ring, only when status == "yes"
    reason: str = ""
    level: int = None  # FrobeniusChain: first level where membership failed

    @property
    def is_member(self):
        return self.status == YES

    def __bool__(self):
        raise TypeError("use .is_member or .status; membership may be indeterminate")


class SubalgebraHandle:
    """The R-subalgebra of ``ambient`` generated by ``generators``."""

    def __init__(self, ambient, generators, tags=None, tag_prefix="y"):
        self.ambient = ambient
        gens = []
        names = []
        for i, g in enumerate(generators):
            g = ambient.reduce(g)
            if g:
                gens.append(g)
                names.append(tags[i] if tags else None)
        self.generators = tuple(gens)
        taken = set(ambient.ring.names)
        out = []
        for want in names:
            t = want if want and want not in taken else fresh_name(want or tag_prefix, taken, 1)
            taken.add(t)
            out.append(t)
        self.tags = tuple(out)
        base_vars = ambient.base_vars
        n = len(ambient.generators)
        self.elim_ring = PolyRing(
            ambient.p, ambient.generators + self.tags + base_vars, block_order(n)
        )
        self.tag_ring = PolyRing(ambient.p, self.tags + base_vars)
        self._gb = None
        self._presentation = None

    def __repr__(self):
        return f"SubalgebraHandle(<{', '.join(map(str, self.generators))}> in {self.ambient.label()})"

    @property
    def cache(self):
        """The elimination Groebner basis (built on first use)."""
        if self._gb is None:
            ring = self.elim_ring
            rels = [f.embed(ring) for f in self.ambient.ideal.generators]
            rels += [ring.gen(t) - g.embed(ring) for t, g in zip(self.tags, self.generators)]
            self._gb = Ideal(ring, rels).groebner()
        return self._gb

    def build(self):
        self.cache
        return self

    def evaluate(self, w):
        """Substitute the generators for the tags in ``w``; result reduced in the ambient."""
        w = w.embed(self.tag_ring)
        images = dict(zip(self.tags, self.generators))
        return self.ambient.reduce(w.subs(images, self.ambient.ring))

    def member(self, g):
        try:
            gb = self.cache
        except BudgetExceeded as exc:
            return Membership(INDETERMINATE, reason=str(exc))
        g = self.ambient.reduce(g)
        r = gb.reduce(g.embed(self.elim_ring))
        n = len(self.ambient.generators)
        if any(any(m[:n]) for m in r.terms):
            return Membership(NO, reason=f"normal form {r} involves ambient generators")
        w = r.embed(self.tag_ring)
        if not self.ambient.equal_elements(self.evaluate(w), g):
            raise EngineFault(f"membership witness {w} does not evaluate to {g}")
        return Membership(YES, w)

    def contains(self, other):
        """True / False / None (indeterminate) for other subset of self."""
        results = [self.member(g).status for g in other.generators]
        if NO in results:
            return False
        if INDETERMINATE in results:
            return None
        return True

    def presentation(self, verify=True):
        """(AlgebraPresentation over R on the tags, inclusion morphism into the ambient)."""
        if self._presentation is None:
            A = self.ambient
            n = len(A.generators)
            base_ideal = A.base.ideal if A.base is not None else None
            rels = []
            for f in self.cache.elements:
                if any(any(m[:n]) for m in f.terms):
                    continue
                h = f.embed(self.tag_ring)
                if not any(any(m[: len(self.tags)]) for m in h.terms):
                    # only base variables: a relation already holding in R?
                    if base_ideal is not None and base_ideal.contains(h.embed(base_ideal.ring)):
                        continue
                    if base_ideal is None and h.is_zero():
                        continue
                rels.append(h)
            P = AlgebraPresentation(A.base, self.tags, rels, p=A.p, allow_zero=True)
            inc = AlgebraMorphism(P, A, dict(zip(self.tags, self.generators)), name="inclusion")
            if verify and not morphism_kernel(inc).is_zero():
                raise EngineFault("subalgebra presentation is not injective")
            self._presentation = (P, inc)
        return self._presentation


def subalgebra_member(S, g):
    return S.member(g)


def subalgebra_presentation(S, verify=True):
    return S.presentation(verify)


def subalgebra_equal(S, T):
    """True / False, or None when a membership test was indeterminate."""
    if S.ambient is not T.ambient and not S.ambient.same_presentation(T.ambient):
        raise ValueError("subalgebras must share the ambient algebra")
    a = T.contains(S)
    if a is False:
        return False
    b = S.contains(T)
    if b is False:
        return False
    if a is None or b is None:
        return None
    return True


def frob_image_subalgebra(A, n):
    """B_n = R<x^(p^n) : x a generator of A>, the image of the n-fold relative Frobenius."""
    if n < 0:
        raise ValueError("n must be >= 0")
    gens = [A.gen(x).frobenius_power(n) for x in A.generators]
    return SubalgebraHandle(A, gens)


def whole_algebra(A):
    return SubalgebraHandle(A, [A.gen(x) for x in A.generators])


def base_subalgebra(A):
    return SubalgebraHandle(A, [])


class FrobeniusChain:
    """The image chain A = B_0 >= B_1 >= B_2 >= ... of relative Frobenius.

    Level n is computed inside the presentation P_{n-1} of B_{n-1}: B_n is the
    R-subalgebra generated by the p-th powers of P_{n-1}'s generators, so every
    step is a degree-p elimination instead of a degree-p^n one. Level-n tags
    are named after the generators of A (``x`` -> ``x_n``) and stand for
    x^(p^n).
    """

    def __init__(self, A):
        self.algebra = A
        self._handles = [None]
        self._presentations = [A]
        self._tags = [{x: x for x in A.generators}]
        self._inclusions = {}

    def __repr__(self):
        return f"FrobeniusChain({self.algebra.label()}, built={self.built})"

    @property
    def built(self):
        return len(self._presentations) - 1

    def _extend(self):
        n = len(self._presentations)
        P = self._presentations[-1]
        prev = self._tags[-1]
        names = [x for x in self.algebra.generators if x in prev]
        gens = [P.gen(prev[x]) ** P.p for x in names]
        H = SubalgebraHandle(P, gens, tags=[f"{x}_{n}" for x in names])
        H.cache
        kept = [x for x, g in zip(names, gens) if P.reduce(g)]
        Pn, _ = H.presentation(verify=False)
        Pn.name = f"B{n}"
        self._handles.append(H)
        self._presentations.append(Pn)
        self._tags.append(dict(zip(kept, H.tags)))

    def level(self, n):
        """Build levels up to ``n``; may raise BudgetExceeded."""
        while self.built < n:
            self._extend()
        return self._presentations[n]

    def presentation(self, n):
        return self.level(n)

    def handle(self, n):
        """SubalgebraHandle of B_n inside P_{n-1}."""
        self.level(n)
        return self._handles[n]

    def tags(self, n):
        """{generator of A: tag of P_n standing for its p^n-th power}."""
        self.level(n)
        return dict(self._tags[n])

    def inclusion(self, n):
        """P_n -> A, tag of x -> x^(p^n)."""
        if n not in self._inclusions:
            Pn = self.level(n)
            A = self.algebra
            images = {t: A.gen(x).frobenius_power(n) for x, t in self._tags[n].items()}
            self._inclusions[n] = AlgebraMorphism(Pn, A, images, name=f"B{n}->A")
        return self._inclusions[n]

    def subalgebra(self, n):
        """B_n as a one-shot SubalgebraHandle of A (the direct elimination route)."""
        return frob_image_subalgebra(self.algebra, n)

    def member(self, g, n):
        """Is g in B_n? The witness is a polynomial in P_n's tags."""
        A = self.algebra
        w = A.reduce(g)
        for k in range(1, n + 1):
            try:
                H = self.handle(k)
            except BudgetExceeded as exc:
                return Membership(INDETERMINATE, reason=str(exc), level=k)
            m = H.member(w)
            if m.status != YES:
                return Membership(m.status, reason=m.reason, level=k)
            w = m.witness.embed(self._presentations[k].ring)
        if n and not A.equal_elements(self.inclusion(n)(w), g):
            raise EngineFault(f"chain witness {w} does not evaluate to {g}")
        return Membership(YES, w)

    def check_witness(self, w, g, n):
        """True iff the tag polynomial ``w`` evaluates to g under P_n -> A."""
        if n == 0:
            return self.algebra.equal_elements(w, g)
        return self.algebra.equal_elements(self.inclusion(n)(w), g)

    def frobenius_witness(self, a, n):
        """Tag polynomial for a^(p^n) in P_n: twist base coefficients, x -> x_n."""
        from .fpalg import twist_polynomial

        A = self.algebra
        Pn = self.level(n)
        a = A.reduce(a)
        tw = twist_polynomial(a, A.base_vars, A.p**n) if n else a
        tags = self._tags[n]
        images = {x: (Pn.gen(tags[x]) if x in tags else Pn.ring.zero()) for x in A.generators}
        return tw.subs(images, Pn.ring)

    def stable_at(self, n):
        """B_n == B_{n+1}? True / False / None (indeterminate)."""
        try:
            self.level(n + 1)
        except BudgetExceeded:
            return None
        H = self._handles[n + 1]
        Pn = self._presentations[n]
        statuses = [H.member(Pn.gen(t)).status for t in Pn.generators]
        if NO in statuses:
            return False
        if INDETERMINATE in statuses:
            return None
        return True
