"""Finitely presented algebras over F_p or over a finitely presented F_p-algebra.

An :class:`AlgebraPresentation` is ``Base[x1..xn]/(f1..fm)`` where ``Base`` is
either F_p (``base=None``) or another presentation over F_p, so towers have
depth at most two: F_p -> R -> A. Elements of A are polynomials in the ring
whose variables are A's generators followed by R's generators.
"""

from dataclasses import dataclass

from .corering import PolyRing, Polynomial, StructuralError, block_order
from .groebner import BudgetExceeded, Ideal, eliminate, fresh_name


class ZeroAlgebraError(ValueError):
    pass


class IllDefinedMorphism(ValueError):
    pass


class EngineFault(RuntimeError):
    """A check that holds by theorem failed; indicates a bug."""


class AlgebraPresentation:
    def __init__(self, base=None, generators=(), relations=(), p=None, name=None, allow_zero=False):
        if base is not None:
            if base.base is not None:
                raise StructuralError("base towers deeper than F_p -> R -> A are not supported")
            if p is not None and p != base.p:
                raise StructuralError(f"characteristic mismatch: {p} vs {base.p}")
            p = base.p
        if p is None:
            raise StructuralError("characteristic required for an algebra over F_p")
        self.base = base
        self.name = name
        self.generators = tuple(generators)
        base_vars = base.generators if base is not None else ()
        clash = set(self.generators) & set(base_vars)
        if clash:
            raise StructuralError(f"generator names clash with base variables: {sorted(clash)}")
        self.ring = PolyRing(p, self.generators + base_vars)
        rels = []
        for f in relations:
            if isinstance(f, str):
                f = self.ring.parse(f)
            elif isinstance(f, Polynomial):
                f = f.embed(self.ring)
            else:
                f = self.ring.const(f)
            if f:
                rels.append(f)
        self.relations = tuple(rels)
        base_rels = tuple(r.embed(self.ring) for r in base.relations) if base is not None else ()
        self.ideal = Ideal(self.ring, base_rels + self.relations)
        self.allow_zero = allow_zero
        if not allow_zero:
            try:
                zero = self.ideal.is_unit()
            except BudgetExceeded:
                zero = False
            if zero:
                raise ZeroAlgebraError(f"relations of {self.label()} generate the unit ideal")

    @property
    def p(self):
        return self.ring.p

    @property
    def base_vars(self):
        return self.base.generators if self.base is not None else ()

    def label(self):
        return self.name or f"[{','.join(self.generators)}]"

    def __repr__(self):
        return f"AlgebraPresentation({self.describe()})"

    def describe(self):
        base = f"GF({self.p})" if self.base is None else self.base.describe()
        rels = ", ".join(map(str, self.relations))
        return f"{base}[{','.join(self.generators)}]/({rels})"

    def to_dict(self):
        return {
            "base": f"GF({self.p})" if self.base is None else self.base.to_dict(),
            "vars": list(self.generators),
            "relations": [str(f) for f in self.relations],
        }

    def __eq__(self, other):
        return isinstance(other, AlgebraPresentation) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(repr(self.to_dict()))

    # elements

    def element(self, x):
        if isinstance(x, Polynomial):
            return x.embed(self.ring)
        return self.ring(x)

    def gb(self):
        return self.ideal.groebner()

    def reduce(self, f):
        return self.gb().reduce(self.element(f))

    def is_zero_element(self, f):
        return self.reduce(f).is_zero()

    def equal_elements(self, f, g):
        return self.is_zero_element(self.element(f) - self.element(g))

    def gen(self, name):
        return self.ring.gen(name)

    def is_zero_algebra(self):
        return self.ideal.is_unit()

    def dimension(self):
        """Dimension over F_p of the whole algebra (None if infinite)."""
        return self.gb().dimension()

    def base_algebra(self):
        """The base R viewed as an R-algebra with no generators."""
        if self.base is None:
            return AlgebraPresentation(None, (), (), p=self.p, name=f"GF({self.p})")
        return AlgebraPresentation(self.base, (), (), name=self.base.name)

    def same_presentation(self, other):
        """Equal bases, generator names and relation ideals."""
        if not isinstance(other, AlgebraPresentation):
            return False
        if self.generators != other.generators or self.p != other.p:
            return False
        if (self.base is None) != (other.base is None):
            return False
        if self.base is not None and not self.base.same_presentation(other.base):
            return False
        return self.ideal.same_as(other.ideal.embed(self.ring))


def same_base(a, b):
    if a.base is None or b.base is None:
        return a.base is None and b.base is None and a.p == b.p
    return a.base is b.base or a.base.same_presentation(b.base)


class AlgebraMorphism:
    """A morphism of algebras over a common base, given on generators.

    Base elements map identically. Well-definedness is checked eagerly.
    """

    def __init__(self, source, target, images, name=None, check=True):
        if not same_base(source, target):
            raise StructuralError(
                f"morphism needs a common base: {source.describe()} -> {target.describe()}"
            )
        imgs = {}
        for g in source.generators:
            if g not in images:
                raise StructuralError(f"no image given for generator {g!r}")
            imgs[g] = target.reduce(images[g])
        extra = set(images) - set(source.generators)
        if extra:
            raise StructuralError(f"images given for unknown generators {sorted(extra)}")
        self.source = source
        self.target = target
        self.images = imgs
        self.name = name
        if check:
            for f in source.relations:
                if not self(f).is_zero():
                    raise IllDefinedMorphism(f"relation {f} does not map to 0 (image {self(f)})")

    def __call__(self, f):
        """Image of a source element, reduced in the target."""
        f = self.source.element(f)
        return self.target.reduce(f.subs(self.images, self.target.ring))

    def __repr__(self):
        body = ", ".join(f"{g} -> {self.images[g]}" for g in self.source.generators)
        return f"AlgebraMorphism({self.source.label()} -> {self.target.label()}: {body})"

    def to_dict(self):
        return {
            "source": self.source.to_dict(),
            "target": self.target.to_dict(),
            "images": {g: str(self.images[g]) for g in self.source.generators},
        }

    def compose(self, other):
        """self o other."""
        return AlgebraMorphism(
            other.source, self.target, {g: self(other.images[g]) for g in other.source.generators}
        )

    def kernel(self):
        return morphism_kernel(self)

    def is_injective(self):
        return morphism_kernel(self).is_zero()

    def is_surjective(self):
        from .subalg import SubalgebraHandle

        S = SubalgebraHandle(self.target, [self.images[g] for g in self.source.generators])
        return all(S.member(self.target.gen(x)).is_member for x in self.target.generators)


def identity_morphism(A):
    return AlgebraMorphism(A, A, {g: A.gen(g) for g in A.generators})


# Frobenius


def twist_polynomial(f, base_vars, q):
    """Raise every base variable to the q-th power: coefficient twist r -> r^q."""
    ring = f.ring
    idx = [ring.index(v) for v in base_vars]
    out = {}
    for m, c in f.terms.items():
        e = list(m)
        for i in idx:
            e[i] *= q
        out[tuple(e)] = c
    return Polynomial(ring, out)


def frobenius_twist(A, n):
    """A^(p^n/R): the base change of A along the n-fold Frobenius of R."""
    if n < 1:
        raise ValueError("twist index must be >= 1")
    if A.base is None:
        return A
    q = A.p**n
    rels = [twist_polynomial(f, A.base_vars, q) for f in A.relations]
    name = f"{A.name}^(p^{n})" if A.name else None
    return AlgebraPresentation(A.base, A.generators, rels, name=name, allow_zero=A.allow_zero)


def relative_frobenius(A, n=1):
    """Frob^n: A^(p^n/R) -> A, x -> x^(p^n), identity on R."""
    if n < 1:
        raise ValueError("power must be >= 1")
    src = frobenius_twist(A, n)
    images = {g: A.gen(g).frobenius_power(n) for g in A.generators}
    try:
        return AlgebraMorphism(src, A, images, name=f"Frob^{n}")
    except IllDefinedMorphism as exc:
        raise EngineFault(f"relative Frobenius failed to be well defined: {exc}") from exc


# kernels and images


def morphism_kernel(phi, budget=None):
    """Generators of ker(phi), reduced modulo the source relations.

    Tag each source generator x_i with y_i - phi(x_i) over the target
    relations, eliminate the target generators, then rename tags back.
    An ideal with no generators means phi is injective.
    """
    S, T = phi.source, phi.target
    taken = set(T.ring.names) | set(S.generators)
    tags = []
    for g in S.generators:
        t = fresh_name(f"{g}_", taken)
        taken.add(t)
        tags.append(t)
    base_vars = T.base_vars
    ring = PolyRing(T.p, T.generators + tuple(tags) + base_vars, block_order(len(T.generators)))
    gens = [f.embed(ring) for f in T.ideal.generators]
    for g, t in zip(S.generators, tags):
        gens.append(ring.gen(t) - phi.images[g].embed(ring))
    kept = tuple(tags) + base_vars
    elim = eliminate(Ideal(ring, gens), kept, budget)
    back = dict(zip(tags, S.generators))
    out = []
    seen = set()
    for f in elim.generators:
        r = S.reduce(_rename(f, back, S.ring))
        if r and r not in seen:
            seen.add(r)
            out.append(r)
    return Ideal(S.ring, out)


def _rename(f, mapping, ring):
    """Move ``f`` into ``ring``, renaming variables by ``mapping``."""
    src = f.ring
    pos = [ring.index(mapping.get(n, n)) for n in src.names]
    out = {}
    for m, c in f.terms.items():
        e = [0] * ring.nvars
        for i, x in enumerate(m):
            if x:
                e[pos[i]] += x
        e = tuple(e)
        out[e] = (out.get(e, 0) + c) % ring.p
    return ring.from_dict(out)


@dataclass
class Image:
    algebra: AlgebraPresentation
    surjection: AlgebraMorphism
    inclusion: AlgebraMorphism
    kernel: Ideal


def schematic_image(phi, verify=True):
    """Factor phi as source ->> source/ker(phi) >-> target."""
    K = morphism_kernel(phi)
    S = phi.source
    img = AlgebraPresentation(
        S.base, S.generators, S.relations + K.generators, p=S.p, name=f"im({phi.name or 'phi'})"
    )
    surj = AlgebraMorphism(S, img, {g: img.gen(g) for g in S.generators})
    inc = AlgebraMorphism(img, phi.target, dict(phi.images))
    if verify and not morphism_kernel(inc).is_zero():
        raise EngineFault("induced map from the image is not injective")
    return Image(img, surj, inc, K)


# tensor products and base change


@dataclass
class Tensor:
    algebra: AlgebraPresentation
    left: AlgebraMorphism
    right: AlgebraMorphism
    renamed: dict  # right generator -> new name


def tensor_over_base(A, B):
    """A (x)_R B with generator collisions on the right renamed."""
    if not same_base(A, B):
        raise StructuralError("tensor product needs a common base")
    taken = set(A.generators) | set(A.base_vars)
    renamed = {}
    gens = list(A.generators)
    for g in B.generators:
        if g in taken:
            new = fresh_name(f"{g}_", taken, 2)
            renamed[g] = new
            g = new
        taken.add(g)
        gens.append(g)
    T_ring = PolyRing(A.p, tuple(gens) + A.base_vars)
    rels = [f.embed(T_ring) for f in A.relations]
    rels += [_rename(f, renamed, T_ring) for f in B.relations]
    T = AlgebraPresentation(A.base, gens, rels, p=A.p, allow_zero=True)
    left = AlgebraMorphism(A, T, {g: T.gen(g) for g in A.generators})
    right = AlgebraMorphism(B, T, {g: T.gen(renamed.get(g, g)) for g in B.generators})
    return Tensor(T, left, right, renamed)


def base_change(A, psi):
    """A (x)_{R, psi} R' for psi: R -> R' (a morphism of F_p-algebras)."""
    if A.base is None:
        raise StructuralError("base change needs an algebra over a nontrivial base")
    if not psi.source.same_presentation(A.base):
        raise StructuralError("psi must start at the base of A")
    Rp = psi.target
    if Rp.base is not None:
        raise StructuralError("base change target must be an algebra over F_p")
    if set(A.generators) & set(Rp.generators):
        raise StructuralError("generator names of A clash with the new base")
    new_ring = PolyRing(A.p, A.generators + Rp.generators)
    images = {u: psi.images[u].embed(new_ring) for u in A.base_vars}
    rels = [f.subs(images, new_ring) for f in A.relations]
    name = f"{A.name}_{Rp.name}" if A.name and Rp.name else None
    return AlgebraPresentation(Rp, A.generators, rels, name=name, allow_zero=True)


@dataclass
class Sup:
    algebra: AlgebraPresentation
    inclusion: AlgebraMorphism
    first: AlgebraMorphism
    second: AlgebraMorphism


def sup_factorization(A, E1, E2, phi1, phi2):
    """Smallest factorization dominating E1 -> A and E2 -> A.

    Computed as the schematic image of E1 (x)_R E2 -> A.
    """
    T = tensor_over_base(E1, E2)
    images = {g: phi1.images[g] for g in E1.generators}
    for g in E2.generators:
        images[T.renamed.get(g, g)] = phi2.images[g]
    psi = AlgebraMorphism(T.algebra, A, images, name="sup")
    im = schematic_image(psi)
    first = im.surjection.compose(T.left)
    second = im.surjection.compose(T.right)
    return Sup(im.algebra, im.inclusion, first, second)
