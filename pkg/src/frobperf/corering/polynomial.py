"""Sparse multivariate polynomials over F_p.

A polynomial is a dict ``{exponent tuple: coefficient}`` wrapped together with
its :class:`PolyRing` (field, variable names, monomial order). Zero
coefficients are never stored.
"""

from .field import PrimeField, StructuralError
from .monomial import GREVLEX, MonomialOrder, mono_divides, mono_mul


class PolyRing:
    """F_p[names] with a fixed monomial order."""

    __slots__ = ("field", "names", "order", "nvars", "key", "_index", "_hash")

    def __init__(self, p, names, order=GREVLEX):
        self.field = p if isinstance(p, PrimeField) else PrimeField(p)
        names = tuple(names)
        if len(set(names)) != len(names):
            raise StructuralError(f"repeated variable names in {names}")
        self.names = names
        self.order = order
        self.nvars = len(names)
        self.key = order.keyfunc()
        self._index = {n: i for i, n in enumerate(names)}
        self._hash = hash((self.field.p, names, order))

    @property
    def p(self):
        return self.field.p

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.names == other.names
            and self.order == other.order
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"GF({self.p})[{','.join(self.names)}]<{self.order}>"

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise StructuralError(f"{name!r} is not a variable of {self!r}") from None

    def with_order(self, order):
        return PolyRing(self.field, self.names, order)

    def with_names(self, names, order=None):
        return PolyRing(self.field, names, self.order if order is None else order)

    # constructors

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c %= self.p
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, name):
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self):
        return [self.gen(n) for n in self.names]

    def monomial(self, exps, c=1):
        c %= self.p
        return Polynomial(self, {tuple(exps): c} if c else {})

    def from_dict(self, terms):
        p = self.p
        return Polynomial(self, {m: c % p for m, c in terms.items() if c % p})

    def parse(self, text):
        from .parse import parse_polynomial

        return parse_polynomial(text, self)

    def __call__(self, x):
        if isinstance(x, Polynomial):
            return x.embed(self)
        if isinstance(x, str):
            return self.parse(x)
        return self.const(int(x))


class Polynomial:
    """An element of a :class:`PolyRing`. Treat as immutable."""

    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._lm = None

    # structure

    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise StructuralError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_coeff(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def sorted_terms(self):
        """``[(monomial, coeff), ...]`` strictly decreasing in the ring order."""
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def lm(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        if self._lm is None:
            self._lm = max(self.terms, key=self.ring.key)
        return self._lm

    def lc(self):
        return self.terms[self.lm()]

    def lt(self):
        m = self.lm()
        return Polynomial(self.ring, {m: self.terms[m]})

    def monic(self):
        if not self.terms:
            return self
        inv = self.ring.field.inv(self.lc())
        return self.scale(inv)

    def scale(self, c):
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: a * c % p for m, a in self.terms.items()})

    def mul_term(self, mono, c=1):
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {mono_mul(m, mono): a * c % p for m, a in self.terms.items()})

    def degree(self, name=None):
        if not self.terms:
            return -1
        if name is None:
            return max(sum(m) for m in self.terms)
        i = self.ring.index(name)
        return max(m[i] for m in self.terms)

    def variables(self):
        """Names of the variables that actually occur."""
        used = [False] * self.ring.nvars
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used[i] = True
        return tuple(n for n, u in zip(self.ring.names, used) if u)

    def is_univariate(self):
        return len(self.variables()) <= 1

    # arithmetic

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                out[m] = (get(m, 0) + ca * cb) % p
        return Polynomial(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative int")
        p = self.ring.p
        # Frobenius shortcut: exact in characteristic p
        if k and k % p == 0:
            q = 1
            while k % p == 0:
                k //= p
                q *= p
            return (self ** k).frobenius_power_q(q)
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def frobenius_power_q(self, q):
        """self ** q for q a power of p: exponents scale, F_p coefficients stay."""
        return Polynomial(self.ring, {tuple(e * q for e in m): c for m, c in self.terms.items()})

    def frobenius_power(self, n):
        """self ** (p ** n)."""
        if n < 0:
            raise ValueError("n must be >= 0")
        return self.frobenius_power_q(self.ring.p ** n)

    def divides_lm(self, other):
        return mono_divides(self.lm(), other.lm())

    # comparison / hashing

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # conversion

    def embed(self, ring):
        """Re-express in ``ring``, matching variables by name."""
        if ring == self.ring:
            return self
        if ring.p != self.ring.p:
            raise StructuralError("characteristic mismatch")
        pos = []
        for i, n in enumerate(self.ring.names):
            j = ring._index.get(n)
            pos.append(j)
        out = {}
        zero = [0] * ring.nvars
        for m, c in self.terms.items():
            e = list(zero)
            for i, x in enumerate(m):
                if x:
                    j = pos[i]
                    if j is None:
                        raise StructuralError(
                            f"variable {self.ring.names[i]!r} missing from {ring!r}"
                        )
                    e[j] = x
            out[tuple(e)] = c
        return Polynomial(ring, out)

    def subs(self, images, ring=None):
        """Substitute ``images[name]`` for each variable.

        Variables without an image are kept (embedded by name into ``ring``).
        """
        target = ring or self.ring
        pw_cache = {}

        def power(i, k):
            key = (i, k)
            if key not in pw_cache:
                name = self.ring.names[i]
                if name in images:
                    img = images[name]
                    if not isinstance(img, Polynomial):
                        img = target.const(img)
                    pw_cache[key] = img.embed(target) ** k
                else:
                    pw_cache[key] = target.gen(name) ** k
            return pw_cache[key]

        result = target.zero()
        for m, c in self.sorted_terms():
            t = target.const(c)
            for i, k in enumerate(m):
                if k:
                    t = t * power(i, k)
            result = result + t
        return result

    def diff(self, name):
        """Partial derivative with respect to the variable ``name``."""
        i = self.ring.index(name)
        p = self.ring.p
        out = {}
        for m, c in self.terms.items():
            k = m[i] % p
            if k:
                e = list(m)
                e[i] -= 1
                out[tuple(e)] = c * k % p
        return Polynomial(self.ring, out)

    def univariate_coeffs(self):
        """Dense coefficient list (low to high) of a univariate polynomial."""
        vs = self.variables()
        if len(vs) > 1:
            raise StructuralError(f"not univariate: {self}")
        if not vs:
            return [self.constant_coeff()] if self.terms else []
        i = self.ring.index(vs[0])
        out = [0] * (self.degree() + 1)
        for m, c in self.terms.items():
            out[m[i]] = c
        return out

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


def format_poly(f):
    """Canonical text, terms in decreasing order, e.g. ``x^2*y - u + 1``."""
    if not f.terms:
        return "0"
    names = f.ring.names
    field = f.ring.field
    parts = []
    for m, c in f.sorted_terms():
        c = field.signed(c)
        neg = c < 0
        c = abs(c)
        factors = []
        for n, e in zip(names, m):
            if e == 1:
                factors.append(n)
            elif e:
                factors.append(f"{n}^{e}")
        body = "*".join(factors)
        if not body:
            body = str(c)
        elif c != 1:
            body = f"{c}*{body}"
        parts.append((neg, body))
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out
