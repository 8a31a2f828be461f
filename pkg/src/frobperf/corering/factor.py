"""Univariate factorization over F_p.

Dense coefficient lists, lowest degree first. Square-free decomposition,
distinct-degree factorization, then Cantor-Zassenhaus equal-degree splitting
(trace map for p = 2). The splitting step draws from a seeded RNG.
"""

import random

from .field import StructuralError


def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a):
    return len(a) - 1


def add(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def sub(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def divmod_(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = deg(b)
    q = [0] * max(0, len(a) - db)
    while len(a) - 1 >= db and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        trim(a)
    return trim(q), a


def monic(a, p):
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def gcd(a, b, p):
    while b:
        a, b = b, divmod_(a, b, p)[1]
    return monic(a, p)


def derivative(a, p):
    return trim([i * c % p for i, c in enumerate(a)][1:])


def powmod(a, k, m, p):
    result = [1]
    a = divmod_(a, m, p)[1]
    while k:
        if k & 1:
            result = divmod_(mul(result, a, p), m, p)[1]
        k >>= 1
        if k:
            a = divmod_(mul(a, a, p), m, p)[1]
    return result


def pth_root(a, p):
    # valid when a' = 0, i.e. only exponents divisible by p occur
    return [a[i] for i in range(0, len(a), p)]


def squarefree(f, p):
    """[(g, i)] with f = prod g^i (f monic), each g square-free, coprime."""
    out = []
    c = gcd(f, derivative(f, p), p)
    w = divmod_(f, c, p)[0]
    i = 1
    while deg(w) > 0:
        y = gcd(w, c, p)
        fac = divmod_(w, y, p)[0]
        if deg(fac) > 0:
            out.append((fac, i))
        w = y
        c = divmod_(c, y, p)[0]
        i += 1
    if deg(c) > 0:
        for g, m in squarefree(pth_root(c, p), p):
            out.append((g, m * p))
    return out


def distinct_degree(f, p):
    """Split a monic square-free f into [(product of degree-d factors, d)]."""
    out = []
    i = 1
    h = [0, 1]
    x = [0, 1]
    while deg(f) >= 2 * i:
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, x, p), p)
        if deg(g) > 0:
            out.append((g, i))
            f = divmod_(f, g, p)[0]
            h = divmod_(h, f, p)[1]
        i += 1
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def equal_degree(f, d, p, rng):
    """Split f (product of distinct irreducibles of degree d) completely."""
    n = deg(f)
    if n == d:
        return [f]
    while True:
        a = trim([rng.randrange(p) for _ in range(n)])
        if deg(a) < 1:
            continue
        if p == 2:
            t = list(a)
            b = list(a)
            for _ in range(d - 1):
                b = divmod_(mul(b, b, p), f, p)[1]
                t = add(t, b, p)
            g = gcd(f, t, p)
        else:
            b = powmod(a, (p**d - 1) // 2, f, p)
            g = gcd(f, sub(b, [1], p), p)
        if 0 < deg(g) < n:
            h = divmod_(f, g, p)[0]
            return equal_degree(g, d, p, rng) + equal_degree(monic(h, p), d, p, rng)


def factor_dense(f, p, seed=0):
    """Factor a nonzero dense polynomial: returns (unit, [(monic irreducible, mult)])."""
    f = trim(list(f))
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    unit = f[-1]
    f = monic(f, p)
    rng = random.Random(seed)
    factors = []
    for g, m in squarefree(f, p):
        for h, d in distinct_degree(g, p):
            for irr in equal_degree(h, d, p, rng):
                factors.append((irr, m))
    factors.sort(key=lambda t: (len(t[0]), t[0][::-1], t[1]))
    return unit, factors


def univariate_factor(f, seed=0):
    """Factor a univariate :class:`Polynomial` over its prime field.

    Returns ``(unit, [(factor, multiplicity), ...])`` with monic irreducible
    factors sorted by degree; ``unit * prod(factor**mult) == f``.
    """
    vs = f.variables()
    if len(vs) > 1:
        raise StructuralError(f"univariate_factor needs a univariate polynomial, got {f}")
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    ring = f.ring
    if not vs:
        return f.constant_coeff(), []
    i = ring.index(vs[0])
    unit, facs = factor_dense(f.univariate_coeffs(), ring.p, seed)

    def lift(coeffs):
        terms = {}
        for k, c in enumerate(coeffs):
            if c:
                e = [0] * ring.nvars
                e[i] = k
                terms[tuple(e)] = c
        return ring.from_dict(terms)

    return unit, [(lift(g), m) for g, m in facs]
