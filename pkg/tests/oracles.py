"""Brute-force references that share no code with the engine.

Univariate polynomials are coefficient lists, lowest degree first.
"""

import itertools
from collections import deque


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return trim(out)


def mod(a, h, p):
    """a mod h for monic h."""
    a = trim(a)
    d = len(h) - 1
    while len(a) - 1 >= d:
        c = a[-1]
        shift = len(a) - 1 - d
        for i, y in enumerate(h):
            a[shift + i] = (a[shift + i] - c * y) % p
        a = trim(a)
    return a


def power(a, k, h, p):
    out = [1]
    for _ in range(k):
        out = mod(mul(out, a, p), h, p)
    return out


def monic_polys(deg, p):
    for tail in itertools.product(range(p), repeat=deg):
        yield list(tail) + [1]


def is_irreducible(f, p):
    """Trial division by every monic polynomial of degree 1..deg/2."""
    f = trim(f)
    d = len(f) - 1
    if d < 1:
        return False
    inv = pow(f[-1], -1, p)
    f = [(c * inv) % p for c in f]
    for k in range(1, d // 2 + 1):
        for g in monic_polys(k, p):
            if not mod(f, g, p):
                return False
    return True


def fibre_elements(d, p):
    """All elements of F_p[x]/(h) for deg h = d, as trimmed coefficient lists."""
    for c in itertools.product(range(p), repeat=d):
        yield trim(c)


def fibre_frobenius(p, h_src, h_tgt, x_image):
    """The ring map F_p[x]/(h_src) -> F_p[x]/(h_tgt), x -> x_image, by enumeration.

    Returns (kernel, image) as sets of tuples.
    """
    d = len(h_src) - 1
    kernel, image = set(), set()
    for a in fibre_elements(d, p):
        val = []
        xp = [1]
        for c in a:
            val = trim([(u + c * v) % p for u, v in itertools.zip_longest(val, xp, fillvalue=0)])
            xp = mod(mul(xp, x_image, p), h_tgt, p)
        val = tuple(mod(val, h_tgt, p))
        image.add(val)
        if not val:
            kernel.add(tuple(a))
    return kernel, image


def ideal_in_fibre(gens, h, p):
    """The ideal generated by ``gens`` in F_p[x]/(h), enumerated."""
    d = len(h) - 1
    out = set()
    elems = [list(e) for e in fibre_elements(d, p)]
    for coeffs in itertools.product(elems, repeat=len(gens)):
        acc = []
        for k, g in zip(coeffs, gens):
            t = mul(k, g, p)
            acc = trim([(u + v) % p for u, v in itertools.zip_longest(acc, t, fillvalue=0)])
        out.add(tuple(mod(acc, h, p)))
    return out


def reachable_classes(objects, edges):
    """Connected components of an undirected graph by breadth-first search."""
    adj = {x: set() for x in objects}
    for s, t in edges:
        adj[s].add(t)
        adj[t].add(s)
    seen = set()
    out = []
    for x in objects:
        if x in seen:
            continue
        comp = []
        queue = deque([x])
        seen.add(x)
        while queue:
            y = queue.popleft()
            comp.append(y)
            for z in adj[y]:
                if z not in seen:
                    seen.add(z)
                    queue.append(z)
        out.append(sorted(comp))
    return sorted(out)


def transitive_closure(objects, pairs):
    rel = {(x, x) for x in objects} | set(pairs) | {(b, a) for a, b in pairs}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return rel


def evaluate(f, point, p):
    """Value of a polynomial at a point of F_p^n, from its term dictionary."""
    total = 0
    for m, c in f.terms.items():
        v = c
        for e, x in zip(m, point):
            v = v * pow(x, e, p) % p
        total = (total + v) % p
    return total


def points(n, p):
    return itertools.product(range(p), repeat=n)


def zero_set(gens, n, p):
    return {pt for pt in points(n, p) if all(evaluate(g, pt, p) == 0 for g in gens)}
