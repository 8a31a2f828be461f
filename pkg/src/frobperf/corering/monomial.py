"""Monomials as exponent tuples, and admissible monomial orders."""

from dataclasses import dataclass


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(b, a):
    return all(y <= x for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_degree(a):
    return sum(a)


# Keys pack exponent vectors into ints (digit base _B) so that comparisons
# are single int comparisons and heaps can order by negated keys.
_B = 1 << 24


def _grevlex(e):
    k = sum(e)
    for x in reversed(e):
        k = k * _B + (_B - 1 - x)
    return k


def _lex(e):
    k = 0
    for x in e:
        k = k * _B + x
    return k


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on exponent vectors.

    ``kind`` is ``"lex"``, ``"grevlex"`` or ``"block"``. A block order compares
    the first ``block`` variables by grevlex and breaks ties with grevlex on
    the remaining ones, so it eliminates the first block. ``perm`` optionally
    lists variable positions from most to least significant.
    """

    kind: str = "grevlex"
    block: int = 0
    perm: tuple = None

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, e):
        """Sort key: ``m1 < m2`` in the order iff ``key(m1) < key(m2)``."""
        return self.keyfunc()(e)

    def keyfunc(self):
        perm = self.perm
        if self.kind == "grevlex":
            f = _grevlex
        elif self.kind == "lex":
            f = _lex
        else:
            k = self.block

            def f(e):
                rest = e[k:]
                return _grevlex(e[:k]) * _B ** (len(rest) + 1) + _grevlex(rest)

        if perm is None:
            return f
        return lambda e: f(tuple(e[i] for i in perm))

    def __str__(self):
        if self.kind == "block":
            return f"block({self.block})"
        return self.kind


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def block_order(k, perm=None):
    return MonomialOrder("block", k, perm)
