"""Prime fields F_p with p < 2**16."""


class StructuralError(ValueError):
    """Operands live in incompatible rings, or an input has the wrong shape."""


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """The field Z/pZ.

    Elements are plain ints in ``range(p)``; this object only carries the
    modulus and the arithmetic helpers.
    """

    __slots__ = ("p",)

    def __init__(self, p):
        p = int(p)
        if p > 2**16 or not is_prime(p):
            raise ValueError(f"characteristic must be a prime <= 2^16, got {p}")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def __call__(self, a):
        return int(a) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.p)

    def pow(self, a, k):
        return pow(a, k, self.p)

    def signed(self, a):
        """Representative of ``a`` in (-p/2, p/2], used for printing."""
        a %= self.p
        return a - self.p if a > self.p // 2 else a

    def elements(self):
        return range(self.p)
