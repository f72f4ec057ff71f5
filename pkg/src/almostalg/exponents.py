"""The exponent lattice Z[1/p]_{>=0}.

Every exponent appearing in the base rings is a nonnegative rational whose
denominator is a power of the fixed prime p.  Arbitrary rationals are
rejected at construction time.
"""
from __future__ import annotations

import functools
from fractions import Fraction


@functools.total_ordering
class PExp:
    """Nonnegative rational num / p**k in canonical form.

    Canonical form: ``p`` does not divide ``num`` unless ``num == 0`` (in
    which case ``k == 0``).
    """

    __slots__ = ("p", "num", "k")

    def __init__(self, p: int, num: int, k: int = 0):
        if p < 2:
            raise ValueError(f"p must be at least 2, got {p}")
        if num < 0:
            raise ValueError(f"negative exponent {num}/{p}^{k}")
        if k < 0:
            raise ValueError(f"negative denominator exponent {k}")
        while k > 0 and num % p == 0:
            num //= p
            k -= 1
        if num == 0:
            k = 0
        self.p = p
        self.num = num
        self.k = k

    @classmethod
    def from_fraction(cls, p: int, q: Fraction | int) -> "PExp":
        q = Fraction(q)
        if q < 0:
            raise ValueError(f"negative exponent {q}")
        den = q.denominator
        k = 0
        while den % p == 0:
            den //= p
            k += 1
        if den != 1:
            raise ValueError(f"{q} is not a p-power-denominator rational for p={p}")
        return cls(p, q.numerator * 1, k)

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.p**self.k)

    def _check(self, other: "PExp") -> None:
        if not isinstance(other, PExp):
            raise TypeError(f"expected PExp, got {type(other).__name__}")
        if other.p != self.p:
            raise ValueError(f"mixed primes {self.p} and {other.p}")

    def __add__(self, other: "PExp") -> "PExp":
        self._check(other)
        k = max(self.k, other.k)
        p = self.p
        return PExp(p, self.num * p ** (k - self.k) + other.num * p ** (k - other.k), k)

    def __sub__(self, other: "PExp") -> "PExp":
        self._check(other)
        k = max(self.k, other.k)
        p = self.p
        num = self.num * p ** (k - self.k) - other.num * p ** (k - other.k)
        return PExp(p, num, k)

    def __mul__(self, n: int) -> "PExp":
        if not isinstance(n, int):
            return NotImplemented
        return PExp(self.p, self.num * n, self.k)

    __rmul__ = __mul__

    def scale_pow(self, j: int) -> "PExp":
        """Multiply by p**j (j may be negative)."""
        if j >= 0:
            return PExp(self.p, self.num * self.p**j, self.k)
        return PExp(self.p, self.num, self.k - j)

    def to_int_at_level(self, n: int) -> int:
        """Value * p**n, which must be an integer (requires k <= n)."""
        if self.k > n:
            raise ValueError(f"exponent {self} does not live at level {n}")
        return self.num * self.p ** (n - self.k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PExp):
            return NotImplemented
        return self.p == other.p and self.num == other.num and self.k == other.k

    def __lt__(self, other: "PExp") -> bool:
        self._check(other)
        k = max(self.k, other.k)
        p = self.p
        return self.num * p ** (k - self.k) < other.num * p ** (k - other.k)

    def __hash__(self):
        return hash((self.p, self.num, self.k))

    def is_zero(self) -> bool:
        return self.num == 0

    def __repr__(self):
        if self.k == 0:
            return f"{self.num}"
        return f"{self.num}/{self.p}^{self.k}"


def pexp(p: int, num: int, k: int = 0) -> PExp:
    return PExp(p, num, k)


def pexp_min(*xs: PExp) -> PExp:
    return min(xs)


def pexp_max(*xs: PExp) -> PExp:
    return max(xs)
