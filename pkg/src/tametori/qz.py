"""Exact arithmetic substrate.

Roots of unity are stored as reduced fractions in Q/Z (additive exponent
notation), so every character identity in the package is an equality of
fractions and never touches floating point.  Alongside live arbitrary
precision cyclotomic integers Z[zeta_p], Jacobi symbols, and quadratic
characters of cyclic groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True, order=True)
class RootOfUnity:
    """The root of unity exp(2*pi*i * num/den); num/den is reduced mod 1."""

    num: int
    den: int

    def __post_init__(self):
        if self.den < 1 or not (0 <= self.num < self.den or (self.num, self.den) == (0, 1)):
            raise ValueError(f"unreduced exponent {self.num}/{self.den}")

    @staticmethod
    def make(num: int, den: int) -> "RootOfUnity":
        fr = Fraction(num, den) % 1
        return RootOfUnity(fr.numerator, fr.denominator)

    @property
    def order(self) -> int:
        return self.den

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity.make(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    def __pow__(self, n: int) -> "RootOfUnity":
        return RootOfUnity.make(self.num * n, self.den)

    def inverse(self) -> "RootOfUnity":
        return self ** -1

    def is_one(self) -> bool:
        return self.num == 0

    def sign(self) -> int:
        """This value as +-1.  Raises if the order exceeds 2."""
        if self.den == 1:
            return 1
        if self.den == 2:
            return -1
        raise ValueError(f"{self} is not +-1")

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"


ONE = RootOfUnity(0, 1)
MINUS_ONE = RootOfUnity(1, 2)
IMAG = RootOfUnity(1, 4)


def sign_root(s: int) -> RootOfUnity:
    if s == 1:
        return ONE
    if s == -1:
        return MINUS_ONE
    raise ValueError(f"not a sign: {s}")


def jacobi(m: int, n: int) -> int:
    """Jacobi symbol (m/n); n must be odd and positive.  (m/1) = +1."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs an odd positive lower entry, got {n}")
    m %= n
    t = 1
    while m:
        while m % 2 == 0:
            m //= 2
            if n % 8 in (3, 5):
                t = -t
        m, n = n, m
        if m % 4 == 3 and n % 4 == 3:
            t = -t
        m %= n
    return t if n == 1 else 0


def quad_char_cyclic(order: int, exponent: int) -> int:
    """Value at generator**exponent of the nontrivial quadratic character of a
    cyclic group of even order."""
    if order <= 0 or order % 2:
        raise ValueError(f"cyclic group of order {order} has no quadratic character")
    return -1 if exponent % 2 else 1


def quad_char_value(x: RootOfUnity, group_order: int) -> int:
    """Quadratic character of a cyclic group of even order ``group_order``,
    evaluated at a member x (given as a root of unity): x**(order/2)."""
    if group_order % 2:
        raise ValueError(f"group order {group_order} is odd")
    if group_order % x.den:
        raise ValueError(f"{x} does not lie in a cyclic group of order {group_order}")
    return (x ** (group_order // 2)).sign()


@dataclass(frozen=True)
class CyclotomicInt:
    """Element of Z[zeta_p] in coordinates over the basis 1, z, ..., z^(p-2),
    reduced with z^(p-1) = -(1 + z + ... + z^(p-2))."""

    p: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.p - 1:
            raise ValueError("coefficient vector must have length p-1")

    @staticmethod
    def from_int(p: int, n: int) -> "CyclotomicInt":
        return CyclotomicInt(p, (n,) + (0,) * (p - 2))

    @staticmethod
    def zeta_power(p: int, k: int) -> "CyclotomicInt":
        k %= p
        if k == p - 1:
            return CyclotomicInt(p, tuple(-1 for _ in range(p - 1)))
        return CyclotomicInt(p, tuple(1 if j == k else 0 for j in range(p - 1)))

    def _check(self, other: "CyclotomicInt"):
        if self.p != other.p:
            raise ValueError(f"mixed cyclotomic orders {self.p} and {other.p}")

    def __add__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        self._check(other)
        return CyclotomicInt(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CyclotomicInt":
        return CyclotomicInt(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        return self + (-other)

    def __mul__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        self._check(other)
        p = self.p
        vec = [0] * p
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    vec[(i + j) % p] += a * b
        top = vec[p - 1]
        return CyclotomicInt(p, tuple(vec[i] - top for i in range(p - 1)))

    def as_int(self):
        """The rational integer this element equals, or None."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]
