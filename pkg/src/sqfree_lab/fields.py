"""Coefficient fields: the rationals and prime fields GF(p).

Elements are plain Python values: `Fraction` in characteristic 0 and ints
in the range [0, p) in characteristic p.  A `FieldSpec` bundles the
characteristic together with the arithmetic on those representatives, so
everything downstream (polynomials, matrices, module maps) stays exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def is_prime(p: int) -> bool:
    """Deterministic Miller-Rabin, valid for all p < 3_215_031_751."""
    if p < 2:
        return False
    for q in (2, 3, 5, 7):
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The rationals (characteristic 0) or GF(p) for a prime p < 2**31."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p == 0:
            return
        if p >= 2 ** 31 or not is_prime(p):
            raise ValueError(f"characteristic must be 0 or a prime < 2**31, got {p}")

    @property
    def is_modular(self) -> bool:
        return self.characteristic != 0

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    # -- element construction ------------------------------------------------

    @property
    def zero(self):
        return 0 if self.characteristic else Fraction(0)

    @property
    def one(self):
        return 1 if self.characteristic else Fraction(1)

    def of_int(self, a: int):
        return a % self.characteristic if self.characteristic else Fraction(a)

    def of_fraction(self, q: Fraction):
        """Image of a rational number; fails if p divides the denominator."""
        p = self.characteristic
        if not p:
            return Fraction(q)
        num, den = q.numerator, q.denominator
        if den % p == 0:
            raise ZeroDivisionError(f"{q} has no image in GF({p})")
        return num * pow(den, -1, p) % p

    # -- arithmetic on representatives ---------------------------------------

    def add(self, a, b):
        return (a + b) % self.characteristic if self.characteristic else a + b

    def sub(self, a, b):
        return (a - b) % self.characteristic if self.characteristic else a - b

    def mul(self, a, b):
        return (a * b) % self.characteristic if self.characteristic else a * b

    def neg(self, a):
        return (-a) % self.characteristic if self.characteristic else -a

    def inv(self, a):
        if self.characteristic:
            return pow(a, -1, self.characteristic)
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))


QQ = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)
