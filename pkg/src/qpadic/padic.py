"""Exact p-adic arithmetic on rational numbers.

Every scalar in this package is a `fractions.Fraction`, so the p-adic
valuation, the norm |x|_p = p**(-v_p(x)), the p-adic fractional part and
the additive character built from it are all computed exactly. Nothing in
this module touches floating point.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "INFINITY",
    "PhaseQ",
    "additive_character",
    "as_rational",
    "fractional_part",
    "is_prime",
    "padic_norm",
    "require_prime",
    "valuation",
]

#: Valuation of zero. Compares greater than every integer valuation.
INFINITY = math.inf


def as_rational(x: Fraction | int | str) -> Fraction:
    """Coerce an int, a Fraction, or a string like "-3/7" to a Fraction.

    Strings may use the unicode minus sign. A zero denominator or any
    other malformed literal raises ValueError rather than leaking the
    parser's own exception types.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        text = x.strip().replace("−", "-").replace("–", "-")
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise ValueError(f"zero denominator in rational literal {x!r}") from None
        except ValueError:
            raise ValueError(f"malformed rational literal {x!r}") from None
    raise TypeError(f"cannot interpret {type(x).__name__} as a rational")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def require_prime(p: int) -> None:
    if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
        raise ValueError(f"{p!r} is not a prime")


def _int_valuation(n: int, p: int) -> int:
    # n != 0
    n = abs(n)
    v = 0
    while n % p == 0:
        v += 1
        n //= p
    return v


def valuation(x: Fraction | int | str, p: int) -> int | float:
    """p-adic valuation of a rational. Zero maps to INFINITY."""
    require_prime(p)
    q = as_rational(x)
    if q == 0:
        return INFINITY
    return _int_valuation(q.numerator, p) - _int_valuation(q.denominator, p)


def padic_norm(x: Fraction | int | str, p: int) -> Fraction:
    """|x|_p = p**(-v_p(x)) as an exact Fraction. |0|_p = 0."""
    v = valuation(x, p)
    if v == INFINITY:
        return Fraction(0)
    if v >= 0:
        return Fraction(1, p**v)
    return Fraction(p ** (-v))


def fractional_part(x: Fraction | int | str, p: int) -> Fraction:
    """The p-adic fractional part of a rational.

    Returns the unique r in [0, 1) with denominator a power of p such
    that x - r is a p-adic integer. Any rational is accepted: writing
    x = a / (p**k * m) with m coprime to p, the p-coprime denominator
    part m is inverted modulo p**k, giving r = (a * m^-1 mod p**k) / p**k.
    """
    require_prime(p)
    q = as_rational(x)
    v = valuation(q, p)
    if v >= 0:
        return Fraction(0)
    k = -int(v)
    pk = p**k
    # gcd(num, den) = 1 and v_p(q) = -k force den = p**k * m with m coprime to p
    m = q.denominator // pk
    r = (q.numerator * pow(m, -1, pk)) % pk
    return Fraction(r, pk)


@dataclass(frozen=True)
class PhaseQ:
    """A root of unity exp(2*pi*i*angle) carried as its exact angle.

    The angle is a rational reduced into [0, 1); for characters evaluated
    at a prime p its denominator is a power of p. Multiplication adds
    angles modulo 1, so products of phases stay exact.
    """

    angle: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "angle", as_rational(self.angle) % 1)

    def __mul__(self, other: "PhaseQ") -> "PhaseQ":
        return PhaseQ((self.angle + other.angle) % 1)

    def inverse(self) -> "PhaseQ":
        return PhaseQ(-self.angle % 1)

    @property
    def is_one(self) -> bool:
        return self.angle == 0

    def to_complex(self) -> complex:
        return cmath.exp(2j * math.pi * float(self.angle))


def additive_character(x: Fraction | int | str, p: int) -> PhaseQ:
    """chi(x) = exp(2*pi*i*{x}_p), trivial exactly on the p-adic integers."""
    return PhaseQ(fractional_part(x, p))
