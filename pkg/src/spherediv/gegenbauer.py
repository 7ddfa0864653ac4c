"""Gegenbauer polynomials, harmonic-space dimensions, weighted pairings.

For dimension d >= 2 the polynomials P_n are orthogonal on [-1, 1] under the
weight (1 - t^2)^((d-3)/2) and normalized so P_n(1) = 1 (Legendre for d = 3,
Chebyshev for d = 2).  Coefficients are exact rationals throughout; the
weighted inner product is taken against normalized even moments so no
transcendental surface-area constant ever enters an exact decision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


@dataclass(frozen=True)
class RationalPolynomial:
    """Univariate polynomial with exact rational coefficients, ascending degree."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1 if self.coefficients else 0

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, t):
        return evaluate(self, t)

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        return RationalPolynomial(tuple(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)))

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self + other.scale(-1)

    def scale(self, c) -> "RationalPolynomial":
        c = Fraction(c)
        return RationalPolynomial(tuple(c * x for x in self.coefficients))

    def shift_mul_t(self) -> "RationalPolynomial":
        """Multiply by t."""
        if self.is_zero():
            return self
        return RationalPolynomial((Fraction(0),) + self.coefficients)

    def to_json(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coefficients]

    @classmethod
    def from_json(cls, data: list[str]) -> "RationalPolynomial":
        return cls(tuple(Fraction(s) for s in data))


ZERO_POLYNOMIAL = RationalPolynomial(())
ONE_POLYNOMIAL = RationalPolynomial((Fraction(1),))
T_POLYNOMIAL = RationalPolynomial((Fraction(0), Fraction(1)))


def evaluate(p: RationalPolynomial, t):
    """Horner evaluation; exact for exact scalar arguments."""
    if p.is_zero():
        return Fraction(0) if isinstance(t, (int, Fraction)) else zero_of(t)
    acc = p.coefficients[-1]
    for c in reversed(p.coefficients[:-1]):
        acc = acc * t + c
    return acc


def zero_of(t):
    if isinstance(t, float):
        return 0.0
    return t - t


@lru_cache(maxsize=None)
def gegenbauer(d: int, n: int) -> RationalPolynomial:
    """Degree-n Gegenbauer polynomial for dimension d, with P_n(1) = 1.

    Built by the three-term recurrence
        (n + d - 2) P_{n+1}(t) = (2n + d - 2) t P_n(t) - n P_{n-1}(t),
    seeded with P_0 = 1 and P_1 = t.
    """
    if d < 2:
        raise ValueError("dimension must be >= 2")
    if n < 0:
        raise ValueError("degree must be >= 0")
    if n == 0:
        return ONE_POLYNOMIAL
    if n == 1:
        return T_POLYNOMIAL
    p_prev, p_cur = gegenbauer(d, n - 2), gegenbauer(d, n - 1)
    m = n - 1
    num = p_cur.shift_mul_t().scale(2 * m + d - 2) - p_prev.scale(m)
    return num.scale(Fraction(1, m + d - 2))


def harmonic_dimension(d: int, n: int) -> int:
    """Dimension of the space of degree-n spherical harmonics on S^{d-1}."""
    if d < 2 or n < 0:
        raise ValueError("need d >= 2 and n >= 0")
    first = math.comb(d + n - 1, n)
    second = math.comb(d + n - 3, n - 2) if n >= 2 else 0
    return first - second


@lru_cache(maxsize=None)
def normalized_moment(d: int, k: int) -> Fraction:
    """mu_k = m_k / m_0 for the weight (1 - t^2)^((d-3)/2) on [-1, 1].

    mu_0 = 1, odd moments vanish, and mu_{k+2} = mu_k * (k+1) / (k+d).
    """
    if d < 2 or k < 0:
        raise ValueError("need d >= 2 and k >= 0")
    if k % 2 == 1:
        return Fraction(0)
    if k == 0:
        return Fraction(1)
    return normalized_moment(d, k - 2) * Fraction(k - 1, k - 2 + d)


def weighted_inner_product(d: int, p: RationalPolynomial, q: RationalPolynomial) -> Fraction:
    """Exact pairing of p and q in L^2([-1,1], rho dt), normalized by the mass."""
    total = Fraction(0)
    for i, a in enumerate(p.coefficients):
        if a == 0:
            continue
        for j, b in enumerate(q.coefficients):
            if b == 0 or (i + j) % 2 == 1:
                continue
            total += a * b * normalized_moment(d, i + j)
    return total


def sphere_surface_area(d: int) -> float:
    """Total spherical measure of S^{d-1}: 2 pi^{d/2} / Gamma(d/2).  Float only;
    exact decisions in this package are always taken on normalized quantities."""
    return 2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0)
