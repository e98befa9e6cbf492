"""Pochhammer products and Ramanujan theta functions as truncated series.

Production builders expand infinite products.  The ``sum_oracle_*``
functions expand the same objects from their summation forms and exist so
tests can cross-check the two routes; nothing in the package calls them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .series import LaurentSeries, invert, mul, pow

__all__ = [
    "InvalidSpec",
    "MonomialArg",
    "ProductSpec",
    "pochhammer",
    "theta_phi",
    "theta_psi",
    "euler_f",
    "theta_f",
    "sum_oracle_phi",
    "sum_oracle_psi",
    "sum_oracle_pentagonal",
    "sum_oracle_f",
]


class InvalidSpec(ValueError):
    """A product or theta argument that does not converge formally."""


@dataclass(frozen=True)
class MonomialArg:
    """The argument ``sign * q**exponent``."""

    sign: int
    exponent: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvalidSpec(f"sign must be +1 or -1, got {self.sign}")
        if self.exponent < 0:
            raise InvalidSpec(f"exponent must be non-negative, got {self.exponent}")

    @classmethod
    def q(cls, exponent: int = 1, sign: int = 1) -> "MonomialArg":
        return cls(sign, exponent)

    def __neg__(self) -> "MonomialArg":
        return MonomialArg(-self.sign, self.exponent)

    def __mul__(self, other: "MonomialArg") -> "MonomialArg":
        return MonomialArg(self.sign * other.sign, self.exponent + other.exponent)

    def __str__(self) -> str:
        body = "1" if self.exponent == 0 else ("q" if self.exponent == 1 else f"q^{self.exponent}")
        return ("-" if self.sign < 0 else "") + body


@dataclass(frozen=True)
class ProductSpec:
    """``(a_1, ..., a_m; q^base)_inf`` with monomial arguments."""

    factors: tuple
    base_exponent: int

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if self.base_exponent < 1:
            raise InvalidSpec(f"base exponent must be positive, got {self.base_exponent}")
        for a in self.factors:
            if a.exponent < 1:
                raise InvalidSpec(f"factor (1 - ({a})) makes the product degenerate")

    def __add__(self, other: "ProductSpec") -> "ProductSpec":
        if other.base_exponent != self.base_exponent:
            raise ValueError("can only concatenate products with the same base")
        return ProductSpec(self.factors + other.factors, self.base_exponent)

    def __str__(self) -> str:
        args = ", ".join(map(str, self.factors))
        return f"({args}; q^{self.base_exponent})_inf"


def _binomial_multiply(c: list, sign: int, e: int) -> list:
    """Return c * (1 - sign*q^e), truncated to len(c)."""
    if e >= len(c):
        return c
    head = c[:e]
    if sign == 1:
        tail = [x - y for x, y in zip(c[e:], c)]
    else:
        tail = [x + y for x, y in zip(c[e:], c)]
    return head + tail


@lru_cache(maxsize=256)
def _expand(factors: tuple, base: int, order: int) -> LaurentSeries:
    exps = []
    for a in factors:
        e = a.exponent
        while e < order:
            exps.append((e, a.sign))
            e += base
    exps.sort()
    c = [0] * order
    c[0] = 1
    for e, s in exps:
        c = _binomial_multiply(c, s, e)
    return LaurentSeries(c, 0, order)


def pochhammer(spec: ProductSpec, order: int) -> LaurentSeries:
    """Expand ``spec`` exactly through q^(order-1)."""
    if order < 1:
        raise ValueError("order must be at least 1")
    return _expand(spec.factors, spec.base_exponent, order)


def poch(*args: int, base: int) -> ProductSpec:
    """Shorthand: ``poch(1, 4, base=5)`` is (q, q^4; q^5); negative ints mean -q^|k|."""
    return ProductSpec(tuple(MonomialArg(-1 if k < 0 else 1, abs(k)) for k in args), base)


def euler_f(order: int) -> LaurentSeries:
    """f(-q) = (q; q)_inf."""
    return pochhammer(poch(1, base=1), order)


def theta_phi(sign_of_q: int, order: int) -> LaurentSeries:
    """phi(q) = (-q; q^2)^2 (q^2; q^2), or phi(-q) when ``sign_of_q`` is -1."""
    if sign_of_q not in (1, -1):
        raise ValueError("sign_of_q must be +1 or -1")
    p = mul(pow(pochhammer(poch(-1, base=2), order), 2), pochhammer(poch(2, base=2), order))
    if sign_of_q == 1:
        return p
    # phi(-q): negate odd exponents
    flipped = [-c if (p.valuation + i) % 2 else c for i, c in enumerate(p.coeffs)]
    return LaurentSeries(flipped, p.valuation, p.order)


def theta_psi(order: int) -> LaurentSeries:
    """psi(q) = (q^2; q^2)^2 / (q; q)."""
    return mul(pow(pochhammer(poch(2, base=2), order), 2), invert(euler_f(order)))


def theta_f(a: MonomialArg, b: MonomialArg, order: int) -> LaurentSeries:
    """Ramanujan's f(a, b) via the triple product (-a, -b, ab; ab)_inf."""
    ab = a * b
    if ab.exponent < 1:
        raise InvalidSpec(f"f({a}, {b}) needs |ab| < 1")
    args = (-a, -b, ab)
    if ab.sign == 1:
        return pochhammer(ProductSpec(args, ab.exponent), order)
    # base -p with p = q^k: (x; -p) = (x; p^2) (-x p; p^2)
    p = MonomialArg(1, ab.exponent)
    return pochhammer(ProductSpec(args + tuple(-(x * p) for x in args), 2 * ab.exponent), order)


# -- summation-form oracles ----------------------------------------------


def _from_terms(terms: Sequence[tuple], order: int) -> LaurentSeries:
    coeffs = [0] * order
    for e, c in terms:
        if e < order:
            coeffs[e] += c
    return LaurentSeries(coeffs, 0, order)


def sum_oracle_f(a: MonomialArg, b: MonomialArg, order: int) -> LaurentSeries:
    """f(a, b) as the bilateral sum of a^(n(n+1)/2) b^(n(n-1)/2)."""
    if a.exponent + b.exponent < 1:
        raise InvalidSpec(f"f({a}, {b}) needs |ab| < 1")
    terms = []
    for step in (1, -1):
        n = 0 if step == 1 else -1
        while True:
            ta, tb = n * (n + 1) // 2, n * (n - 1) // 2
            e = a.exponent * ta + b.exponent * tb
            if e >= order:
                break
            terms.append((e, a.sign ** ta * b.sign ** tb))
            n += step
    return _from_terms(terms, order)


def sum_oracle_phi(order: int, sign_of_q: int = 1) -> LaurentSeries:
    terms = []
    n = 0
    while n * n < order:
        c = sign_of_q ** n
        terms.append((n * n, c if n == 0 else 2 * c))
        n += 1
    return _from_terms(terms, order)


def sum_oracle_psi(order: int) -> LaurentSeries:
    terms = []
    n = 0
    while n * (n + 1) // 2 < order:
        terms.append((n * (n + 1) // 2, 1))
        n += 1
    return _from_terms(terms, order)


def sum_oracle_pentagonal(order: int) -> LaurentSeries:
    """Sum of (-1)^n q^(n(3n-1)/2) over all integers n."""
    terms = [(0, 1)]
    n = 1
    while n * (3 * n - 1) // 2 < order:
        s = (-1) ** n
        terms.append((n * (3 * n - 1) // 2, s))
        terms.append((n * (3 * n + 1) // 2, s))
        n += 1
    return _from_terms(terms, order)
