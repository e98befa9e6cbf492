"""The Rogers-Ramanujan continued fraction R(q) and its dilations R(q^m)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .products import pochhammer, poch
from .series import LaurentSeries, invert, mul, substitute_power

__all__ = ["RSeries", "rr_product", "rr_convergent", "rr_at"]


@dataclass(frozen=True)
class RSeries:
    """R(q^m) expanded as a series in q."""

    m: int
    series: LaurentSeries


@lru_cache(maxsize=64)
def rr_product(order: int) -> LaurentSeries:
    """R(q) = (q, q^4; q^5)_inf / (q^2, q^3; q^5)_inf through q^(order-1)."""
    if order < 1:
        raise ValueError("order must be at least 1")
    num = pochhammer(poch(1, 4, base=5), order)
    den = pochhammer(poch(2, 3, base=5), order)
    return mul(num, invert(den))


def _poly_add_shifted(p: list, r: list, k: int) -> list:
    """p + q^k r for dense integer polynomials."""
    out = p + [0] * max(0, len(r) + k - len(p))
    for i, c in enumerate(r):
        out[i + k] += c
    return out


def rr_convergent(depth: int, order: int) -> LaurentSeries:
    """Expand the finite continued fraction 1/(1 + q/(1 + q^2/(... 1 + q^depth))).

    The tail is folded bottom-up as an exact ratio of integer polynomials and
    only the final quotient is expanded as a series.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    # T_k = 1 + q^k / T_{k+1}, T_{depth+1} = 1, held as num/den
    num, den = [1], [1]
    for k in range(depth, 0, -1):
        num, den = _poly_add_shifted(num, den, k), num
    # R = 1 / T_1 = den / num
    d = LaurentSeries(den, 0, order)
    n = LaurentSeries(num, 0, order)
    return mul(d, invert(n))


@lru_cache(maxsize=256)
def _rr_at(m: int, order: int) -> RSeries:
    base = rr_product(-(-order // m))
    return RSeries(m, substitute_power(base, m).truncate(order))


def rr_at(m: int, order: int) -> RSeries:
    """R(q^m) through q^(order-1), computed once at reduced order and dilated."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    return _rr_at(m, order)
