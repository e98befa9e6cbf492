"""m-dissection: split a series by exponent residue and put it back together.

A series f is written as  f(q) = sum_r q^r f_r(q^m),  0 <= r < m.
Residues of negative exponents are taken with floor-mod, so a Laurent input
dissects the same way as its shift by a multiple of m.
"""

from __future__ import annotations

from dataclasses import dataclass

from .series import LaurentSeries, add, shift, substitute_power

__all__ = ["Dissection", "extract_progression", "dissect", "reassemble"]


def extract_progression(f: LaurentSeries, m: int, r: int) -> LaurentSeries:
    """The series g with [q^k] g = [q^(mk + r)] f."""
    if m < 1:
        raise ValueError("modulus must be a positive integer")
    if not 0 <= r < m:
        raise ValueError(f"residue must lie in 0..{m - 1}, got {r}")
    # exponents mk + r < f.order  <=>  k < ceil((f.order - r) / m)
    order = -(-(f.order - r) // m)
    if f.is_zero():
        return LaurentSeries.zero(order)
    kmin = -(-(f.valuation - r) // m)
    start = m * kmin + r - f.valuation
    return LaurentSeries(f.coeffs[start::m], kmin, order)


@dataclass(frozen=True)
class Dissection:
    m: int
    parts: tuple
    source_order: int

    def reassemble(self) -> LaurentSeries:
        return reassemble(self.parts, self.m, self.source_order)


def dissect(f: LaurentSeries, m: int) -> Dissection:
    return Dissection(m, tuple(extract_progression(f, m, r) for r in range(m)), f.order)


def reassemble(parts, m: int, order: int) -> LaurentSeries:
    """sum_r q^r parts[r](q^m), truncated to ``order``."""
    total = LaurentSeries.zero(order)
    for r, part in enumerate(parts):
        total = add(total, shift(substitute_power(part, m), r))
    return total.truncate(order)
