"""Truncated Laurent series in q with exact integer coefficients.

A :class:`LaurentSeries` stores the coefficients of q^valuation, ...,
q^(order-1).  Nothing is claimed about exponents at or above ``order``;
every operation propagates that bound pessimistically.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

__all__ = [
    "LaurentSeries",
    "NonUnitLeading",
    "add",
    "sub",
    "negate",
    "mul",
    "invert",
    "substitute_power",
    "pow",
    "shift",
    "KRONECKER_THRESHOLD",
]

# Operand length (shorter side) above which mul switches to packed big-int
# multiplication.  Both paths are exact and must agree.
KRONECKER_THRESHOLD = 48


class NonUnitLeading(ArithmeticError):
    """Raised when inverting a series whose leading coefficient is not +1 or -1."""


class LaurentSeries:
    """Immutable truncated Laurent series.

    ``coeffs[i]`` is the coefficient of ``q**(valuation + i)`` and
    ``len(coeffs) == order - valuation``.  The zero series has no
    coefficients and ``valuation == order``.

    Equality compares two series through the smaller of their orders.
    """

    __slots__ = ("_valuation", "_coeffs", "_order")

    def __init__(self, coeffs: Sequence[int] = (), valuation: int = 0, order: int | None = None):
        coeffs = list(coeffs)
        if order is None:
            order = valuation + len(coeffs)
        n = order - valuation
        if n < len(coeffs):
            coeffs = coeffs[:max(n, 0)]
        elif n > len(coeffs):
            coeffs.extend([0] * (n - len(coeffs)))
        start = 0
        while start < len(coeffs) and coeffs[start] == 0:
            start += 1
        if start == len(coeffs):
            self._valuation = order
            self._coeffs = ()
        else:
            self._valuation = valuation + start
            self._coeffs = tuple(coeffs[start:])
        self._order = order

    # -- construction -------------------------------------------------

    @classmethod
    def _raw(cls, coeffs: tuple, valuation: int, order: int) -> "LaurentSeries":
        # caller guarantees normalization
        s = object.__new__(cls)
        s._coeffs = coeffs
        s._valuation = valuation
        s._order = order
        return s

    @classmethod
    def zero(cls, order: int) -> "LaurentSeries":
        return cls._raw((), order, order)

    @classmethod
    def constant(cls, c: int, order: int) -> "LaurentSeries":
        return cls([c], 0, order)

    @classmethod
    def one(cls, order: int) -> "LaurentSeries":
        return cls.constant(1, order)

    @classmethod
    def monomial(cls, exponent: int, order: int, coeff: int = 1) -> "LaurentSeries":
        """``coeff * q**exponent`` truncated at ``order``."""
        if exponent >= order:
            return cls.zero(order)
        return cls([coeff], exponent, order)

    @classmethod
    def from_dict(cls, terms: Mapping[int, int], order: int) -> "LaurentSeries":
        """Build from ``{exponent: coefficient}``; exponents at or past ``order`` are dropped."""
        live = [k for k, v in terms.items() if v and k < order]
        if not live:
            return cls.zero(order)
        v = min(live)
        coeffs = [0] * (order - v)
        for k in live:
            coeffs[k - v] += terms[k]
        return cls(coeffs, v, order)

    # -- accessors ----------------------------------------------------

    @property
    def valuation(self) -> int:
        return self._valuation

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def order(self) -> int:
        return self._order

    def is_zero(self) -> bool:
        return not self._coeffs

    def leading_coefficient(self) -> int:
        if not self._coeffs:
            raise ValueError("zero series has no leading coefficient")
        return self._coeffs[0]

    def __getitem__(self, k: int) -> int:
        if k >= self._order:
            raise IndexError(f"coefficient of q^{k} is beyond the truncation order {self._order}")
        if k < self._valuation:
            return 0
        return self._coeffs[k - self._valuation]

    def coefficients(self, start: int, stop: int) -> list:
        """Coefficients of q^start .. q^(stop-1); ``stop`` must not exceed the order."""
        return [self[k] for k in range(start, stop)]

    def terms(self) -> Iterable[tuple]:
        """Yield ``(exponent, coefficient)`` for nonzero coefficients, ascending."""
        v = self._valuation
        for i, c in enumerate(self._coeffs):
            if c:
                yield v + i, c

    def to_dict(self) -> dict:
        return dict(self.terms())

    def truncate(self, order: int) -> "LaurentSeries":
        if order >= self._order:
            return self
        if order <= self._valuation:
            return LaurentSeries.zero(order)
        return LaurentSeries._raw(self._coeffs[: order - self._valuation], self._valuation, order)

    # -- comparison ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentSeries.constant(other, self._order)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        n = min(self._order, other._order)
        a, b = self.truncate(n), other.truncate(n)
        return a._valuation == b._valuation and a._coeffs == b._coeffs

    __hash__ = None

    def __repr__(self) -> str:
        shown = []
        for k, c in self.terms():
            if len(shown) == 8:
                shown.append("...")
                break
            shown.append(_fmt_term(c, k))
        body = " + ".join(shown).replace("+ -", "- ") if shown else "0"
        return f"{body} + O(q^{self._order})"

    # -- operators ----------------------------------------------------

    def _coerce(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return other
        if isinstance(other, int):
            return LaurentSeries.constant(other, self._order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else sub(self, other)

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else sub(other, self)

    def __neg__(self):
        return negate(self)

    def __mul__(self, other):
        if isinstance(other, int):
            return _scale(self, other)
        if isinstance(other, LaurentSeries):
            return mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            if other in (1, -1):
                return _scale(self, other)
            return NotImplemented
        if isinstance(other, LaurentSeries):
            return mul(self, invert(other))
        return NotImplemented

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else mul(other, invert(self))

    def __pow__(self, k: int):
        return pow(self, k)


def _fmt_term(c: int, k: int) -> str:
    if k == 0:
        return str(c)
    mono = "q" if k == 1 else f"q^{k}"
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


def _scale(f: LaurentSeries, c: int) -> LaurentSeries:
    if c == 0:
        return LaurentSeries.zero(f.order)
    if c == 1:
        return f
    return LaurentSeries._raw(tuple(c * x for x in f.coeffs), f.valuation, f.order)


def add(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    order = min(f.order, g.order)
    if f.is_zero():
        return g.truncate(order)
    if g.is_zero():
        return f.truncate(order)
    v = min(f.valuation, g.valuation)
    if v >= order:
        return LaurentSeries.zero(order)
    out = [0] * (order - v)
    for s in (f, g):
        off = s.valuation - v
        for i, c in enumerate(s.coeffs[: max(order - s.valuation, 0)]):
            out[off + i] += c
    return LaurentSeries(out, v, order)


def negate(f: LaurentSeries) -> LaurentSeries:
    return LaurentSeries._raw(tuple(-c for c in f.coeffs), f.valuation, f.order)


def sub(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    return add(f, negate(g))


def shift(f: LaurentSeries, k: int) -> LaurentSeries:
    """Multiply by q^k."""
    return LaurentSeries._raw(f.coeffs, f.valuation + k, f.order + k)


def _mul_schoolbook(a: Sequence[int], b: Sequence[int], n: int) -> list:
    """First ``n`` coefficients of the product of two dense coefficient lists."""
    out = [0] * n
    if len(a) > len(b):
        a, b = b, a
    for i, x in enumerate(a):
        if i >= n or not x:
            continue
        lim = n - i
        for j, y in enumerate(b[:lim]):
            out[i + j] += x * y
    return out


def _pack(coeffs: Sequence[int], width: int) -> int:
    nbytes = width // 8
    pos = b"".join(c.to_bytes(nbytes, "little") if c > 0 else bytes(nbytes) for c in coeffs)
    neg = b"".join((-c).to_bytes(nbytes, "little") if c < 0 else bytes(nbytes) for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _mul_kronecker(a: Sequence[int], b: Sequence[int], n: int) -> list:
    """Product via Kronecker substitution into one Python integer multiplication."""
    a, b = a[:n], b[:n]
    bound = min(len(a), len(b)) * max(map(abs, a)) * max(map(abs, b)) or 1
    width = -(-(bound.bit_length() + 2) // 8) * 8
    nbytes = width // 8
    prod = _pack(a, width) * _pack(b, width)
    m = len(a) + len(b) - 1
    half = 1 << (width - 1)
    # bias every digit into [0, 2^width) so the packed value can be read bytewise
    bias = int.from_bytes(half.to_bytes(nbytes, "little") * m, "little")
    raw = (prod + bias).to_bytes(m * nbytes + 1, "little")
    out = [int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half for i in range(min(m, n))]
    out.extend([0] * (n - len(out)))
    return out


def _mul_lists(a: Sequence[int], b: Sequence[int], n: int, method: str | None = None) -> list:
    if method is None:
        method = "kronecker" if min(len(a), len(b), n) > KRONECKER_THRESHOLD else "schoolbook"
    if method == "kronecker":
        return _mul_kronecker(a, b, n)
    if method == "schoolbook":
        return _mul_schoolbook(a, b, n)
    raise ValueError(f"unknown multiplication method {method!r}")


def mul(f: LaurentSeries, g: LaurentSeries, *, method: str | None = None) -> LaurentSeries:
    """Cauchy product.

    ``method`` forces ``"schoolbook"`` or ``"kronecker"``; by default the
    packed path is used once both operands exceed :data:`KRONECKER_THRESHOLD`.
    """
    order = min(f.order + g.valuation, g.order + f.valuation)
    if f.is_zero() or g.is_zero():
        return LaurentSeries.zero(order)
    v = f.valuation + g.valuation
    n = order - v
    if n <= 0:
        return LaurentSeries.zero(order)
    out = _mul_lists(f.coeffs, g.coeffs, n, method)
    # leading coefficient is a product of nonzero integers, so already normalized
    return LaurentSeries._raw(tuple(out), v, order)


def invert(f: LaurentSeries) -> LaurentSeries:
    """Multiplicative inverse of a series with leading coefficient +1 or -1.

    Newton iteration g <- g(2 - fg) on the unit part; it stays in Z because
    the leading coefficient is a unit.
    """
    if f.is_zero():
        raise ZeroDivisionError(f"series is zero through q^{f.order - 1}")
    lead = f.coeffs[0]
    if lead not in (1, -1):
        raise NonUnitLeading(f"leading coefficient {lead} is not a unit in Z")
    n = f.order - f.valuation
    g = [lead]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        e = _mul_lists(f.coeffs[:prec], g, prec)
        e = [-x for x in e]
        e[0] += 2
        g = _mul_lists(g, e, prec)
    return LaurentSeries._raw(tuple(g), -f.valuation, f.order - 2 * f.valuation)


def substitute_power(f: LaurentSeries, m: int) -> LaurentSeries:
    """f(q^m)."""
    if m < 1:
        raise ValueError("substitution power must be a positive integer")
    if m == 1:
        return f
    if f.is_zero():
        return LaurentSeries.zero(f.order * m)
    out = [0] * ((f.order - f.valuation) * m)
    out[::m] = f.coeffs
    return LaurentSeries._raw(tuple(out), f.valuation * m, f.order * m)


def pow(f: LaurentSeries, k: int) -> LaurentSeries:  # noqa: A001 - mirrors the operator
    """f**k by binary exponentiation; negative k inverts first."""
    if k < 0:
        return pow(invert(f), -k)
    if k == 0:
        return LaurentSeries.one(f.order - f.valuation if not f.is_zero() else f.order)
    result = None
    base = f
    while k:
        if k & 1:
            result = base if result is None else mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result
