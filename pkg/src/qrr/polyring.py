"""Sparse polynomials in a, b, c, d, e with coefficients in Z[q].

Terms are stored flat as ``{(q_exponent, (ea, eb, ec, ed, ee)): int}``;
:attr:`MultiPoly.terms` regroups them by variable exponent vector with a
:class:`QPoly` coefficient for callers that want the Z[q][a..e] view.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping

from .series import LaurentSeries, add, mul

__all__ = [
    "VARIABLES",
    "QPoly",
    "MultiPoly",
    "Difference",
    "UnassignedVariable",
    "gens",
    "coeff_substitute",
    "rename",
    "compose",
    "eval_series",
    "exact_equal",
    "parse_poly",
]

VARIABLES = ("a", "b", "c", "d", "e")
_NVARS = len(VARIABLES)
_ZERO_VEC = (0,) * _NVARS


class UnassignedVariable(KeyError):
    pass


class QPoly:
    """Polynomial in q with integer coefficients, ``{exponent: coeff}``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        self._terms = {k: v for k, v in (terms or {}).items() if v}

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def degree(self) -> int:
        return max(self._terms, default=-1)

    def to_series(self, order: int) -> LaurentSeries:
        return LaurentSeries.from_dict(self._terms, order)

    def __eq__(self, other):
        if isinstance(other, int):
            other = QPoly({0: other})
        if not isinstance(other, QPoly):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"QPoly({dict(sorted(self._terms.items()))})"


class MultiPoly:
    """Immutable sparse polynomial in Z[q][a, b, c, d, e]."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple, int] | None = None):
        self._terms = {k: v for k, v in (terms or {}).items() if v}

    # -- construction and views ---------------------------------------

    @classmethod
    def constant(cls, c: int) -> "MultiPoly":
        return cls({(0, _ZERO_VEC): c})

    @classmethod
    def variable(cls, name: str) -> "MultiPoly":
        if name == "q":
            return cls({(1, _ZERO_VEC): 1})
        i = VARIABLES.index(name)
        vec = tuple(1 if j == i else 0 for j in range(_NVARS))
        return cls({(0, vec): 1})

    @property
    def flat_terms(self) -> dict:
        """``{(q_exponent, exponent_vector): coeff}``."""
        return dict(self._terms)

    @property
    def terms(self) -> dict:
        """``{exponent_vector: QPoly}``."""
        grouped = defaultdict(dict)
        for (k, vec), c in self._terms.items():
            grouped[vec][k] = c
        return {vec: QPoly(t) for vec, t in grouped.items()}

    def coefficient(self, vec: tuple) -> QPoly:
        return QPoly({k: c for (k, v), c in self._terms.items() if v == tuple(vec)})

    def variables(self) -> tuple:
        used = set()
        for _, vec in self._terms:
            used.update(i for i, x in enumerate(vec) if x)
        return tuple(VARIABLES[i] for i in sorted(used))

    def degree(self, var: str) -> int:
        if var == "q":
            return max((k for k, _ in self._terms), default=-1)
        i = VARIABLES.index(var)
        return max((vec[i] for _, vec in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    # -- arithmetic ---------------------------------------------------

    @staticmethod
    def _lift(x) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x
        if isinstance(x, int):
            return MultiPoly.constant(x)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out.get(key, 0) + c
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        return other if other is NotImplemented else self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        return other if other is NotImplemented else other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = defaultdict(int)
        for (k1, v1), c1 in self._terms.items():
            for (k2, v2), c2 in other._terms.items():
                out[(k1 + k2, tuple(x + y for x, y in zip(v1, v2)))] += c1 * c2
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = MultiPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    __hash__ = None

    def __repr__(self):
        return f"MultiPoly({to_string(self)})"

    def __str__(self):
        return to_string(self)


def gens():
    """``q, a, b, c, d, e`` as polynomials."""
    return tuple(MultiPoly.variable(v) for v in ("q",) + VARIABLES)


def _monomial_str(k: int, vec: tuple) -> str:
    parts = []
    if k:
        parts.append("q" if k == 1 else f"q^{k}")
    for name, x in zip(VARIABLES, vec):
        if x:
            parts.append(name if x == 1 else f"{name}^{x}")
    return "*".join(parts)


def to_string(p: MultiPoly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for (k, vec), c in sorted(p.flat_terms.items(), key=lambda t: (-t[0][0], tuple(-x for x in t[0][1]))):
        mono = _monomial_str(k, vec)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


# -- transforms --------------------------------------------------------


def coeff_substitute(p: MultiPoly, m: int) -> MultiPoly:
    """Replace q by q^m inside every coefficient; variable exponents untouched."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    return MultiPoly({(k * m, vec): c for (k, vec), c in p.flat_terms.items()})


def rename(p: MultiPoly, mapping: Mapping[str, str]) -> MultiPoly:
    """Simultaneous variable renaming, e.g. ``{"a": "b", "b": "c", "c": "d"}``."""
    index = {VARIABLES.index(src): VARIABLES.index(dst) for src, dst in mapping.items()}
    out = defaultdict(int)
    for (k, vec), c in p.flat_terms.items():
        new = [0] * _NVARS
        for i, x in enumerate(vec):
            new[index.get(i, i)] += x
        out[(k, tuple(new))] += c
    return MultiPoly(out)


def compose(p: MultiPoly, substitution: Mapping[str, MultiPoly]) -> MultiPoly:
    """Substitute polynomials for variables (all at once)."""
    q = MultiPoly.variable("q")
    images = [substitution.get(v, MultiPoly.variable(v)) for v in VARIABLES]
    result = MultiPoly()
    for (k, vec), c in p.flat_terms.items():
        term = MultiPoly.constant(c) * q ** k
        for img, x in zip(images, vec):
            if x:
                term = term * img ** x
        result = result + term
    return result


# -- evaluation --------------------------------------------------------


def _horner(terms: dict, var: int, values: list, order: int) -> LaurentSeries:
    if var == _NVARS:
        coeff = defaultdict(int)
        for (k, _), c in terms.items():
            coeff[k] += c
        return LaurentSeries.from_dict(coeff, order)
    groups = defaultdict(dict)
    for (k, vec), c in terms.items():
        groups[vec[var]][(k, vec)] = c
    top = max(groups)
    if top == 0:
        return _horner(terms, var + 1, values, order)
    x = values[var]
    result = _horner(groups[top], var + 1, values, order)
    for i in range(top - 1, -1, -1):
        result = mul(result, x)
        if i in groups:
            result = add(result, _horner(groups[i], var + 1, values, order))
    return result


def eval_series(p: MultiPoly, assignment: Mapping[str, LaurentSeries], order: int) -> LaurentSeries:
    """Evaluate ``p`` with series substituted for its variables.

    q-powers in the coefficients become exact monomials; the result is
    truncated at ``order`` (or earlier if an argument is less precise).
    """
    values = []
    for v in VARIABLES:
        if v in assignment:
            values.append(assignment[v])
        elif p.degree(v) > 0:
            raise UnassignedVariable(v)
        else:
            values.append(None)
    if p.is_zero():
        return LaurentSeries.zero(order)
    return _horner(p.flat_terms, 0, values, order).truncate(order)


@dataclass(frozen=True)
class Difference:
    """First term (in (q exponent, exponent vector) order) where two polynomials differ."""

    q_exponent: int
    exponents: tuple
    delta: int


def exact_equal(p: MultiPoly, r: MultiPoly):
    """Compare term maps exactly.

    Returns ``(True, None)`` or ``(False, Difference)`` for the
    lexicographically smallest differing ``(q_exponent, exponent_vector)``.
    """
    diff = (p - r).flat_terms
    if not diff:
        return True, None
    key = min(diff)
    return False, Difference(key[0], key[1], diff[key])


# -- text form ---------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([a-eq])|(\^)|([-+*()]))")


def parse_poly(text: str) -> MultiPoly:
    """Parse a polynomial written with implicit multiplication.

    Accepts the layout used for the named polynomials, e.g.
    ``"q^2(-2 a^7 b^2 c + a^7 c^2) + 5 a^5 - 2 a^3 b"``.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected character {text[pos]!r} at {pos} in polynomial text")
        tokens.append(next(g for g in m.groups() if g is not None))
        pos = m.end()
    tokens.append(None)
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        t = tokens[i]
        i += 1
        return t

    def expr():
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if take() == "-" else 1
        total = sign * term()
        while peek() in ("+", "-"):
            sign = -1 if take() == "-" else 1
            total = total + sign * term()
        return total

    def term():
        value = factor()
        while peek() is not None and peek() not in ("+", "-", ")"):
            if peek() == "*":
                take()
            value = value * factor()
        return value

    def factor():
        t = take()
        if t is None:
            raise ValueError("unexpected end of polynomial text")
        if t == "(":
            value = expr()
            if take() != ")":
                raise ValueError("unbalanced parenthesis in polynomial text")
        elif t.isdigit():
            value = MultiPoly.constant(int(t))
        elif t in VARIABLES or t == "q":
            value = MultiPoly.variable(t)
        else:
            raise ValueError(f"unexpected token {t!r} in polynomial text")
        if peek() == "^":
            take()
            exp = take()
            if exp is None or not exp.isdigit():
                raise ValueError("exponent must be a non-negative integer")
            value = value ** int(exp)
        return value

    result = expr()
    if peek() is not None:
        raise ValueError(f"trailing token {peek()!r} in polynomial text")
    return result
