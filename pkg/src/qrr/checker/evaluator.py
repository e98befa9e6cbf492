"""Evaluate identity-file expressions to truncated series.

Evaluation is demand driven: each node is asked for a working order and
passes suitable orders to its children (``subst`` divides, ``extract``
multiplies).  Negative valuations can still cost precision, so
:meth:`Evaluator.evaluate` retries at a higher working order until the
requested order is met.
"""

from __future__ import annotations

from ..dissect import extract_progression
from ..polynomials import derived, get
from ..polyring import VARIABLES, eval_series
from ..products import MonomialArg, ProductSpec, pochhammer, theta_f, theta_phi, theta_psi
from ..rrcf import rr_at
from ..series import LaurentSeries, NonUnitLeading, add, invert, mul, negate, pow, sub, substitute_power
from .ast import (
    BinOp, Extract, FTheta, Name, Neg, Num, Phi, Poch, PolyApp, Power, Psi, QPower, RFun, Subst,
)
from .parser import QidError

__all__ = ["EvaluationError", "PrecisionError", "Evaluator"]

MAX_RETRIES = 4


class EvaluationError(QidError):
    pass


class PrecisionError(EvaluationError):
    """The requested order could not be reached; ``achieved`` is the best order obtained."""

    def __init__(self, message: str, achieved: int):
        super().__init__(message)
        self.achieved = achieved


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _dilate(builder, exponent: int, order: int) -> LaurentSeries:
    return substitute_power(builder(max(_ceil_div(order, exponent), 1)), exponent).truncate(order)


class Evaluator:
    """Evaluates expressions against ``let`` bindings and a polynomial table.

    ``polys`` overrides the built-in named polynomials (used for mutation
    testing); it maps names such as ``"P"`` to :class:`MultiPoly` values.
    """

    def __init__(self, bindings=None, polys=None):
        self.bindings = dict(bindings or {})
        self.polys = polys
        self._memo = {}

    def bind(self, name: str, node):
        self.bindings[name] = node
        self._memo = {k: v for k, v in self._memo.items() if k[0] != name}

    def evaluate(self, node, order: int) -> LaurentSeries:
        """Evaluate ``node`` exactly through q^(order-1)."""
        work = order
        best = None
        for _ in range(MAX_RETRIES):
            s = self._eval(node, work)
            if s.order >= order:
                return s.truncate(order)
            best = s.order if best is None else max(best, s.order)
            work += order - s.order + 8
        raise PrecisionError(
            f"could only reach order {best} (requested {order})", achieved=best)

    # -- node dispatch ------------------------------------------------

    def _eval(self, node, w: int) -> LaurentSeries:
        try:
            return self._dispatch(node, w)
        except QidError:
            raise
        except (NonUnitLeading, ZeroDivisionError) as exc:
            line, col = node.pos if node.pos else (None, None)
            raise EvaluationError(f"{type(exc).__name__}: {exc}", line, col) from exc

    def _dispatch(self, node, w: int) -> LaurentSeries:
        if isinstance(node, Num):
            return LaurentSeries.constant(node.value, w)
        if isinstance(node, QPower):
            return LaurentSeries.monomial(node.exponent, max(w, node.exponent + 1))
        if isinstance(node, RFun):
            return rr_at(node.m, w).series
        if isinstance(node, Phi):
            return _dilate(lambda n: theta_phi(node.sign, n), node.exponent, w)
        if isinstance(node, Psi):
            return _dilate(theta_psi, node.exponent, w)
        if isinstance(node, FTheta):
            return theta_f(MonomialArg(*node.a), MonomialArg(*node.b), w)
        if isinstance(node, Poch):
            spec = ProductSpec(tuple(MonomialArg(*a) for a in node.args), node.base)
            return pochhammer(spec, w)
        if isinstance(node, Subst):
            inner = self._eval(node.expr, max(_ceil_div(w, node.m), 1))
            return substitute_power(inner, node.m)
        if isinstance(node, Extract):
            inner = self._eval(node.expr, node.m * w + node.r)
            return extract_progression(inner, node.m, node.r)
        if isinstance(node, PolyApp):
            poly = get(node.name, self.polys) if node.m == 1 else derived(node.name, node.m, self.polys)
            args = [self._eval(a, w) for a in node.args]
            return eval_series(poly, dict(zip(VARIABLES, args)), w)
        if isinstance(node, Name):
            key = (node.ident, w)
            if key not in self._memo:
                if node.ident not in self.bindings:
                    line, col = node.pos if node.pos else (None, None)
                    raise EvaluationError(f"unbound name {node.ident!r}", line, col)
                self._memo[key] = self._eval(self.bindings[node.ident], w)
            return self._memo[key]
        if isinstance(node, Neg):
            return negate(self._eval(node.operand, w))
        if isinstance(node, Power):
            return pow(self._eval(node.base, w), node.exponent)
        if isinstance(node, BinOp):
            left = self._eval(node.left, w)
            right = self._eval(node.right, w)
            if node.op == "+":
                return add(left, right)
            if node.op == "-":
                return sub(left, right)
            if node.op == "*":
                return mul(left, right)
            if node.op == "/":
                return mul(left, invert(right))
            raise EvaluationError(f"unknown operator {node.op!r}")
        raise EvaluationError(f"cannot evaluate {type(node).__name__}")
