"""Checking assertions and reporting the outcome."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Optional

from ..polyring import exact_equal
from .ast import Assert, BinOp, Let
from .evaluator import Evaluator, PrecisionError
from .parser import QidError, parse

__all__ = ["CheckReport", "check", "check_exact", "check_source"]


@dataclass
class CheckReport:
    identity_id: str
    status: str  # "pass" | "fail" | "error"
    order_checked: int
    first_mismatch_exponent: Optional[int] = None
    mismatch_delta: Optional[int] = None
    wall_time: float = 0.0  # milliseconds
    message: Optional[str] = field(default=None, compare=False)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("message")
        return d

    def summary(self) -> str:
        line = f"{self.status.upper():5s} {self.identity_id} (order {self.order_checked}, {self.wall_time:.0f} ms)"
        if self.status == "fail":
            line += f": first mismatch at q^{self.first_mismatch_exponent}, lhs - rhs = {self.mismatch_delta}"
        elif self.status == "error" and self.message:
            line += f": {self.message}"
        return line


def check(assertion: Assert, order: int | None = None, *, evaluator: Evaluator | None = None,
          identity_id: str = "assertion") -> CheckReport:
    """Check ``lhs == rhs`` through q^(order-1) (default: the assertion's own order).

    Passes iff the difference is zero through that order.  Evaluation
    problems become ``status="error"`` rather than exceptions.
    """
    order = assertion.order if order is None else order
    evaluator = evaluator or Evaluator()
    start = time.perf_counter()
    diff_node = BinOp("-", assertion.lhs, assertion.rhs, pos=assertion.pos)
    try:
        diff = evaluator.evaluate(diff_node, order)
    except PrecisionError as exc:
        return CheckReport(identity_id, "error", exc.achieved, wall_time=_ms(start), message=str(exc))
    except (QidError, ArithmeticError) as exc:
        return CheckReport(identity_id, "error", order, wall_time=_ms(start), message=str(exc))
    if diff.is_zero():
        return CheckReport(identity_id, "pass", order, wall_time=_ms(start))
    k = diff.valuation
    return CheckReport(identity_id, "fail", order, k, diff[k], wall_time=_ms(start))


def check_exact(lhs, rhs, identity_id: str) -> CheckReport:
    """Term-map comparison of two polynomials in Z[q][a..e].

    ``order_checked`` is one more than the largest q-degree compared; the
    mismatch fields refer to the smallest differing (q exponent, monomial).
    """
    start = time.perf_counter()
    equal, first = exact_equal(lhs, rhs)
    span = max(lhs.degree("q"), rhs.degree("q")) + 1
    if equal:
        return CheckReport(identity_id, "pass", span, wall_time=_ms(start))
    return CheckReport(identity_id, "fail", span, first.q_exponent, first.delta, wall_time=_ms(start),
                       message=f"monomial exponents {first.exponents}")


def check_source(text: str, order: int | None = None, *, label: str = "", polys=None) -> list:
    """Run every assertion of an identity file; ``let`` bindings apply to later lines."""
    evaluator = Evaluator(polys=polys)
    reports = []
    for stmt in parse(text):
        if isinstance(stmt, Let):
            evaluator.bind(stmt.name, stmt.expr)
            continue
        line = stmt.pos[0] if stmt.pos else "?"
        ident = f"{label}:{line}" if label else f"line {line}"
        reports.append(check(stmt, order, evaluator=evaluator, identity_id=ident))
    return reports


def _ms(start: float) -> float:
    return round((time.perf_counter() - start) * 1000.0, 3)
