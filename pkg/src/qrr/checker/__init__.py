"""Identity files, the built-in catalogue and the ``qrr`` command line."""

from .ast import to_source
from .catalogue import DEFAULT_ORDER, ENTRIES, MANIFEST, run_catalogue
from .evaluator import EvaluationError, Evaluator, PrecisionError
from .parser import ArityMismatch, QidError, QidSyntaxError, UnknownName, parse, parse_expr
from .report import CheckReport, check, check_exact, check_source

__all__ = [
    "ArityMismatch", "CheckReport", "DEFAULT_ORDER", "ENTRIES", "EvaluationError", "Evaluator",
    "MANIFEST", "PrecisionError", "QidError", "QidSyntaxError", "UnknownName", "check",
    "check_exact", "check_source", "parse", "parse_expr", "run_catalogue", "to_source",
]
