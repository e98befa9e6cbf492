"""Built-in identity catalogue.

Series entries are identity-file snippets checked to a truncation order;
exact entries compare two polynomials in Z[q][a..e] term by term.  Every
fraction-form relation is stated with its denominators cleared, except
where the denominator has a unit leading coefficient.

Variables a..e in the exact entries stand for R(q), R(q^2), R(q^4),
R(q^8), R(q^16).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Optional

from ..polynomials import derived, get
from ..polyring import gens, rename
from .ast import Assert, Let
from .evaluator import Evaluator
from .parser import parse
from .report import CheckReport, check, check_exact

__all__ = ["DEFAULT_ORDER", "CatalogueEntry", "ENTRIES", "MANIFEST", "ALIASES", "entry", "run_entry", "run_catalogue"]

DEFAULT_ORDER = 300

PRELUDE = """
let R1 = R(q)
let R2 = R(q^2)
let R4 = R(q^4)
let R8 = R(q^8)
let R16 = R(q^16)
let R5 = R(q^5)
let R10 = R(q^10)
let R20 = R(q^20)
"""

# Inverse of (q;q) dissected with R(q^5); reused at q -> q^2 and q -> q^4.
_INV_ETA_5 = ("(R5^-4 + q*R5^-3 + 2*q^2*R5^-2 + 3*q^3*R5^-1 + 5*q^4 - 3*q^5*R5"
              " + 2*q^6*R5^2 - q^7*R5^3 + q^8*R5^4)")
_INV_ETA_10 = ("(R10^-4 + q^2*R10^-3 + 2*q^4*R10^-2 + 3*q^6*R10^-1 + 5*q^8 - 3*q^10*R10"
               " + 2*q^12*R10^2 - q^14*R10^3 + q^16*R10^4)")
_INV_ETA_20 = ("(R20^-4 + q^4*R20^-3 + 2*q^8*R20^-2 + 3*q^12*R20^-1 + 5*q^16 - 3*q^20*R20"
               " + 2*q^24*R20^2 - q^28*R20^3 + q^32*R20^4)")

_PSI_PSI = ("poch(q^50; q^50)*poch(q^100; q^100)^2*(1/R10 - q^2 - q^4*R10)*(1/R20 - q^4 - q^8*R20)^2"
            f"*poch(q^25; q^25)^5/poch(q^5; q^5)^6*{_INV_ETA_5}")
_PHI = ("poch(q^25; q^25)^2*poch(q^50; q^50)^5/poch(q^10; q^10)^6*(1/R5 - q - q^2*R5)^2"
        f"*{_INV_ETA_10}")
_PHI_PHI = ("poch(q^25; q^25)^2*poch(q^50; q^50)*poch(q^100; q^100)^5/poch(q^20; q^20)^6"
            f"*(1/R5 - q - q^2*R5)^2*(1/R10 - q^2 - q^4*R10)*{_INV_ETA_20}")
_PSI_5DISSECT = "(poch(-q^10, -q^15, q^25; q^25) + q*poch(-q^5, -q^20, q^25; q^25) + q^3*psi(q^25))"
_PHI_5DISSECT = "(phi(-q^25) - 2*q*poch(q^15, q^35, q^50; q^50) + 2*q^4*poch(q^5, q^45, q^50; q^50))"

SERIES_SOURCES = {
    # u = t R(t^5), v = t^5 R(t^25) with t = q^(1/5) renamed to q; the quintic
    # relation holds for u^5 in terms of v (the other way round fails at q^1)
    "eq11": """
        let u = q*R(q^5)
        let v = q^5*R(q^25)
        assert u^5*(1 + 3*v + 4*v^2 + 2*v^3 + v^4) == v*(1 - 2*v + 4*v^2 - 3*v^3 + v^4) @order 300""",
    "eq12": "assert R2 - R1^2 == q*R1*R2^2*(R2 + R1^2) @order 300",
    "eq13": "assert R4 - R1^2*R2 == q*R1*R4*(R4 + R2^2) @order 300",
    "thm11": "assert q*poch(q; q)^6/poch(q^5; q^5)^6 == P(R1, R2, R4)/(R1^4*R2*R4^2) @order 300",
    "eq15": """
        assert (R2 - R1^2)*(R8 - R1^2*R2*R4)
            == q^2*R1^2*R8*((R2 - R1^2)*(R8 + R4^2) + R2^3*(R2 + R1^2)^2) @order 300""",
    "eq16": """
        assert (R2 - R1^2)^3*(R4 - R2^2)*(R16 - R1^2*R2*R4*R8)
            == q^4*R1^2*R2*R16*((R2 - R1^2)^3*(R4 - R2^2)*(R16 + R8^2) + Q(R1, R2, R4)) @order 300""",
    "lem21a": "assert poch(q; q) == poch(q^25; q^25)*(1/R5 - q - q^2*R5) @order 300",
    "lem21b": f"assert 1/poch(q; q) == poch(q^25; q^25)^5/poch(q^5; q^5)^6*{_INV_ETA_5} @order 300",
    "lem21c": f"assert psi(q) == {_PSI_5DISSECT} @order 300",
    "eq24": f"""
        assert psi(q)*psi(q^2) == {_PSI_5DISSECT}
            *(poch(-q^20, -q^30, q^50; q^50) + q^2*poch(-q^10, -q^40, q^50; q^50) + q^6*psi(q^50)) @order 300""",
    "psi-eta": "assert psi(q)*psi(q^2) == poch(q^2; q^2)*poch(q^4; q^4)^2/poch(q; q) @order 300",
    "eq25": f"assert psi(q)*psi(q^2) == {_PSI_PSI} @order 300",
    "psi-dissect-r4": f"assert extract({_PSI_PSI}, 5, 4) == q*psi(q^5)*psi(q^10) @order 300",
    "psi-dissect-display": """
        assert q*psi(q^5)*psi(q^10) == poch(q^10; q^10)*poch(q^20; q^20)^2*poch(q^5; q^5)^5/poch(q; q)^6
            *P(R1, R2, R4)/(R1^4*R2*R4^2) @order 300""",
    "eq26": "assert 1/(q*R1^5) - 11 - q*R1^5 == poch(q; q)^6/(q*poch(q^5; q^5)^6) @order 300",
    "eq26-comparison": "assert P(R1, R2, R4)/(R1^4*R2*R4^2) == q^2*(1/(q*R1^5) - 11 - q*R1^5) @order 300",
    "eq27": "assert (1 + q*R1*R4)^2*X(R1, R2, R4)/(R1^5*R2*R4^2) == 0 @order 300",
    "eq210": "assert R1^2 - R2 + q*R1^3*R2^2 + q*R1*R2^3 == 0 @order 300",
    "eq211": "assert -R1^2*R2 + R4 - q*R1*R2^2*R4 - q*R1*R4^2 == 0 @order 300",
    "lead-1qR1R4": "assert 1 + q*R1*R4 == 1 + q - q^2 + q^3 - 2*q^5 @order 6",
    "lead-Y": "assert Y(R1, R2) == -2 + 12*q - 28*q^2 + 26*q^3 + 26*q^4 - 144*q^5 @order 6",
    "lem31": f"assert phi(-q) == {_PHI_5DISSECT} @order 300",
    "phi-eta": "assert phi(-q) == poch(q; q)^2/poch(q^2; q^2) @order 300",
    "eq32": f"assert phi(-q) == {_PHI} @order 300",
    "phi-dissect-r0": f"assert extract({_PHI}, 5, 0) == phi(-q^5) @order 300",
    "eq33": "assert poch(q^2; q^2)^6/poch(q^10; q^10)^6 == A(R1, R2)/(R1^2*R2^4) @order 300",
    "eq34": """
        assert q^2*poch(q^2; q^2)^6/poch(q^10; q^10)^6
            == coeffsub(P, 2)(R2, R4, R8)/(R2^4*R4*R8^2) @order 300""",
    "eq35-comparison": """
        assert q^2*A(R1, R2)/(R1^2*R2^4) == coeffsub(P, 2)(R2, R4, R8)/(R2^4*R4*R8^2) @order 300""",
    "eq35": "assert B(R1, R2, R4, R8)/(R1^2*R2^4*R4*R8^2) == 0 @order 300",
    "x0-vanishes": "assert coeffsub(X, 2)(R2, R4, R8) == 0 @order 300",
    "eq38": "assert R2^2*R4 - R8 + q^2*R2*R4^2*R8 + q^2*R2*R8^2 == 0 @order 300",
    "eq39": """
        assert -R1^2*R2*R4 + R8 - q*R1^3*R2*R8 - q*R1*R2^2*R8 - q^2*R1^2*R4^2*R8 - q^2*R1^2*R8^2
            == 0 @order 300""",
    "eq310": "assert R8 - R1^2*R2*R4 == q^2*R1^2*R8*(R4^2 + R8 + R2*(R1^2 + R2)/(q*R1)) @order 300",
    "eq311": "assert (R2 - R1^2)/(q*R1) == R2^2*(R1^2 + R2) @order 300",
    "eq312": f"""
        assert phi(-q)*phi(-q^2) == {_PHI_5DISSECT}
            *(phi(-q^50) - 2*q^2*poch(q^30, q^70, q^100; q^100) + 2*q^8*poch(q^10, q^90, q^100; q^100))
            @order 300""",
    "phi2-eta": "assert phi(-q)*phi(-q^2) == poch(q; q)^2*poch(q^2; q^2)/poch(q^4; q^4) @order 300",
    "eq313": f"assert phi(-q)*phi(-q^2) == {_PHI_PHI} @order 300",
    "phi2-dissect-r0": f"assert extract({_PHI_PHI}, 5, 0) == phi(-q^5)*phi(-q^10) @order 300",
    "eq314": "assert poch(q^4; q^4)^6/poch(q^20; q^20)^6 == F(R1, R2, R4)/(R1^2*R2*R4^4) @order 300",
    "eq315": """
        assert q^4*poch(q^4; q^4)^6/poch(q^20; q^20)^6
            == coeffsub(P, 4)(R4, R8, R16)/(R4^4*R8*R16^2) @order 300""",
    "eq316-comparison": """
        assert q^4*F(R1, R2, R4)/(R1^2*R2*R4^4) == coeffsub(P, 4)(R4, R8, R16)/(R4^4*R8*R16^2)
            @order 300""",
    "eq316": "assert C(R1, R2, R4, R8, R16)/(R1^2*R2*R4^4*R8*R16^2) == 0 @order 300",
    "b0-vanishes": "assert coeffsub(B, 2)(R2, R4, R8, R16) == 0 @order 300",
    "eq318": "assert R2^2 - R4 + q^2*R2^3*R4^2 + q^2*R2*R4^3 == 0 @order 300",
    "eq318-companion": "assert (R4 - R2^2)/(q^2*R2) == R4^2*(R2^2 + R4) @order 300",
    "eq319": """
        assert -R2^2*R4*R8 + R16 - q^2*R2^3*R4*R16 - q^2*R2*R4^2*R16 - q^4*R2^2*R8^2*R16
            - q^4*R2^2*R16^2 == 0 @order 300""",
    # sixth term is q^2 R1^2 R4^2 R16; with R2^2 in place of R4^2 it fails at q^4
    "eq320-cleared": """
        assert -R1^2*R2*R4*R8 + R16 - q*R1^3*R2*R16 - q*R1*R2^2*R16 - q^2*R1^2*R2^2*R4*R16
            - q^2*R1^2*R4^2*R16 - q^4*R1^2*R2*R8^2*R16 - q^4*R1^2*R2*R16^2 == 0 @order 300""",
    "eq320": """
        assert R16 - R1^2*R2*R4*R8 == q^4*R1^2*R2*R16*(R16 + R8^2 + R1^2*(R1^2 + R2)/(q^3*R1^3)
            + R4*(R2^2 + R4)/(q^2*R2)) @order 300""",
}

# Entries that assert a fixed number of leading coefficients.
ORDER_CAPS = {"lead-1qR1R4": 6, "lead-Y": 6}


# -- exact polynomial identities ------------------------------------------


def _shift_vars(p, *targets):
    """Re-index a polynomial in a, b, c(, d) onto the given variables."""
    return rename(p, dict(zip("abcd", targets)))


def _modular_12(a, b, q):
    # cleared relation between R(q) and R(q^2), as a polynomial
    return a**2 - b + q*a**3*b**2 + q*a*b**3


def exact_eq27x(polys=None):
    q, a, b, c, d, e = gens()
    P, X = get("P", polys), get("X", polys)
    lhs = a*P - q*b*c**2*(1 - 11*q*a**5 - q**2*a**10)
    return lhs, (1 + q*a*c)**2*X


def exact_eq29x(polys=None):
    q, a, b, c, d, e = gens()
    X, Y = get("X", polys), get("Y", polys)
    rhs = ((-a**2*b + c - q*a*b**2*c - q*a*c**2)*Y
           - _modular_12(a, b, q)*(-5*a**4 - c + 3*q*a**5*c - 5*q*a**3*b*c))
    return a*X, rhs


def exact_eq35x(polys=None):
    q, a, b, c, d, e = gens()
    A = get("A", polys)
    P0 = _shift_vars(derived("P", 2, polys), "b", "c", "d")
    return q**2*A*c*d**2 - a**2*P0, get("B", polys)


def exact_eq37x(polys=None):
    q, a, b, c, d, e = gens()
    B, Z0 = get("B", polys), get("Z0", polys)
    X0 = _shift_vars(derived("X", 2, polys), "b", "c", "d")
    rhs = (q**3*b**2*c*d**2*_modular_12(a, b, q)*Z0
           - X0*(a**2 + 2*q**2*a**2*b*d + q**4*a**2*b**2*d**2)
           + q**2*a**2*c*d*(b**2*c - d + q**2*b*c**2*d + q**2*b*d**2)
           + q**2*b*c*d*(-a**2*b*c + d - q*a**3*b*d - q*a*b**2*d - q**2*a**2*c**2*d - q**2*a**2*d**2))
    return b*B, rhs


def exact_eq316x(polys=None):
    q, a, b, c, d, e = gens()
    F = get("F", polys)
    P1 = _shift_vars(derived("P", 4, polys), "c", "d", "e")
    return q**4*F*d*e**2 - a**2*b*P1, get("C", polys)


def exact_eq317x(polys=None):
    q, a, b, c, d, e = gens()
    C, G0, G1 = get("C", polys), get("G0", polys), get("G1", polys)
    B0 = _shift_vars(derived("B", 2, polys), "b", "c", "d", "e")
    sixteen = (-b**2*c*d + e - q**2*b**3*c*e - q**2*b*c**2*e - q**4*b**2*d**2*e - q**4*b**2*e**2)
    # fifth term of the last factor is q^2 a^2 c^2 e; with b^2 in place of c^2 it fails at q^6
    cleared = (-a**2*b*c*d + e - q*a**3*b*e - q*a*b**2*e - q**2*a**2*b**2*c*e - q**2*a**2*c**2*e
               - q**4*a**2*b*d**2*e - q**4*a**2*b*e**2)
    rhs = (-q**4*b*d*e**2*_modular_12(a, b, q)*G0
           + a**2*b**2*B0
           + q**4*a**2*c*d*e*(1 + 2*q**4*c**5)*sixteen
           - q**4*d*e**2*(b**2 - c + q**2*b**3*c**2 + q**2*b*c**3)*G1
           + 5*q**6*c**3*d*e**2*(1 + q*a*c)*(-a**2*b + c - q*a*b**2*c - q*a*c**2)
           - q**4*b*c*d*e*(1 + 2*q**4*c**5)*cleared)
    return b**3*C, rhs


EXACT_BUILDERS = {
    "eq27x": exact_eq27x,
    "eq29x": exact_eq29x,
    "eq35x": exact_eq35x,
    "eq37x": exact_eq37x,
    "eq316x": exact_eq316x,
    "eq317x": exact_eq317x,
}


@dataclass(frozen=True)
class CatalogueEntry:
    id: str
    kind: str  # "series" | "exact"
    source: Optional[str] = None
    builder: Optional[Callable] = None
    max_order: Optional[int] = None


ENTRIES = tuple(sorted(
    [CatalogueEntry(k, "series", source=v, max_order=ORDER_CAPS.get(k)) for k, v in SERIES_SOURCES.items()]
    + [CatalogueEntry(k, "exact", builder=v) for k, v in EXACT_BUILDERS.items()],
    key=lambda e: e.id,
))

_BY_ID = {e.id: e for e in ENTRIES}

# Every displayed relation, keyed by catalogue-style name, with the entries
# that check it or the reason it has none.
MANIFEST = {
    "eq11": (("eq11",), "checked under q -> q^5 so all exponents are integers"),
    "eq12": (("eq12", "eq210"), "cleared of denominators"),
    "eq13": (("eq13", "eq211"), "cleared of denominators"),
    "thm11": (("thm11",), ""),
    "eq15": (("eq15",), "cleared of denominators"),
    "eq16": (("eq16",), "cleared of denominators"),
    "P-definition": (("thm11", "eq27x"), "polynomial definition, exercised by every entry using P"),
    "Q-definition": (("eq16",), "polynomial definition"),
    "R-product-form": ((), "production builder for R(q); cross-checked against continued-fraction convergents in the test suite"),
    "R-continued-fraction": ((), "oracle builder only; compared with the product form in the test suite"),
    "pochhammer-definition": ((), "definitional"),
    "theta-f-triple-product": ((), "definitional; product and bilateral-sum forms compared in the test suite"),
    "phi-definition": (("phi-eta",), "sum and product forms compared in the test suite"),
    "psi-definition": (("psi-eta",), "sum and product forms compared in the test suite"),
    "euler-f-definition": ((), "pentagonal sum vs product compared in the test suite"),
    "eq21": (("lem21a",), ""),
    "eq22": (("lem21b",), ""),
    "eq23": (("lem21c",), ""),
    "eq24": (("eq24",), "the parts A_k exist only as extracted series"),
    "eq25": (("eq25", "psi-eta"), ""),
    "psi-dissect-display": (("psi-dissect-r4", "psi-dissect-display"), "residue-4 comparison after relabelling q^5 -> q"),
    "eq26": (("eq26",), ""),
    "eq26-comparison": (("eq26-comparison",), ""),
    "eq27": (("eq27", "eq27x"), ""),
    "eq28": (("eq27", "eq27x", "eq29x"), "polynomial definition of X"),
    "eq29": (("eq29x",), "exact identity in Z[q][a, b, c]"),
    "Y-definition": (("eq29x", "lead-Y"), "polynomial definition"),
    "eq210": (("eq210",), ""),
    "leading-expansions": (("lead-1qR1R4", "lead-Y"), "leading coefficients through q^5"),
    "eq211": (("eq211",), ""),
    "eq31": (("lem31",), ""),
    "eq32": (("eq32", "phi-eta"), ""),
    "eq33": (("eq33", "phi-dissect-r0"), ""),
    "A-definition": (("eq33", "eq35x"), "polynomial definition"),
    "eq34": (("eq34",), ""),
    "eq35-comparison": (("eq35-comparison",), ""),
    "eq35": (("eq35", "eq35x"), ""),
    "eq36": (("eq35x", "eq37x"), "polynomial definition of B"),
    "eq37": (("eq37x",), "exact identity in Z[q][a, b, c, d]"),
    "Z0-definition": (("eq37x",), "polynomial definition"),
    "X0-vanishing": (("x0-vanishes",), ""),
    "eq38": (("eq38",), ""),
    "eq39": (("eq39",), ""),
    "eq310": (("eq310",), ""),
    "eq311": (("eq311",), "multiplied through by the non-unit denominator"),
    "eq312": (("eq312",), "the parts C_k exist only as extracted series"),
    "eq313": (("eq313", "phi2-eta"), ""),
    "eq314": (("eq314", "phi2-dissect-r0"), ""),
    "F-definition": (("eq314", "eq316x"), "polynomial definition"),
    "eq315": (("eq315",), ""),
    "eq316-comparison": (("eq316-comparison",), ""),
    "eq316": (("eq316", "eq316x"), ""),
    "C-definition": (("eq316x", "eq317x"), "polynomial definition"),
    "B0-vanishing": (("b0-vanishes",), ""),
    "eq317": (("eq317x",), "exact identity; last factor matches eq320-cleared"),
    "G-definitions": (("eq317x",), "polynomial definitions of G0 and G1"),
    "eq318": (("eq318",), ""),
    "eq318-companion": (("eq318-companion",), ""),
    "eq319": (("eq319",), ""),
    "eq320-cleared": (("eq320-cleared",), "sixth term is q^2 R1^2 R4^2 R16"),
    "eq320": (("eq320",), ""),
}


# Equation-number ids that are checked by a single entry under another name
# (eq21 -> lem21a, ...).  Selecting an alias reports under the alias.
ALIASES = {key: ids[0] for key, (ids, _) in MANIFEST.items()
           if key.startswith("eq") and key not in _BY_ID and len(ids) == 1}


def entry(identity_id: str) -> CatalogueEntry:
    if identity_id in _BY_ID:
        return _BY_ID[identity_id]
    if identity_id in ALIASES:
        return replace(_BY_ID[ALIASES[identity_id]], id=identity_id)
    raise KeyError(f"no catalogue entry {identity_id!r}")


def _single_assertion(source: str):
    stmts = parse(PRELUDE + source)
    evaluator = Evaluator()
    assertion = None
    for stmt in stmts:
        if isinstance(stmt, Let):
            evaluator.bind(stmt.name, stmt.expr)
        elif isinstance(stmt, Assert):
            assertion = stmt
    return assertion, evaluator


def run_entry(e: CatalogueEntry, order: int = DEFAULT_ORDER, polys=None) -> CheckReport:
    if e.kind == "exact":
        lhs, rhs = e.builder(polys)
        return check_exact(lhs, rhs, e.id)
    assertion, evaluator = _single_assertion(e.source)
    evaluator.polys = polys
    if e.max_order is not None:
        order = min(order, e.max_order)
    return check(assertion, order, evaluator=evaluator, identity_id=e.id)


def _select(only) -> list:
    if only is None:
        return list(ENTRIES)
    wanted = set(only)
    chosen = [e for e in ENTRIES if e.id in wanted]
    chosen += [entry(i) for i in sorted(wanted) if i in ALIASES]
    return chosen


def _run_by_id(args):
    identity_id, order, polys = args
    return run_entry(entry(identity_id), order, polys)


def run_catalogue(order: int = DEFAULT_ORDER, only=None, *, polys=None, jobs: int = 1) -> list:
    """Check the selected catalogue entries; reports come back sorted by id.

    ``only`` is an iterable of ids (``None`` selects everything).  With
    ``jobs > 1`` entries run in worker processes.
    """
    selected = _select(only)
    if jobs > 1 and len(selected) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_by_id, [(e.id, order, polys) for e in selected]))
    else:
        reports = [run_entry(e, order, polys) for e in selected]
    return sorted(reports, key=lambda r: r.identity_id)
