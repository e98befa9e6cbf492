"""Named polynomials of the Rogers-Ramanujan modular-equation derivations.

Each polynomial is kept as text in its source layout, then
parsed once.  Variables a..e stand for R(q), R(q^2), R(q^4), R(q^8),
R(q^16) at the base scale; re-indexed uses (P at R(q^2), R(q^4), R(q^8),
say) are handled where the polynomial is evaluated.
"""

from __future__ import annotations

from types import MappingProxyType

from .polyring import MultiPoly, coeff_substitute, parse_poly

__all__ = ["SOURCES", "ARITY", "POLYNOMIALS", "get", "derived"]

SOURCES = MappingProxyType({
    # modular equation between R(q), R(q^2), R(q^4)
    "P": (
        "q^4(-2 a^8 b^2 c^3 + a^8 c^4 - 2 a^6 b c^4 - 5 a^4 b^2 c^4)"
        " + q^3(-a^7 b^2 c^2 - 2 a^7 c^3+ 6 a^5 b c^3 - 6 a^3 b^2 c^3 + 3 a^3 c^4 - a b c^4)"
        " + q^2(2 a^8 b c + 4 a^6 b^2 c - 2 a^6 c^2 + 5 a^4 b c^2+ 2 a^2 b^2 c^2 + 4 a^2 c^3 - 2 b c^3)"
        "+q(a^7 b + 3 a^5 b^2 + 6 a^5 c + 6 a^3 b c + 2 a b^2 c - a c^2)+5 a^4 - 2 a^2 b - b^2 - 2 c"
    ),
    # its q-free companion
    "Q": "a^2b^6(b+a^2)^4(c-b^2)+c^3(c+b^2)^2(b-a^2)^3",
    # cleared form of the psi 5-dissection relation
    "X": (
        "q^2(-2 a^7 b^2 c + a^7 c^2 - 2 a^5 b c^2 - 5 a^3 b^2 c^2)"
        "+q(a^8 b + 3 a^6 b^2 - 4 a^6 c + 10 a^4 b c + 4 a^2 b^2 c + 3 a^2 c^2 - b c^2)"
        "+5 a^5 - 2 a^3 b - a b^2 - 2 a c"
    ),
    # cofactor in the psi reduction
    "Y": "q(-a^7 + 2 a^5 b + 5 a^3 b^2)-3 a^2 + b",
    # phi 5-dissection numerator
    "A": "q^4a^4b^8+q^3(4 a^3 b^6 + 2 a b^7)+q^2(3 a^4 b^3 - 5 a^2 b^4 - 3 b^5)+q(2 a^3 b - 4 a b^2)+1",
    # cleared form of the phi relation
    "B": (
        "q^8(2 a^2 b^8 c^2 d^3 - a^2 b^8 d^4 + 2 a^2 b^6 c d^4 + 5 a^2 b^4 c^2 d^4)"
        " + q^6(a^4 b^8 c d^2 + a^2 b^7 c^2 d^2 + 2 a^2 b^7 d^3 - 6 a^2 b^5 c d^3 + 6 a^2 b^3 c^2 d^3"
        " - 3 a^2 b^3 d^4 + a^2 b c d^4) + q^5(4 a^3 b^6 c d^2 + 2 a b^7 c d^2)"
        " + q^4(-2 a^2 b^8 c d - 4 a^2 b^6 c^2 d + 2 a^2 b^6 d^2 + 3 a^4 b^3 c d^2 - 10 a^2 b^4 c d^2"
        " - 3 b^5 c d^2 - 2 a^2 b^2 c^2 d^2 - 4 a^2 b^2 d^3 + 2 a^2 c d^3)+q^3(2 a^3 b c d^2 - 4 a b^2 c d^2)"
        " +q^2(-a^2 b^7 c - 3 a^2 b^5 c^2 - 6 a^2 b^5 d - 6 a^2 b^3 c d - 2 a^2 b c^2 d + a^2 b d^2 + c d^2)"
        "-5 a^2 b^4 + 2 a^2 b^2 c + a^2 c^2 + 2 a^2 d"
    ),
    # cofactor in the phi reduction
    "Z0": "q^2ab^5+3qb^3+3a",
    # phi^2 5-dissection numerator
    "F": (
        "-q^8a^4 b^2 c^8+q^7(2 a^3 b^2 c^7 + 2 a^3 c^8 + 2 a b c^8)"
        "+q^6(-2 a^4 b c^6 + 2 a^2 b^2 c^6 + a^2 c^7 + b c^7) +q^5(6 a^3 b c^5 - 6 a b^2 c^5 - 4 a c^6)"
        "+q^4(-3 a^4 b^2 c^3 + 5 a^4 c^4 + 5 a^2 b c^4 - 5 b^2 c^4 - 3 c^5)"
        " +q^3(-4 a^3 b^2 c^2 + 6 a^3 c^3 + 6 a b c^3)+q^2(-a^4 b c + a^2 b^2 c - 2 a^2 c^2 - 2 b c^2)"
        " +q(-2 a^3 b + 2 a b^2 - 2 a c)+1"
    ),
    # cleared form of the phi^2 relation
    "C": (
        "q^16(2 a^2 b c^8 d^2 e^3 - a^2 b c^8 e^4 + 2 a^2 b c^6 d e^4 + 5 a^2 b c^4 d^2 e^4)"
        "+q^12(-a^4 b^2 c^8 d e^2 + a^2 b c^7 d^2 e^2 + 2 a^2 b c^7 e^3 - 6 a^2 b c^5 d e^3"
        " + 6 a^2 b c^3 d^2 e^3 - 3 a^2 b c^3 e^4 + a^2 b c d e^4)"
        " +q^11(2 a^3 b^2 c^7 d e^2 + 2 a^3 c^8 d e^2 + 2 a b c^8 d e^2)"
        "+q^10(-2 a^4 b c^6 d e^2 + 2 a^2 b^2 c^6 d e^2 + a^2 c^7 d e^2 + b c^7 d e^2)"
        "+q^9(6 a^3 b c^5 d e^2 - 6 a b^2 c^5 d e^2 - 4 a c^6 d e^2)"
        "+q^8(-2 a^2 b c^8 d e - 4 a^2 b c^6 d^2 e + 2 a^2 b c^6 e^2 - 3 a^4 b^2 c^3 d e^2"
        " + 5 a^4 c^4 d e^2 - 5 b^2 c^4 d e^2 - 3 c^5 d e^2 - 2 a^2 b c^2 d^2 e^2 - 4 a^2 b c^2 e^3"
        " + 2 a^2 b d e^3)+q^7(-4 a^3 b^2 c^2 d e^2 + 6 a^3 c^3 d e^2 + 6 a b c^3 d e^2)"
        "+q^6(-a^4 b c d e^2 + a^2 b^2 c d e^2 - 2 a^2 c^2 d e^2 - 2 b c^2 d e^2)"
        "+q^5(-2 a^3 b d e^2 + 2 a b^2 d e^2 - 2 a c d e^2)"
        "+q^4(-a^2 b c^7 d - 3 a^2 b c^5 d^2 - 6 a^2 b c^5 e - 6 a^2 b c^3 d e -2 a^2 b c d^2 e"
        " + a^2 b c e^2 + d e^2)-5 a^2 b c^4 + 2 a^2 b c^2 d + a^2 b d^2 + 2 a^2 b e"
    ),
    # factors of the phi^2 reduction
    "G0": (
        "q^7a b^2 c^8+q^6(-2 b^2 c^7 - 3 c^8)+2q^5 a b c^6-6q^4b c^5+q^3(3 a b^2 c^3 - 5 a c^4)"
        " +q^2(4 b^2 c^2 - 9 c^3)+qa b c+2b"
    ),
    "G1": (
        "2q^5 a b^3 c^5+q^4(3 a^2 c^5 - 3 b c^5)+10q^3a b^2 c^3+q^2(-5 a^2 b c^2 + 5 b^2 c^2 - 5 c^3)"
        " -4qa b^3-a^2 + b"
    ),
})

ARITY = MappingProxyType({
    "P": 3, "Q": 3, "X": 3, "Y": 2, "A": 2, "B": 4, "F": 3, "C": 5, "G0": 3, "G1": 3, "Z0": 2,
})

POLYNOMIALS = MappingProxyType({name: parse_poly(text) for name, text in SOURCES.items()})


def get(name: str, table=None) -> MultiPoly:
    """Look up a named polynomial, optionally from an override table."""
    table = POLYNOMIALS if table is None else table
    try:
        return table[name]
    except KeyError:
        raise KeyError(f"unknown polynomial {name!r}") from None


def derived(name: str, m: int, table=None) -> MultiPoly:
    """``name`` with q replaced by q^m in its coefficients (P0 = derived("P", 2), ...)."""
    return coeff_substitute(get(name, table), m)
