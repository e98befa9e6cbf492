"""Expression tree for identity files, plus a printer that reparses losslessly."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

__all__ = [
    "Node", "Num", "QPower", "RFun", "Phi", "Psi", "FTheta", "Poch", "Subst", "Extract",
    "PolyApp", "Name", "BinOp", "Power", "Neg", "Let", "Assert", "to_source",
]


@dataclass(frozen=True)
class Node:
    pass


def _pos():
    # (line, column); ignored by equality so reparsed trees compare equal
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Num(Node):
    value: int
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class QPower(Node):
    exponent: int
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class RFun(Node):
    """R(q^m)."""

    m: int
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class Phi(Node):
    sign: int
    exponent: int
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class Psi(Node):
    exponent: int
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class FTheta(Node):
    """f(a, b); arguments are (sign, exponent) pairs."""

    a: tuple
    b: tuple
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class Poch(Node):
    args: tuple
    base: int
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class Subst(Node):
    """expr with q replaced by q^m."""

    expr: Node
    m: int
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class Extract(Node):
    """Terms of expr with exponent = m*k + r, relabelled to q^k."""

    expr: Node
    m: int
    r: int
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class PolyApp(Node):
    """Named polynomial applied to series; ``m`` > 1 means coeffsub(name, m)."""

    name: str
    m: int
    args: tuple
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class Name(Node):
    ident: str
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class BinOp(Node):
    op: str
    left: Node
    right: Node
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class Power(Node):
    base: Node
    exponent: int
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class Neg(Node):
    operand: Node
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class Let(Node):
    name: str
    expr: Node
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class Assert(Node):
    lhs: Node
    rhs: Node
    order: int
    pos: Optional[tuple] = _pos()


def _qpow(exponent: int) -> str:
    return "q" if exponent == 1 else f"q^{exponent}"


def _signed(arg: tuple) -> str:
    sign, exponent = arg
    return ("-" if sign < 0 else "") + _qpow(exponent)


def to_source(node: Node) -> str:
    """Render a node (or statement) back to identity-file syntax."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, QPower):
        return _qpow(node.exponent) if node.exponent >= 0 else f"q^{node.exponent}"
    if isinstance(node, RFun):
        return f"R({_qpow(node.m)})"
    if isinstance(node, Phi):
        return f"phi({_signed((node.sign, node.exponent))})"
    if isinstance(node, Psi):
        return f"psi({_qpow(node.exponent)})"
    if isinstance(node, FTheta):
        return f"f({_signed(node.a)}, {_signed(node.b)})"
    if isinstance(node, Poch):
        return f"poch({', '.join(map(_signed, node.args))}; {_qpow(node.base)})"
    if isinstance(node, Subst):
        return f"subst({to_source(node.expr)}, {node.m})"
    if isinstance(node, Extract):
        return f"extract({to_source(node.expr)}, {node.m}, {node.r})"
    if isinstance(node, PolyApp):
        head = node.name if node.m == 1 else f"coeffsub({node.name}, {node.m})"
        return f"{head}({', '.join(map(to_source, node.args))})"
    if isinstance(node, Name):
        return node.ident
    if isinstance(node, BinOp):
        return f"({to_source(node.left)} {node.op} {to_source(node.right)})"
    if isinstance(node, Power):
        return f"({to_source(node.base)})^{node.exponent}"
    if isinstance(node, Neg):
        return f"(-{to_source(node.operand)})"
    if isinstance(node, Let):
        return f"let {node.name} = {to_source(node.expr)}"
    if isinstance(node, Assert):
        return f"assert {to_source(node.lhs)} == {to_source(node.rhs)} @order {node.order}"
    raise TypeError(f"not an identity-file node: {node!r}")
