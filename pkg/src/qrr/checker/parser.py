"""Recursive-descent parser for identity files (``.qid``).

A file is a sequence of statements, one per line::

    # comment
    let u = q*R(q^5)
    assert R(q)^2 - R(q^2) == -q*R(q)*R(q^2)^2*(R(q)^2 + R(q^2)) @order 200

A newline does not end a statement when it falls inside parentheses, when
the line ends with an operator, or when the next line begins with one, so
long assertions can be wrapped.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..polynomials import ARITY
from .ast import (
    Assert, BinOp, Extract, FTheta, Let, Name, Neg, Num, Phi, Poch, PolyApp, Power, Psi,
    QPower, RFun, Subst,
)

__all__ = ["QidError", "QidSyntaxError", "UnknownName", "ArityMismatch", "parse", "parse_expr"]

RESERVED = {"q", "R", "phi", "psi", "f", "poch", "subst", "extract", "coeffsub", "let", "assert"}


class QidError(Exception):
    """Base class for identity-file errors; carries a 1-based line and column."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.message = message
        self.line = line
        self.col = col
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + message)


class QidSyntaxError(QidError):
    pass


class UnknownName(QidError):
    pass


class ArityMismatch(QidError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str  # INT, IDENT, OP, NEWLINE, EOF
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<comment>#[^\n]*)|(?P<newline>\n)|(?P<int>\d+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>==|[-+*/^(),;=@])"
)


def tokenize(text: str) -> list:
    tokens = []
    line, line_start, depth = 1, 0, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise QidSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind == "newline":
            if depth == 0:
                tokens.append(Token("NEWLINE", "\n", line, col))
            line += 1
            line_start = m.end()
        elif kind == "int":
            tokens.append(Token("INT", value, line, col))
        elif kind == "ident":
            tokens.append(Token("IDENT", value, line, col))
        elif kind == "op":
            if value == "(":
                depth += 1
            elif value == ")":
                depth = max(depth - 1, 0)
            tokens.append(Token("OP", value, line, col))
        pos = m.end()
    tokens.append(Token("NEWLINE", "\n", line, pos - line_start + 1))
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return _join_continuations(tokens)


_CONTINUES = {"==", "+", "-", "*", "/", "^", "@", "=", ","}


def _join_continuations(tokens: list) -> list:
    out = []
    for i, t in enumerate(tokens):
        if t.kind == "NEWLINE" and out:
            prev, nxt = out[-1], tokens[i + 1]
            if (prev.kind == "OP" and prev.text in _CONTINUES) or (
                    nxt.kind == "OP" and nxt.text in _CONTINUES):
                continue
        out.append(t)
    return out


class _Parser:
    def __init__(self, text: str, names=None):
        self.tokens = tokenize(text)
        self.i = 0
        self.names = set(names or ())

    # -- token helpers --------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind in ("OP", "IDENT") and self.tok.text == text

    def error(self, message: str, tok: Token | None = None, cls=QidSyntaxError):
        tok = tok or self.tok
        return cls(message, tok.line, tok.col)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            shown = self.tok.text if self.tok.kind != "NEWLINE" else "end of line"
            raise self.error(f"expected {text!r}, found {shown!r}")
        return self.advance()

    def expect_int(self) -> int:
        if self.tok.kind != "INT":
            raise self.error(f"expected an integer, found {self.tok.text!r}")
        return int(self.advance().text)

    def signed_int(self) -> int:
        sign = 1
        if self.at("-"):
            self.advance()
            sign = -1
        return sign * self.expect_int()

    # -- statements -----------------------------------------------------

    def statements(self) -> list:
        out = []
        while self.tok.kind != "EOF":
            if self.tok.kind == "NEWLINE":
                self.advance()
                continue
            out.append(self.statement())
            if self.tok.kind not in ("NEWLINE", "EOF"):
                raise self.error(f"unexpected {self.tok.text!r} after statement")
        return out

    def statement(self):
        start = self.tok
        if self.at("let"):
            self.advance()
            if self.tok.kind != "IDENT":
                raise self.error("expected a name after 'let'")
            name_tok = self.advance()
            name = name_tok.text
            if name in RESERVED or name in ARITY:
                raise self.error(f"{name!r} is reserved", name_tok)
            self.expect("=")
            expr = self.expr()
            self.names.add(name)
            return Let(name, expr, pos=(start.line, start.col))
        if self.at("assert"):
            self.advance()
            lhs = self.expr()
            self.expect("==")
            rhs = self.expr()
            self.expect("@")
            self.expect("order")
            order_tok = self.tok
            order = self.expect_int()
            if order < 1:
                raise self.error("order must be positive", order_tok)
            return Assert(lhs, rhs, order, pos=(start.line, start.col))
        raise self.error("expected 'let' or 'assert'")

    # -- expressions ----------------------------------------------------

    def expr(self):
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance()
            node = BinOp(op.text, node, self.term(), pos=(op.line, op.col))
        return node

    def term(self):
        node = self.factor()
        while self.at("*") or self.at("/"):
            op = self.advance()
            node = BinOp(op.text, node, self.factor(), pos=(op.line, op.col))
        return node

    def factor(self):
        if self.at("-"):
            t = self.advance()
            return Neg(self.factor(), pos=(t.line, t.col))
        node = self.atom()
        if self.at("^"):
            t = self.advance()
            node = Power(node, self.signed_int(), pos=(t.line, t.col))
        return node

    def qpow(self) -> int:
        self.expect("q")
        if self.at("^"):
            self.advance()
            return self.expect_int()
        return 1

    def signed_q(self) -> tuple:
        sign = 1
        if self.at("-"):
            self.advance()
            sign = -1
        exponent = self.qpow()
        return sign, exponent

    def atom(self):
        t = self.tok
        pos = (t.line, t.col)
        if t.kind == "INT":
            self.advance()
            return Num(int(t.text), pos=pos)
        if self.at("("):
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if t.kind != "IDENT":
            shown = t.text if t.kind != "NEWLINE" else "end of line"
            raise self.error(f"unexpected {shown!r}")
        word = t.text
        if word == "q":
            self.advance()
            if self.at("^"):
                self.advance()
                return QPower(self.signed_int(), pos=pos)
            return QPower(1, pos=pos)
        if word == "R":
            self.advance()
            self.expect("(")
            m = self.qpow()
            self.expect(")")
            if m < 1:
                raise self.error("R(q^m) needs m >= 1", t)
            return RFun(m, pos=pos)
        if word == "phi":
            self.advance()
            self.expect("(")
            sign, e = self.signed_q()
            self.expect(")")
            self._positive(e, t)
            return Phi(sign, e, pos=pos)
        if word == "psi":
            self.advance()
            self.expect("(")
            e = self.qpow()
            self.expect(")")
            self._positive(e, t)
            return Psi(e, pos=pos)
        if word == "f":
            self.advance()
            self.expect("(")
            a = self.signed_q()
            self.expect(",")
            b = self.signed_q()
            self.expect(")")
            if a[1] + b[1] < 1:
                raise self.error("f(a, b) needs |ab| < 1", t)
            return FTheta(a, b, pos=pos)
        if word == "poch":
            self.advance()
            self.expect("(")
            args = [self.signed_q()]
            while self.at(","):
                self.advance()
                args.append(self.signed_q())
            self.expect(";")
            base = self.qpow()
            self.expect(")")
            for _, e in args:
                self._positive(e, t)
            self._positive(base, t)
            return Poch(tuple(args), base, pos=pos)
        if word == "subst":
            self.advance()
            self.expect("(")
            inner = self.expr()
            self.expect(",")
            m = self.expect_int()
            self.expect(")")
            self._positive(m, t)
            return Subst(inner, m, pos=pos)
        if word == "extract":
            self.advance()
            self.expect("(")
            inner = self.expr()
            self.expect(",")
            m = self.expect_int()
            self.expect(",")
            r = self.expect_int()
            self.expect(")")
            self._positive(m, t)
            if r >= m:
                raise self.error(f"residue {r} is not below modulus {m}", t)
            return Extract(inner, m, r, pos=pos)
        if word == "coeffsub":
            self.advance()
            self.expect("(")
            name_tok = self.advance()
            if name_tok.text not in ARITY:
                raise self.error(f"unknown polynomial {name_tok.text!r}", name_tok, UnknownName)
            self.expect(",")
            m = self.expect_int()
            self.expect(")")
            self._positive(m, t)
            return self.poly_args(name_tok.text, m, t)
        if word in ARITY:
            self.advance()
            return self.poly_args(word, 1, t)
        if word in RESERVED:
            raise self.error(f"{word!r} cannot be used here")
        self.advance()
        if word not in self.names:
            raise self.error(f"unknown name {word!r}", t, UnknownName)
        return Name(word, pos=pos)

    def poly_args(self, name: str, m: int, t: Token):
        self.expect("(")
        args = [self.expr()]
        while self.at(","):
            self.advance()
            args.append(self.expr())
        self.expect(")")
        if len(args) != ARITY[name]:
            raise self.error(
                f"{name} takes {ARITY[name]} arguments, got {len(args)}", t, ArityMismatch)
        return PolyApp(name, m, tuple(args), pos=(t.line, t.col))

    def _positive(self, value: int, t: Token):
        if value < 1:
            raise self.error("exponents here must be positive", t)


def parse(text: str) -> list:
    """Parse an identity file into a list of ``Let`` and ``Assert`` nodes."""
    return _Parser(text).statements()


def parse_expr(text: str, names=()):
    """Parse a single expression (used by the CLI's expand/dissect commands)."""
    p = _Parser(text, names)
    node = p.expr()
    while p.tok.kind == "NEWLINE":
        p.advance()
    if p.tok.kind != "EOF":
        raise p.error(f"unexpected {p.tok.text!r} after expression")
    return node
