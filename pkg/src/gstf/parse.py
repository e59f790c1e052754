"""Recursive-descent parser for function expressions.

Grammar (standard precedence, '*' binds tighter, left-associative):

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | number | call | '(' expr ')'
    call   := ident '(' (arg (',' arg)*)? ')'
    arg    := expr

Every error carries the byte offset where it was detected.  Unary minus
is accepted in factor position (negated numbers become negative
constants, anything else is wrapped in scale(..., -1)).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .catalog import (Bump, Const, Diff, FunctionSpec, Gaussian, Hermite,
                      Modulate, Poly, Product, Scale, SubExp, Sum, Translate)
from .errors import (ArityMismatch, LexicalError, ParseError, UnbalancedParen,
                     UnknownIdentifier)

__all__ = ["Token", "tokenize", "parse_function_expr", "pretty_print"]

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<sym>[()+\-*,])
""", re.VERBOSE)

MAX_EXPR_LEN = 4096


@dataclass(frozen=True)
class Token:
    kind: str  # "number", "ident", or the symbol itself
    text: str
    offset: int


def tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise LexicalError(f"unexpected character {text[pos]!r}", offset=pos)
        if m.lastgroup == "number":
            tokens.append(Token("number", m.group(), pos))
        elif m.lastgroup == "ident":
            tokens.append(Token("ident", m.group(), pos))
        elif m.lastgroup == "sym":
            tokens.append(Token(m.group(), m.group(), pos))
        pos = m.end()
    return tokens


def _as_number(node, name: str, offset: int) -> float:
    if isinstance(node, Const):
        return node.value
    raise ArityMismatch(f"{name} expects a numeric argument", offset=offset)


def _as_int(node, name: str, offset: int) -> int:
    v = _as_number(node, name, offset)
    if v != int(v):
        raise ArityMismatch(f"{name} expects an integer argument", offset=offset)
    return int(v)


def _as_spec(node, name: str, offset: int) -> FunctionSpec:
    if isinstance(node, Const):
        raise ArityMismatch(
            f"{name} expects a function as its first argument", offset=offset)
    return node


def _build_call(name: str, args: list, offset: int) -> FunctionSpec:
    def need(n):
        if len(args) != n:
            raise ArityMismatch(
                f"{name} takes {n} argument(s), got {len(args)}", offset=offset)

    if name == "gaussian":
        need(1)
        return Gaussian(_as_number(args[0], name, offset))
    if name == "hermite":
        need(1)
        return Hermite(_as_int(args[0], name, offset))
    if name == "bump":
        need(0)
        return Bump()
    if name == "subexp":
        need(2)
        return SubExp(_as_number(args[0], name, offset),
                      _as_number(args[1], name, offset))
    if name == "poly":
        need(1)
        return Poly(_as_int(args[0], name, offset))
    if name == "translate":
        need(2)
        return Translate(_as_spec(args[0], name, offset),
                         _as_number(args[1], name, offset))
    if name == "modulate":
        need(2)
        return Modulate(_as_spec(args[0], name, offset),
                        _as_number(args[1], name, offset))
    if name == "scale":
        need(2)
        return Scale(_as_spec(args[0], name, offset),
                     _as_number(args[1], name, offset))
    raise UnknownIdentifier(f"unknown function {name!r}", offset=offset)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def advance(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok is None or tok.kind != kind:
            offset = tok.offset if tok else len(self.text)
            if kind in ("(", ")"):
                raise UnbalancedParen(f"expected {kind!r}", offset=offset)
            raise ParseError(f"expected {kind!r}", offset=offset)
        return self.advance()

    def parse(self) -> FunctionSpec:
        node = self.expr()
        tok = self.peek()
        if tok is not None:
            if tok.kind == ")":
                raise UnbalancedParen("unmatched ')'", offset=tok.offset)
            raise ParseError(f"unexpected {tok.text!r}", offset=tok.offset)
        return node

    def expr(self) -> FunctionSpec:
        node = self.term()
        while (tok := self.peek()) is not None and tok.kind in ("+", "-"):
            self.advance()
            right = self.term()
            node = Sum(node, right) if tok.kind == "+" else Diff(node, right)
        return node

    def term(self) -> FunctionSpec:
        node = self.factor()
        while (tok := self.peek()) is not None and tok.kind == "*":
            self.advance()
            node = Product(node, self.factor())
        return node

    def factor(self) -> FunctionSpec:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression",
                             offset=len(self.text))
        if tok.kind == "-":
            self.advance()
            inner = self.factor()
            if isinstance(inner, Const):
                return Const(-inner.value)
            return Scale(inner, -1.0)
        if tok.kind == "number":
            self.advance()
            return Const(float(tok.text))
        if tok.kind == "ident":
            return self.call()
        if tok.kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"unexpected {tok.text!r}", offset=tok.offset)

    def call(self) -> FunctionSpec:
        name_tok = self.advance()
        self.expect("(")
        args = []
        tok = self.peek()
        if tok is not None and tok.kind != ")":
            args.append(self.expr())
            while (tok := self.peek()) is not None and tok.kind == ",":
                self.advance()
                args.append(self.expr())
        self.expect(")")
        return _build_call(name_tok.text, args, name_tok.offset)


def parse_function_expr(text: str) -> FunctionSpec:
    """Parse a function expression into a FunctionSpec tree."""
    if not text or not text.strip():
        raise ParseError("empty expression", offset=0)
    if len(text) > MAX_EXPR_LEN:
        raise ParseError(f"expression longer than {MAX_EXPR_LEN} characters",
                         offset=MAX_EXPR_LEN)
    return _Parser(text).parse()


def pretty_print(spec: FunctionSpec) -> str:
    """Canonical text form; parse_function_expr(pretty_print(s)) == s."""
    return str(spec)
