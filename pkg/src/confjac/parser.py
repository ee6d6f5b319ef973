"""Tokenizer and recursive-descent parser for the expression grammar.

Grammar (component lists are comma separated)::

    source := expr (',' expr)*
    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | power
    power  := atom ('^' factor)?
    atom   := NUMBER | IDENT | IDENT '(' expr ')' | '(' expr ')'

Precedence: '^' (right-associative) binds tighter than unary minus,
which binds tighter than '*' and '/', which bind tighter than '+' and
'-'. Numbers are unsigned decimals with optional fraction and optional
exponent part, e.g. ``2``, ``0.5``, ``1.25e-3``.
"""

from __future__ import annotations

import re
from typing import NamedTuple

from .errors import ParseError, UnknownVariableError
from .expr import Binary, Constant, ExprNode, FunctionDef, FUNCTION_NAMES, Unary, Variable

_NUMBER_RE = re.compile(r"\d+(?:\.\d+)?(?:[eE][-+]?\d+)?")
_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_OPERATORS = "+-*/^(),"


class Token(NamedTuple):
    kind: str  # "num" | "ident" | one of _OPERATORS | "end"
    text: str
    pos: int


def _tokenize(source: str) -> list[Token]:
    tokens = []
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            m = _NUMBER_RE.match(source, i)
            tokens.append(Token("num", m.group(), i))
            i = m.end()
            continue
        if ch.isalpha():
            m = _IDENT_RE.match(source, i)
            tokens.append(Token("ident", m.group(), i))
            i = m.end()
            continue
        if ch in _OPERATORS:
            tokens.append(Token(ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token], variables: tuple[str, ...]):
        self.tokens = tokens
        self.i = 0
        self.declared = set(variables)

    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            found = tok.text or "end of input"
            raise ParseError(f"expected {kind!r} but found {found!r}", tok.pos)
        return self.advance()

    def expr(self) -> ExprNode:
        node = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.advance().kind
            node = Binary("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self) -> ExprNode:
        node = self.factor()
        while self.peek().kind in ("*", "/"):
            op = self.advance().kind
            node = Binary("mul" if op == "*" else "div", node, self.factor())
        return node

    def factor(self) -> ExprNode:
        if self.peek().kind == "-":
            self.advance()
            return Unary("neg", self.factor())
        return self.power()

    def power(self) -> ExprNode:
        base = self.atom()
        if self.peek().kind == "^":
            self.advance()
            return Binary("pow", base, self.factor())
        return base

    def atom(self) -> ExprNode:
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            return Constant(float(tok.text))
        if tok.kind == "ident":
            self.advance()
            if self.peek().kind == "(":
                if tok.text not in FUNCTION_NAMES:
                    if tok.text in self.declared:
                        raise ParseError(
                            f"{tok.text!r} is a variable, not a function", tok.pos)
                    raise UnknownVariableError(
                        f"unknown function {tok.text!r}", tok.pos)
                self.advance()
                arg = self.expr()
                self.expect(")")
                return Unary(tok.text, arg)
            if tok.text in self.declared:
                return Variable(tok.text)
            raise UnknownVariableError(
                f"unknown identifier {tok.text!r}", tok.pos)
        if tok.kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        found = tok.text or "end of input"
        raise ParseError(f"expected a number, name or '(' but found {found!r}",
                         tok.pos)


def parse(source: str, variables) -> FunctionDef:
    """Parse a comma-separated list of expressions into a FunctionDef.

    ``variables`` fixes the variable order (and hence Jacobian column
    order); it may declare variables the source never uses. Raises
    ParseError on malformed input and UnknownVariableError when an
    identifier is neither declared nor a built-in function name.
    """
    variables = tuple(variables)
    p = _Parser(_tokenize(source), variables)
    components = [p.expr()]
    while p.peek().kind == ",":
        p.advance()
        components.append(p.expr())
    tok = p.peek()
    if tok.kind != "end":
        raise ParseError(f"unexpected {tok.text!r}", tok.pos)
    return FunctionDef(tuple(components), variables)
