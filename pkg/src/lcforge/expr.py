"""Recursive-descent parser for polynomial expressions.

Accepts ``+ - * ^`` (``**`` too), parentheses, integer literals, division by
constants (so ``3/4*x`` works) and the ring's variable names.
"""

from __future__ import annotations

import re

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def tokenize(text: str, line: int | None = None, col0: int = 1):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            bad = text[pos:].lstrip()
            col = col0 + len(text) - len(bad)
            raise ParseError(f"unexpected character {bad[0]!r}", line, col)
        num, name, op = m.groups()
        start = col0 + m.start(m.lastindex)
        if num is not None:
            tokens.append(("num", int(num), start))
        elif name is not None:
            tokens.append(("name", name, start))
        else:
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    tokens.append(("end", None, col0 + len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens, ring, line):
        self.tokens = tokens
        self.i = 0
        self.ring = ring
        self.line = line

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok[2])

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op_tok = self.take()
            rhs = self.unary()
            if op_tok[1] == "*":
                value = value * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    self.error("division only by nonzero constants", op_tok)
                f = self.ring.field
                value = value.scale(f.inv(rhs.terms[(0,) * self.ring.nvars]))
        return value

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek()[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.error("exponent must be a non-negative integer literal", tok)
            base = base ** tok[1]
        return base

    def atom(self):
        tok = self.take()
        kind, value, _ = tok
        if kind == "num":
            return self.ring.constant(value)
        if kind == "name":
            if value not in self.ring.names:
                self.error(f"unknown variable {value!r}", tok)
            return self.ring.var(value)
        if tok[:2] == ("op", "("):
            inner = self.expr()
            if self.take()[:2] != ("op", ")"):
                self.error("expected ')'", self.tokens[self.i - 1])
            return inner
        self.error(f"unexpected token {value!r}" if kind != "end" else "unexpected end of expression", tok)


def parse_polynomial(text: str, ring, line: int | None = None, col0: int = 1):
    try:
        return _Parser(tokenize(text, line, col0), ring, line).parse()
    except ZeroDivisionError as exc:
        raise ParseError(str(exc), line, col0) from None
