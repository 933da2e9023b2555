"""Expression parser: integers, identifiers, + - * / ^ and parentheses.

Evaluates straight into raw ring values.  ``^`` binds tightest and takes an
integer exponent (``x^(-1)`` inverts a unit); ``/`` divides by a unit; unary
minus is allowed, so ``-x^2`` is ``-(x^2)``.
"""

from __future__ import annotations

import re

from ..errors import NotAUnit, ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start, text)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, ring, text):
        self.ring = ring
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", tok[2], self.text)
        self.i += 1
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0, self.text)
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2], self.text)
        return value

    def expr(self):
        R = self.ring
        value = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            rhs = self.term()
            value = R.add(value, rhs) if op == "+" else R.sub(value, rhs)
        return value

    def term(self):
        R = self.ring
        value = self.unary()
        while self.peek()[0] in "*/":
            op, _, pos = self.take()
            rhs = self.unary()
            if op == "*":
                value = R.mul(value, rhs)
            else:
                inv = R.unit_inverse(rhs)
                if inv is None:
                    raise NotAUnit(f"division by a non-unit at position {pos}")
                value = R.mul(value, inv)
        return value

    def unary(self):
        if self.peek()[0] == "-":
            self.take()
            return self.ring.neg(self.unary())
        if self.peek()[0] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            _, _, pos = self.take()
            exponent = self.exponent()
            try:
                return self.ring.pow(base, exponent)
            except NotAUnit:
                raise NotAUnit(f"negative power of a non-unit at position {pos}") from None
        return base

    def exponent(self):
        tok = self.peek()
        sign = 1
        if tok[0] == "-":
            self.take()
            sign = -1
            tok = self.peek()
        if tok[0] == "int":
            return sign * self.take()[1]
        if tok[0] == "(":
            self.take()
            value = self.exponent()
            self.take(")")
            return sign * value
        raise ParseError("exponent must be an integer", tok[2], self.text)

    def atom(self):
        kind, value, pos = self.peek()
        if kind == "int":
            self.take()
            return self.ring.from_int(value)
        if kind == "name":
            self.take()
            try:
                return self.ring.gen(value)
            except KeyError:
                raise ParseError(f"unknown variable {value!r}", pos, self.text) from None
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        what = "end of input" if kind == "end" else repr(value)
        raise ParseError(f"unexpected {what}", pos, self.text)


def parse_raw(ring, text):
    """Evaluate ``text`` in ``ring`` and return the canonical raw value."""
    if isinstance(text, int):
        return ring.from_int(text)
    return _Parser(ring, str(text)).parse()
