"""Small recursive-descent parser for arithmetic expressions.

Shared by the polynomial text syntax and the system DSL.  Atoms are resolved
through a callback so the same grammar yields polynomials, rational
functions or linear forms in jet variables.

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := ('+' | '-') unary | power
    power := atom (('^' | '**') INT)?
    atom  := NUMBER | NAME ('[' INT (',' INT)* ']')? | '(' expr ')'
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*/^()\[\],]))"
)


def tokenize(text, line=None):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            col = pos + 1
            while col - 1 < len(text) and text[col - 1].isspace():
                col += 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", line, col)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start + 1))
        pos = m.end()
    tokens.append(("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text, atom, line=None):
        self.tokens = tokenize(text, line)
        self.i = 0
        self.atom = atom
        self.line = line

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, col = self.take()
        if val != value:
            raise ParseError(f"expected {value!r}, got {val or 'end of input'!r}", self.line, col)

    def error(self, msg, col):
        return ParseError(msg, self.line, col)

    def _apply(self, fn, col):
        try:
            return fn()
        except ParseError as exc:
            if exc.column is None:
                raise self.error(exc.message, col) from None
            raise
        except ZeroDivisionError:
            raise self.error("division by zero", col) from None
        except TypeError:
            raise self.error("unsupported operation", col) from None

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression", self.peek()[2])
        value = self.expr()
        kind, val, col = self.peek()
        if kind != "end":
            raise self.error(f"unexpected {val!r}", col)
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-"):
            _, op, col = self.take()
            rhs = self.term()
            if op == "+":
                value = self._apply(lambda: value + rhs, col)
            else:
                value = self._apply(lambda: value - rhs, col)
        return value

    def term(self):
        value = self.unary()
        while self.peek()[1] in ("*", "/"):
            _, op, col = self.take()
            rhs = self.unary()
            if op == "*":
                value = self._apply(lambda: value * rhs, col)
            else:
                value = self._apply(lambda: value / rhs, col)
        return value

    def unary(self):
        kind, val, col = self.peek()
        if val in ("+", "-"):
            self.take()
            inner = self.unary()
            return inner if val == "+" else self._apply(lambda: -inner, col)
        return self.power()

    def power(self):
        base = self.atom_()
        if self.peek()[1] in ("^", "**"):
            _, _, col = self.take()
            kind, val, ecol = self.take()
            if kind != "num" or "." in val:
                raise self.error("exponent must be a nonnegative integer", ecol)
            k = int(val)
            return self._apply(lambda: base ** k, col)
        return base

    def atom_(self):
        kind, val, col = self.take()
        if kind == "num":
            return Fraction(val)
        if val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "name":
            indices = None
            if self.peek()[1] == "[":
                self.take()
                indices = []
                while True:
                    k2, v2, c2 = self.take()
                    if k2 != "num" or "." in v2:
                        raise self.error("multi-index entries must be nonnegative integers", c2)
                    indices.append(int(v2))
                    k3, v3, c3 = self.take()
                    if v3 == "]":
                        break
                    if v3 != ",":
                        raise self.error(f"expected ',' or ']', got {v3 or 'end of input'!r}", c3)
                indices = tuple(indices)
            return self._apply(lambda: self.atom(val, indices), col)
        raise self.error(f"unexpected {val or 'end of input'!r}", col)


def parse_expression(text, atom, line=None):
    """Parse ``text``; ``atom(name, indices)`` resolves identifiers."""
    return _Parser(text, atom, line).parse()


def _poly_atom(gens):
    from .arith import Poly

    def atom(name, indices):
        if indices is not None:
            raise ParseError(f"unexpected index on {name!r}")
        if name not in gens:
            raise ParseError(f"unknown indeterminate {name!r}")
        return Poly.var(name, gens)

    return atom


def parse_polynomial(text, gens, line=None):
    from .arith import Poly, RationalFunction

    value = parse_expression(text, _poly_atom(gens), line)
    if isinstance(value, Fraction):
        return Poly.const(value, gens)
    if isinstance(value, RationalFunction):
        if not value.is_polynomial():
            raise ParseError(f"{text!r} is not a polynomial", line)
        return value.num * value.den.constant_value() ** -1
    return value


def parse_rational_function(text, gens, line=None):
    from .arith import Poly, RationalFunction

    value = parse_expression(text, _poly_atom(gens), line)
    if isinstance(value, Fraction):
        value = Poly.const(value, gens)
    if isinstance(value, Poly):
        value = RationalFunction(value)
    return value
