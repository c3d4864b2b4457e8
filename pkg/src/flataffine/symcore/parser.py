"""Expression front-end for rational functions.

Grammar (whitespace insignificant):

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' nonneg-integer)?
    base   := integer-literal | variable | '(' expr ')' | '-' factor

Implicit multiplication is not allowed: "2x" is a syntax error, which keeps
multi-character variables like x11 unambiguous.  Integer literals are the
rational literals of the grammar; general rationals are spelled with the
division operator ("3/4").  All reported offsets are byte offsets into the
source text.
"""
from __future__ import annotations

from .chart import Chart, UnknownVariableError
from .ratfunc import RationalFunction


class ExpressionError(ValueError):
    """Base class for parse-time errors; carries the byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class ExprSyntaxError(ExpressionError):
    pass


class ZeroDenominatorError(ExpressionError, ZeroDivisionError):
    """Division by a rational function that normalizes to zero."""


_OPERATORS = set("+-*/^()")


def tokenize(source: str):
    """Yield (kind, text, offset) triples; kinds: 'num', 'name', 'op', 'end'."""
    tokens = []
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i + 1
            while j < n and source[j].isdigit():
                j += 1
            tokens.append(("num", source[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i + 1
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(("name", source[i:j], i))
            i = j
            continue
        if ch in _OPERATORS:
            tokens.append(("op", ch, i))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, source: str, chart: Chart):
        self.tokens = tokenize(source)
        self.pos = 0
        self.chart = chart

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, symbol: str):
        kind, text, offset = self.peek()
        if kind != "op" or text != symbol:
            raise ExprSyntaxError(f"expected {symbol!r}", offset)
        return self.advance()

    def parse(self) -> RationalFunction:
        value = self.expr()
        kind, text, offset = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {text!r} after expression", offset)
        return value

    def expr(self) -> RationalFunction:
        value = self.term()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.advance()
                rhs = self.term()
                value = value + rhs if text == "+" else value - rhs
            else:
                return value

    def term(self) -> RationalFunction:
        value = self.factor()
        while True:
            kind, text, offset = self.peek()
            if kind == "op" and text in "*/":
                self.advance()
                rhs = self.factor()
                if text == "*":
                    value = value * rhs
                else:
                    if rhs.is_zero():
                        raise ZeroDenominatorError("division by zero", offset)
                    value = value / rhs
            else:
                return value

    def factor(self) -> RationalFunction:
        value = self.base()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.advance()
            kind, text, offset = self.peek()
            if kind != "num":
                raise ExprSyntaxError("exponent must be a non-negative integer", offset)
            self.advance()
            value = value ** int(text)
        return value

    def base(self) -> RationalFunction:
        kind, text, offset = self.advance()
        if kind == "num":
            return RationalFunction.constant(self.chart, int(text))
        if kind == "name":
            if text not in self.chart:
                raise UnknownVariableError(text, self.chart)
            return RationalFunction.variable(self.chart, text)
        if kind == "op" and text == "(":
            value = self.expr()
            self.expect_op(")")
            return value
        if kind == "op" and text == "-":
            return -self.factor()
        raise ExprSyntaxError(
            f"expected a number, variable, '(' or '-', got {text!r}"
            if text else "unexpected end of input", offset)


def parse_expr(source: str, chart: Chart) -> RationalFunction:
    """Parse an expression into a normalized rational function.

    parse_expr(str(f), chart) == f for every RationalFunction f.
    """
    return _Parser(source, chart).parse()
