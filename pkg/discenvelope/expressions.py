# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers
"""
A small expression language for objectives and test functions::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := base ('^' ['-'] integer)?
    base   := number | 'inf' | var | ident '(' args ')' | '(' expr ')'
    var    := ('re' | 'im' | 'abs' | 'abs2') '(' 'z' index ')'
    ident  := 'log' | 'exp' | 'max' | 'min'

``^`` binds tighter than unary minus, so ``-x^2`` is ``-(x^2)``.
Evaluation is over extended reals and vectorized over arrays of points.
"""

import re

import attr
import numpy as np

from .errors import (
    ArityError, DimensionMismatchError, ExpressionDivisionError,
    ExpressionError, ExpressionSyntaxError, IndeterminateFormError,
    UnknownIdentifierError
)

MAX_TEXT = 64 * 1024

VARIABLES = ("re", "im", "abs", "abs2")
FUNCTIONS = {
    "log": (1, 1),
    "exp": (1, 1),
    "max": (2, None),
    "min": (2, None),
}

_TOKEN = re.compile(r"""
    (?P<space>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),])
""", re.VERBOSE)


#####
# AST
#####

def _collect(values):
    return np.asarray(values, dtype=float)


@attr.s(frozen=True)
class Const(object):
    value = attr.ib(converter=float)

    def evaluate(self, points):
        return np.full(points.shape[:-1], self.value)

    def to_text(self):
        if np.isinf(self.value):
            return "inf" if self.value > 0 else "(-inf)"
        text = repr(self.value)
        return "({0})".format(text) if self.value < 0 else text

    def max_index(self):
        return 0


@attr.s(frozen=True)
class Var(object):
    """A real-valued view of one complex coordinate, ``re(z1)`` etc."""
    func  = attr.ib(validator=attr.validators.in_(VARIABLES))
    index = attr.ib(converter=int)

    def evaluate(self, points):
        if self.index > points.shape[-1]:
            msg = "Variable z{0} used with points of C^{1}".format(
                self.index, points.shape[-1])
            raise DimensionMismatchError(msg)
        z = points[..., self.index - 1]
        if self.func == "re":
            return z.real.astype(float)
        if self.func == "im":
            return z.imag.astype(float)
        if self.func == "abs":
            return np.abs(z)
        return z.real ** 2 + z.imag ** 2

    def to_text(self):
        return "{0}(z{1})".format(self.func, self.index)

    def max_index(self):
        return self.index


@attr.s(frozen=True)
class Neg(object):
    operand = attr.ib()

    def evaluate(self, points):
        return -self.operand.evaluate(points)

    def to_text(self):
        return "(-{0})".format(self.operand.to_text())

    def max_index(self):
        return self.operand.max_index()


def _indeterminate(result, *operands):
    bad = np.isnan(result)
    for op in operands:
        bad &= ~np.isnan(op)
    if np.any(bad):
        raise IndeterminateFormError(
            "Indeterminate extended-real form (e.g. inf - inf or 0 * inf)")


@attr.s(frozen=True)
class BinOp(object):
    op    = attr.ib(validator=attr.validators.in_(["+", "-", "*", "/"]))
    left  = attr.ib()
    right = attr.ib()

    def evaluate(self, points):
        a = self.left.evaluate(points)
        b = self.right.evaluate(points)
        if self.op == "/" and np.any(b == 0):
            raise ExpressionDivisionError("Division by zero")
        with np.errstate(invalid="ignore", over="ignore"):
            if self.op == "+":
                out = a + b
            elif self.op == "-":
                out = a - b
            elif self.op == "*":
                out = a * b
            else:
                out = a / b
        _indeterminate(out, a, b)
        return out

    def to_text(self):
        return "({0} {1} {2})".format(self.left.to_text(), self.op,
                                      self.right.to_text())

    def max_index(self):
        return max(self.left.max_index(), self.right.max_index())


@attr.s(frozen=True)
class Pow(object):
    base     = attr.ib()
    exponent = attr.ib(converter=int)

    def evaluate(self, points):
        b = self.base.evaluate(points)
        if self.exponent < 0 and np.any(b == 0):
            raise ExpressionDivisionError("Division by zero in negative power")
        with np.errstate(over="ignore"):
            return np.power(b, float(self.exponent))

    def to_text(self):
        return "({0}^{1})".format(self.base.to_text(), self.exponent)

    def max_index(self):
        return self.base.max_index()


@attr.s(frozen=True)
class Call(object):
    func = attr.ib(validator=attr.validators.in_(list(FUNCTIONS)))
    args = attr.ib(converter=tuple)

    def evaluate(self, points):
        values = [a.evaluate(points) for a in self.args]
        if self.func == "max":
            return _collect(np.maximum.reduce(values))
        if self.func == "min":
            return _collect(np.minimum.reduce(values))
        x = values[0]
        if self.func == "exp":
            with np.errstate(over="ignore"):
                return np.exp(x)
        if np.any(x < 0):
            raise IndeterminateFormError("log of a negative value")
        with np.errstate(divide="ignore"):
            return np.log(x)

    def to_text(self):
        return "{0}({1})".format(self.func,
                                 ", ".join(a.to_text() for a in self.args))

    def max_index(self):
        return max(a.max_index() for a in self.args)


#####
# Parser
#####

@attr.s
class Token(object):
    kind   = attr.ib()
    text   = attr.ib()
    column = attr.ib()


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            msg = "Unexpected character '{0}'".format(text[pos])
            raise ExpressionSyntaxError(msg, pos + 1)
        kind = match.lastgroup
        if kind != "space":
            tokens.append(Token(kind, match.group(), pos + 1))
        pos = match.end()
    tokens.append(Token("end", "", len(text) + 1))
    return tokens


class _Parser(object):
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, text):
        tok = self.current
        if tok.text != text:
            found = tok.text or "end of input"
            msg = "Expected '{0}', found '{1}'".format(text, found)
            raise ExpressionSyntaxError(msg, tok.column)
        return self.advance()

    def parse(self):
        node = self.expr()
        if self.current.kind != "end":
            msg = "Unexpected '{0}'".format(self.current.text)
            raise ExpressionSyntaxError(msg, self.current.column)
        return node

    def expr(self):
        node = self.term()
        while self.current.text in ("+", "-"):
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.current.text in ("*", "/"):
            op = self.advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.current.text == "-":
            self.advance()
            operand = self.unary()
            if isinstance(operand, Const):
                return Const(-operand.value)
            return Neg(operand)
        return self.power()

    def power(self):
        node = self.base()
        if self.current.text != "^":
            return node
        self.advance()
        sign = 1
        if self.current.text == "-":
            self.advance()
            sign = -1
        tok = self.current
        if tok.kind != "number" or not tok.text.isdigit():
            raise ExpressionSyntaxError("Exponent must be an integer",
                                        tok.column)
        self.advance()
        return Pow(node, sign * int(tok.text))

    def base(self):
        tok = self.current
        if tok.kind == "number":
            self.advance()
            return Const(float(tok.text))
        if tok.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "name":
            return self.name()
        found = tok.text or "end of input"
        raise ExpressionSyntaxError("Unexpected '{0}'".format(found),
                                    tok.column)

    def name(self):
        tok = self.advance()
        if tok.text == "inf":
            return Const(np.inf)
        if tok.text in VARIABLES:
            return self.variable(tok)
        if tok.text not in FUNCTIONS:
            if re.match(r"z\d+$", tok.text):
                msg = ("Complex variable '{0}' must be wrapped in "
                       "re/im/abs/abs2".format(tok.text))
                raise ExpressionSyntaxError(msg, tok.column)
            msg = "Unknown identifier '{0}' (column {1})".format(tok.text,
                                                                 tok.column)
            raise UnknownIdentifierError(msg)
        self.expect("(")
        args = [self.expr()]
        while self.current.text == ",":
            self.advance()
            args.append(self.expr())
        self.expect(")")
        lo, hi = FUNCTIONS[tok.text]
        if len(args) < lo or (hi is not None and len(args) > hi):
            want = str(lo) if hi == lo else "at least {0}".format(lo)
            msg = "{0}() takes {1} argument(s), got {2}".format(
                tok.text, want, len(args))
            raise ArityError(msg)
        return Call(tok.text, args)

    def variable(self, tok):
        self.expect("(")
        arg = self.current
        match = re.match(r"z(\d+)$", arg.text) if arg.kind == "name" else None
        if not match or int(match.group(1)) < 1:
            raise ExpressionSyntaxError(
                "{0}() expects a variable z1 or z2".format(tok.text),
                arg.column)
        self.advance()
        if self.current.text == ",":
            raise ArityError("{0}() takes 1 argument".format(tok.text))
        self.expect(")")
        return Var(tok.text, int(match.group(1)))


def parse_expr(text):
    """
    Parse ``text`` into an expression tree.

    :raises ExpressionSyntaxError: with the 1-based column of the problem
    :raises UnknownIdentifierError: for names outside the grammar
    :raises ArityError: for calls with the wrong argument count
    """
    if not isinstance(text, str) or not text.strip():
        raise ExpressionSyntaxError("Empty expression", 1)
    if len(text.encode("utf-8")) > MAX_TEXT:
        raise ExpressionError("Expression exceeds 64 KiB")
    return _Parser(text).parse()


def eval_expr(e, p):
    """
    Evaluate ``e`` at a point or at an array of points (last axis = n).
    Returns a float for a single point.
    """
    pts = np.asarray(p, dtype=complex)
    if pts.ndim == 0:
        pts = pts.reshape(1)
    out = np.asarray(e.evaluate(pts), dtype=float)
    if pts.ndim == 1:
        return float(out)
    return out


def to_text(e):
    return e.to_text()
