"""A small expression language for smooth functions of named variables.

Grammar, loosest binding first::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?            # right associative
    atom   := NUMBER | NAME | NAME '(' expr ')' | '(' expr ')'

``NAME`` is a declared variable, ``pi``, or one of the elementary functions
in :data:`FUNCTIONS` (which must be called).  Multiplication is always
explicit.  ``a ^ k`` with an integral literal ``k`` (optionally negated) is an
integer power and is defined for negative ``a``; any other exponent means
``exp(k * log(a))``.
"""

import math
import re
from dataclasses import dataclass
from typing import Union

from . import elementary
from .elementary import div

__all__ = [
    "Num", "Var", "Unary", "Binary", "Call", "Expr", "FUNCTIONS",
    "ExprSyntaxError", "LexError", "ParseError", "UnknownIdentifier",
    "parse", "unparse", "eval_generic", "eval_real", "eval_tower",
]

FUNCTIONS = (
    "exp", "log", "sin", "cos", "tan", "sqrt", "asin", "acos", "atan",
    "sinh", "cosh", "tanh",
)


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Expr"


Expr = Union[Num, Var, Unary, Binary, Call]


class ExprSyntaxError(ValueError):
    def __init__(self, message, line, column):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")


class LexError(ExprSyntaxError):
    pass


class ParseError(ExprSyntaxError):
    def __init__(self, message, line, column, expected=()):
        self.expected = tuple(expected)
        if expected:
            message = f"{message}; expected {' or '.join(self.expected)}"
        super().__init__(message, line, column)


class UnknownIdentifier(ExprSyntaxError):
    def __init__(self, name, line, column):
        self.name = name
        super().__init__(f"unknown identifier {name!r}", line, column)


@dataclass(frozen=True)
class _Token:
    kind: str  # "num", "name", "op", "end"
    text: str
    line: int
    column: int


_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)"
    r"|(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
)


def _tokenize(src):
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        col = pos - line_start + 1
        if m is None:
            raise LexError(f"unexpected character {src[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind != "ws":
            tokens.append(_Token(kind, m.group(), line, col))
        pos = m.end()
    tokens.append(_Token("end", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, src, variables):
        self.tokens = _tokenize(src)
        self.pos = 0
        self.variables = variables

    @property
    def tok(self):
        return self.tokens[self.pos]

    def advance(self):
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def fail(self, expected):
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"unexpected {found}", t.line, t.column, expected)

    def expect(self, text):
        if self.tok.text != text or self.tok.kind != "op":
            self.fail([repr(text)])
        return self.advance()

    def parse(self):
        e = self.expr()
        if self.tok.kind != "end":
            self.fail(["operator", "end of input"])
        return e

    def expr(self):
        left = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            left = Binary(op, left, self.term())
        return left

    def term(self):
        left = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.advance().text
            left = Binary(op, left, self.unary())
        return left

    def unary(self):
        if self.tok.kind == "op" and self.tok.text == "-":
            self.advance()
            return Unary("neg", self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.advance()
            return Binary("^", base, self.unary())
        return base

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.advance()
            value = float(t.text)
            if not math.isfinite(value):
                raise LexError(f"numeric literal {t.text} overflows", t.line, t.column)
            return Num(value)
        if t.kind == "name":
            self.advance()
            if t.text in self.variables:
                return Var(t.text)
            if t.text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(t.text, arg)
            if t.text == "pi":
                return Num(math.pi)
            raise UnknownIdentifier(t.text, t.line, t.column)
        if t.kind == "op" and t.text == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        self.fail(["number", "identifier", "'('", "'-'"])


def parse(src, variables):
    """Parse ``src`` over the ordered variable names ``variables``."""
    variables = tuple(variables)
    if len(set(variables)) != len(variables):
        raise ValueError(f"duplicate variable names in {variables}")
    for name in variables:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name) or name in FUNCTIONS:
            raise ValueError(f"invalid variable name {name!r}")
    return _Parser(src, variables).parse()


# -- printing ---------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}
_ATOM = 5


def _prec(e):
    if isinstance(e, Binary):
        return _PREC[e.op]
    if isinstance(e, Unary):
        return _PREC["neg"]
    return _ATOM


def unparse(e):
    """Render with the fewest parentheses that still reparse to ``e``."""
    if isinstance(e, Num):
        if e.value.is_integer() and abs(e.value) < 1e15:
            return str(int(e.value))
        return repr(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Call):
        return f"{e.fn}({unparse(e.arg)})"
    if isinstance(e, Unary):
        inner = unparse(e.operand)
        if _prec(e.operand) < _PREC["neg"]:
            inner = f"({inner})"
        return f"-{inner}"
    p = _PREC[e.op]
    left, right = unparse(e.left), unparse(e.right)
    if e.op == "^":
        if _prec(e.left) <= p:
            left = f"({left})"
        if _prec(e.right) < _PREC["neg"]:
            right = f"({right})"
        return f"{left}^{right}"
    if _prec(e.left) < p:
        left = f"({left})"
    if _prec(e.right) <= p:
        right = f"({right})"
    return f"{left} {e.op} {right}"


# -- evaluation -------------------------------------------------------------

def _integer_exponent(e):
    sign = 1
    while isinstance(e, Unary):
        sign = -sign
        e = e.operand
    if isinstance(e, Num) and e.value.is_integer():
        return sign * int(e.value)
    return None


def eval_generic(e, env):
    """Evaluate ``e`` with variables bound from ``env``.

    Values may be floats, :class:`~smooth_tower.tower.Tower` or
    :class:`~smooth_tower.oracle.NaiveTower`; literals stay floats and are
    promoted by the carrier's operators.
    """
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        try:
            return env[e.name]
        except KeyError:
            raise KeyError(f"no value bound for variable {e.name!r}") from None
    if isinstance(e, Unary):
        return -eval_generic(e.operand, env)
    if isinstance(e, Call):
        return getattr(elementary, e.fn)(eval_generic(e.arg, env))
    left = eval_generic(e.left, env)
    if e.op == "^":
        k = _integer_exponent(e.right)
        if k is not None:
            return elementary.powi(left, k)
        return elementary.pow(left, eval_generic(e.right, env))
    right = eval_generic(e.right, env)
    if e.op == "+":
        return left + right
    if e.op == "-":
        return left - right
    if e.op == "*":
        return left * right
    return div(left, right)


def eval_real(e, at):
    return float(eval_generic(e, at))


def eval_tower(e, at):
    """Succinct tower of ``e`` at ``at`` (an ordered name -> coordinate mapping)."""
    from .tower import Tower, constant, variable

    names = list(at)
    n = len(names)
    env = {name: variable(i, at[name], n) for i, name in enumerate(names)}
    out = eval_generic(e, env)
    if not isinstance(out, Tower):
        out = constant(out, n)
    return out
