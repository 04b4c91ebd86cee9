"""Elementary functions that work on any numeric carrier.

Each function here is a :func:`functools.singledispatch` generic.  The
default implementation handles plain reals through :mod:`math`; the tower
modules register their own implementations, so a routine written against
these names and the arithmetic operators evaluates unchanged on floats,
succinct towers or naive tries.

``DERIVATIVES`` and ``PAIRED`` describe the derivative of every lifted
function in terms of the same family, which is all a carrier needs to
implement the chain rule.
"""

import math
from functools import singledispatch

from .errors import DomainError

__all__ = [
    "exp", "log", "sin", "cos", "tan", "sqrt", "asin", "acos", "atan",
    "sinh", "cosh", "tanh", "div", "powi", "pow", "pi", "constant_like",
    "UNARY", "DERIVATIVES", "PAIRED", "real_apply",
]


def real_apply(name, fn, x):
    """Apply a scalar function, turning ``math`` failures into :class:`DomainError`."""
    try:
        return fn(x)
    except ValueError:
        raise DomainError(name, x) from None
    except OverflowError:
        raise DomainError(name, x, "overflow") from None
    except ZeroDivisionError:
        raise DomainError(name, x, "division by zero") from None


def _generic(name, fn):
    @singledispatch
    def op(x):
        return real_apply(name, fn, x)

    op.__name__ = op.__qualname__ = name
    op.__doc__ = f"``{name}`` on reals, towers or naive tries."
    return op


exp = _generic("exp", math.exp)
log = _generic("log", math.log)
sin = _generic("sin", math.sin)
cos = _generic("cos", math.cos)
tan = _generic("tan", math.tan)
sqrt = _generic("sqrt", math.sqrt)
asin = _generic("asin", math.asin)
acos = _generic("acos", math.acos)
atan = _generic("atan", math.atan)
sinh = _generic("sinh", math.sinh)
cosh = _generic("cosh", math.cosh)
tanh = _generic("tanh", math.tanh)

# name -> scalar implementation
UNARY = {
    "exp": math.exp, "log": math.log, "sin": math.sin, "cos": math.cos,
    "tan": math.tan, "sqrt": math.sqrt, "asin": math.asin, "acos": math.acos,
    "atan": math.atan, "sinh": math.sinh, "cosh": math.cosh, "tanh": math.tanh,
}

# f' expressed through the input ``x`` and the tower of ``f(x)`` itself
# (``out``); referring to ``out`` ties the knot so no second copy of f is built.
DERIVATIVES = {
    "exp": lambda x, out: out,
    "log": lambda x, out: div(1.0, x),
    "tan": lambda x, out: 1.0 + out * out,
    "sqrt": lambda x, out: div(0.5, out),
    "asin": lambda x, out: div(1.0, sqrt(1.0 - x * x)),
    "acos": lambda x, out: -div(1.0, sqrt(1.0 - x * x)),
    "atan": lambda x, out: div(1.0, 1.0 + x * x),
    "tanh": lambda x, out: 1.0 - out * out,
}

# Mutually recursive pairs (f, g) with f' = g and g' = sign * f.
PAIRED = {
    "sin": ("sin", "cos", -1.0),
    "cos": ("sin", "cos", -1.0),
    "sinh": ("sinh", "cosh", 1.0),
    "cosh": ("sinh", "cosh", 1.0),
}


@singledispatch
def constant_like(x, c):
    """The constant ``c`` in the same carrier (and arity) as ``x``."""
    return float(c)


def div(a, b):
    """``a / b`` that reports a zero real divisor as a :class:`DomainError`."""
    if isinstance(b, (int, float)) and isinstance(a, (int, float)) and b == 0:
        raise DomainError("div", a, "division by zero")
    return a / b


def powi(x, k):
    """Integer power by repeated squaring.

    Valid for any base, including negative ones.  The multiplication order
    is identical for every carrier, so the head of a tower agrees bit for
    bit with the real result.
    """
    k = int(k)
    if k < 0:
        return div(1.0, powi(x, -k))
    if k == 0:
        return constant_like(x, 1.0)
    result = None
    base = x
    while True:
        if k & 1:
            result = base if result is None else result * base
        k >>= 1
        if not k:
            return result
        base = base * base


def pow(x, y):
    """General power ``exp(y * log(x))``; needs a positive base."""
    return exp(y * log(x))


def pi(like=None):
    return math.pi if like is None else constant_like(like, math.pi)
