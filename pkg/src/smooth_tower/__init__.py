"""Lazy multivariate tower automatic differentiation.

All partial derivatives of a smooth function at a point live in a lazily
built trie that visits each mixed partial once::

    >>> from smooth_tower import variable, sin, exp, extract
    >>> x, y = variable(0, 0.7, 2), variable(1, 0.4, 2)
    >>> f = sin(x) * exp(y * y)
    >>> round(extract(f, (1, 1)), 12)
    0.718040497097
"""

from .counters import CoefficientCounter
from .elementary import (
    acos, asin, atan, constant_like, cos, cosh, exp, log, pi, pow, powi, sin,
    sinh, sqrt, tan, tanh,
)
from .errors import ArityError, DomainError
from .exprlang import eval_generic, eval_tower, parse, unparse
from .tower import (
    Tower, add, constant, div, extract, extract_all_upto, lift_unary, mul, neg,
    sub, track, variable,
)

# Registers the naive-trie implementations of the elementary functions.
from . import oracle  # noqa: E402,F401

__version__ = "0.1.0"
