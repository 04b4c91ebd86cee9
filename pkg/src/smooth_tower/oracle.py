"""Independent baselines for checking :mod:`smooth_tower.tower`.

* :class:`NaiveTower`: the unpruned n-ary derivative trie.  Every node has
  one child per variable, so ``d/dx d/dy`` and ``d/dy d/dx`` are separate
  nodes computed separately.  It shares nothing with the succinct trie but
  the elementary derivative rules and the constant short-cuts.  A constant
  naive trie still materialises a fresh node for every path.
* :func:`fd_partial`: central finite differences on a plain function.
* :func:`leibniz_bruteforce`: the multinomial product rule, summed directly.
"""

import itertools
import math
from dataclasses import dataclass
from functools import cache, partial
from numbers import Real

import numpy as np

from . import elementary
from .counters import FORCE_LOCK, CoefficientCounter
from .elementary import real_apply
from .errors import ArityError, DomainError
from .multiindex import check_multi_index

__all__ = [
    "NaiveTower", "naive_constant", "naive_variable", "naive_eval",
    "naive_extract", "naive_demand", "naive_track", "FDConfig", "fd_partial",
    "leibniz_bruteforce",
]


class NaiveTower:
    __slots__ = ("arity", "value", "is_constant", "_children", "_counter")

    def __init__(self, arity, value, children=(), is_constant=False):
        self.arity = arity
        self.value = value
        self.is_constant = is_constant
        self._children = list(children)
        self._counter = None

    def child(self, i):
        c = self._children[i]
        if c.__class__ is NaiveTower:
            return c
        built = c()
        with FORCE_LOCK:
            current = self._children[i]
            if current.__class__ is NaiveTower:
                return current
            self._children[i] = built
            if self._counter is not None:
                self._counter.adopt(built, True)
        return built

    def __repr__(self):
        return f"NaiveTower(arity={self.arity}, value={self.value!r})"

    def _coerce(self, other):
        if other.__class__ is NaiveTower:
            return other
        if isinstance(other, Real):
            return naive_constant(float(other), self.arity)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else _add(self, other)

    def __radd__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else _add(other, self)

    def __sub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else _sub(self, other)

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else _sub(other, self)

    def __mul__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else _mul(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else _mul(other, self)

    def __truediv__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else _div(self, other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else _div(other, self)

    def __neg__(self):
        return _neg(self)

    def __pos__(self):
        return self

    def __pow__(self, k):
        if isinstance(k, int) or (isinstance(k, float) and k.is_integer()):
            return elementary.powi(self, int(k))
        return elementary.pow(self, k)


def naive_constant(c, n):
    c = float(c)
    return NaiveTower(n, c, [partial(naive_constant, 0.0, n) for _ in range(n)], True)


def naive_variable(i, a, n):
    if not 0 <= i < n:
        raise IndexError(f"variable index {i} out of range for arity {n}")
    return NaiveTower(
        n, float(a),
        [partial(naive_constant, 1.0 if j == i else 0.0, n) for j in range(n)],
    )


def _check(x, y):
    if x.arity != y.arity:
        raise ArityError(f"arity mismatch: {x.arity} vs {y.arity}")


def _node(v, n, rule):
    return NaiveTower(n, v, [partial(rule, i) for i in range(n)])


def _add(x, y):
    _check(x, y)
    v = x.value + y.value
    if x.is_constant and y.is_constant:
        return naive_constant(v, x.arity)
    return _node(v, x.arity, lambda i: _add(x.child(i), y.child(i)))


def _sub(x, y):
    _check(x, y)
    v = x.value - y.value
    if x.is_constant and y.is_constant:
        return naive_constant(v, x.arity)
    return _node(v, x.arity, lambda i: _sub(x.child(i), y.child(i)))


def _neg(x):
    if x.is_constant:
        return naive_constant(-x.value, x.arity)
    return _node(-x.value, x.arity, lambda i: _neg(x.child(i)))


def _is_zero(t, other):
    return t.is_constant and t.value == 0 and math.isfinite(other.value)


def _mul(x, y):
    _check(x, y)
    v = x.value * y.value
    if (x.is_constant and y.is_constant) or _is_zero(x, y) or _is_zero(y, x):
        return naive_constant(v, x.arity)
    return _node(v, x.arity, lambda i: _add(_mul(x.child(i), y), _mul(x, y.child(i))))


def _div(x, y):
    _check(x, y)
    if y.value == 0:
        raise DomainError("div", y.value, "division by zero")
    v = x.value / y.value
    if x.is_constant and (y.is_constant or x.value == 0):
        return naive_constant(v, x.arity)
    return _node(
        v, x.arity,
        lambda i: _sub(_div(x.child(i), y), _div(_mul(x, y.child(i)), _mul(y, y))),
    )


def _lift(name, f, deriv, x):
    v = real_apply(name, f, x.value)
    if x.is_constant:
        return naive_constant(v, x.arity)
    out = NaiveTower(x.arity, v)
    d = cache(lambda: deriv(x, out))
    out._children = [partial(lambda i: _mul(x.child(i), d()), i) for i in range(x.arity)]
    return out


def _pair(names, fns, sign, x):
    vf = real_apply(names[0], fns[0], x.value)
    vg = real_apply(names[1], fns[1], x.value)
    if x.is_constant:
        return naive_constant(vf, x.arity), naive_constant(vg, x.arity)
    f = NaiveTower(x.arity, vf)
    g = NaiveTower(x.arity, vg)
    dg = cache(lambda: _neg(f) if sign < 0 else f)
    f._children = [partial(lambda i: _mul(x.child(i), g), i) for i in range(x.arity)]
    g._children = [partial(lambda i: _mul(x.child(i), dg()), i) for i in range(x.arity)]
    return f, g


def _register():
    def lifted(name):
        f, deriv = elementary.UNARY[name], elementary.DERIVATIVES[name]
        return lambda x: _lift(name, f, deriv, x)

    def paired(name):
        first, second, sign = elementary.PAIRED[name]
        names = (first, second)
        fns = (elementary.UNARY[first], elementary.UNARY[second])
        pos = names.index(name)
        return lambda x: _pair(names, fns, sign, x)[pos]

    for name in elementary.UNARY:
        impl = paired(name) if name in elementary.PAIRED else lifted(name)
        getattr(elementary, name).register(NaiveTower)(impl)
    elementary.constant_like.register(NaiveTower)(lambda x, c: naive_constant(c, x.arity))


_register()


def naive_eval(expr, at):
    """Evaluate a parsed expression on naive tries seeded at ``at``.

    ``at`` maps variable names to coordinates; its order fixes the
    variable numbering.
    """
    from .exprlang import eval_generic

    names = list(at)
    n = len(names)
    env = {name: naive_variable(i, at[name], n) for i, name in enumerate(names)}
    out = eval_generic(expr, env)
    if not isinstance(out, NaiveTower):
        out = naive_constant(out, n)
    return out


def naive_extract(t, path):
    """Follow ``path`` (a sequence of variable indices) verbatim and return the coefficient."""
    node = t
    for i in path:
        if not 0 <= i < t.arity:
            raise IndexError(f"variable index {i} out of range for arity {t.arity}")
        node = node.child(i)
    return node.value


def canonical_path(idx):
    """The path that differentiates variable 0 first, then 1, and so on."""
    return [i for i, k in enumerate(idx) for _ in range(k)]


def naive_demand(t, indices):
    """Force every trie node whose letter counts lie in the downward closure of ``indices``.

    An unpruned trie cannot reach ``f_xy`` without also building ``f_yx``,
    so this is what enumerating a set of coefficients costs it.  Returns
    the number of nodes visited, root included.
    """
    allowed = set()
    for idx in indices:
        idx = check_multi_index(idx, t.arity)
        allowed.update(itertools.product(*(range(k + 1) for k in idx)))
    if not allowed:
        return 0
    visited = 1
    stack = [(t, (0,) * t.arity)]
    while stack:
        node, counts = stack.pop()
        for i in range(t.arity):
            nxt = counts[:i] + (counts[i] + 1,) + counts[i + 1:]
            if nxt in allowed:
                stack.append((node.child(i), nxt))
                visited += 1
    return visited


def naive_track(t, counter=None):
    counter = CoefficientCounter() if counter is None else counter
    with FORCE_LOCK:
        if t._counter is not None:
            raise ValueError("tower is already tracked")
        counter.adopt(t, True)
        stack = [t]
        while stack:
            node = stack.pop()
            for c in node._children:
                if c.__class__ is NaiveTower and c._counter is None:
                    counter.adopt(c, True)
                    stack.append(c)
    return counter


@dataclass(frozen=True)
class FDConfig:
    step: float = 1e-5
    scheme: str = "central"

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError(f"step must be positive, got {self.step}")
        if self.scheme != "central":
            raise ValueError(f"unsupported scheme {self.scheme!r}")


@cache
def _central_weights(k):
    # Offsets -p..p in units of the step; exact for polynomials of degree 2p.
    p = (k + 1) // 2
    offsets = np.arange(-p, p + 1, dtype=float)
    vander = np.vander(offsets, increasing=True).T
    rhs = np.zeros(2 * p + 1)
    rhs[k] = math.factorial(k)
    w = np.linalg.solve(vander, rhs)
    return tuple((int(m), float(c)) for m, c in zip(offsets, w) if abs(c) > 1e-12)


def fd_partial(f, at, idx, cfg=FDConfig()):
    """Mixed partial of ``f(*at)`` by tensor-product central differences.

    Meant for total degree <= 3; beyond that round-off swamps the estimate.
    """
    at = [float(a) for a in at]
    idx = check_multi_index(idx, len(at))
    # Snap each step so a + h is exact; otherwise the representation error
    # of the offset is amplified by 1/h**k.
    hs = [(a + cfg.step) - a for a in at]
    stencils = [_central_weights(k) if k else ((0, 1.0),) for k in idx]
    total = 0.0
    for combo in itertools.product(*stencils):
        w = 1.0
        point = list(at)
        for i, (m, c) in enumerate(combo):
            w *= c
            point[i] += m * hs[i]
        total += w * f(*point)
    return total / math.prod(h ** k for h, k in zip(hs, idx))


def leibniz_bruteforce(x, y, idx, extract=None):
    """``sum_{j <= idx} prod_i C(idx_i, j_i) * x[j] * y[idx - j]``.

    ``extract`` defaults to :func:`smooth_tower.tower.extract`.
    """
    if extract is None:
        from .tower import extract
    idx = tuple(idx)
    total = 0.0
    for j in itertools.product(*(range(k + 1) for k in idx)):
        weight = 1
        for k, ji in zip(idx, j):
            weight *= math.comb(k, ji)
        rest = tuple(k - ji for k, ji in zip(idx, j))
        total += weight * extract(x, j) * extract(y, rest)
    return total
