"""Succinct lazy derivative towers.

A :class:`Tower` of arity ``n`` stores every partial derivative of an
``n``-variate function at a fixed point.  A node carries one coefficient and
two deferred children:

``dfirst``
    the tower of the derivative in the first remaining variable (same arity);
``rest``
    the same function with the first variable frozen (arity ``n - 1``).  Its
    head repeats the parent's coefficient.

Following ``dfirst`` k1 times, then ``rest``, then ``dfirst`` k2 times and
so on reaches the coefficient for multi-index ``(k1, k2, ...)``.  Since a
differentiation in variable ``i`` can only be followed by variables
``j >= i``, each multi-index has exactly one path and mixed partials are
computed once.

Children are built on first demand and cached; nothing is shared through a
global table, only through the object graph.  Constant towers are flagged
(``is_constant``) so arithmetic can see that all their derivatives vanish
without inspecting coefficients.
"""

import math
from functools import cache
from numbers import Real

from . import elementary
from .counters import FORCE_LOCK, CoefficientCounter
from .errors import ArityError, DomainError
from .elementary import real_apply
from .multiindex import check_multi_index, multi_indices_upto

__all__ = [
    "Tower", "constant", "variable", "add", "sub", "neg", "mul", "div",
    "lift_unary", "extract", "extract_all_upto", "track",
]


class Tower:
    __slots__ = ("arity", "value", "is_constant", "_dfirst", "_rest", "_counter")

    def __init__(self, arity, value, dfirst=None, rest=None, is_constant=False):
        self.arity = arity
        self.value = value
        self.is_constant = is_constant
        # Either a built Tower or a zero-argument recipe producing one.
        self._dfirst = dfirst
        self._rest = rest
        self._counter = None

    @property
    def kind(self):
        if self.arity == 0:
            return "leaf"
        return "const" if self.is_constant else "node"

    @property
    def dfirst(self):
        child = self._dfirst
        if child.__class__ is Tower:
            return child
        return self._force("_dfirst", child, True)

    @property
    def rest(self):
        child = self._rest
        if child.__class__ is Tower:
            return child
        return self._force("_rest", child, False)

    def _force(self, slot, recipe, fresh):
        if recipe is None:
            raise ArityError("an arity-0 tower has no children")
        built = recipe()
        with FORCE_LOCK:
            current = getattr(self, slot)
            if current.__class__ is Tower:
                # Another thread got there first; keep its result.
                return current
            setattr(self, slot, built)
            if self._counter is not None:
                self._counter.adopt(built, fresh)
        return built

    def is_forced(self, child):
        """Whether ``"dfirst"`` or ``"rest"`` has been built."""
        return getattr(self, "_" + child).__class__ is Tower

    def __getitem__(self, idx):
        if isinstance(idx, int):
            idx = (idx,)
        return extract(self, idx)

    def __repr__(self):
        return f"Tower(arity={self.arity}, value={self.value!r}, kind={self.kind!r})"

    def _coerce(self, other):
        if other.__class__ is Tower:
            return other
        if isinstance(other, Real):
            return constant(float(other), self.arity)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else add(self, other)

    def __radd__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else add(other, self)

    def __sub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else sub(self, other)

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else sub(other, self)

    def __mul__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else mul(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else mul(other, self)

    def __truediv__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else div(self, other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else div(other, self)

    def __neg__(self):
        return neg(self)

    def __pos__(self):
        return self

    def __pow__(self, k):
        if isinstance(k, int) or (isinstance(k, float) and k.is_integer()):
            return elementary.powi(self, int(k))
        return elementary.pow(self, k)


# -- construction -----------------------------------------------------------

def _const(v, n):
    t = Tower(n, v, is_constant=True)
    if n == 0:
        return t
    if v == 0 and math.copysign(1.0, v) > 0:
        t._dfirst = t
    else:
        t._dfirst = lambda: _const(0.0, n)
    t._rest = lambda: _const(v, n - 1)
    return t


def constant(c, n):
    """Tower of the constant function ``c`` in ``n`` variables."""
    if n < 0:
        raise ArityError(f"arity must be non-negative, got {n}")
    return _const(float(c), n)


def variable(i, a, n):
    """Tower of the coordinate function ``x_i`` at ``x_i = a``, in ``n`` variables."""
    if not 0 <= i < n:
        raise IndexError(f"variable index {i} out of range for arity {n}")
    a = float(a)
    if i == 0:
        return Tower(n, a, lambda: _const(1.0, n), lambda: _const(a, n - 1))
    return Tower(n, a, lambda: _const(0.0, n), lambda: variable(i - 1, a, n - 1))


def _check(x, y):
    if x.arity != y.arity:
        raise ArityError(f"arity mismatch: {x.arity} vs {y.arity}")


# -- arithmetic -------------------------------------------------------------
# The underscored versions skip arity checks and accept a precomputed head,
# which is how a ``rest`` child reuses its parent's coefficient.

def _add(x, y, v=None):
    if v is None:
        v = x.value + y.value
    if x.is_constant and y.is_constant:
        return _const(v, x.arity)
    return Tower(
        x.arity, v,
        lambda: _add(x.dfirst, y.dfirst),
        lambda: _add(x.rest, y.rest, v),
    )


def _sub(x, y, v=None):
    if v is None:
        v = x.value - y.value
    if x.is_constant and y.is_constant:
        return _const(v, x.arity)
    return Tower(
        x.arity, v,
        lambda: _sub(x.dfirst, y.dfirst),
        lambda: _sub(x.rest, y.rest, v),
    )


def _neg(x, v=None):
    if v is None:
        v = -x.value
    if x.is_constant:
        return _const(v, x.arity)
    return Tower(x.arity, v, lambda: _neg(x.dfirst), lambda: _neg(x.rest, v))


def _is_zero(t, other):
    return t.is_constant and t.value == 0 and math.isfinite(other.value)


def _mul(x, y, v=None):
    if v is None:
        v = x.value * y.value
    if (x.is_constant and y.is_constant) or _is_zero(x, y) or _is_zero(y, x):
        return _const(v, x.arity)
    return Tower(
        x.arity, v,
        lambda: _add(_mul(x.dfirst, y), _mul(x, y.dfirst)),
        lambda: _mul(x.rest, y.rest, v),
    )


def _quotient(a, b):
    if b == 0:
        raise DomainError("div", b, "division by zero")
    return a / b


def _div(x, y, v=None):
    if v is None:
        v = _quotient(x.value, y.value)
    if x.is_constant and (y.is_constant or x.value == 0):
        return _const(v, x.arity)
    return Tower(
        x.arity, v,
        lambda: _sub(_div(x.dfirst, y), _div(_mul(x, y.dfirst), _mul(y, y))),
        lambda: _div(x.rest, y.rest, v),
    )


def add(x, y):
    _check(x, y)
    return _add(x, y)


def sub(x, y):
    _check(x, y)
    return _sub(x, y)


def neg(x):
    return _neg(x)


def mul(x, y):
    """Product tower; the first-variable derivative follows the Leibniz rule
    ``x' * y + x * y'`` on full towers."""
    _check(x, y)
    return _mul(x, y)


def div(x, y):
    """Quotient tower.  Raises :class:`DomainError` when a demanded
    coefficient needs to divide by a zero head."""
    _check(x, y)
    return _div(x, y)


# -- chain rule -------------------------------------------------------------

def _lift(name, f, deriv, x, v=None):
    if v is None:
        v = real_apply(name, f, x.value)
    if x.is_constant:
        return _const(v, x.arity)
    out = Tower(x.arity, v, None, lambda: _lift(name, f, deriv, x.rest, v))
    out._dfirst = lambda: _mul(x.dfirst, deriv(x, out))
    return out


def lift_unary(f, df, x):
    """Tower of ``f(x)`` given a scalar ``f`` and ``df`` mapping a tower to
    the tower of ``f'`` at it.

    >>> t = lift_unary(math.exp, elementary.exp, variable(0, 0.0, 1))
    >>> t[3]
    1.0
    """
    name = getattr(f, "__name__", "f")
    return _lift(name, f, lambda x, out: df(x), x)


def _pair(names, fns, sign, x, vf=None, vg=None):
    if vf is None:
        vf = real_apply(names[0], fns[0], x.value)
        vg = real_apply(names[1], fns[1], x.value)
    n = x.arity
    if x.is_constant:
        return _const(vf, n), _const(vg, n)
    rest = cache(lambda: _pair(names, fns, sign, x.rest, vf, vg))
    f = Tower(n, vf, None, lambda: rest()[0])
    g = Tower(n, vg, None, lambda: rest()[1])
    f._dfirst = lambda: _mul(x.dfirst, g)
    if sign < 0:
        g._dfirst = lambda: _mul(x.dfirst, _neg(f))
    else:
        g._dfirst = lambda: _mul(x.dfirst, f)
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
        getattr(elementary, name).register(Tower)(impl)
    elementary.constant_like.register(Tower)(lambda x, c: constant(c, x.arity))


_register()


# -- extraction -------------------------------------------------------------

def extract(x, idx):
    """Coefficient ``d^k1/dx1^k1 ... d^kn/dxn^kn f`` at the base point."""
    idx = check_multi_index(idx, x.arity)
    node = x
    last = len(idx) - 1
    for i, k in enumerate(idx):
        for _ in range(k):
            node = node.dfirst
        if i < last:
            node = node.rest
    return node.value


def extract_all_upto(x, d):
    """Every coefficient of total degree <= ``d``, keyed by multi-index in
    graded-lex order.  Walks each trie node once."""
    if d < 0:
        raise ValueError(f"degree must be non-negative, got {d}")
    found = {}
    if x.arity == 0:
        found[()] = x.value
    else:
        _collect(x, (), d, found)
    return {idx: found[idx] for idx in multi_indices_upto(x.arity, d)}


def _collect(node, prefix, budget, out):
    cur = node
    for k in range(budget + 1):
        if k:
            cur = cur.dfirst
        if cur.arity == 1:
            out[prefix + (k,)] = cur.value
        else:
            _collect(cur.rest, prefix + (k,), budget - k, out)


def track(x, counter=None):
    """Attach a :class:`CoefficientCounter` to the root of ``x``.

    The root counts as one computation; every child forced from a tracked
    node joins the same counter.  Children forced before tracking started
    are adopted immediately, so the tally always covers the whole built trie.
    """
    counter = CoefficientCounter() if counter is None else counter
    with FORCE_LOCK:
        if x._counter is not None:
            raise ValueError("tower is already tracked")
        counter.adopt(x, True)
        stack = [x]
        while stack:
            node = stack.pop()
            for child, fresh in ((node._dfirst, True), (node._rest, False)):
                if child.__class__ is Tower and child._counter is None:
                    counter.adopt(child, fresh)
                    stack.append(child)
    return counter
