"""Multi-index helpers: enumeration, ordering and demand sets."""

import itertools
from math import comb

__all__ = [
    "grlex_key", "multi_indices_upto", "box", "downward_closure",
    "total_degree", "check_multi_index",
]


def total_degree(idx):
    return sum(idx)


def grlex_key(idx):
    """Graded lexicographic order: total degree first, then lexicographic."""
    return (sum(idx), tuple(idx))


def check_multi_index(idx, arity):
    idx = tuple(idx)
    if len(idx) != arity:
        from .errors import ArityError
        raise ArityError(f"multi-index {idx} has length {len(idx)}, expected {arity}")
    for k in idx:
        if not isinstance(k, int) or isinstance(k, bool) or k < 0:
            raise ValueError(f"multi-index {idx} must hold non-negative integers")
    return idx


def multi_indices_upto(n, d):
    """All multi-indices of length ``n`` with total degree <= ``d``, in graded-lex order.

    There are ``comb(n + d, d)`` of them.
    """
    if d < 0:
        return []
    if n == 0:
        return [()]
    out = []
    for deg in range(d + 1):
        out.extend(_of_degree(n, deg))
    assert len(out) == comb(n + d, d)
    return out


def _of_degree(n, deg):
    # Stars and bars, emitted in lexicographic order.
    if n == 1:
        return [(deg,)]
    out = []
    for k in range(deg + 1):
        for tail in _of_degree(n - 1, deg - k):
            out.append((k,) + tail)
    return out


def box(upper):
    """Every multi-index bounded componentwise by ``upper``, in graded-lex order."""
    idxs = itertools.product(*(range(k + 1) for k in upper))
    return sorted(idxs, key=grlex_key)


def downward_closure(indices):
    """Union of the boxes under each index; sorted graded-lex."""
    seen = set()
    for idx in indices:
        seen.update(itertools.product(*(range(k + 1) for k in idx)))
    return sorted(seen, key=grlex_key)
