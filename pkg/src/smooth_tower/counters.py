"""Instrumentation for lazy derivative tries.

A :class:`CoefficientCounter` is attached to the root of a trie with
``track``.  Every time a deferred child of a tracked node is forced for the
first time the child joins the same counter.  Forcing a child that holds a
*new* coefficient increments ``computations``; forcing a child that merely
repeats its parent's coefficient (the drop-variable child of the succinct
trie) only increments ``nodes``.

Counting is opt-in per root, so untracked towers pay one ``is None`` check
per forced child.  ``SMOOTH_TOWER_COUNTERS=0`` switches the benchmark
harness's counting pass off.
"""

import os
import threading

__all__ = ["CoefficientCounter", "counters_enabled", "FORCE_LOCK"]

# Guards the publish step of a forced child; the child itself is built
# outside the lock so recursive forcing never blocks.
FORCE_LOCK = threading.Lock()


def counters_enabled():
    return os.environ.get("SMOOTH_TOWER_COUNTERS", "1").strip().lower() not in ("0", "false", "no", "off")


class CoefficientCounter:
    __slots__ = ("computations", "nodes")

    def __init__(self):
        self.computations = 0
        self.nodes = 0

    def adopt(self, node, fresh):
        # Caller holds FORCE_LOCK.
        if node._counter is not None:
            return
        node._counter = self
        self.nodes += 1
        if fresh:
            self.computations += 1

    def __repr__(self):
        return f"CoefficientCounter(computations={self.computations}, nodes={self.nodes})"
