import contextlib
import random

import pytest

from smooth_tower.exprlang import parse

# The four benchmark functions, with the variable order they are declared over.
CORPUS = {
    "identity": ("x", ("x",)),
    "exp-x": ("exp(x)", ("x",)),
    "sin-x-exp-y2": ("sin(x)*exp(y^2)", ("x", "y")),
    "sin-x-exp-y2-z": ("sin(x)*exp(y^2+z)", ("x", "y", "z")),
}


def corpus_points(label, count=5, seed=1234):
    """Deterministic random evaluation points for a corpus function."""
    _, names = CORPUS[label]
    rng = random.Random(f"{seed}-{label}")
    return [{n: rng.uniform(-1.5, 1.5) for n in names} for _ in range(count)]


@pytest.fixture(params=sorted(CORPUS))
def corpus_entry(request):
    src, names = CORPUS[request.param]
    return request.param, src, names, parse(src, names)


_ACCEPTANCE = []


@pytest.fixture
def criterion():
    """``with criterion(3, "finite differences"):`` records a PASS/FAIL line."""

    @contextlib.contextmanager
    def run(number, title):
        try:
            yield
        except BaseException:
            _ACCEPTANCE.append((number, title, False))
            raise
        _ACCEPTANCE.append((number, title, True))

    return run


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}")
