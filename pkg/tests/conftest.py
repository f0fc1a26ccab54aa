import itertools
import random
from pathlib import Path

import pytest

from tailsync.automata import Alphabet, Semiautomaton, from_words
from tailsync.reset import is_synchronizing

FIXTURES = Path(__file__).parent / "fixtures"

AB = Alphabet(("a", "b"))


def w(text, alphabet=AB):
    return alphabet.word(text)


def cerny(n, alphabet=AB):
    """Cerny automaton: a is the cyclic shift, b sends 0 to 1 and fixes the rest."""
    return Semiautomaton(alphabet, [((q + 1) % n, 1 if q == 0 else q) for q in range(n)])


def identity(n, alphabet=AB):
    return Semiautomaton(alphabet, [(q,) * alphabet.k for q in range(n)])


def random_semiautomaton(rng, n, alphabet=AB):
    return Semiautomaton(alphabet, [tuple(rng.randrange(n) for _ in range(alphabet.k)) for _ in range(n)])


def random_synchronizing(rng, max_n, alphabet=AB, min_n=1):
    while True:
        A = random_semiautomaton(rng, rng.randint(min_n, max_n), alphabet)
        if is_synchronizing(A):
            return A


def all_words(k, length):
    for n in range(length + 1):
        yield from itertools.product(range(k), repeat=n)


def has_factor_in(u, words):
    """Direct scan: some factor of u is in the finite set ``words``."""
    return any(u[i:j] in words for i in range(len(u) + 1) for j in range(i, len(u) + 1))


def reset_by_simulation(A, u):
    S = set(range(A.n))
    for a in u:
        S = {A.delta[q][a] for q in S}
    return len(S) == 1


def generators(*texts):
    words = [w(t) for t in texts]
    return from_words(AB, words)


@pytest.fixture
def C4():
    return cerny(4)


@pytest.fixture
def rng():
    return random.Random(1234)


# -- acceptance criterion summary ----------------------------------------------

_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, text = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        prev = _CRITERIA.get(number, (text, "PASS"))[1]
        status = "PASS" if report.outcome == "passed" and prev == "PASS" else "FAIL"
        _CRITERIA[number] = (text, status)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        text, status = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {status} - {text}")
