"""Strongly connected synchronizing automata with a prescribed ideal of reset words.

The ideal ``I`` is given by its factor-free generator set ``M``.  Every word
``u`` of ``I`` has a last factor ``lambda(u)`` (an occurrence of a word of M)
and a tail ``tau(u)``, the longest suffix of ``u`` outside ``I``.  Words are
grouped into left ideals by the first letter of the last factor, the
per-letter counts of ``b.tau`` modulo ``m = max(||I||, 2)`` and an omega-set that
records, for each suffix of the tail, its first letter, its counts and the
state it drives the minimal DFA of M into.  The letter action on these labels
is finite and gives the automaton built by :func:`construct_tail_automaton`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence, Union

from .automata import (
    Acceptor,
    Alphabet,
    AutomatonError,
    Nfa,
    Semiautomaton,
    Word,
    accepts,
    determinize,
    difference,
    from_words,
    shortest_accepted,
    trim_minimize,
)
from .reset import factor_violation, ideal_closure

EPSILON = -1
"""Head of the anchor triple: the empty suffix has no first letter."""

Trace = tuple[int, ...]


class OmegaTriple(NamedTuple):
    head: int
    trace: Trace
    state: int


OmegaSet = frozenset  # of OmegaTriple


class TailState(NamedTuple):
    b: int
    x: Trace
    omega: OmegaSet


class TailStructure(NamedTuple):
    last_factor: Word
    tail: Word


class DegenerateIdeal(AutomatonError):
    """Generator set outside the construction's domain."""


def trace(u: Iterable[int], m: int, k: int) -> Trace:
    """Per-letter occurrence counts of ``u`` modulo ``m``."""
    if m < 1:
        raise AutomatonError("modulus must be positive")
    counts = [0] * k
    for a in u:
        counts[a] += 1
    return tuple(c % m for c in counts)


def _bump(x: Trace, a: int, m: int) -> Trace:
    return x[:a] + ((x[a] + 1) % m,) + x[a + 1:]


def state_bound(k: int, m: int, n: int) -> int:
    """Upper bound k*m^k * 2^(k*m^k*n) on the size of the tail automaton."""
    if min(k, m, n) < 1:
        raise AutomatonError("k, m and n must be positive")
    size = k * m**k
    return size * 2 ** (size * n)


def build_B(M: Union[Acceptor, tuple[Alphabet, Iterable[Sequence[int]]]]) -> Acceptor:
    """Minimal partial DFA of a factor-free generator set.

    Accepts an acceptor or an ``(alphabet, words)`` pair.
    """
    if not isinstance(M, Acceptor):
        alphabet, words = M
        M = from_words(alphabet, words)
    B = trim_minimize(M)
    if not B.finals:
        raise DegenerateIdeal("generator set is empty")
    if B.initial in B.finals:
        raise DegenerateIdeal("empty word is a generator; the ideal is all of Sigma*")
    bad = factor_violation(B)
    if bad is not None:
        u, w = bad
        fmt = B.alphabet.format
        raise DegenerateIdeal(f"generator set is not factor-free: {fmt(u)} is a proper factor of {fmt(w)}")
    (f,) = B.finals
    assert all(p is None for p in B.delta[f]), "final state of a factor-free set has successors"
    return B


@dataclass(frozen=True)
class TailSetting:
    """Everything the tail machinery derives from a generator set M."""

    B: Acceptor
    ideal: Acceptor
    m: int
    seed_word: Word
    final: int = field(init=False)

    def __post_init__(self):
        (f,) = self.B.finals
        object.__setattr__(self, "final", f)

    @property
    def alphabet(self) -> Alphabet:
        return self.B.alphabet

    @property
    def k(self) -> int:
        return self.B.alphabet.k

    @classmethod
    def from_generators(cls, M, require_non_unary: bool = True) -> "TailSetting":
        B = build_B(M)
        if require_non_unary and B.alphabet.k < 2:
            raise DegenerateIdeal("the construction needs an alphabet of at least two letters")
        seed = shortest_accepted(B)
        # traces mod 1 carry nothing; a single-letter generator {x} then collapses to one state
        return cls(B, ideal_closure(B), max(len(seed), 2), seed)

    @property
    def norm(self) -> int:
        """Length of the shortest generator."""
        return len(self.seed_word)

    def in_ideal(self, u: Sequence[int]) -> bool:
        return accepts(self.ideal, u)


# -- tail structure -----------------------------------------------------------

def tail_structure(u: Sequence[int], B: Acceptor, ideal: Acceptor) -> TailStructure:
    u = tuple(u)
    if not accepts(ideal, u):
        return TailStructure((), u)
    # suffix membership in an ideal is monotone in the suffix length
    start = len(u)
    while not accepts(ideal, u[start:]):
        start -= 1
    tail = u[start + 1:]
    q = B.initial
    (f,) = B.finals
    candidate = u[start:]
    for i, a in enumerate(candidate):
        q = B.delta[q][a]
        if q is None:
            break
        if q == f:
            return TailStructure(candidate[: i + 1], tail)
    raise AssertionError(f"no generator starts the tail of {u}")


def visiting_states(u: Sequence[int], B: Acceptor) -> frozenset[int]:
    u = tuple(u)
    out = set()
    for i in range(len(u) + 1):
        q = B.run(u[len(u) - i:])
        if q is not None:
            out.add(q)
    return frozenset(out)


def _triples(v: Word, B: Acceptor, m: int) -> OmegaSet:
    k = B.alphabet.k
    out = set()
    for i in range(len(v) + 1):
        suffix = v[len(v) - i:]
        q = B.run(suffix)
        if q is not None:
            head = suffix[0] if suffix else EPSILON
            out.add(OmegaTriple(head, trace(suffix, m, k), q))
    return frozenset(out)


def omega(u: Sequence[int], B: Acceptor, ideal: Acceptor, m: int) -> OmegaSet:
    last, tail = tail_structure(u, B, ideal)
    v = (last[:1] + tail) if last else tail
    return _triples(v, B, m)


def anchor(B: Acceptor, k: int) -> OmegaTriple:
    return OmegaTriple(EPSILON, (0,) * k, B.initial)


def omega_step(om: OmegaSet, a: int, B: Acceptor, m: int) -> OmegaSet:
    k = B.alphabet.k
    base = anchor(B, k)
    out = {base}
    for c, s, p in om:
        if (c, s, p) == base:
            continue
        p1 = B.delta[p][a]
        if p1 is not None:
            out.add(OmegaTriple(c, _bump(s, a, m), p1))
    q = B.delta[B.initial][a]
    if q is not None:
        out.add(OmegaTriple(a, _bump((0,) * k, a, m), q))
    return frozenset(out)


def final_triple(om: OmegaSet, f: int) -> Optional[OmegaTriple]:
    found = [t for t in om if t.state == f]
    if len(found) > 1:
        raise AssertionError(f"omega-set holds {len(found)} triples at the final state")
    return found[0] if found else None


def tail_action(s: TailState, a: int, B: Acceptor, m: int) -> TailState:
    (f,) = B.finals
    nxt = omega_step(s.omega, a, B, m)
    hit = final_triple(nxt, f)
    if hit is None:
        return TailState(s.b, _bump(s.x, a, m), nxt)
    return TailState(hit.head, hit.trace, nxt - {hit})


def seed_state(setting: TailSetting) -> tuple[TailState, Word]:
    aw = setting.seed_word
    B, m, k = setting.B, setting.m, setting.k
    w = aw[1:]
    return TailState(aw[0], trace(aw, m, k), omega(w, B, setting.ideal, m)), aw


def class_label(u: Sequence[int], setting: TailSetting) -> TailState:
    """Label of the class of ``u`` in I, read directly off its tail structure."""
    B, m, k = setting.B, setting.m, setting.k
    last, tail = tail_structure(u, B, setting.ideal)
    if not last:
        raise AutomatonError("word is not in the ideal")
    b = last[0]
    return TailState(b, trace((b,) + tail, m, k), omega(tail, B, setting.ideal, m))


# -- the construction ---------------------------------------------------------

@dataclass(frozen=True)
class TailAutomaton:
    automaton: Semiautomaton
    labels: tuple[TailState, ...]
    setting: TailSetting

    def state_of(self, label: TailState) -> Optional[int]:
        try:
            return self.labels.index(label)
        except ValueError:
            return None

    def word_class(self, u: Sequence[int]) -> TailState:
        """Label reached from the seed state by reading ``u``."""
        q = 0
        for a in u:
            q = self.automaton.delta[q][a]
        return self.labels[q]

    @property
    def bound(self) -> int:
        return state_bound(self.setting.k, self.setting.m, self.setting.B.n)


def construct_tail_automaton(M) -> TailAutomaton:
    """Breadth-first closure of the seed label under the tail action.

    ``M`` is a generator acceptor, an ``(alphabet, words)`` pair or a
    prepared :class:`TailSetting`.
    """
    setting = M if isinstance(M, TailSetting) else TailSetting.from_generators(M)
    B, m, k = setting.B, setting.m, setting.k
    seed, _ = seed_state(setting)
    index = {seed: 0}
    labels = [seed]
    delta: dict[int, list[int]] = {}
    frontier = [seed]
    while frontier:
        fresh = []
        for q in frontier:
            row = []
            for a in range(k):
                p = tail_action(q, a, B, m)
                j = index.get(p)
                if j is None:
                    j = index[p] = len(labels)
                    labels.append(p)
                    fresh.append(p)
                row.append(j)
            delta[index[q]] = row
        frontier = fresh
    A = Semiautomaton(setting.alphabet, tuple(tuple(delta[i]) for i in range(len(labels))))
    return TailAutomaton(A, tuple(labels), setting)


def tails_recognizer(M: Acceptor, ideal: Acceptor) -> Acceptor:
    """Acceptor of all tails: the union over letters a of (a^-1 M) Sigma* minus I."""
    T = trim_minimize(M)
    delta = []
    for q, row in enumerate(T.delta):
        out = []
        for a, p in enumerate(row):
            targets = set() if p is None else {p}
            if q in T.finals:
                targets.add(q)
            out.append(frozenset(targets))
        delta.append(tuple(out))
    initials = frozenset(p for p in T.delta[T.initial] if p is not None)
    N = Nfa(T.alphabet, initials, tuple(delta), T.finals)
    return difference(trim_minimize(determinize(N)), ideal)


# -- the maximal lifted automaton ------------------------------------------------

def lifted_transition(ts: TailStructure, c: int, B: Acceptor, ideal: Acceptor) -> TailStructure:
    if not ts.last_factor:
        raise AutomatonError("tail structure of a word outside the ideal is not a class")
    return tail_structure((ts.last_factor[0],) + ts.tail + (c,), B, ideal)


def representative(ts: TailStructure) -> Word:
    """Shortest word of the class of ``ts``: first letter of the last factor, then the tail."""
    return (ts.last_factor[0],) + ts.tail


@dataclass(frozen=True)
class LiftedExploration:
    states: tuple[TailStructure, ...]
    depth_of: tuple[int, ...]
    transitions: dict  # (source index, letter) -> target index
    open: dict  # (source index, letter) -> TailStructure outside the explored set

    def count_at(self, depth: int) -> int:
        return sum(1 for d in self.depth_of if d <= depth)


def lifted_explore(setting: TailSetting, depth: int) -> LiftedExploration:
    """Breadth-first truncation of the (generally infinite) lifted automaton."""
    if depth < 0:
        raise AutomatonError("depth must be non-negative")
    B, ideal = setting.B, setting.ideal
    start = tail_structure(setting.seed_word, B, ideal)
    index = {start: 0}
    states = [start]
    depth_of = [0]
    queue = deque([start])
    successors: dict[tuple[int, int], TailStructure] = {}
    while queue:
        ts = queue.popleft()
        i = index[ts]
        for c in range(setting.k):
            nxt = lifted_transition(ts, c, B, ideal)
            successors[(i, c)] = nxt
            if nxt not in index and depth_of[i] < depth:
                index[nxt] = len(states)
                states.append(nxt)
                depth_of.append(depth_of[i] + 1)
                queue.append(nxt)
    transitions, opened = {}, {}
    for key, nxt in successors.items():
        if nxt in index:
            transitions[key] = index[nxt]
        else:
            opened[key] = nxt
    return LiftedExploration(tuple(states), tuple(depth_of), transitions, opened)
