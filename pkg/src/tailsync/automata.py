"""Finite automata over a fixed, ordered alphabet.

Words are tuples of letter indices.  Every construction renumbers its
states in breadth-first discovery order from the initial state(s), trying
letters in alphabet order, so structurally equal automata compare equal.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Iterator, Optional, Sequence

Word = tuple[int, ...]

EPS_TOKEN = "eps"


class AutomatonError(ValueError):
    """Malformed automaton or word, or an operation applied out of contract."""


class BudgetExceeded(RuntimeError):
    """A subset construction grew past its configured state budget."""

    def __init__(self, budget: int):
        super().__init__(f"subset construction exceeded budget of {budget} states")
        self.budget = budget


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if not symbols:
            raise AutomatonError("alphabet must contain at least one symbol")
        if len(set(symbols)) != len(symbols):
            raise AutomatonError(f"duplicate symbols in alphabet {symbols}")
        for s in symbols:
            if not s or not s.isprintable() or any(c.isspace() for c in s) or s.startswith("#"):
                raise AutomatonError(f"invalid alphabet symbol {s!r}")
            if s == EPS_TOKEN:
                raise AutomatonError(f"{EPS_TOKEN!r} is reserved for the empty word")

    @property
    def k(self) -> int:
        return len(self.symbols)

    def index(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise AutomatonError(f"symbol {symbol!r} not in alphabet {self.symbols}") from None

    def word(self, text: str) -> Word:
        """Parse ``text`` into a word.

        Whitespace-separated tokens are read as symbols; otherwise the text is
        split greedily by longest matching symbol.  ``eps`` and ``""`` are the
        empty word.
        """
        text = text.strip()
        if text in ("", EPS_TOKEN):
            return ()
        if any(c.isspace() for c in text):
            return tuple(self.index(t) for t in text.split())
        by_length = sorted(self.symbols, key=len, reverse=True)
        out = []
        pos = 0
        while pos < len(text):
            for s in by_length:
                if text.startswith(s, pos):
                    out.append(self.symbols.index(s))
                    pos += len(s)
                    break
            else:
                raise AutomatonError(f"cannot read {text[pos:]!r} over alphabet {self.symbols}")
        return tuple(out)

    def format(self, word: Sequence[int]) -> str:
        if not word:
            return EPS_TOKEN
        sep = "" if all(len(s) == 1 for s in self.symbols) else " "
        return sep.join(self.symbols[a] for a in word)

    def check(self, word: Sequence[int]) -> None:
        for a in word:
            if not (isinstance(a, int) and 0 <= a < self.k):
                raise AutomatonError(f"letter {a!r} outside alphabet of size {self.k}")


@dataclass(frozen=True)
class Semiautomaton:
    """Complete deterministic action of the alphabet on ``range(n)``."""

    alphabet: Alphabet
    delta: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        delta = tuple(tuple(row) for row in self.delta)
        object.__setattr__(self, "delta", delta)
        n, k = len(delta), self.alphabet.k
        if n < 1:
            raise AutomatonError("a semiautomaton needs at least one state")
        for q, row in enumerate(delta):
            if len(row) != k:
                raise AutomatonError(f"state {q} has {len(row)} transitions, expected {k}")
            for p in row:
                if not (isinstance(p, int) and 0 <= p < n):
                    raise AutomatonError(f"transition from {q} to invalid state {p!r}")

    @property
    def n(self) -> int:
        return len(self.delta)

    @property
    def states(self) -> frozenset[int]:
        return frozenset(range(self.n))


@dataclass(frozen=True)
class Acceptor:
    """Possibly partial DFA; ``None`` in ``delta`` marks an undefined transition."""

    alphabet: Alphabet
    delta: tuple[tuple[Optional[int], ...], ...]
    initial: int
    finals: frozenset[int]

    def __post_init__(self):
        delta = tuple(tuple(row) for row in self.delta)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "finals", frozenset(self.finals))
        n, k = len(delta), self.alphabet.k
        if not 0 <= self.initial < n:
            raise AutomatonError(f"initial state {self.initial} out of range")
        if any(not 0 <= f < n for f in self.finals):
            raise AutomatonError(f"final states {sorted(self.finals)} out of range")
        for q, row in enumerate(delta):
            if len(row) != k:
                raise AutomatonError(f"state {q} has {len(row)} transitions, expected {k}")
            for p in row:
                if p is not None and not (isinstance(p, int) and 0 <= p < n):
                    raise AutomatonError(f"transition from {q} to invalid state {p!r}")

    @property
    def n(self) -> int:
        return len(self.delta)

    @property
    def is_complete(self) -> bool:
        return all(p is not None for row in self.delta for p in row)

    def run(self, word: Iterable[int], state: Optional[int] = None) -> Optional[int]:
        q = self.initial if state is None else state
        for a in word:
            q = self.delta[q][a]
            if q is None:
                return None
        return q


@dataclass(frozen=True)
class Nfa:
    alphabet: Alphabet
    initials: frozenset[int]
    delta: tuple[tuple[frozenset[int], ...], ...]
    finals: frozenset[int]

    @property
    def n(self) -> int:
        return len(self.delta)


@dataclass(frozen=True)
class Comparison:
    """Outcome of a language-equivalence test; truthy iff the languages agree."""

    equal: bool
    counterexample: Optional[Word] = None

    def __bool__(self):
        return self.equal


def empty_acceptor(alphabet: Alphabet) -> Acceptor:
    """Canonical acceptor of the empty language: one dead initial state."""
    return Acceptor(alphabet, ((None,) * alphabet.k,), 0, frozenset())


def universal_acceptor(alphabet: Alphabet) -> Acceptor:
    return Acceptor(alphabet, ((0,) * alphabet.k,), 0, frozenset({0}))


def words_upto(k: int, length: int) -> Iterator[Word]:
    """All words of length <= ``length`` in length-lexicographic order."""
    for n in range(length + 1):
        yield from itertools.product(range(k), repeat=n)


# -- semiautomata -----------------------------------------------------------

def apply(A: Semiautomaton, states: Iterable[int], word: Iterable[int]) -> frozenset[int]:
    S = frozenset(states)
    for a in word:
        if not (isinstance(a, int) and 0 <= a < A.alphabet.k):
            raise AutomatonError(f"letter {a!r} outside alphabet of size {A.alphabet.k}")
        S = frozenset(A.delta[q][a] for q in S)
    return S


def is_strongly_connected(A: Semiautomaton) -> bool:
    forward = [set(row) for row in A.delta]
    backward: list[set[int]] = [set() for _ in range(A.n)]
    for q, row in enumerate(A.delta):
        for p in row:
            backward[p].add(q)
    return _closure(0, forward) == A.n and _closure(0, backward) == A.n


def _closure(start: int, succ: Sequence[Iterable[int]]) -> int:
    seen = {start}
    stack = [start]
    while stack:
        for p in succ[stack.pop()]:
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return len(seen)


def as_acceptor(A: Semiautomaton, initial: int, finals: Iterable[int]) -> Acceptor:
    return Acceptor(A.alphabet, A.delta, initial, frozenset(finals))


# -- generic exploration ----------------------------------------------------

def explore(
    alphabet: Alphabet,
    start: Hashable,
    step: Callable[[Hashable, int], Optional[Hashable]],
    is_final: Callable[[Hashable], bool],
    budget: Optional[int] = None,
) -> tuple[Acceptor, list]:
    """Breadth-first construction of the acceptor reachable from ``start``.

    ``step`` returns the successor key or ``None`` when undefined.  Returns the
    acceptor and the list of keys in state order.
    """
    index = {start: 0}
    order = [start]
    delta = []
    i = 0
    while i < len(order):
        key = order[i]
        row = []
        for a in range(alphabet.k):
            nxt = step(key, a)
            if nxt is None:
                row.append(None)
                continue
            j = index.get(nxt)
            if j is None:
                j = index[nxt] = len(order)
                order.append(nxt)
                if budget is not None and len(order) > budget:
                    raise BudgetExceeded(budget)
            row.append(j)
        delta.append(tuple(row))
        i += 1
    finals = frozenset(j for j, key in enumerate(order) if is_final(key))
    return Acceptor(alphabet, tuple(delta), 0, finals), order


# -- acceptors --------------------------------------------------------------

def accepts(D: Acceptor, word: Iterable[int]) -> bool:
    q = D.run(word)
    return q is not None and q in D.finals


def from_words(alphabet: Alphabet, words: Iterable[Sequence[int]]) -> Acceptor:
    """Minimal acceptor of a finite word list."""
    trie: list[dict[int, int]] = [{}]
    finals = set()
    for w in words:
        alphabet.check(w)
        q = 0
        for a in w:
            nxt = trie[q].get(a)
            if nxt is None:
                nxt = trie[q][a] = len(trie)
                trie.append({})
            q = nxt
        finals.add(q)
    delta = tuple(tuple(row.get(a) for a in range(alphabet.k)) for row in trie)
    return trim_minimize(Acceptor(alphabet, delta, 0, frozenset(finals)))


def determinize(N: Nfa) -> Acceptor:
    if not N.initials:
        return empty_acceptor(N.alphabet)

    def step(S, a):
        T = frozenset().union(*(N.delta[q][a] for q in S))
        return T or None

    D, _ = explore(N.alphabet, frozenset(N.initials), step, lambda S: bool(S & N.finals))
    return D


def to_nfa(D: Acceptor) -> Nfa:
    delta = tuple(
        tuple(frozenset() if p is None else frozenset({p}) for p in row) for row in D.delta
    )
    return Nfa(D.alphabet, frozenset({D.initial}), delta, D.finals)


def live_states(D: Acceptor) -> frozenset[int]:
    """States both reachable from the initial state and co-reachable to a final."""
    reach = {D.initial}
    stack = [D.initial]
    while stack:
        for p in D.delta[stack.pop()]:
            if p is not None and p not in reach:
                reach.add(p)
                stack.append(p)
    pred: list[set[int]] = [set() for _ in range(D.n)]
    for q, row in enumerate(D.delta):
        for p in row:
            if p is not None:
                pred[p].add(q)
    co = set(f for f in D.finals if f in reach)
    stack = list(co)
    while stack:
        for p in pred[stack.pop()]:
            if p in reach and p not in co:
                co.add(p)
                stack.append(p)
    return frozenset(co)


def trim(D: Acceptor) -> Acceptor:
    live = live_states(D)
    if D.initial not in live:
        return empty_acceptor(D.alphabet)

    def step(q, a):
        p = D.delta[q][a]
        return p if p in live else None

    T, _ = explore(D.alphabet, D.initial, step, lambda q: q in D.finals)
    return T


def trim_minimize(D: Acceptor) -> Acceptor:
    """Canonical minimal partial DFA of ``L(D)`` (Moore partition refinement)."""
    T = trim(D)
    if not T.finals:
        return T
    block = [1 if q in T.finals else 0 for q in range(T.n)]
    count = len(set(block))
    while True:
        signatures: dict[tuple, int] = {}
        refined = []
        for q in range(T.n):
            sig = (block[q],) + tuple(-1 if p is None else block[p] for p in T.delta[q])
            refined.append(signatures.setdefault(sig, len(signatures)))
        block = refined
        if len(signatures) == count:
            break
        count = len(signatures)
    rep = {}
    for q in range(T.n):
        rep.setdefault(block[q], q)

    def step(b, a):
        p = T.delta[rep[b]][a]
        return None if p is None else block[p]

    M, _ = explore(T.alphabet, block[T.initial], step, lambda b: rep[b] in T.finals)
    return M


def _completed(D: Acceptor) -> tuple[tuple[int, ...], ...]:
    sink = D.n
    rows = [tuple(sink if p is None else p for p in row) for row in D.delta]
    rows.append((sink,) * D.alphabet.k)
    return tuple(rows)


def _product(D1: Acceptor, D2: Acceptor):
    if D1.alphabet != D2.alphabet:
        raise AutomatonError(f"alphabet mismatch: {D1.alphabet.symbols} vs {D2.alphabet.symbols}")
    return _completed(D1), _completed(D2)


_BOOL_OPS = {
    "intersect": lambda x, y: x and y,
    "union": lambda x, y: x or y,
    "difference": lambda x, y: x and not y,
    "xor": lambda x, y: x != y,
}


def bool_op(D1: Acceptor, D2: Acceptor, op: str) -> Acceptor:
    try:
        combine = _BOOL_OPS[op]
    except KeyError:
        raise AutomatonError(f"unknown boolean operation {op!r}") from None
    t1, t2 = _product(D1, D2)
    P, _ = explore(
        D1.alphabet,
        (D1.initial, D2.initial),
        lambda s, a: (t1[s[0]][a], t2[s[1]][a]),
        lambda s: combine(s[0] in D1.finals, s[1] in D2.finals),
    )
    return trim_minimize(P)


def intersect(D1: Acceptor, D2: Acceptor) -> Acceptor:
    return bool_op(D1, D2, "intersect")


def union(D1: Acceptor, D2: Acceptor) -> Acceptor:
    return bool_op(D1, D2, "union")


def difference(D1: Acceptor, D2: Acceptor) -> Acceptor:
    return bool_op(D1, D2, "difference")


def complement(D: Acceptor) -> Acceptor:
    return difference(universal_acceptor(D.alphabet), D)


def _bfs_words(D: Acceptor, start, step, hit) -> Optional[Word]:
    # Queue order is (length, lex); the first hit is the least shortest word.
    parent = {start: None}
    queue = deque([start])
    while queue:
        key = queue.popleft()
        if hit(key):
            word = []
            while parent[key] is not None:
                key, a = parent[key]
                word.append(a)
            return tuple(reversed(word))
        for a in range(D.alphabet.k):
            nxt = step(key, a)
            if nxt is not None and nxt not in parent:
                parent[nxt] = (key, a)
                queue.append(nxt)
    return None


def equivalent(D1: Acceptor, D2: Acceptor) -> Comparison:
    t1, t2 = _product(D1, D2)
    cex = _bfs_words(
        D1,
        (D1.initial, D2.initial),
        lambda s, a: (t1[s[0]][a], t2[s[1]][a]),
        lambda s: (s[0] in D1.finals) != (s[1] in D2.finals),
    )
    return Comparison(cex is None, cex)


def shortest_accepted(D: Acceptor) -> Optional[Word]:
    return _bfs_words(D, D.initial, lambda q, a: D.delta[q][a], lambda q: q in D.finals)


def is_empty(D: Acceptor) -> bool:
    return shortest_accepted(D) is None
