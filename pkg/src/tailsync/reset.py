"""Reset words, the ideal they form, and its minimal generators."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .automata import (
    Acceptor,
    AutomatonError,
    Nfa,
    Semiautomaton,
    Word,
    accepts,
    determinize,
    difference,
    equivalent,
    explore,
    intersect,
    is_empty,
    is_strongly_connected,
    shortest_accepted,
    trim,
    trim_minimize,
    union,
)


@dataclass(frozen=True)
class SyncReport:
    n: int
    is_synchronizing: bool
    shortest_reset: Optional[Word]
    strongly_connected: bool

    @property
    def cerny_bound(self) -> int:
        return (self.n - 1) ** 2

    @property
    def bound_satisfied(self) -> Optional[bool]:
        if self.shortest_reset is None:
            return None
        return len(self.shortest_reset) <= self.cerny_bound


def _masks(A: Semiautomaton) -> list[list[int]]:
    # image[a][q] as a bit
    return [[1 << A.delta[q][a] for q in range(A.n)] for a in range(A.alphabet.k)]


def _image(mask: int, bits: list[int]) -> int:
    out = 0
    q = 0
    while mask:
        if mask & 1:
            out |= bits[q]
        mask >>= 1
        q += 1
    return out


def _is_singleton(mask: int) -> bool:
    return mask != 0 and mask & (mask - 1) == 0


def _mergeable_pairs(A: Semiautomaton) -> set[tuple[int, int]]:
    """Pairs {p, q} that some word sends to a single state (backward search)."""
    n, k = A.n, A.alphabet.k
    preimage: list[list[list[int]]] = [[[] for _ in range(n)] for _ in range(k)]
    for q in range(n):
        for a in range(k):
            preimage[a][A.delta[q][a]].append(q)
    mergeable = set()
    queue = deque()
    for r in range(n):
        for a in range(k):
            pre = preimage[a][r]
            for i, p in enumerate(pre):
                for q in pre[i + 1:]:
                    pair = (min(p, q), max(p, q))
                    if pair not in mergeable:
                        mergeable.add(pair)
                        queue.append(pair)
    while queue:
        p, q = queue.popleft()
        for a in range(k):
            for p1 in preimage[a][p]:
                for q1 in preimage[a][q]:
                    if p1 == q1:
                        continue
                    pair = (min(p1, q1), max(p1, q1))
                    if pair not in mergeable:
                        mergeable.add(pair)
                        queue.append(pair)
    return mergeable


def is_synchronizing(A: Semiautomaton) -> bool:
    return len(_mergeable_pairs(A)) == A.n * (A.n - 1) // 2


def unmergeable_pair(A: Semiautomaton) -> Optional[tuple[int, int]]:
    """Least pair of states that no word merges, or None if A is synchronizing."""
    mergeable = _mergeable_pairs(A)
    for p in range(A.n):
        for q in range(p + 1, A.n):
            if (p, q) not in mergeable:
                return p, q
    return None


def shortest_reset_word(A: Semiautomaton) -> Optional[Word]:
    bits = _masks(A)
    full = (1 << A.n) - 1
    parent: dict[int, Optional[tuple[int, int]]] = {full: None}
    queue = deque([full])
    while queue:
        S = queue.popleft()
        if _is_singleton(S):
            word = []
            while parent[S] is not None:
                S, a = parent[S]
                word.append(a)
            return tuple(reversed(word))
        for a in range(A.alphabet.k):
            T = _image(S, bits[a])
            if T not in parent:
                parent[T] = (S, a)
                queue.append(T)
    return None


def power_acceptor(A: Semiautomaton, is_final, budget: Optional[int] = None) -> Acceptor:
    """Subset automaton reachable from the full state set (states as bit masks)."""
    bits = _masks(A)
    D, _ = explore(
        A.alphabet, (1 << A.n) - 1, lambda S, a: _image(S, bits[a]), is_final, budget=budget
    )
    return D


def syn_recognizer(A: Semiautomaton, budget: Optional[int] = None) -> Acceptor:
    return trim_minimize(power_acceptor(A, _is_singleton, budget))


def state_ideal_recognizer(A: Semiautomaton, q: int) -> Acceptor:
    """Acceptor of the words sending every state to ``q``."""
    if not 0 <= q < A.n:
        raise AutomatonError(f"state {q} out of range for {A.n} states")
    target = 1 << q
    return trim_minimize(power_acceptor(A, lambda S: S == target))


def sync_report(A: Semiautomaton) -> SyncReport:
    word = shortest_reset_word(A) if is_synchronizing(A) else None
    return SyncReport(A.n, word is not None, word, is_strongly_connected(A))


# -- ideals -------------------------------------------------------------------

def ideal_closure(L: Acceptor) -> Acceptor:
    """Acceptor of all words having a factor in ``L(L)``."""
    k = L.alphabet.k
    start = L.n
    delta = []
    for q, row in enumerate(L.delta):
        out = []
        for a, p in enumerate(row):
            targets = set() if p is None else {p}
            if q in L.finals:
                targets.add(q)
            out.append(frozenset(targets))
        delta.append(tuple(out))
    # fresh initial copy of L.initial that also loops on every letter
    delta.append(tuple(delta[L.initial][a] | {start} for a in range(k)))
    finals = set(L.finals)
    if L.initial in L.finals:
        finals.add(start)
    N = Nfa(L.alphabet, frozenset({start}), tuple(delta), frozenset(finals))
    return trim_minimize(determinize(N))


def is_ideal(D: Acceptor) -> bool:
    return equivalent(D, ideal_closure(D)).equal


def _letter_then(I: Acceptor) -> Acceptor:
    """Acceptor of Sigma.I: a fresh start wired by every letter to I's initial."""
    fresh = I.n
    delta = I.delta + ((I.initial,) * I.alphabet.k,)
    return Acceptor(I.alphabet, delta, fresh, I.finals)


def _then_letter(I: Acceptor) -> Acceptor:
    """Acceptor of I.Sigma: remembers whether the previous state was final."""

    def step(s, a):
        q, _ = s
        if q is None:
            return (None, False)
        return (I.delta[q][a], q in I.finals)

    D, _ = explore(I.alphabet, (I.initial, False), step, lambda s: s[1])
    return D


def minimal_words_recognizer(I: Acceptor) -> Acceptor:
    """Acceptor of the minimal words (factor-free generators) of the ideal ``I``."""
    if not is_ideal(I):
        raise AutomatonError("input language is not a two-sided ideal")
    return difference(I, union(_letter_then(I), _then_letter(I)))


def _proper_occurrence_nfa(M: Acceptor) -> Nfa:
    """NFA of words containing a word of M as a factor other than the whole word."""
    T = trim(M)
    k = T.alphabet.k
    n = T.n
    # copies of T: index q (no prefix read yet) and n + q (nonempty prefix read)
    pre, after = 2 * n, 2 * n + 1
    delta: list[list[set[int]]] = [[set() for _ in range(k)] for _ in range(2 * n + 2)]
    for h in (0, 1):
        for q in range(n):
            for a in range(k):
                p = T.delta[q][a]
                if p is not None:
                    delta[h * n + q][a].add(h * n + p)
                if q in T.finals:
                    delta[h * n + q][a].add(after)
    for a in range(k):
        delta[pre][a] |= {pre, n + T.initial}
        delta[after][a].add(after)
    finals = {after} | {n + f for f in T.finals}
    return Nfa(
        T.alphabet,
        frozenset({pre, T.initial}),
        tuple(tuple(frozenset(s) for s in row) for row in delta),
        frozenset(finals),
    )


def factor_violation(M: Acceptor) -> Optional[tuple[Word, Word]]:
    """A pair (u, w) of words of M with u a proper factor of w, or None."""
    bad = intersect(M, trim_minimize(determinize(_proper_occurrence_nfa(M))))
    w = shortest_accepted(bad)
    if w is None:
        return None
    for length in range(len(w)):
        for start in range(len(w) - length + 1):
            u = w[start:start + length]
            if accepts(M, u):
                return u, w
    raise AssertionError("no proper factor found for a witness word")


def is_factor_free(M: Acceptor) -> bool:
    return factor_violation(M) is None


def ideal_norm(I: Acceptor) -> Optional[int]:
    w = shortest_accepted(I)
    return None if w is None else len(w)


def suffix_prefix_overlap(u: Word, M: Acceptor) -> Word:
    """Longest suffix of ``u`` that is a prefix of some word of M."""
    T = trim(M)
    live = not is_empty(T)
    for i in range(len(u) + 1):
        suffix = u[i:]
        if live and T.run(suffix) is not None:
            return suffix
    return ()
