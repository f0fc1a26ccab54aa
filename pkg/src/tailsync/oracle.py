"""Definitional oracles for the constructions, reported as replayable verdicts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .automata import (
    Acceptor,
    BudgetExceeded,
    Semiautomaton,
    Word,
    accepts,
    equivalent,
    is_strongly_connected,
)
from .reset import ideal_closure, is_synchronizing, state_ideal_recognizer, syn_recognizer
from .tails import TailSetting, construct_tail_automaton

DEFAULT_BUDGET = 10**6
ENUMERATION_LIMIT = 4 * 10**6


@dataclass(frozen=True)
class Verdict:
    ok: bool
    counterexample: Optional[Word] = None
    detail: str = ""
    mode: str = "exact"

    def __bool__(self):
        return self.ok


def _enumeration_guard(k: int, L: int) -> None:
    size = (k ** (L + 1) - 1) // (k - 1) if k > 1 else L + 1
    if size > ENUMERATION_LIMIT:
        raise ValueError(
            f"enumerating all {size} words of length <= {L} over {k} letters exceeds "
            f"the limit of {ENUMERATION_LIMIT}"
        )


def _images(A: Semiautomaton, L: int):
    """Yield (word, image of Q) for all words of length <= L by direct simulation."""
    _enumeration_guard(A.alphabet.k, L)
    stack = [((), frozenset(range(A.n)))]
    while stack:
        word, S = stack.pop()
        yield word, S
        if len(word) < L:
            for a in range(A.alphabet.k):
                stack.append((word + (a,), frozenset(A.delta[q][a] for q in S)))


def brute_force_syn(A: Semiautomaton, L: int) -> set[Word]:
    """All reset words of length <= L, by simulating every word."""
    return {w for w, S in _images(A, L) if len(S) == 1}


def contains_factor(M: Acceptor, u: Word) -> bool:
    """Whether some factor of ``u`` is a word of M (direct scan)."""
    return any(accepts(M, u[i:j]) for i in range(len(u) + 1) for j in range(i, len(u) + 1))


def default_length(m: int) -> int:
    return 2 * m + 6


def verify_syn_equals_ideal(
    A: Semiautomaton,
    M: Acceptor,
    bound: Optional[int] = None,
    budget: int = DEFAULT_BUDGET,
) -> Verdict:
    """Check that the reset words of A are exactly the words with a factor in M.

    With ``bound=None`` the check is exact (language equivalence) and raises
    :class:`BudgetExceeded` when the subset construction gets too large.
    Otherwise all words up to length ``bound`` are compared by simulation.
    """
    fmt = A.alphabet.format
    if bound is None:
        result = equivalent(syn_recognizer(A, budget=budget), ideal_closure(M))
        if result.equal:
            return Verdict(True, detail="Syn(A) equals the ideal generated by M", mode="exact")
        w = result.counterexample
        side = "reset word outside the ideal" if _is_reset(A, w) else "ideal word that is not reset"
        return Verdict(False, w, f"{side}: {fmt(w)}", mode="exact")
    for w, S in sorted(_images(A, bound), key=lambda ws: (len(ws[0]), ws[0])):
        reset = len(S) == 1
        if reset != contains_factor(M, w):
            side = "reset word outside the ideal" if reset else "ideal word that is not reset"
            return Verdict(False, w, f"{side}: {fmt(w)}", mode=f"bounded({bound})")
    return Verdict(True, detail=f"agree on all words of length <= {bound}", mode=f"bounded({bound})")


def _is_reset(A: Semiautomaton, w: Word) -> bool:
    S = set(range(A.n))
    for a in w:
        S = {A.delta[q][a] for q in S}
    return len(S) == 1


def verify_decomposition(A: Semiautomaton, L: int) -> Verdict:
    """Bounded check that the per-state ideals form a reset left decomposition.

    Checks on all words of length <= L that the ideals I_q (words sending
    every state to q) are pairwise disjoint, cover the reset words, and are
    left ideals; then spot-checks the reset condition: for a non-reset word
    u, the reset words w with |wu| <= L must not all land wu in one ideal.
    When those short reset words do not yet reach every state that some reset
    word reaches, the spot check for u is inconclusive and only counted.
    """
    fmt = A.alphabet.format
    mode = f"bounded({L})"
    if not is_synchronizing(A):
        return Verdict(True, detail="not synchronizing: Syn(A) is empty, nothing to decompose", mode=mode)
    ideals = [state_ideal_recognizer(A, q) for q in range(A.n)]
    k = A.alphabet.k
    images = dict(_images(A, L))
    members: dict[Word, int] = {}
    for w, S in sorted(images.items(), key=lambda ws: (len(ws[0]), ws[0])):
        owners = [q for q in range(A.n) if accepts(ideals[q], w)]
        if len(S) == 1:
            if owners != list(S):
                return Verdict(False, w, f"reset word {fmt(w)} owned by {owners}, expected {sorted(S)}", mode)
            members[w] = owners[0]
        elif owners:
            return Verdict(False, w, f"non-reset word {fmt(w)} accepted by I_q for q in {owners}", mode)
    for w, q in members.items():
        for c in range(k):
            cw = (c,) + w
            if len(cw) <= L and members.get(cw) != q:
                return Verdict(False, cw, f"I_{q} is not a left ideal: {fmt(w)} in, {fmt(cw)} not", mode)

    if not members:
        return Verdict(True, detail=f"no reset word of length <= {L}; nothing to check", mode=mode)
    # reset targets reachable by reset words of each bounded length
    m = min(len(w) for w in members)
    targets_upto = []
    seen: set[int] = set()
    for length in range(L + 1):
        seen |= {q for w, q in members.items() if len(w) == length}
        targets_upto.append(frozenset(seen))
    all_targets = _reset_targets(A, members)
    checked = inconclusive = 0
    for u, S in sorted(images.items(), key=lambda us: (len(us[0]), us[0])):
        if len(S) == 1 or len(u) > L - m:
            continue
        R = targets_upto[L - len(u)]
        landing = {_run(A, r, u) for r in R}
        if len(landing) >= 2:
            checked += 1
        elif R != all_targets:
            inconclusive += 1
        else:
            return Verdict(False, u, f"I.{fmt(u)} lies in a single class but {fmt(u)} is not reset", mode)
    return Verdict(
        True,
        detail=(
            f"{len(members)} reset words partitioned among {A.n} left ideals; "
            f"reset condition confirmed for {checked} words, inconclusive for {inconclusive}"
        ),
        mode=mode,
    )


def _run(A: Semiautomaton, q: int, u: Word) -> int:
    for a in u:
        q = A.delta[q][a]
    return q


def _reset_targets(A: Semiautomaton, members: dict[Word, int]) -> frozenset[int]:
    # any state reachable from a reset target is again a reset target
    seen = set(members.values())
    stack = list(seen)
    while stack:
        for p in A.delta[stack.pop()]:
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return frozenset(seen)


def verify_construction(M, L: Optional[int] = None, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Build the tail automaton of M and check all four of its guarantees."""
    setting = TailSetting.from_generators(M)
    T = construct_tail_automaton(setting)
    A = T.automaton
    L = default_length(setting.m) if L is None else L
    notes = [f"{A.n} states (bound {T.bound})"]
    if not is_strongly_connected(A):
        return Verdict(False, detail="not strongly connected; " + notes[0])
    if not is_synchronizing(A):
        return Verdict(False, detail="not synchronizing; " + notes[0])
    if A.n > T.bound:
        return Verdict(False, detail="state bound exceeded; " + notes[0])
    try:
        syn = verify_syn_equals_ideal(A, setting.B, budget=budget)
    except BudgetExceeded as exc:
        notes.append(f"exact check refused ({exc}); bounded fallback")
        syn = verify_syn_equals_ideal(A, setting.B, bound=L)
    notes.append(syn.detail)
    return Verdict(syn.ok, syn.counterexample, "; ".join(notes), syn.mode)

