"""Missing factors of the minimal reset words and the reset-length bounds they give."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .automata import (
    Acceptor,
    AutomatonError,
    Nfa,
    Semiautomaton,
    Word,
    determinize,
    empty_acceptor,
    trim,
    trim_minimize,
)
from .reset import (
    ideal_norm,
    is_synchronizing,
    minimal_words_recognizer,
    shortest_reset_word,
    syn_recognizer,
)


def factor_recognizer(M: Acceptor) -> Acceptor:
    """Acceptor of every factor of every word of M."""
    T = trim(M)
    if not T.finals:
        return empty_acceptor(M.alphabet)
    every = frozenset(range(T.n))
    delta = tuple(
        tuple(frozenset() if p is None else frozenset({p}) for p in row) for row in T.delta
    )
    return trim_minimize(determinize(Nfa(T.alphabet, every, delta, every)))


def _count_table(F: Acceptor, length: int) -> list[list[int]]:
    # counts[r][q] = number of accepted words of length r read from q
    counts = [[1 if q in F.finals else 0 for q in range(F.n)]]
    for _ in range(length):
        prev = counts[-1]
        counts.append([sum(prev[p] for p in row if p is not None) for row in F.delta])
    return counts


def find_missing_factor(M: Acceptor, ell_max: int) -> Optional[tuple[int, Word]]:
    """Smallest length with a missing factor, with the least missing word of that length."""
    if ell_max < 1:
        raise AutomatonError("ell_max must be at least 1")
    F = factor_recognizer(M)
    k = M.alphabet.k
    counts = _count_table(F, ell_max)
    for ell in range(1, ell_max + 1):
        if counts[ell][F.initial] < k**ell:
            return ell, _least_missing(F, counts, ell)
    return None


def _least_missing(F: Acceptor, counts: list[list[int]], ell: int) -> Word:
    k = F.alphabet.k
    word = []
    q: Optional[int] = F.initial
    for r in range(ell, 0, -1):
        for a in range(k):
            p = F.delta[q][a]
            if p is None:
                return tuple(word) + (a,) + (0,) * (r - 1)
            if counts[r - 1][p] < k ** (r - 1):
                word.append(a)
                q = p
                break
    # only reachable when the remaining suffix itself is rejected
    return tuple(word)


def factor_count(M: Acceptor, ell: int) -> int:
    F = factor_recognizer(M)
    return _count_table(F, ell)[ell][F.initial]


def theorem1_bound(n: int, ell: int) -> int:
    """Reset-length bound from a missing factor of length ``ell``: n(n-1)/2 + 2*ell."""
    if n < 1 or ell < 1:
        raise AutomatonError("n and ell must be positive")
    return n * (n - 1) // 2 + 2 * ell


@dataclass(frozen=True)
class Applicability:
    cerny_applicable: bool
    quadratic_applicable: bool
    quadratic_bound: Fraction


def applicability(n: int, ideal_norm: int, ell_star: int) -> Applicability:
    cerny = Fraction(ell_star) <= Fraction(n * n - 3 * n + 2, 4)
    quadratic = Fraction(ell_star) <= Fraction(ideal_norm, 4) + Fraction(1, 16)
    return Applicability(cerny, quadratic, (Fraction(n) - Fraction(1, 2)) ** 2)


@dataclass(frozen=True)
class MissingFactorReport:
    n: int
    ideal_norm: int
    shortest_reset_length: int
    ell_star: Optional[int]
    witness: Optional[Word]
    theorem1_bound: Optional[int]
    # None when no missing factor was found: applicability is then undecided
    cerny_applicable: Optional[bool]
    quadratic_applicable: Optional[bool]
    quadratic_bound: Fraction

    @property
    def theorem1_holds(self) -> Optional[bool]:
        """None when no missing factor was found within the search range."""
        if self.theorem1_bound is None:
            return None
        return self.shortest_reset_length <= self.theorem1_bound


def analyze_missing_factors(
    A: Semiautomaton, ell_max: int, minimal_words: Optional[Acceptor] = None
) -> MissingFactorReport:
    if not is_synchronizing(A):
        raise AutomatonError("automaton is not synchronizing")
    syn = syn_recognizer(A)
    M = minimal_words if minimal_words is not None else minimal_words_recognizer(syn)
    norm = ideal_norm(syn)
    reset = shortest_reset_word(A)
    found = find_missing_factor(M, ell_max)
    if found is None:
        ell, witness, bound = None, None, None
        cerny = quadratic = None
        qbound = (Fraction(A.n) - Fraction(1, 2)) ** 2
    else:
        ell, witness = found
        bound = theorem1_bound(A.n, ell)
        app = applicability(A.n, norm, ell)
        cerny, quadratic, qbound = app.cerny_applicable, app.quadratic_applicable, app.quadratic_bound
    return MissingFactorReport(
        n=A.n,
        ideal_norm=norm,
        shortest_reset_length=len(reset),
        ell_star=ell,
        witness=witness,
        theorem1_bound=bound,
        cerny_applicable=cerny,
        quadratic_applicable=quadratic,
        quadratic_bound=qbound,
    )
