import random

import pytest

from tailsync.automata import (
    AutomatonError,
    accepts,
    empty_acceptor,
    equivalent,
    from_words,
    shortest_accepted,
    universal_acceptor,
)
from tailsync.reset import (
    ideal_closure,
    ideal_norm,
    is_factor_free,
    is_ideal,
    is_synchronizing,
    minimal_words_recognizer,
    shortest_reset_word,
    state_ideal_recognizer,
    suffix_prefix_overlap,
    sync_report,
    syn_recognizer,
    unmergeable_pair,
)

from conftest import (
    AB,
    all_words,
    cerny,
    generators,
    has_factor_in,
    identity,
    random_semiautomaton,
    random_synchronizing,
    reset_by_simulation,
    w,
)


def test_is_synchronizing_examples(C4):
    assert is_synchronizing(C4)
    assert not is_synchronizing(identity(2))
    assert is_synchronizing(identity(1))
    assert unmergeable_pair(identity(2)) == (0, 1)
    assert unmergeable_pair(C4) is None


def test_shortest_reset_word_cerny(C4):
    word = shortest_reset_word(C4)
    first = next(u for u in all_words(2, 9) if reset_by_simulation(C4, u))
    assert len(word) == 9
    assert word == first == w("baaabaaab")


def test_shortest_reset_word_degenerate():
    assert shortest_reset_word(identity(1)) == ()
    assert shortest_reset_word(identity(2)) is None


@pytest.mark.parametrize("n", [2, 3, 5, 6])
def test_cerny_series_reaches_the_bound(n):
    assert len(shortest_reset_word(cerny(n))) == (n - 1) ** 2


def test_sync_report(C4):
    report = sync_report(C4)
    assert report.is_synchronizing and report.strongly_connected
    assert report.cerny_bound == 9 and report.bound_satisfied
    assert sync_report(identity(2)).shortest_reset is None


def test_synchronization_agrees_across_methods():
    rng = random.Random(7)
    for _ in range(200):
        A = random_semiautomaton(rng, rng.randint(1, 6))
        sync = is_synchronizing(A)
        assert sync == (shortest_reset_word(A) is not None)
        assert sync == (shortest_accepted(syn_recognizer(A)) is not None)


def test_syn_recognizer_examples(C4):
    assert equivalent(syn_recognizer(identity(1)), universal_acceptor(AB))
    assert equivalent(syn_recognizer(identity(2)), empty_acceptor(AB))
    S = syn_recognizer(C4)
    assert len(shortest_accepted(S)) == 9
    for u in all_words(2, 10):
        assert accepts(S, u) == reset_by_simulation(C4, u)


def test_ideal_closure_examples():
    assert equivalent(ideal_closure(universal_acceptor(AB)), universal_acceptor(AB))
    I = ideal_closure(generators("aa"))
    for u in all_words(2, 6):
        assert accepts(I, u) == has_factor_in(u, {w("aa")})
    assert shortest_accepted(ideal_closure(empty_acceptor(AB))) is None


def test_is_ideal(C4):
    assert is_ideal(ideal_closure(generators("aa")))
    assert not is_ideal(generators("ab"))
    assert is_ideal(syn_recognizer(C4))


def brute_minimal_words(I, length):
    """Words of I up to ``length`` whose proper factors all lie outside I."""
    out = set()
    for u in all_words(I.alphabet.k, length):
        if accepts(I, u) and not accepts(I, u[1:]) and not accepts(I, u[:-1]):
            out.add(u)
    return out


def test_minimal_words_examples(C4):
    M = minimal_words_recognizer(universal_acceptor(AB))
    assert {u for u in all_words(2, 3) if accepts(M, u)} == {()}
    I = ideal_closure(generators("aa"))
    M = minimal_words_recognizer(I)
    assert {u for u in all_words(2, 4) if accepts(M, u)} == brute_minimal_words(I, 4) == {w("aa")}


def test_minimal_reset_words_of_cerny(C4):
    S = syn_recognizer(C4)
    M = minimal_words_recognizer(S)
    assert is_factor_free(M)
    assert len(shortest_accepted(M)) == 9
    members = [u for u in all_words(2, 12) if accepts(M, u)]
    assert set(members) == brute_minimal_words(S, 12)
    for u in members:
        for v in members:
            if u != v:
                assert not any(v[i:i + len(u)] == u for i in range(len(v) - len(u) + 1))


def test_minimal_words_rejects_non_ideal():
    with pytest.raises(AutomatonError):
        minimal_words_recognizer(generators("ab"))


def test_is_factor_free_examples():
    assert is_factor_free(generators("ab", "ba"))
    assert not is_factor_free(generators("a", "aa"))
    assert is_factor_free(empty_acceptor(AB))
    assert not is_factor_free(from_words(AB, [(), w("a")]))
    assert is_factor_free(from_words(AB, [()]))
    assert not is_factor_free(generators("b", "aba"))


def test_ideal_norm(C4):
    assert ideal_norm(ideal_closure(generators("aa"))) == 2
    assert ideal_norm(ideal_closure(generators("ab", "ba"))) == 2
    assert ideal_norm(syn_recognizer(C4)) == 9
    assert ideal_norm(empty_acceptor(AB)) is None


def test_state_ideals_examples(C4):
    assert equivalent(state_ideal_recognizer(identity(1), 0), universal_acceptor(AB))
    for q in range(2):
        assert shortest_accepted(state_ideal_recognizer(identity(2), q)) is None
    with pytest.raises(AutomatonError):
        state_ideal_recognizer(C4, 4)


def test_state_ideals_partition_syn(C4):
    ideals = [state_ideal_recognizer(C4, q) for q in range(4)]
    for u in all_words(2, 10):
        owners = [q for q in range(4) if accepts(ideals[q], u)]
        assert len(owners) == (1 if reset_by_simulation(C4, u) else 0)


def test_state_ideals_are_left_ideals():
    rng = random.Random(11)
    for _ in range(20):
        A = random_synchronizing(rng, 4)
        for q in range(A.n):
            J = state_ideal_recognizer(A, q)
            for u in all_words(2, 7):
                if accepts(J, u):
                    assert accepts(J, (0,) + u) and accepts(J, (1,) + u)


def brute_overlap(u, words):
    prefixes = {x[:i] for x in words for i in range(len(x) + 1)}
    return next(u[i:] for i in range(len(u) + 1) if u[i:] in prefixes)


def test_suffix_prefix_overlap_examples():
    M = generators("ab", "ba")
    assert suffix_prefix_overlap(w("aab"), M) == w("ab")
    assert suffix_prefix_overlap(w("bb"), M) == w("b")
    assert suffix_prefix_overlap((), M) == ()
    assert suffix_prefix_overlap(w("ab"), empty_acceptor(AB)) == ()


def test_suffix_prefix_overlap_matches_brute_force():
    rng = random.Random(3)
    words = [w("aab"), w("bab"), w("bba")]
    M = from_words(AB, words)
    for _ in range(300):
        u = tuple(rng.randrange(2) for _ in range(rng.randint(0, 8)))
        assert suffix_prefix_overlap(u, M) == brute_overlap(u, words)


def test_generator_roundtrip_on_random_automata():
    rng = random.Random(5)
    for _ in range(40):
        A = random_synchronizing(rng, 5)
        S = syn_recognizer(A)
        M = minimal_words_recognizer(S)
        assert is_factor_free(M)
        assert equivalent(ideal_closure(M), S)
