"""Synchronizing automata and their ideals of reset words.

Analysis of reset words (shortest reset words, minimal reset words, missing
factors) and the tail-structure construction of a strongly connected
synchronizing automaton whose reset words are a prescribed ideal.
"""

from .automata import (
    Acceptor,
    Alphabet,
    AutomatonError,
    Nfa,
    Semiautomaton,
    accepts,
    apply,
    determinize,
    equivalent,
    from_words,
    is_strongly_connected,
    shortest_accepted,
    trim_minimize,
)
from .factors import analyze_missing_factors, factor_recognizer, find_missing_factor
from .oracle import Verdict, verify_construction, verify_decomposition, verify_syn_equals_ideal
from .reset import (
    ideal_closure,
    is_synchronizing,
    minimal_words_recognizer,
    shortest_reset_word,
    syn_recognizer,
)
from .tails import TailSetting, construct_tail_automaton, lifted_explore

__version__ = "0.1.0"
