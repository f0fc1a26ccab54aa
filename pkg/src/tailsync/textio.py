"""Line-oriented text formats for automata and word lists, and DOT export.

An automaton file holds one directive per line (``#`` starts a comment)::

    alphabet a b
    states 4
    initial 0        # acceptors only
    final 3          # acceptors only
    partial          # acceptors only, when transitions may be missing
    trans 0 a 1

A file without ``initial`` and ``final`` describes a semiautomaton and must
have a complete transition table.  :func:`serialize_aut` writes the
directives in the order above with transitions sorted by (state, letter).
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence, Union

from .automata import EPS_TOKEN, Acceptor, Alphabet, AutomatonError, Semiautomaton, Word, empty_acceptor

Automaton = Union[Semiautomaton, Acceptor]


class ParseError(AutomatonError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _state(token: str, n: Optional[int], lineno: int) -> int:
    if n is None:
        raise ParseError(lineno, "'states' must come before any state reference")
    try:
        q = int(token)
    except ValueError:
        raise ParseError(lineno, f"state {token!r} is not an integer") from None
    if not 0 <= q < n:
        raise ParseError(lineno, f"state {q} out of range 0..{n - 1}")
    return q


def parse_aut(text: str) -> Automaton:
    alphabet: Optional[Alphabet] = None
    n: Optional[int] = None
    initial: Optional[int] = None
    finals: Optional[set[int]] = None
    partial = False
    trans: dict[tuple[int, int], int] = {}
    seen: dict[str, int] = {}
    last = 0
    for lineno, tokens in _lines(text):
        last = lineno
        head, args = tokens[0], tokens[1:]
        if head != "trans":
            if head in seen:
                raise ParseError(lineno, f"duplicate {head!r} directive (first on line {seen[head]})")
            seen[head] = lineno
        if head == "alphabet":
            try:
                alphabet = Alphabet(tuple(args))
            except AutomatonError as exc:
                raise ParseError(lineno, str(exc)) from None
        elif head == "states":
            if len(args) != 1 or not args[0].isdigit() or int(args[0]) < 1:
                raise ParseError(lineno, "'states' takes one positive integer")
            n = int(args[0])
        elif head == "initial":
            if len(args) != 1:
                raise ParseError(lineno, "'initial' takes exactly one state")
            initial = _state(args[0], n, lineno)
        elif head == "final":
            finals = {_state(t, n, lineno) for t in args}
        elif head == "partial":
            if args:
                raise ParseError(lineno, "'partial' takes no arguments")
            partial = True
        elif head == "trans":
            if len(args) != 3:
                raise ParseError(lineno, "'trans' takes: state symbol state")
            if alphabet is None:
                raise ParseError(lineno, "'alphabet' must come before transitions")
            q = _state(args[0], n, lineno)
            if args[1] not in alphabet.symbols:
                raise ParseError(lineno, f"symbol {args[1]!r} not in alphabet")
            a = alphabet.symbols.index(args[1])
            p = _state(args[2], n, lineno)
            if (q, a) in trans:
                raise ParseError(lineno, f"duplicate transition for ({q}, {args[1]})")
            trans[(q, a)] = p
        else:
            raise ParseError(lineno, f"unknown directive {head!r}")
    end = last + 1
    if alphabet is None:
        raise ParseError(end, "missing 'alphabet' directive")
    if n is None:
        raise ParseError(end, "missing 'states' directive")
    if initial is None and (finals is not None or partial):
        raise ParseError(end, "'final' and 'partial' require an 'initial' state")
    if not partial:
        for q in range(n):
            for a in range(alphabet.k):
                if (q, a) not in trans:
                    raise ParseError(
                        end, f"missing transition for ({q}, {alphabet.symbols[a]}) and no 'partial' directive"
                    )
    delta = tuple(tuple(trans.get((q, a)) for a in range(alphabet.k)) for q in range(n))
    if initial is None:
        return Semiautomaton(alphabet, delta)
    return Acceptor(alphabet, delta, initial, frozenset(finals or ()))


def serialize_aut(A: Automaton) -> str:
    sym = A.alphabet.symbols
    out = [f"alphabet {' '.join(sym)}", f"states {A.n}"]
    if isinstance(A, Acceptor):
        out.append(f"initial {A.initial}")
        if A.finals:
            out.append("final " + " ".join(str(f) for f in sorted(A.finals)))
        if not A.is_complete:
            out.append("partial")
    for q, row in enumerate(A.delta):
        for a, p in enumerate(row):
            if p is not None:
                out.append(f"trans {q} {sym[a]} {p}")
    return "\n".join(out) + "\n"


def parse_words(text: str) -> tuple[Alphabet, list[Word]]:
    """Word list: an ``alphabet`` header, then one word per line (``eps`` is empty)."""
    alphabet: Optional[Alphabet] = None
    words: list[Word] = []
    for lineno, tokens in _lines(text):
        if alphabet is None:
            if tokens[0] != "alphabet":
                raise ParseError(lineno, "word list must start with an 'alphabet' line")
            try:
                alphabet = Alphabet(tuple(tokens[1:]))
            except AutomatonError as exc:
                raise ParseError(lineno, str(exc)) from None
            continue
        try:
            w = alphabet.word(" ".join(tokens)) if len(tokens) > 1 else alphabet.word(tokens[0])
        except AutomatonError as exc:
            raise ParseError(lineno, str(exc)) from None
        if w not in words:
            words.append(w)
    if alphabet is None:
        raise ParseError(1, "empty word list: missing 'alphabet' line")
    return alphabet, words


def serialize_words(alphabet: Alphabet, words: Iterable[Sequence[int]]) -> str:
    lines = [f"alphabet {' '.join(alphabet.symbols)}"]
    lines += [alphabet.format(w) if w else EPS_TOKEN for w in words]
    return "\n".join(lines) + "\n"


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(A: Automaton, labels: Optional[Sequence[str]] = None, name: str = "automaton") -> str:
    """Graphviz source; parallel edges are merged into one comma-labelled arrow."""
    sym = A.alphabet.symbols
    out = [f"digraph {_quote(name)} {{", "  rankdir=LR;", "  node [shape=circle];"]
    finals = A.finals if isinstance(A, Acceptor) else frozenset()
    if isinstance(A, Acceptor) and A == empty_acceptor(A.alphabet):
        out.append("}")
        return "\n".join(out) + "\n"
    if isinstance(A, Acceptor):
        out.append('  __start [shape=point, label=""];')
        out.append(f"  __start -> {A.initial};")
    for q in range(A.n):
        attrs = []
        if q in finals:
            attrs.append("shape=doublecircle")
        if labels is not None:
            attrs.append(f"label={_quote(labels[q])}")
        out.append(f"  {q}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    for q, row in enumerate(A.delta):
        grouped: dict[int, list[str]] = {}
        for a, p in enumerate(row):
            if p is not None:
                grouped.setdefault(p, []).append(sym[a])
        for p in sorted(grouped):
            out.append(f"  {q} -> {p} [label={_quote(','.join(grouped[p]))}];")
    out.append("}")
    return "\n".join(out) + "\n"
