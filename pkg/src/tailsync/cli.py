"""Command-line interface.

Exit codes: 0 success or verified, 1 property falsified or automaton not
synchronizing (a counterexample is printed), 2 input or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .automata import (
    Acceptor,
    Alphabet,
    AutomatonError,
    BudgetExceeded,
    Semiautomaton,
    from_words,
    is_strongly_connected,
    shortest_accepted,
)
from .factors import analyze_missing_factors, find_missing_factor
from .oracle import default_length, verify_syn_equals_ideal
from .reset import minimal_words_recognizer, sync_report, syn_recognizer, unmergeable_pair
from .tails import (
    EPSILON,
    LiftedExploration,
    TailSetting,
    TailState,
    build_B,
    construct_tail_automaton,
    lifted_explore,
)
from .textio import export_dot, parse_aut, parse_words, serialize_aut

OK, FALSIFIED, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def _semiautomaton(path: str) -> Semiautomaton:
    A = parse_aut(_read(path))
    if not isinstance(A, Semiautomaton):
        raise InputError(f"{path}: expected a semiautomaton (no 'initial'/'final' directives)")
    return A


def _acceptor(path: str) -> Acceptor:
    A = parse_aut(_read(path))
    if not isinstance(A, Acceptor):
        raise InputError(f"{path}: expected an acceptor (with 'initial' and 'final')")
    return A


def _generators(words: Optional[str], dfa: Optional[str]) -> Acceptor:
    if words is not None:
        alphabet, ws = parse_words(_read(words))
        return from_words(alphabet, ws)
    return _acceptor(dfa)


def _fraction(x) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def describe_state(label: TailState, alphabet: Alphabet) -> str:
    sym = alphabet.symbols

    def vec(x):
        return "(" + ",".join(str(v) for v in x) + ")"

    triples = ", ".join(
        f"{'eps' if c == EPSILON else sym[c]}:{vec(s)}:{p}"
        for c, s, p in sorted(label.omega)
    )
    return f"{sym[label.b]} {vec(label.x)} {{{triples}}}"


# -- subcommands -----------------------------------------------------------------

def cmd_analyze(args) -> int:
    A = _semiautomaton(args.file)
    fmt = A.alphabet.format
    sync = sync_report(A)
    data = {
        "states": A.n,
        "strongly_connected": sync.strongly_connected,
        "synchronizing": sync.is_synchronizing,
    }
    if not sync.is_synchronizing:
        p, q = unmergeable_pair(A)
        data["unmergeable_pair"] = [p, q]
        if args.json:
            print(json.dumps(data, indent=2, sort_keys=True))
        else:
            print(f"states: {A.n}")
            print("not synchronizing")
            print(f"counterexample: states {p} and {q} are never merged")
        return FALSIFIED
    report = analyze_missing_factors(A, args.max_len)
    data.update(
        {
            "shortest_reset_word": fmt(sync.shortest_reset),
            "shortest_reset_length": len(sync.shortest_reset),
            "cerny_bound": sync.cerny_bound,
            "cerny_bound_satisfied": sync.bound_satisfied,
            "ideal_norm": report.ideal_norm,
            "missing_factor_search_length": args.max_len,
            "ell_star": report.ell_star,
            "missing_factor": None if report.witness is None else fmt(report.witness),
            "theorem1_bound": report.theorem1_bound,
            "theorem1_holds": report.theorem1_holds,
            "cerny_corollary_applicable": report.cerny_applicable,
            "quadratic_corollary_applicable": report.quadratic_applicable,
            "quadratic_bound": _fraction(report.quadratic_bound),
        }
    )
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        yn = {True: "yes", False: "no", None: "n/a"}
        print(f"states: {A.n}")
        print(f"strongly connected: {yn[sync.strongly_connected]}")
        print("synchronizing: yes")
        print(f"shortest reset word: {fmt(sync.shortest_reset)} (length {len(sync.shortest_reset)})")
        print(f"cerny bound (n-1)^2: {sync.cerny_bound} ({'satisfied' if sync.bound_satisfied else 'VIOLATED'})")
        print(f"ideal norm: {report.ideal_norm}")
        if report.ell_star is None:
            print(f"missing factor: none up to length {args.max_len}")
        else:
            print(f"missing factor: length {report.ell_star}, witness {fmt(report.witness)}")
            status = "holds" if report.theorem1_holds else "VIOLATED"
            print(f"missing-factor bound n(n-1)/2+2l: {report.theorem1_bound} ({status})")
        print(f"cerny corollary applicable: {yn[report.cerny_applicable]}")
        print(f"quadratic corollary applicable: {yn[report.quadratic_applicable]}")
        print(f"quadratic bound (n-1/2)^2: {_fraction(report.quadratic_bound)}")
    if report.theorem1_holds is False:
        print(f"counterexample: shortest reset length {report.shortest_reset_length} exceeds {report.theorem1_bound}")
        return FALSIFIED
    return OK


def cmd_syn(args) -> int:
    A = _semiautomaton(args.file)
    D = syn_recognizer(A)
    _write(args.out, serialize_aut(D))
    print(f"reset-word acceptor: {D.n} states -> {args.out}")
    return OK


def cmd_minwords(args) -> int:
    A = _semiautomaton(args.file)
    M = minimal_words_recognizer(syn_recognizer(A))
    _write(args.out, serialize_aut(M))
    print(f"minimal reset words acceptor: {M.n} states -> {args.out}")
    return OK


def cmd_factors(args) -> int:
    if (args.file is None) == (args.words is None):
        raise InputError("give exactly one of an acceptor file or --words")
    M = _generators(args.words, args.file)
    found = find_missing_factor(M, args.max_len)
    if found is None:
        print(f"no missing factor up to length {args.max_len}")
    else:
        ell, w = found
        print(f"ell_star: {ell}")
        print(f"witness: {M.alphabet.format(w)}")
    return OK


def cmd_construct(args) -> int:
    M = _generators(args.words, args.dfa)
    T = construct_tail_automaton(M)
    A = T.automaton
    s = T.setting
    size = s.k * s.m**s.k
    _write(args.out, serialize_aut(A))
    if args.dot:
        labels = [f"{q}: {describe_state(lab, A.alphabet)}" for q, lab in enumerate(T.labels)]
        _write(args.dot, export_dot(A, labels, name="tail automaton"))
    print(f"generators: minimal DFA with {s.B.n} states, shortest generator length {s.norm}")
    print(f"trace modulus m: {s.m}")
    print(f"seed word: {A.alphabet.format(s.seed_word)}")
    print(f"states: {A.n} (bound {size}*2^{size * s.B.n})")
    print(f"strongly connected: {'yes' if is_strongly_connected(A) else 'no'}")
    print(f"written: {args.out}")
    return OK


def _lifted_dot(ex: LiftedExploration, alphabet: Alphabet) -> str:
    fmt = alphabet.format
    out = ['digraph "lifted automaton" {', "  rankdir=LR;", "  node [shape=box];"]
    for i, (last, tail) in enumerate(ex.states):
        out.append(f'  {i} [label="{fmt(last)} | {fmt(tail)}"];')
    arrows: dict[tuple[int, str], list[str]] = {}
    for (i, c), j in sorted(ex.transitions.items()):
        arrows.setdefault((i, str(j)), []).append(alphabet.symbols[c])
    for (i, c) in sorted(ex.open):
        arrows.setdefault((i, f"open{i}"), []).append(alphabet.symbols[c])
    for (i, j), letters in sorted(arrows.items(), key=lambda kv: (kv[0][0], kv[0][1])):
        if j.startswith("open"):
            out.append(f'  {j} [shape=plaintext, label="..."];')
            out.append(f'  {i} -> {j} [style=dashed, label="{",".join(letters)}"];')
        else:
            out.append(f'  {i} -> {j} [label="{",".join(letters)}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def cmd_lifted(args) -> int:
    if args.depth < 0:
        raise InputError("--depth must be non-negative")
    setting = TailSetting.from_generators(_generators(args.words, None))
    ex = lifted_explore(setting, args.depth)
    alphabet = setting.alphabet
    fmt = alphabet.format
    print(f"depth {args.depth}: {len(ex.states)} states, {len(ex.open)} open transitions")
    for i, (last, tail) in enumerate(ex.states):
        print(f"state {i}: last factor {fmt(last)}, tail {fmt(tail)}, depth {ex.depth_of[i]}")
    for i in range(len(ex.states)):
        for c in range(alphabet.k):
            letter = alphabet.symbols[c]
            if (i, c) in ex.transitions:
                print(f"{i} --{letter}--> {ex.transitions[(i, c)]}")
            else:
                last, tail = ex.open[(i, c)]
                print(f"{i} --{letter}--> open ({fmt(last)}, {fmt(tail)})")
    if args.dot:
        _write(args.dot, _lifted_dot(ex, alphabet))
    return OK


def cmd_verify(args) -> int:
    A = _semiautomaton(args.file)
    B = build_B(_generators(args.words, None))
    if B.alphabet != A.alphabet:
        raise InputError("automaton and word list use different alphabets")
    if args.bound is not None:
        verdict = verify_syn_equals_ideal(A, B, bound=args.bound)
    else:
        try:
            verdict = verify_syn_equals_ideal(A, B, budget=args.budget)
        except BudgetExceeded as exc:
            if args.exact:
                raise InputError(f"exact check refused: {exc}") from None
            L = default_length(len(shortest_accepted(B)))
            print(f"exact check refused ({exc}); falling back to bounded({L})")
            verdict = verify_syn_equals_ideal(A, B, bound=L)
    print(f"strongly connected: {'yes' if is_strongly_connected(A) else 'no'}")
    if verdict.ok:
        print(f"verified [{verdict.mode}]: {verdict.detail}")
        return OK
    print(f"FALSIFIED [{verdict.mode}]: {verdict.detail}")
    print(f"counterexample: {A.alphabet.format(verdict.counterexample)}")
    return FALSIFIED


def cmd_dot(args) -> int:
    A = parse_aut(_read(args.file))
    _write(args.out, export_dot(A, name=Path(args.file).stem))
    print(f"written: {args.out}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tailsync",
        description="Reset-word ideals of synchronizing automata and the tail-structure construction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="synchronization and missing-factor report")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--max-len", type=int, default=4, help="longest missing factor searched (default 4)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("syn", help="minimal acceptor of the reset words")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_syn)

    p = sub.add_parser("minwords", help="minimal acceptor of the minimal reset words")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_minwords)

    p = sub.add_parser("factors", help="shortest missing factor of a language")
    p.add_argument("file", nargs="?")
    p.add_argument("--words")
    p.add_argument("--max-len", type=int, default=4)
    p.set_defaults(func=cmd_factors)

    p = sub.add_parser("construct", help="tail-structure automaton of a factor-free generator set")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--words")
    src.add_argument("--dfa")
    p.add_argument("--out", required=True)
    p.add_argument("--dot")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("lifted", help="bounded exploration of the lifted automaton")
    p.add_argument("--words", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--dot")
    p.set_defaults(func=cmd_lifted)

    p = sub.add_parser("verify", help="check that the reset words are the ideal of a word list")
    p.add_argument("file")
    p.add_argument("--words", required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--bound", type=int)
    p.add_argument("--budget", type=int, default=10**6, help="subset-state budget for the exact check")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dot", help="Graphviz export")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_dot)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        return args.func(args)
    except (InputError, AutomatonError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
