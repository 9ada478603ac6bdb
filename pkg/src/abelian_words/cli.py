"""Command-line entry point.

Exit codes: 0 success, 1 a check failed (verify, lemmas, --oracle mismatch),
2 bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .complexity import complexity_profile, oracle_abelian_count
from .search import SearchConfig, search, verify_candidate
from .structure import (
    MultipleCyclesError,
    NoCycleError,
    Verdict,
    build_factor_graph,
    check_degree_lemmas,
    check_lemma_one,
    check_lemma_two,
    triple_map,
    unique_cycle,
)
from .words import format_word_file, generate_prefix, parse_generator, read_word

GEN_HELP = """\
parameter grammar per kind:
  morphic   "1>12,2>1;seed=1"   letter>image rules, comma separated; seed defaults to the first rule
  periodic  "123"               the repeated block
  literal   "1234;pad=4"        the word, optionally continued by repeating the pad letter
  standard  "1,2"               continued-fraction partial quotients, repeated cyclically ("1" = Fibonacci)
"""


class InputError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="ascii", newline="\n")
    else:
        sys.stdout.write(text)


def _load(path: str):
    try:
        return read_word(path)
    except (OSError, ValueError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read word from {path}: {exc}") from exc


def cmd_gen(args) -> int:
    try:
        spec = parse_generator(args.kind, args.params)
        w = generate_prefix(spec, args.length)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _emit(format_word_file(w), args.out)
    return 0


def cmd_complexity(args) -> int:
    w = _load(args.inp)
    if not 1 <= args.max_m <= len(w):
        raise InputError(f"--max-m must be in [1, {len(w)}]")
    prof = complexity_profile(w, args.max_m)
    if args.format == "csv":
        text = prof.to_csv()
    else:
        text = json.dumps(prof.to_json_obj(), indent=2) + "\n"
    _emit(text, args.out)
    if args.oracle:
        bad = [
            m for m in range(1, args.max_m + 1)
            if oracle_abelian_count(w, m) != prof.f_abelian[m - 1]
        ]
        if bad:
            print(f"oracle mismatch at m={bad}", file=sys.stderr)
            return 1
    return 0


def cmd_graph(args) -> int:
    w = _load(args.inp)
    if len(w) < 2:
        raise InputError("factor graph needs a word of length >= 2")
    _emit(build_factor_graph(w).to_dot(), args.dot)
    return 0


def cmd_triples(args) -> int:
    w = _load(args.inp)
    if len(w) < 3:
        raise InputError("triples need a word of length >= 3")
    _emit(json.dumps(triple_map(w).to_json_obj(), indent=2) + "\n", args.out)
    return 0


def cmd_lemmas(args) -> int:
    w = _load(args.inp)
    if len(w) < 3:
        raise InputError("lemma checks need a word of length >= 3")
    try:
        one = check_lemma_one(w, args.n)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    g = build_factor_graph(w)
    try:
        c = unique_cycle(g)
        cycle = f"{c.kind} " + "".join(w.alphabet.label(v) for v in c.vertices)
    except (NoCycleError, MultipleCyclesError) as exc:
        cycle = type(exc).__name__
    results = [
        ("lemma1", one),
        ("lemma2", check_lemma_two(w)),
        ("lemma3+4", check_degree_lemmas(w)),
    ]
    for name, d in results:
        print(f"{name}: {d.summary()}")
    print(f"cycle: {cycle}")
    return 1 if any(d.verdict is Verdict.FAIL for _, d in results) else 0


def _config(args, max_depth: int) -> SearchConfig:
    try:
        return SearchConfig(
            n=args.n,
            max_depth=max_depth,
            r=args.r,
            gap=args.gap,
            deadline=args.deadline,
            letters_by=args.letters_by,
            parallel_shards=getattr(args, "shards", 1),
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cmd_search(args) -> int:
    report = search(_config(args, args.depth))
    _emit(report.to_json(), args.out)
    return 0


def cmd_verify(args) -> int:
    w = _load(args.inp)
    cfg = _config(args, max(len(w), args.r))
    d = verify_candidate(w, cfg)
    print(d.summary())
    return 0 if d.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abelian-words",
        description="Subword/abelian complexity, factor graphs and constant-complexity word search.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a prefix of a generated word",
                       epilog=GEN_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--kind", required=True, choices=["morphic", "periodic", "literal", "standard"])
    p.add_argument("--params", default="")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("complexity", help="subword and abelian complexity profile")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--max-m", type=int, required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    p.add_argument("--out")
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("graph", help="factor graph in DOT format")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--dot")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("triples", help="triple sets keyed by middle letter")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--format", choices=["json"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_triples)

    p = sub.add_parser("lemmas", help="run the structural lemma checks")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_lemmas)

    for name in ("search", "verify"):
        p = sub.add_parser(name, help="pruned search" if name == "search" else "check a word against the search rules")
        if name == "search":
            p.add_argument("--depth", type=int, required=True)
            p.add_argument("--shards", type=int, default=1)
            p.add_argument("--out")
            p.set_defaults(func=cmd_search)
        else:
            p.add_argument("--in", dest="inp", required=True)
            p.set_defaults(func=cmd_verify)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--r", type=int, required=True)
        p.add_argument("--gap", type=int, required=True, help="W, largest allowed occurrence gap")
        p.add_argument("--deadline", type=int, help="D, default 2n")
        p.add_argument("--letters-by", type=int, help="B, default 5n")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


run = main

if __name__ == "__main__":
    sys.exit(main())
