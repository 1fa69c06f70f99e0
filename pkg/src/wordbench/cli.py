"""Command line front end.

Exit codes: 0 success, 1 usage error, 2 data error (unreadable vocabulary,
hidden word not in the list, unwritable output path).
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from .clique import CliqueSolveConfig, solve_clique
from .core import (
    ContractViolation,
    GameConfig,
    Mode,
    Vocabulary,
    VocabularyError,
    load_vocabulary_file,
)
from .experiments import (
    export_report,
    render_report,
    run_best_first,
    run_clique_stats,
    run_full_simulation,
)
from .graph import form_graph, to_dot
from .greedy import solve
from .tracker import WordleTracker


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse wants exit code 2 for bad flags; here that slot means bad data
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _load_vocab(path: str, length: Optional[int]) -> Vocabulary:
    if length is None:
        length = _sniff_length(path)
    try:
        return load_vocabulary_file(path, length)
    except OSError as e:
        raise DataError(f"cannot read vocabulary {path}: {e}")
    except VocabularyError as e:
        raise DataError(f"bad vocabulary {path}: {e}")


def _sniff_length(path: str) -> int:
    try:
        with open(path, "r", encoding="utf-8", errors="replace") as f:
            for line in f:
                word = line.strip().lower()
                if word and not word.startswith("#"):
                    return len(word)
    except OSError as e:
        raise DataError(f"cannot read vocabulary {path}: {e}")
    raise DataError(f"no words in vocabulary {path}")


def _resolve_hidden(vocab: Vocabulary, text: str):
    w = vocab.lookup(text.lower())
    if w is None:
        raise DataError(f"hidden word {text!r} is not in the vocabulary")
    return w


def _print_transcript(t) -> None:
    for row in t.rows:
        mark = "" if row.legal_word else " (free)"
        print(f"{row.guess} {row.pattern.to_text()} {row.phase}{mark}")
    print(f"solved in {t.outcome.num_moves} tries")


def _cmd_solve_greedy(args) -> int:
    vocab = _load_vocab(args.vocab, args.length)
    hidden = _resolve_hidden(vocab, args.hidden)
    cfg = GameConfig(vocab.word_length, max_tries=args.max_tries, mode=Mode(args.mode))
    t = solve(vocab, hidden, cfg)
    if t.outcome.is_solved:
        _print_transcript(t)
        return 0
    for row in t.rows:
        print(f"{row.guess} {row.pattern.to_text()} {row.phase}")
    print(f"unsolved after {len(t.rows)} tries")
    return 0


def _cmd_solve_clique(args) -> int:
    vocab = _load_vocab(args.vocab, args.length)
    hidden = _resolve_hidden(vocab, args.hidden)
    cfg = CliqueSolveConfig.for_vocab(vocab, strict_vocab_anagrams=args.strict_vocab_anagrams)
    t = solve_clique(vocab, hidden, cfg)
    _print_transcript(t)
    return 0


def _cmd_simulate(args) -> int:
    vocab = _load_vocab(args.vocab, args.length)
    rep = run_full_simulation(vocab, args.algo, max_m=args.max_m, workers=args.workers)
    fmt = "json" if args.out.endswith(".json") else "csv"
    try:
        export_report(rep, fmt, args.out)
    except OSError as e:
        raise DataError(str(e))
    print(f"algorithm={rep.algorithm} words={rep.vocab_size} "
          f"average_tries={rep.average_tries:.2f} "
          f"worst={max(c for _, c in rep.per_word)} runtime_ms={rep.runtime_ms}")
    print(f"wrote {args.out}")
    return 0


def _cmd_best_first(args) -> int:
    vocab = _load_vocab(args.vocab, args.length)
    print(run_best_first(vocab, Mode(args.mode)))
    return 0


def _cmd_clique_stats(args) -> int:
    vocab = _load_vocab(args.vocab, args.length)
    if args.k_max < args.k_min:
        raise DataError("k-max must be >= k-min")
    reports = run_clique_stats(vocab, args.k_min, args.k_max, args.budget_secs)
    sys.stdout.write(render_report(reports, "csv"))
    if args.dot:
        g = form_graph(WordleTracker(vocab))
        try:
            with open(args.dot, "w", encoding="utf-8") as f:
                f.write(to_dot(g))
        except OSError as e:
            raise DataError(f"cannot write {args.dot}: {e}")
        print(f"wrote {args.dot}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(vocab_dir=args.vocab_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="wordbench", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def vocab_flags(p):
        p.add_argument("--vocab", required=True, help="word list file, one word per line")
        p.add_argument("--length", type=int, default=None,
                       help="word length (default: length of the first word)")

    p = sub.add_parser("solve-greedy", parents=[], help="play one game with the partition solver")
    vocab_flags(p)
    p.add_argument("--hidden", required=True)
    p.add_argument("--max-tries", type=int, default=None)
    p.add_argument("--mode", choices=["easy", "hard"], default="easy")
    p.set_defaults(func=_cmd_solve_greedy)

    p = sub.add_parser("solve-clique", help="play one game with the clique solver")
    vocab_flags(p)
    p.add_argument("--hidden", required=True)
    p.add_argument("--strict-vocab-anagrams", action="store_true")
    p.set_defaults(func=_cmd_solve_clique)

    p = sub.add_parser("simulate", help="run every word as the hidden word, export a report")
    vocab_flags(p)
    p.add_argument("--algo", choices=["greedy", "clique"], required=True)
    p.add_argument("--max-m", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True, help=".csv or .json path")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("best-first", help="print the opening word for a vocabulary")
    vocab_flags(p)
    p.add_argument("--mode", choices=["easy", "hard"], default="easy")
    p.set_defaults(func=_cmd_best_first)

    p = sub.add_parser("clique-stats", help="count k-cliques of the fresh word graph")
    vocab_flags(p)
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=3)
    p.add_argument("--budget-secs", type=float, default=60.0)
    p.add_argument("--dot", default=None, help="also write the graph in DOT form")
    p.set_defaults(func=_cmd_clique_stats)

    p = sub.add_parser("serve", help="run the assistant HTTP service")
    p.add_argument("--vocab-dir", default=None,
                   help="directory of word list files (default: bundled lists)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)
    return top


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # our error() override exits 1; -h exits 0
        return int(e.code or 0)
    try:
        return args.func(args)
    except DataError as e:
        print(f"wordbench: {e}", file=sys.stderr)
        return 2
    except ContractViolation as e:
        print(f"wordbench: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
