"""Simulation harness: per-word exhaustive runs, win curves, clique statistics,
and byte-stable CSV/JSON export."""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Union

from .clique import CliqueSolveConfig, plan_first_clique, solve_clique, _FIRST_PLAN_CACHE
from .core import GameConfig, Mode, Vocabulary
from .graph import form_graph, graph_stats, iter_k_cliques
from .greedy import FirstGuessCache, PatternTable, fingerprint_vocab, solve, warm_first_guess
from .tracker import WordleTracker


@dataclass
class SimulationReport:
    algorithm: str
    word_length: int
    vocab_size: int
    per_word: list[tuple[str, int]] = field(default_factory=list)  # index order
    average_tries: float = 0.0
    win_curve: dict[int, float] = field(default_factory=dict)  # m -> win %
    worst_words: list[tuple[str, int]] = field(default_factory=list)
    runtime_ms: int = 0


@dataclass
class CliqueReport:
    word_length: int
    vertex_count: int
    edge_count: int
    k: int
    clique_count: int
    elapsed_ms: int
    complete: bool


def run_best_first(vocab: Vocabulary, mode: Mode = Mode.EASY,
                   cache: Optional[FirstGuessCache] = None) -> str:
    return warm_first_guess(vocab, mode, cache)


def _solve_one_greedy(vocab, hidden, mode, cache, table) -> int:
    t = solve(vocab, hidden, GameConfig(vocab.word_length, mode=mode), cache, table)
    return t.outcome.num_moves


def _solve_one_clique(vocab, hidden, cfg) -> int:
    t = solve_clique(vocab, hidden, cfg)
    return t.outcome.num_moves


_WCTX: dict = {}


def _sim_worker_init(texts, word_length, algorithm, mode_value, strict, first_plan):
    vocab = Vocabulary(texts, word_length)
    _WCTX["vocab"] = vocab
    _WCTX["algorithm"] = algorithm
    if algorithm == "greedy":
        _WCTX["mode"] = Mode(mode_value)
        _WCTX["cache"] = FirstGuessCache()
        _WCTX["table"] = PatternTable.for_vocab(vocab)
    else:
        cfg = CliqueSolveConfig.for_vocab(vocab, strict_vocab_anagrams=strict)
        _WCTX["cfg"] = cfg
        if first_plan is not None:
            key = (fingerprint_vocab(vocab), cfg.alphabet_size, cfg.word_length,
                   cfg.min_clique_size)
            _FIRST_PLAN_CACHE[key] = tuple(first_plan)


def _sim_worker_run(index: int) -> tuple[int, int]:
    vocab = _WCTX["vocab"]
    hidden = vocab[index]
    if _WCTX["algorithm"] == "greedy":
        n = _solve_one_greedy(vocab, hidden, _WCTX["mode"], _WCTX["cache"], _WCTX["table"])
    else:
        n = _solve_one_clique(vocab, hidden, _WCTX["cfg"])
    return index, n


def run_full_simulation(vocab: Vocabulary, algorithm: str,
                        max_m: Optional[int] = None,
                        mode: Mode = Mode.EASY,
                        strict_vocab_anagrams: bool = False,
                        workers: int = 1) -> SimulationReport:
    """Solve every vocabulary word as the hidden word and aggregate the counts.

    Games run unbounded; the win curve reads off how many would have finished
    within each try budget m. Worker results merge in word-index order, so the
    report is identical at any worker count.
    """
    if algorithm not in ("greedy", "clique"):
        raise ValueError(f"unknown algorithm {algorithm!r}")
    t0 = time.monotonic()
    counts: list[Optional[int]] = [None] * len(vocab)
    if workers > 1:
        first_plan = None
        if algorithm == "clique":
            first_plan = plan_first_clique(
                vocab, CliqueSolveConfig.for_vocab(vocab, strict_vocab_anagrams))
        with ProcessPoolExecutor(
                max_workers=workers, initializer=_sim_worker_init,
                initargs=(vocab.texts(), vocab.word_length, algorithm, mode.value,
                          strict_vocab_anagrams, first_plan)) as pool:
            for index, n in pool.map(_sim_worker_run, range(len(vocab)), chunksize=64):
                counts[index] = n
    else:
        if algorithm == "greedy":
            cache = FirstGuessCache()
            table = PatternTable.for_vocab(vocab)
            for w in vocab.words:
                counts[w.index] = _solve_one_greedy(vocab, w, mode, cache, table)
        else:
            cfg = CliqueSolveConfig.for_vocab(vocab, strict_vocab_anagrams)
            for w in vocab.words:
                counts[w.index] = _solve_one_clique(vocab, w, cfg)
    per_word = [(vocab[i].text, counts[i]) for i in range(len(vocab))]
    worst = max(counts)
    top = max_m if max_m is not None else worst
    n = len(counts)
    win_curve = {m: 100.0 * sum(1 for c in counts if c <= m) / n
                 for m in range(1, top + 1)}
    return SimulationReport(
        algorithm=algorithm,
        word_length=vocab.word_length,
        vocab_size=n,
        per_word=per_word,
        average_tries=sum(counts) / n,
        win_curve=win_curve,
        worst_words=[(w, c) for w, c in per_word if c == worst],
        runtime_ms=int((time.monotonic() - t0) * 1000),
    )


def run_clique_stats(vocab: Vocabulary, k_min: int, k_max: int,
                     budget_secs: float = 60.0) -> list[CliqueReport]:
    """Count k-cliques of the fresh-vocabulary graph, one report per k."""
    tracker = WordleTracker(vocab)
    g = form_graph(tracker)
    s = graph_stats(g)
    out = []
    for k in range(k_min, k_max + 1):
        t0 = time.monotonic()
        # count without materializing: large graphs hold millions of cliques
        count, complete = 0, True
        try:
            for _ in iter_k_cliques(g, k, deadline=t0 + budget_secs):
                count += 1
        except TimeoutError:
            complete = False
        out.append(CliqueReport(
            word_length=vocab.word_length,
            vertex_count=s.total_vertices,
            edge_count=s.edge_count,
            k=k,
            clique_count=count,
            elapsed_ms=int((time.monotonic() - t0) * 1000),
            complete=complete,
        ))
    return out


def run_size_sweep(vocab: Vocabulary, sizes: list[int], k: int,
                   budget_secs: float = 60.0) -> list[CliqueReport]:
    """Clique search over growing prefixes of one vocabulary (timing trend data)."""
    out = []
    for size in sizes:
        sub = Vocabulary(vocab.texts()[:size], vocab.word_length, vocab.alphabet)
        out.extend(run_clique_stats(sub, k, k, budget_secs))
    return out


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _simulation_csv(report: SimulationReport) -> str:
    lines = ["word,tries"]
    for word, tries in report.per_word:
        lines.append(f"{word},{tries}")
    lines.append("")
    lines.append("m,win_pct")
    for m in sorted(report.win_curve):
        lines.append(f"{m},{_fmt(report.win_curve[m])}")
    if report.per_word:
        lines.append("")
        lines.append(f"average_tries,{_fmt(report.average_tries)}")
        lines.append(f"runtime_ms,{report.runtime_ms}")
    return "\n".join(lines) + "\n"


def _simulation_json(report: SimulationReport) -> str:
    doc = {
        "algorithm": report.algorithm,
        "word_length": report.word_length,
        "vocab_size": report.vocab_size,
        "average_tries": round(report.average_tries, 2),
        "win_curve": {str(m): round(p, 2) for m, p in sorted(report.win_curve.items())},
        "per_word": [[w, c] for w, c in report.per_word],
        "worst_words": [[w, c] for w, c in report.worst_words],
        "runtime_ms": report.runtime_ms,
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _clique_csv(reports: list[CliqueReport]) -> str:
    lines = ["word_length,vertices,edges,k,clique_count,elapsed_ms,complete"]
    for r in reports:
        lines.append(f"{r.word_length},{r.vertex_count},{r.edge_count},{r.k},"
                     f"{r.clique_count},{r.elapsed_ms},{str(r.complete).lower()}")
    return "\n".join(lines) + "\n"


def _clique_json(reports: list[CliqueReport]) -> str:
    doc = [
        {"word_length": r.word_length, "vertices": r.vertex_count,
         "edges": r.edge_count, "k": r.k, "clique_count": r.clique_count,
         "elapsed_ms": r.elapsed_ms, "complete": r.complete}
        for r in reports
    ]
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def render_report(report: Union[SimulationReport, list[CliqueReport]],
                  format: str) -> str:
    if format not in ("csv", "json"):
        raise ValueError(f"unknown format {format!r}")
    if isinstance(report, SimulationReport):
        return _simulation_csv(report) if format == "csv" else _simulation_json(report)
    return _clique_csv(report) if format == "csv" else _clique_json(report)


def export_report(report: Union[SimulationReport, list[CliqueReport]],
                  format: str, path) -> None:
    text = render_report(report, format)
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except OSError as e:
        raise OSError(f"cannot write report to {path}: {e}") from e
