"""Letter-disjointness graph over non-discarded words, plus k-clique search.

Hard regime: an edge means the two words share zero unseen letters. Soft
regime: exactly one. Adjacency is kept as one bitset int per vertex so the
backtracking intersection is a single AND.
"""

from __future__ import annotations

import enum
import json
import time
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

import numpy as np

from .core import ContractViolation, Vocabulary
from .tracker import WordleTracker


class GraphRegime(enum.Enum):
    HARD = 0  # allowed common unseen letters
    SOFT = 1


@dataclass(frozen=True)
class Clique:
    members: tuple[int, ...]

    def __post_init__(self):
        if len(self.members) < 2:
            raise ContractViolation("a clique has at least 2 members")
        if any(a >= b for a, b in zip(self.members, self.members[1:])):
            raise ContractViolation("clique members must be strictly increasing")

    @property
    def size(self) -> int:
        return len(self.members)


class WordGraph:
    def __init__(self, vocab: Vocabulary, adj_bits: list[int], regime: GraphRegime,
                 active_bits: int):
        self.vocab = vocab
        self.adj_bits = adj_bits
        self.regime = regime
        self.active_bits = active_bits
        self.edge_exists = any(b for b in adj_bits)

    @property
    def n(self) -> int:
        return len(self.adj_bits)

    def neighbors(self, i: int) -> list[int]:
        return _bits_to_list(self.adj_bits[i])

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.adj_bits[i] >> j) & 1)

    def edge_count(self) -> int:
        return sum(b.bit_count() for b in self.adj_bits) // 2


def _bits_to_list(bits: int) -> list[int]:
    out = []
    while bits:
        v = (bits & -bits).bit_length() - 1
        out.append(v)
        bits &= bits - 1
    return out


def _pack_row(row: np.ndarray) -> int:
    return int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")


def form_graph_helper(tracker: WordleTracker, regime: GraphRegime,
                      progress: Optional[Callable[[int, int], None]] = None) -> WordGraph:
    """Edge iff two non-discarded words share exactly `regime.value` unseen letters."""
    vocab = tracker.vocab
    n = len(vocab)
    active = [i for i in range(n) if i not in tracker.discarded_words]
    masks = np.array([vocab[i].letter_mask for i in active], dtype=np.int64)
    unseen = np.int64(tracker.unseen_mask())
    allowed = regime.value
    adj = [0] * n
    row_full = np.zeros(n, dtype=bool)
    act_arr = np.array(active, dtype=np.int64)
    for pos, i in enumerate(active):
        common = masks & (masks[pos] & unseen)
        hits = np.bitwise_count(common.astype(np.uint64)) == allowed
        hits[pos] = False  # no self loop
        row_full[:] = False
        row_full[act_arr[hits]] = True
        adj[i] = _pack_row(row_full)
        if progress is not None:
            progress(pos + 1, len(active))
    active_bits = 0
    for i in active:
        active_bits |= 1 << i
    return WordGraph(vocab, adj, regime, active_bits)


def form_graph(tracker: WordleTracker,
               progress: Optional[Callable[[int, int], None]] = None) -> WordGraph:
    """Hard graph when it has any edge, otherwise the soft graph."""
    g = form_graph_helper(tracker, GraphRegime.HARD, progress)
    if g.edge_exists:
        return g
    return form_graph_helper(tracker, GraphRegime.SOFT, progress)


def iter_k_cliques(g: WordGraph, k: int,
                   deadline: Optional[float] = None) -> Iterator[tuple[int, ...]]:
    """All k-cliques as strictly increasing index tuples, in lexicographic order.

    Candidates for extension are vertices adjacent to every current member
    with index above the last member, so each clique is emitted exactly once.
    Raises TimeoutError past the deadline (monotonic seconds).
    """
    if k < 2:
        raise ContractViolation("k must be at least 2")
    adj = g.adj_bits
    checked = 0

    def bt(cur: list[int], cand: int) -> Iterator[tuple[int, ...]]:
        nonlocal checked
        if len(cur) == k:
            yield tuple(cur)
            return
        if len(cur) + cand.bit_count() < k:
            return
        c = cand
        while c:
            v = (c & -c).bit_length() - 1
            c &= c - 1  # c now holds exactly the candidates above v
            checked += 1
            if deadline is not None and checked % 2048 == 0 and time.monotonic() > deadline:
                raise TimeoutError("clique search budget exhausted")
            cur.append(v)
            yield from bt(cur, c & adj[v])
            cur.pop()

    yield from bt([], g.active_bits)


def find_k_cliques(g: WordGraph, k: int) -> list[Clique]:
    return [Clique(t) for t in iter_k_cliques(g, k)]


def find_k_cliques_budgeted(g: WordGraph, k: int,
                            budget_secs: float) -> tuple[list[Clique], bool]:
    """Enumerate under a time budget; partial results come back flagged incomplete."""
    deadline = time.monotonic() + budget_secs
    out: list[Clique] = []
    try:
        for t in iter_k_cliques(g, k, deadline=deadline):
            out.append(Clique(t))
    except TimeoutError:
        return out, False
    return out, True


@dataclass(frozen=True)
class GraphStats:
    total_vertices: int
    active_vertices: int
    edge_count: int


def graph_stats(g: WordGraph) -> GraphStats:
    return GraphStats(g.n, g.active_bits.bit_count(), g.edge_count())


def to_dot(g: WordGraph, name: str = "words") -> str:
    lines = [f"graph {name} {{"]
    texts = g.vocab.texts()
    seen_any = set()
    for i in range(g.n):
        bits = g.adj_bits[i]
        for j in _bits_to_list(bits):
            if j > i:
                lines.append(f'  "{texts[i]}" -- "{texts[j]}";')
        if bits:
            seen_any.add(i)
    for i in _bits_to_list(g.active_bits):
        if i not in seen_any:
            lines.append(f'  "{texts[i]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cliques_to_json(g: WordGraph, cliques: list[Clique]) -> str:
    texts = g.vocab.texts()
    return json.dumps([[texts[i] for i in c.members] for c in cliques])
