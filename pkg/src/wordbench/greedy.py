"""Minimax-greedy solver: pick the guess whose worst pattern bucket is smallest.

Candidate guesses and candidate hidden words both range over the current
active (pruned) set, in both modes. A guess drawn from the active set always
honors accumulated greens and yellows, so hard mode needs no extra logic.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import (
    Board,
    ContractViolation,
    GameConfig,
    GameOutcome,
    Mode,
    Pattern,
    Vocabulary,
    Word,
    get_pattern,
    play_move,
)

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def fingerprint_vocab(vocab: Vocabulary) -> str:
    """64-bit FNV-1a over the sorted word list, as 16 hex digits."""
    h = _FNV_OFFSET
    for b in "\n".join(vocab.texts()).encode("utf-8"):
        h ^= b
        h = (h * _FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return f"{h:016x}"


class PatternTable:
    """Vectorized pattern codes for one vocabulary.

    Row computation only; nothing n-squared is materialized up front.
    """

    _by_vocab: "weakref.WeakKeyDictionary[Vocabulary, PatternTable]" = weakref.WeakKeyDictionary()

    def __init__(self, vocab: Vocabulary):
        self.vocab = vocab
        l = vocab.word_length
        n = len(vocab)
        alpha = vocab.alphabet
        if alpha.size > 62:
            raise ContractViolation("alphabet too large for mask arithmetic")
        self.letters = np.empty((n, l), dtype=np.int8)
        for i, w in enumerate(vocab.words):
            for j, ch in enumerate(w.text):
                self.letters[i, j] = alpha.index(ch)
        self.masks = np.array([w.letter_mask for w in vocab.words], dtype=np.int64)
        self.pow3 = (3 ** np.arange(l, dtype=np.int64))
        self.num_codes = 3**l

    @classmethod
    def for_vocab(cls, vocab: Vocabulary) -> "PatternTable":
        t = cls._by_vocab.get(vocab)
        if t is None:
            t = cls(vocab)
            cls._by_vocab[vocab] = t
        return t

    def codes(self, guess_index: int, hidden_indices: np.ndarray) -> np.ndarray:
        """Pattern codes of one guess against many hidden candidates."""
        g = self.letters[guess_index]
        H = self.letters[hidden_indices]
        present = (self.masks[hidden_indices, None] & (np.int64(1) << g.astype(np.int64))) != 0
        green = H == g
        # gray=0, yellow=1, green=2: green letters are also present
        v = present.astype(np.int64) + green
        return v @ self.pow3

    def worst_buckets(self, guess_indices: np.ndarray, hidden_indices: np.ndarray) -> np.ndarray:
        """Largest pattern-bucket size per candidate guess, vectorized in chunks."""
        H = self.letters[hidden_indices]
        hm = self.masks[hidden_indices]
        m = len(hidden_indices)
        out = np.empty(len(guess_indices), dtype=np.int64)
        # chunk so the (chunk, m, l) intermediates stay modest
        chunk = max(1, min(256, 40_000_000 // max(1, m * self.vocab.word_length)))
        for s in range(0, len(guess_indices), chunk):
            gi = guess_indices[s:s + chunk]
            G = self.letters[gi]
            present = (hm[None, :, None] & (np.int64(1) << G[:, None, :].astype(np.int64))) != 0
            green = H[None, :, :] == G[:, None, :]
            codes = (present.astype(np.int64) + green) @ self.pow3
            offset = codes + (np.arange(len(gi), dtype=np.int64) * self.num_codes)[:, None]
            counts = np.bincount(offset.ravel(), minlength=len(gi) * self.num_codes)
            out[s:s + len(gi)] = counts.reshape(len(gi), self.num_codes).max(axis=1)
        return out


@dataclass
class GreedyState:
    vocab: Vocabulary
    active: set[int]
    mode: Mode = Mode.EASY


@dataclass(frozen=True)
class GuessEvaluation:
    guess_index: int
    worst_bucket: int


@dataclass(frozen=True)
class TranscriptRow:
    guess: str
    pattern: Pattern
    phase: str = "greedy"
    legal_word: bool = True


@dataclass
class Transcript:
    rows: list[TranscriptRow] = field(default_factory=list)
    outcome: Optional[GameOutcome] = None

    def guesses(self) -> list[str]:
        return [r.guess for r in self.rows]

    def to_json_rows(self) -> list[dict]:
        return [
            {"guess": r.guess, "pattern": r.pattern.to_text(),
             "phase": r.phase, "legal_word": r.legal_word}
            for r in self.rows
        ]


def choose_guess(state: GreedyState, table: Optional[PatternTable] = None) -> GuessEvaluation:
    """The active word whose worst-case pattern bucket is smallest.

    Ties break to the lowest word index. With two or fewer candidates the
    lowest-index one is returned outright; every bucket has size 1 there.
    """
    if not state.active:
        raise ContractViolation("empty active set")
    active = sorted(state.active)
    if len(active) <= 2:
        return GuessEvaluation(active[0], 1)
    if table is None:
        table = PatternTable.for_vocab(state.vocab)
    arr = np.array(active, dtype=np.int64)
    worsts = table.worst_buckets(arr, arr)
    k = int(np.argmin(worsts))  # argmin takes the first minimum: lowest index
    return GuessEvaluation(active[k], int(worsts[k]))


class FirstGuessCache:
    """Best-first-word memo keyed by (vocabulary fingerprint, length, mode).

    Persists as one `fingerprint,length,mode,word` line per entry.
    """

    def __init__(self, path=None):
        self._map: dict[tuple[str, int, str], str] = {}
        self.path = path
        if path is not None:
            try:
                with open(path, "r", encoding="utf-8") as f:
                    for line in f:
                        parts = line.strip().split(",")
                        if len(parts) == 4:
                            fp, length, mode, word = parts
                            self._map[(fp, int(length), mode)] = word
            except FileNotFoundError:
                pass

    def get(self, vocab: Vocabulary, mode: Mode) -> Optional[str]:
        return self._map.get((fingerprint_vocab(vocab), vocab.word_length, mode.value))

    def put(self, vocab: Vocabulary, mode: Mode, word: str) -> None:
        self._map[(fingerprint_vocab(vocab), vocab.word_length, mode.value)] = word

    def save(self, path=None) -> None:
        target = path or self.path
        if target is None:
            raise ContractViolation("no cache path configured")
        lines = [f"{fp},{length},{mode},{word}"
                 for (fp, length, mode), word in sorted(self._map.items())]
        with open(target, "w", encoding="utf-8") as f:
            f.write("\n".join(lines) + ("\n" if lines else ""))

    def __len__(self) -> int:
        return len(self._map)


def warm_first_guess(vocab: Vocabulary, mode: Mode = Mode.EASY,
                     cache: Optional[FirstGuessCache] = None,
                     table: Optional[PatternTable] = None) -> str:
    """Compute (or fetch) the opening word for the untrimmed vocabulary."""
    if cache is not None:
        hit = cache.get(vocab, mode)
        if hit is not None:
            return hit
    state = GreedyState(vocab, set(range(len(vocab))), mode)
    word = vocab[choose_guess(state, table).guess_index].text
    if cache is not None:
        cache.put(vocab, mode, word)
    return word


def solve(vocab: Vocabulary, hidden: Word, config: GameConfig,
          cache: Optional[FirstGuessCache] = None,
          table: Optional[PatternTable] = None) -> Transcript:
    """Play one full game: choose, guess, trim, repeat."""
    if hidden.text not in vocab:
        raise ContractViolation(f"hidden word {hidden.text!r} not in vocabulary")
    if table is None:
        table = PatternTable.for_vocab(vocab)
    board = Board(max_rows=config.max_tries)
    state = GreedyState(vocab, set(range(len(vocab))), config.mode)
    transcript = Transcript()
    first = True
    while True:
        if first and cache is not None and len(state.active) == len(vocab):
            guess_text = warm_first_guess(vocab, config.mode, cache, table)
            guess_index = vocab.lookup(guess_text).index
        else:
            guess_index = choose_guess(state, table).guess_index
            guess_text = vocab[guess_index].text
        first = False
        board, pattern, outcome = play_move(board, guess_text, hidden, config, vocab)
        transcript.rows.append(TranscriptRow(guess_text, pattern))
        if outcome is not None:
            transcript.outcome = outcome
            return transcript
        code = pattern.code
        arr = np.array(sorted(state.active), dtype=np.int64)
        keep = arr[table.codes(guess_index, arr) == code]
        state.active = set(int(i) for i in keep)
        if not state.active:
            raise ContractViolation("active set emptied; hidden not in vocabulary?")
