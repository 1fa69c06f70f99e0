"""Clique-driven player: spend unseen letters on pairwise-disjoint word groups,
then pin down the arrangement.

The outer loop keeps guessing whole cliques until every hidden-word letter is
found, then switches to anagram checking; if the graph runs out of edges or
cliques first, it falls back to guessing remaining words one by one. Easy mode
only: clique members ignore accumulated greens and yellows by design.
"""

from __future__ import annotations

import copy as _copy
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .core import ContractViolation, GameOutcome, Pattern, Vocabulary, Word, get_pattern
from .graph import GraphRegime, WordGraph, form_graph, iter_k_cliques
from .greedy import Transcript, TranscriptRow, fingerprint_vocab
from .tracker import WordleTracker

PHASE_CLIQUE = "clique"
PHASE_ANAGRAM = "anagram"
PHASE_REMAINING = "remaining"


@dataclass(frozen=True)
class CliqueSolveConfig:
    word_length: int
    alphabet_size: int = 26
    min_clique_size: int = 2
    strict_vocab_anagrams: bool = False

    @property
    def max_clique_size_start(self) -> int:
        return self.alphabet_size // self.word_length

    @classmethod
    def for_vocab(cls, vocab: Vocabulary, strict_vocab_anagrams: bool = False) -> "CliqueSolveConfig":
        return cls(vocab.word_length, vocab.alphabet.size,
                   strict_vocab_anagrams=strict_vocab_anagrams)


def coverage_upper_bound(k: int, word_length: int, regime: GraphRegime,
                         unseen_count: int) -> int:
    """Most unseen letters any k-clique can cover in this regime.

    Hard cliques are pairwise disjoint on unseen letters, so k*l. Soft cliques
    share exactly one unseen letter per pair; the union is largest when every
    pair shares the same letter, giving k*(l-1)+1.
    """
    if regime is GraphRegime.HARD:
        cap = k * word_length
    else:
        cap = k * (word_length - 1) + 1
    return min(cap, unseen_count)


def clique_coverage(members: Iterable[int], vocab: Vocabulary, unseen_mask: int) -> int:
    u = 0
    for i in members:
        u |= vocab[i].letter_mask
    return (u & unseen_mask).bit_count()


def select_best_clique(candidates: Iterator[tuple[int, ...]], vocab: Vocabulary,
                       unseen_mask: int, upper_bound: Optional[int] = None
                       ) -> Optional[tuple[int, ...]]:
    """Max unseen-letter coverage; first seen wins ties.

    Feeding lexicographically ordered candidates makes the tie-break "smallest
    member tuple". Once the coverage upper bound is reached no later clique
    can beat the incumbent, so the scan stops early.
    """
    best, best_cov = None, -1
    for members in candidates:
        cov = clique_coverage(members, vocab, unseen_mask)
        if cov > best_cov:
            best, best_cov = members, cov
            if upper_bound is not None and best_cov >= upper_bound:
                break
    return best


class AnagramPlanner:
    """Pin greens, rotate the rest, and eliminate slots a letter has failed.

    Starts from the known green positions with the unpinned letters laid into
    the open slots in sorted order. Each round pins any new greens, deduces a
    letter's slot once it has failed all but one, then rotates the still-loose
    letters right by one. Finishes within word-length extra guesses.
    """

    def __init__(self, letters: set[str], length: int, pinned: dict[int, str]):
        if len(letters) != length:
            raise ContractViolation("anagram phase needs all letters found")
        self.length = length
        self.letters = set(letters)
        self.pinned: dict[int, str] = dict(pinned)
        self.failed: dict[str, set[int]] = {c: set() for c in sorted(letters)}
        self.cycle: list[str] = [c for c in sorted(letters) if c not in self.pinned.values()]
        self._deduce()

    def _open_slots(self) -> list[int]:
        return [p for p in range(self.length) if p not in self.pinned]

    def peek(self) -> str:
        arr = [""] * self.length
        for p, c in self.pinned.items():
            arr[p] = c
        for p, c in zip(self._open_slots(), self.cycle):
            arr[p] = c
        return "".join(arr)

    @property
    def solved_layout(self) -> bool:
        return len(self.pinned) == self.length

    def observe(self, guess_text: str, pattern: Pattern) -> None:
        from .core import Color

        for p, color in enumerate(pattern.colors):
            ch = guess_text[p]
            if ch not in self.letters:
                continue
            if color is Color.GREEN:
                if self.pinned.get(p, ch) != ch:
                    raise ContractViolation(f"slot {p} already pinned to {self.pinned[p]!r}")
                self.pinned[p] = ch
            elif p not in self.pinned:
                self.failed.setdefault(ch, set()).add(p)
        self._deduce()
        self.cycle = [c for c in self.cycle if c not in self.pinned.values()]
        if self.cycle:
            self.cycle = self.cycle[-1:] + self.cycle[:-1]

    def _deduce(self) -> None:
        # a letter that has failed every open slot but one must sit there
        changed = True
        while changed:
            changed = False
            opens = self._open_slots()
            for ch in sorted(self.letters):
                if ch in self.pinned.values():
                    continue
                cand = [p for p in opens if p not in self.failed.get(ch, ())]
                if len(cand) == 1:
                    self.pinned[cand[0]] = ch
                    changed = True
                    opens = self._open_slots()
        self.cycle = [c for c in self.cycle if c not in self.pinned.values()]


@dataclass(frozen=True)
class StepSuggestion:
    text: str
    phase: str
    legal_word: bool


# first fresh-game clique plan per (vocabulary, config) — hidden-independent
_FIRST_PLAN_CACHE: dict[tuple[str, int, int, int], tuple[int, ...]] = {}


def plan_first_clique(vocab: Vocabulary, cfg: CliqueSolveConfig) -> Optional[tuple[int, ...]]:
    """The clique a fresh game would guess first (cached per vocabulary)."""
    key = (fingerprint_vocab(vocab), cfg.alphabet_size, cfg.word_length, cfg.min_clique_size)
    if key not in _FIRST_PLAN_CACHE:
        tracker = WordleTracker(vocab)
        plan = _search_clique(tracker, cfg)
        if plan is None:
            return None
        _FIRST_PLAN_CACHE[key] = plan
    return _FIRST_PLAN_CACHE[key]


def _search_clique(tracker: WordleTracker, cfg: CliqueSolveConfig) -> Optional[tuple[int, ...]]:
    """One outer-loop step: build the graph, try k from a//l down to 2."""
    g = form_graph(tracker)
    if not g.edge_exists:
        return None
    unseen_mask = tracker.unseen_mask()
    unseen_count = len(tracker.unseen_chars)
    for k in range(max(cfg.max_clique_size_start, cfg.min_clique_size),
                   cfg.min_clique_size - 1, -1):
        ub = coverage_upper_bound(k, cfg.word_length, g.regime, unseen_count)
        best = select_best_clique(iter_k_cliques(g, k), tracker.vocab, unseen_mask, ub)
        if best is not None:
            return best
    return None


class CliqueStepper:
    """Pattern-driven clique play: ask for the next guess, report what you saw.

    The same object drives both the offline solver (which generates patterns
    from a known hidden word) and the assistant service (where a human types
    the colors), so the two stay in lockstep by construction.
    """

    def __init__(self, vocab: Vocabulary, cfg: Optional[CliqueSolveConfig] = None,
                 use_first_plan_cache: bool = True):
        self.vocab = vocab
        self.cfg = cfg or CliqueSolveConfig.for_vocab(vocab)
        self.tracker = WordleTracker(vocab)
        self.phase = PHASE_CLIQUE
        self.queue: list[int] = []
        self.planner: Optional[AnagramPlanner] = None
        self.done = False
        self.clique_sizes_used: list[int] = []
        self.guessed_texts: list[str] = []
        self._guessed_set: set[str] = set()
        self._fresh = True
        self._use_cache = use_first_plan_cache

    def next_guess(self) -> Optional[StepSuggestion]:
        if self.done:
            return None
        l = self.cfg.word_length
        if self.phase == PHASE_CLIQUE:
            if not self.queue:
                if len(self.tracker.letters_found) == l:
                    self._enter_anagram()
                    return self.next_guess()
                if self._fresh and self._use_cache:
                    plan = plan_first_clique(self.vocab, self.cfg)
                else:
                    plan = _search_clique(self.tracker, self.cfg)
                self._fresh = False
                if plan is None:
                    self.phase = PHASE_REMAINING
                    return self.next_guess()
                self.queue = list(plan)
                self.clique_sizes_used.append(len(plan))
            text = self.vocab[self.queue[0]].text
            return StepSuggestion(text, PHASE_CLIQUE, True)
        if self.phase == PHASE_REMAINING:
            if len(self.tracker.letters_found) == l:
                self._enter_anagram()
                return self.next_guess()
            for i in range(len(self.vocab)):
                if i in self.tracker.discarded_words:
                    continue
                if self.vocab[i].text in self._guessed_set:
                    continue
                return StepSuggestion(self.vocab[i].text, PHASE_REMAINING, True)
            raise ContractViolation("no remaining words to guess")
        # anagram phase
        if self.cfg.strict_vocab_anagrams:
            for i in range(len(self.vocab)):
                if i in self.tracker.discarded_words:
                    continue
                if self.vocab[i].text in self._guessed_set:
                    continue
                return StepSuggestion(self.vocab[i].text, PHASE_ANAGRAM, True)
            raise ContractViolation("no vocabulary anagrams left to guess")
        text = self.planner.peek()
        return StepSuggestion(text, PHASE_ANAGRAM, text in self.vocab)

    def observe(self, guess_text: str, pattern: Pattern) -> None:
        if self.done:
            raise ContractViolation("game already finished")
        self.tracker.observe(guess_text, pattern)
        self.guessed_texts.append(guess_text)
        self._guessed_set.add(guess_text)
        if self.phase == PHASE_CLIQUE:
            w = self.vocab.lookup(guess_text)
            if w is not None and w.index in self.queue:
                self.queue.remove(w.index)
        elif self.phase == PHASE_ANAGRAM and self.planner is not None:
            self.planner.observe(guess_text, pattern)
        if pattern.is_all_green:
            self.done = True
            return
        if self.phase == PHASE_REMAINING and len(self.tracker.letters_found) == self.cfg.word_length:
            self._enter_anagram()

    def _enter_anagram(self) -> None:
        self.phase = PHASE_ANAGRAM
        if not self.cfg.strict_vocab_anagrams:
            pinned = {p: ch for ch, p in self.tracker.letter_positions.items()}
            self.planner = AnagramPlanner(set(self.tracker.letters_found),
                                          self.cfg.word_length, pinned)

    def copy(self) -> "CliqueStepper":
        c = CliqueStepper.__new__(CliqueStepper)
        c.vocab = self.vocab
        c.cfg = self.cfg
        c.tracker = self.tracker.copy()
        c.phase = self.phase
        c.queue = list(self.queue)
        c.planner = _copy.deepcopy(self.planner)
        c.done = self.done
        c.clique_sizes_used = list(self.clique_sizes_used)
        c.guessed_texts = list(self.guessed_texts)
        c._guessed_set = set(self._guessed_set)
        c._fresh = self._fresh
        c._use_cache = self._use_cache
        return c


# -- standalone phase operations over an explicit tracker --


def process_cliques(cliques: list, tracker: WordleTracker, hidden: Word,
                    log: Optional[list] = None) -> WordleTracker:
    """Guess the most informative clique's words in index order.

    Informativeness is unseen-letter coverage; ties go to the smallest member
    tuple. The full update sequence runs after every guess. Stops early only
    when a guess hits the hidden word.
    """
    if not cliques:
        raise ContractViolation("process_cliques needs at least one clique")
    unseen_mask = tracker.unseen_mask()
    members = [tuple(c.members) if hasattr(c, "members") else tuple(c) for c in cliques]
    best = min(members, key=lambda m: (-clique_coverage(m, tracker.vocab, unseen_mask), m))
    for i in best:
        w = tracker.vocab[i]
        pattern = get_pattern(w, hidden)
        tracker.observe(w, pattern)
        if log is not None:
            log.append(TranscriptRow(w.text, pattern, PHASE_CLIQUE, True))
        if pattern.is_all_green:
            break
    return tracker


def check_all_anagrams(tracker: WordleTracker, hidden: Word,
                       strict_vocab: bool = False,
                       log: Optional[list] = None) -> WordleTracker:
    """Find the arrangement of the known letters by rotation and elimination.

    Returns immediately when the latest guess already was the hidden word.
    Needs every hidden letter found first. With strict_vocab, only remaining
    vocabulary words are guessed, in index order.
    """
    if tracker.letters_found != set(hidden.text):
        raise ContractViolation("check_all_anagrams requires all letters found")
    if tracker.words_guessed and tracker.vocab[tracker.words_guessed[-1]].text == hidden.text:
        return tracker
    if strict_vocab:
        guessed = {tracker.vocab[i].text for i in tracker.words_guessed}
        for i in range(len(tracker.vocab)):
            if i in tracker.discarded_words or tracker.vocab[i].text in guessed:
                continue
            w = tracker.vocab[i]
            pattern = get_pattern(w, hidden)
            tracker.observe(w, pattern)
            if log is not None:
                log.append(TranscriptRow(w.text, pattern, PHASE_ANAGRAM, True))
            if pattern.is_all_green:
                return tracker
        raise ContractViolation("anagram candidates exhausted")
    pinned = {p: ch for ch, p in tracker.letter_positions.items()}
    planner = AnagramPlanner(set(tracker.letters_found), len(hidden.text), pinned)
    for _ in range(len(hidden.text)):
        text = planner.peek()
        pattern = get_pattern(text, hidden)
        tracker.observe(text, pattern)
        if log is not None:
            log.append(TranscriptRow(text, pattern, PHASE_ANAGRAM, text in tracker.vocab))
        if pattern.is_all_green:
            return tracker
        planner.observe(text, pattern)
    raise ContractViolation("anagram rotation failed to converge")


def guess_remaining_words(tracker: WordleTracker, hidden: Word,
                          strict_vocab_anagrams: bool = False,
                          log: Optional[list] = None) -> WordleTracker:
    """Guess non-discarded words in index order until solved or all letters turn up."""
    guessed = {tracker.vocab[i].text for i in tracker.words_guessed}
    i = 0
    while i < len(tracker.vocab):
        if i in tracker.discarded_words or tracker.vocab[i].text in guessed:
            i += 1
            continue
        w = tracker.vocab[i]
        pattern = get_pattern(w, hidden)
        tracker.observe(w, pattern)
        guessed.add(w.text)
        if log is not None:
            log.append(TranscriptRow(w.text, pattern, PHASE_REMAINING, True))
        if pattern.is_all_green:
            return tracker
        if tracker.letters_found == set(hidden.text):
            return check_all_anagrams(tracker, hidden, strict_vocab_anagrams, log)
        i += 1
    raise ContractViolation("ran out of words before finding the hidden one")


def solve_clique(vocab: Vocabulary, hidden: Word, cfg: Optional[CliqueSolveConfig] = None,
                 use_first_plan_cache: bool = True) -> Transcript:
    """Play one full clique-mode game against a known hidden word."""
    if hidden.text not in vocab:
        raise ContractViolation(f"hidden word {hidden.text!r} not in vocabulary")
    stepper = CliqueStepper(vocab, cfg, use_first_plan_cache)
    transcript = Transcript()
    guard = 2 * len(vocab) + 4 * vocab.alphabet.size + 16
    while not stepper.done:
        if len(transcript.rows) > guard:
            raise ContractViolation("solver failed to terminate")
        step = stepper.next_guess()
        pattern = get_pattern(step.text, hidden)
        transcript.rows.append(TranscriptRow(step.text, pattern, step.phase, step.legal_word))
        stepper.observe(step.text, pattern)
    transcript.outcome = GameOutcome(True, len(transcript.rows))
    return transcript
