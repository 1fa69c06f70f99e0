"""Board-state digest: which letters are found/grey/placed, which words are out.

The tracker is deliberately letter-grained. It discards a word only for a
grey-letter overlap, a missing found letter, or a green-position mismatch, so
it may retain words a full pattern-equality filter would drop (e.g. a guessed
anagram of the hidden word). It never discards a word that could still be the
answer.
"""

from __future__ import annotations

import json
from typing import Iterable, Optional, Union

from .core import Color, Pattern, Vocabulary, Word, get_pattern


class WordleTracker:
    def __init__(self, vocab: Vocabulary):
        self.vocab = vocab
        self.unseen_chars: set[str] = set(vocab.alphabet.symbols)
        self.discarded_words: set[int] = set()
        self.letters_found: set[str] = set()
        self.letter_positions: dict[str, int] = {}
        self.words_guessed: list[int] = []
        self.grey_letters: set[str] = set()

    # -- the four update helpers, applied in this order after every guess --

    def update_words_guessed(self, guessed: Iterable[int]) -> "WordleTracker":
        for i in guessed:
            if not 0 <= i < len(self.vocab):
                raise IndexError(f"word index {i} out of range")
            self.words_guessed.append(i)
        return self

    def update_letters_found(self, guessed: Iterable[int], hidden: Word) -> "WordleTracker":
        for i in guessed:
            w = self.vocab[i]
            self.classify_guess(w.text, get_pattern(w, hidden))
        return self

    def update_unseen_chars(self) -> "WordleTracker":
        self.unseen_chars -= self.letters_found | self.grey_letters
        return self

    def update_discarded_words(self) -> "WordleTracker":
        for i in range(len(self.vocab)):
            if i in self.discarded_words:
                continue
            if self._rejects(self.vocab[i]):
                self.discarded_words.add(i)
        return self

    # -- primitives shared by the offline solvers and the pattern-driven API --

    def classify_guess(self, guess_text: str, pattern: Pattern) -> None:
        """File each guessed letter under found/placed/grey per its color."""
        for i, color in enumerate(pattern.colors):
            ch = guess_text[i]
            if color is Color.GREEN:
                self.letters_found.add(ch)
                self.letter_positions[ch] = i
            elif color is Color.YELLOW:
                self.letters_found.add(ch)
            else:
                self.grey_letters.add(ch)

    def observe(self, guess: Union[Word, str], pattern: Pattern) -> "WordleTracker":
        """Full update sequence for one observed (guess, pattern) row.

        Accepts raw text for non-vocabulary probes; those update the letter
        sets but leave words_guessed (an index list) alone.
        """
        if isinstance(guess, Word):
            self.update_words_guessed([guess.index])
            text = guess.text
        else:
            w = self.vocab.lookup(guess)
            if w is not None:
                self.update_words_guessed([w.index])
            text = guess
        self.classify_guess(text, pattern)
        self.update_unseen_chars()
        self.update_discarded_words()
        return self

    def _rejects(self, w: Word) -> bool:
        letters = set(w.text)
        if letters & self.grey_letters:
            return True
        for ch in self.letters_found:
            if ch not in letters:
                return True
            pos = self.letter_positions.get(ch)
            if pos is not None and w.text[pos] != ch:
                return True
        return False

    # -- derived views --

    def remaining(self) -> list[int]:
        return [i for i in range(len(self.vocab)) if i not in self.discarded_words]

    def remaining_count(self) -> int:
        return len(self.vocab) - len(self.discarded_words)

    def unseen_mask(self) -> int:
        m = 0
        for ch in self.unseen_chars:
            m |= 1 << self.vocab.alphabet.index(ch)
        return m

    def copy(self) -> "WordleTracker":
        t = WordleTracker.__new__(WordleTracker)
        t.vocab = self.vocab
        t.unseen_chars = set(self.unseen_chars)
        t.discarded_words = set(self.discarded_words)
        t.letters_found = set(self.letters_found)
        t.letter_positions = dict(self.letter_positions)
        t.words_guessed = list(self.words_guessed)
        t.grey_letters = set(self.grey_letters)
        return t

    # -- serialization for the assistant service --

    def to_json_dict(self) -> dict:
        return {
            "unseen_chars": sorted(self.unseen_chars),
            "discarded_words": sorted(self.discarded_words),
            "letters_found": sorted(self.letters_found),
            "letter_positions": {k: self.letter_positions[k] for k in sorted(self.letter_positions)},
            "words_guessed": list(self.words_guessed),
            "grey_letters": sorted(self.grey_letters),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, d: dict, vocab: Vocabulary) -> "WordleTracker":
        t = cls(vocab)
        t.unseen_chars = set(d["unseen_chars"])
        t.discarded_words = set(d["discarded_words"])
        t.letters_found = set(d["letters_found"])
        t.letter_positions = {k: int(v) for k, v in d["letter_positions"].items()}
        t.words_guessed = [int(i) for i in d["words_guessed"]]
        t.grey_letters = set(d["grey_letters"])
        return t
