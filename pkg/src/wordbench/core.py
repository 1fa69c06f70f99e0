"""Game engine: vocabulary loading, pattern computation, move validation, outcomes.

Words are fixed-length with all-distinct letters, which keeps the color rules
free of duplicate-letter tie-breaking: every guess letter gets exactly one
color from membership and position alone.
"""

from __future__ import annotations

import enum
import string
from dataclasses import dataclass, field
from importlib import resources
from typing import BinaryIO, Iterable, Optional, Union


class WordbenchError(Exception):
    """Base for data/contract errors raised by this package."""


class VocabularyError(WordbenchError):
    pass


class ContractViolation(WordbenchError):
    pass


@dataclass(frozen=True)
class AlphabetConfig:
    symbols: tuple[str, ...]

    def __post_init__(self):
        if len(self.symbols) < 2:
            raise ContractViolation("alphabet needs at least 2 symbols")
        if len(set(self.symbols)) != len(self.symbols):
            raise ContractViolation("alphabet symbols must be distinct")

    @property
    def size(self) -> int:
        return len(self.symbols)

    def index(self, ch: str) -> int:
        return self._index_map()[ch]

    def __contains__(self, ch: str) -> bool:
        return ch in self._index_map()

    def _index_map(self) -> dict[str, int]:
        # frozen dataclass: build once, stash via object.__setattr__
        m = self.__dict__.get("_imap")
        if m is None:
            m = {c: i for i, c in enumerate(self.symbols)}
            object.__setattr__(self, "_imap", m)
        return m

    @classmethod
    def lowercase(cls) -> "AlphabetConfig":
        return cls(tuple(string.ascii_lowercase))

    @classmethod
    def from_letters(cls, letters: str) -> "AlphabetConfig":
        return cls(tuple(letters))


DEFAULT_ALPHABET = AlphabetConfig.lowercase()


class Color(enum.IntEnum):
    GRAY = 0
    YELLOW = 1
    GREEN = 2


_COLOR_TO_CHAR = {Color.GRAY: "X", Color.YELLOW: "Y", Color.GREEN: "G"}
_CHAR_TO_COLOR = {v: k for k, v in _COLOR_TO_CHAR.items()}


@dataclass(frozen=True)
class Pattern:
    """Per-position colors plus the canonical base-3 code.

    The leftmost letter is the least significant digit: code = sum v_i * 3**i
    with Gray=0, Yellow=1, Green=2.
    """

    colors: tuple[Color, ...]

    @property
    def code(self) -> int:
        c = 0
        for i, v in enumerate(self.colors):
            c += int(v) * 3**i
        return c

    @classmethod
    def from_code(cls, code: int, length: int) -> "Pattern":
        if not 0 <= code < 3**length:
            raise ContractViolation(f"pattern code {code} out of range for length {length}")
        colors = []
        for _ in range(length):
            colors.append(Color(code % 3))
            code //= 3
        return cls(tuple(colors))

    @classmethod
    def from_text(cls, text: str) -> "Pattern":
        """Parse the wire form: uppercase string over {G,Y,X}, leftmost letter first."""
        try:
            return cls(tuple(_CHAR_TO_COLOR[ch] for ch in text))
        except KeyError as e:
            raise ContractViolation(f"bad pattern character {e.args[0]!r}") from None

    def to_text(self) -> str:
        return "".join(_COLOR_TO_CHAR[c] for c in self.colors)

    def __len__(self) -> int:
        return len(self.colors)

    @property
    def is_all_green(self) -> bool:
        return all(c is Color.GREEN for c in self.colors)


@dataclass(frozen=True)
class Word:
    text: str
    index: int
    letter_mask: int

    def __len__(self) -> int:
        return len(self.text)


class Vocabulary:
    """Sorted, deduplicated list of distinct-letter words of one length."""

    def __init__(self, texts: Iterable[str], word_length: int, alphabet: AlphabetConfig = DEFAULT_ALPHABET):
        seen = sorted(set(texts))
        if not seen:
            raise VocabularyError("empty vocabulary")
        words = []
        for i, t in enumerate(seen):
            if len(t) != word_length:
                raise ContractViolation(f"word {t!r} has wrong length")
            if len(set(t)) != len(t):
                raise ContractViolation(f"word {t!r} repeats a letter")
            mask = 0
            for ch in t:
                if ch not in alphabet:
                    raise ContractViolation(f"letter {ch!r} not in alphabet")
                mask |= 1 << alphabet.index(ch)
            words.append(Word(t, i, mask))
        self.words: list[Word] = words
        self.word_length = word_length
        self.alphabet = alphabet
        self._by_text = {w.text: w for w in words}

    def __len__(self) -> int:
        return len(self.words)

    def __getitem__(self, index: int) -> Word:
        return self.words[index]

    def __contains__(self, text: str) -> bool:
        return text in self._by_text

    def lookup(self, text: str) -> Optional[Word]:
        return self._by_text.get(text)

    def texts(self) -> list[str]:
        return [w.text for w in self.words]


def load_vocabulary(source: Union[bytes, BinaryIO], word_length: int,
                    alphabet: AlphabetConfig = DEFAULT_ALPHABET) -> Vocabulary:
    """Filter a one-word-per-line byte stream down to a usable vocabulary.

    Keeps exact-length words whose letters are all distinct and all in the
    alphabet, lowercased, deduplicated, sorted. Lines starting with '#' are
    comments. Raises VocabularyError when nothing survives or on bad UTF-8.
    """
    data = source if isinstance(source, bytes) else source.read()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise VocabularyError(f"vocabulary is not UTF-8: {e}") from None
    kept = []
    for line in text.splitlines():
        w = line.strip().lower()
        if not w or w.startswith("#"):
            continue
        if len(w) != word_length:
            continue
        if len(set(w)) != len(w):
            continue
        if not all(ch in alphabet for ch in w):
            continue
        kept.append(w)
    if not kept:
        raise VocabularyError("empty vocabulary after filtering")
    return Vocabulary(kept, word_length, alphabet)


def load_vocabulary_file(path, word_length: int,
                         alphabet: AlphabetConfig = DEFAULT_ALPHABET) -> Vocabulary:
    with open(path, "rb") as f:
        return load_vocabulary(f, word_length, alphabet)


def bundled_vocabulary(word_length: int) -> Vocabulary:
    """Load one of the word lists shipped with the package (lengths 3..7)."""
    ref = resources.files("wordbench") / "data" / f"words_{word_length}.txt"
    try:
        data = ref.read_bytes()
    except FileNotFoundError:
        raise VocabularyError(f"no bundled list for length {word_length}") from None
    return load_vocabulary(data, word_length)


def get_pattern(guess: Union[Word, str], hidden: Union[Word, str]) -> Pattern:
    """Colors the engine would reveal for this guess against this hidden word."""
    g = guess.text if isinstance(guess, Word) else guess
    h = hidden.text if isinstance(hidden, Word) else hidden
    if len(g) != len(h):
        raise ContractViolation(f"length mismatch: {g!r} vs {h!r}")
    hset = set(h)
    colors = []
    for j, ch in enumerate(g):
        if ch == h[j]:
            colors.append(Color.GREEN)
        elif ch in hset:
            colors.append(Color.YELLOW)
        else:
            colors.append(Color.GRAY)
    return Pattern(tuple(colors))


def trim_vocab(vocab: Vocabulary, active: set[int], guess: Union[Word, str],
               observed: Pattern) -> set[int]:
    """Indices in `active` whose pattern against `guess` equals `observed`."""
    if len(observed) != vocab.word_length:
        raise ContractViolation("pattern length does not match vocabulary")
    code = observed.code
    return {i for i in active if get_pattern(guess, vocab[i]).code == code}


class Mode(enum.Enum):
    EASY = "easy"
    HARD = "hard"


@dataclass(frozen=True)
class GameConfig:
    word_length: int
    max_tries: Optional[int] = None  # None = unbounded
    mode: Mode = Mode.EASY
    alphabet: AlphabetConfig = DEFAULT_ALPHABET

    def __post_init__(self):
        if self.word_length < 1:
            raise ContractViolation("word_length must be >= 1")
        if self.max_tries is not None and self.max_tries < 1:
            raise ContractViolation("max_tries must be >= 1 when finite")


@dataclass
class Board:
    rows: list[tuple[str, Pattern]] = field(default_factory=list)
    max_rows: Optional[int] = None

    def is_full(self) -> bool:
        return self.max_rows is not None and len(self.rows) >= self.max_rows


@dataclass(frozen=True)
class GameOutcome:
    is_solved: bool
    num_moves: int

    def __post_init__(self):
        if self.is_solved and self.num_moves < 1:
            raise ContractViolation("solved games need num_moves >= 1")
        if not self.is_solved and self.num_moves != -1:
            raise ContractViolation("unsolved games carry num_moves == -1")


class RejectReason(enum.Enum):
    NOT_IN_VOCABULARY = "NotInVocabulary"
    GREEN_VIOLATED = "GreenViolated"
    YELLOW_MISSING = "YellowMissing"
    BOARD_FULL = "BoardFull"


@dataclass(frozen=True)
class MoveCheck:
    accepted: bool
    reason: Optional[RejectReason] = None
    detail: Optional[object] = None  # position for greens, letter for yellows

    def __bool__(self) -> bool:
        return self.accepted


def validate_move(board: Board, candidate: str, config: GameConfig,
                  vocab: Vocabulary) -> MoveCheck:
    """Easy mode: candidate must be a vocabulary word. Hard mode additionally
    holds the candidate to every green and yellow accumulated over ALL prior
    rows (greens at the same position, yellows present somewhere)."""
    if board.is_full():
        return MoveCheck(False, RejectReason.BOARD_FULL)
    if candidate not in vocab:
        return MoveCheck(False, RejectReason.NOT_IN_VOCABULARY)
    if config.mode is Mode.HARD:
        for guess, pattern in board.rows:
            for j, color in enumerate(pattern.colors):
                if color is Color.GREEN and candidate[j] != guess[j]:
                    return MoveCheck(False, RejectReason.GREEN_VIOLATED, j)
                if color is Color.YELLOW and guess[j] not in candidate:
                    return MoveCheck(False, RejectReason.YELLOW_MISSING, guess[j])
    return MoveCheck(True)


def play_move(board: Board, candidate: str, hidden: Word, config: GameConfig,
              vocab: Vocabulary, free_guess: bool = False
              ) -> tuple[Board, Pattern, Optional[GameOutcome]]:
    """Append the candidate's row to the board and report progress.

    Returns (board, revealed pattern, outcome). Outcome is None while the game
    is still open, a solved GameOutcome on all-green, and an unsolved one when
    the last row is spent. free_guess skips validation for callers that probe
    with non-vocabulary arrangements.
    """
    if not free_guess:
        check = validate_move(board, candidate, config, vocab)
        if not check:
            raise ContractViolation(f"illegal move {candidate!r}: {check.reason.value}")
    elif board.is_full():
        raise ContractViolation("board is full")
    pattern = get_pattern(candidate, hidden)
    board.rows.append((candidate, pattern))
    if pattern.is_all_green:
        return board, pattern, GameOutcome(True, len(board.rows))
    if board.is_full():
        return board, pattern, GameOutcome(False, -1)
    return board, pattern, None
