"""Session-oriented HTTP assistant.

A session holds one live game: the service proposes a guess, the player
reports the colors the real game showed, and the service narrows its state
and proposes again. Sessions live in process memory; each keeps its last
ten states so a mistyped pattern can be undone.
"""

from __future__ import annotations

import json
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .clique import CliqueStepper, CliqueSolveConfig
from .core import (
    Board,
    ContractViolation,
    GameConfig,
    Mode,
    Pattern,
    Vocabulary,
    VocabularyError,
    bundled_vocabulary,
    load_vocabulary_file,
    trim_vocab,
    validate_move,
)
from .greedy import FirstGuessCache, GreedyState, choose_guess, warm_first_guess

HISTORY_LIMIT = 10

# opening-word memo shared by every session in this process
_FIRST_GUESS_CACHE = FirstGuessCache()


class Contradiction(Exception):
    pass


class _GreedyEngine:
    phase = "greedy"

    def __init__(self, vocab: Vocabulary, mode: Mode):
        self.vocab = vocab
        self.mode = mode
        self.active: set[int] = set(range(len(vocab)))

    def suggest(self) -> tuple[str, bool]:
        if len(self.active) == len(self.vocab):
            return warm_first_guess(self.vocab, self.mode, _FIRST_GUESS_CACHE), True
        state = GreedyState(self.vocab, self.active, self.mode)
        return self.vocab[choose_guess(state).guess_index].text, True

    def remaining(self) -> int:
        return len(self.active)

    def apply(self, guess: str, pattern: Pattern) -> None:
        nxt = trim_vocab(self.vocab, self.active, guess, pattern)
        if not nxt:
            raise Contradiction("no vocabulary word matches the reported colors")
        self.active = nxt

    def copy(self) -> "_GreedyEngine":
        c = _GreedyEngine.__new__(_GreedyEngine)
        c.vocab, c.mode, c.active = self.vocab, self.mode, set(self.active)
        return c


class _CliqueEngine:
    def __init__(self, vocab: Vocabulary, strict_vocab_anagrams: bool = False):
        self.stepper = CliqueStepper(
            vocab, CliqueSolveConfig.for_vocab(vocab, strict_vocab_anagrams))

    @property
    def vocab(self) -> Vocabulary:
        return self.stepper.vocab

    @property
    def phase(self) -> str:
        return self.stepper.phase

    def suggest(self) -> tuple[str, bool]:
        s = self.stepper.next_guess()
        if s is None:
            raise ContractViolation("game already finished")
        return s.text, s.legal_word

    def remaining(self) -> int:
        return self.stepper.tracker.remaining_count()

    def apply(self, guess: str, pattern: Pattern) -> None:
        self.stepper.observe(guess, pattern)
        if not self.stepper.done and self.stepper.tracker.remaining_count() == 0:
            raise Contradiction("the reported colors rule out every vocabulary word")

    def copy(self) -> "_CliqueEngine":
        c = _CliqueEngine.__new__(_CliqueEngine)
        c.stepper = self.stepper.copy()
        return c


Engine = Union[_GreedyEngine, _CliqueEngine]


@dataclass
class _Snapshot:
    engine: Engine
    board: list[dict]
    solved: bool


@dataclass
class Session:
    id: str
    algorithm: str
    mode: Mode
    vocab_id: str
    vocab: Vocabulary
    engine: Engine
    board: list[dict] = field(default_factory=list)
    solved: bool = False
    history: list[_Snapshot] = field(default_factory=list)
    created_at: float = field(default_factory=time.time)
    updated_at: float = field(default_factory=time.time)
    _suggestion: Optional[tuple[str, bool]] = None

    def suggestion(self) -> tuple[Optional[str], bool]:
        if self.solved:
            return None, True
        if self._suggestion is None:
            self._suggestion = self.engine.suggest()
        return self._suggestion

    def push_history(self) -> None:
        self.history.append(_Snapshot(self.engine.copy(), list(self.board), self.solved))
        if len(self.history) > HISTORY_LIMIT:
            self.history.pop(0)

    def restore(self, snap: _Snapshot) -> None:
        self.engine = snap.engine
        self.board = snap.board
        self.solved = snap.solved
        self._suggestion = None
        self.updated_at = time.time()


class CreateSessionBody(BaseModel):
    vocabulary: Optional[str] = None
    length: Optional[int] = None
    algorithm: str = "greedy"
    mode: str = "easy"
    strict_vocab_anagrams: bool = False


class FeedbackBody(BaseModel):
    guess: str
    pattern: str


def _load_registry(vocab_dir) -> dict[str, Vocabulary]:
    reg: dict[str, Vocabulary] = {}
    if vocab_dir is None:
        for length in (3, 4, 5, 6, 7):
            reg[f"words_{length}"] = bundled_vocabulary(length)
        return reg
    root = Path(vocab_dir)
    for path in sorted(root.glob("*.txt")):
        length = None
        with open(path, "r", encoding="utf-8", errors="replace") as f:
            for line in f:
                w = line.strip()
                if w and not w.startswith("#"):
                    length = len(w)
                    break
        if length is None:
            continue
        try:
            reg[path.stem] = load_vocabulary_file(path, length)
        except VocabularyError:
            continue
    if not reg:
        raise VocabularyError(f"no usable word lists under {vocab_dir}")
    return reg


def _session_payload(s: Session, include_board: bool = True) -> dict:
    text, legal = s.suggestion()
    out = {
        "id": s.id,
        "algorithm": s.algorithm,
        "mode": s.mode.value,
        "vocabulary": s.vocab_id,
        "word_length": s.vocab.word_length,
        "suggestion": text,
        "suggestion_is_word": legal,
        "phase": "solved" if s.solved else s.engine.phase,
        "remaining_count": s.engine.remaining(),
        "solved": s.solved,
        "tries": len(s.board),
        "undo_depth": len(s.history),
    }
    if include_board:
        out["board"] = list(s.board)
    return out


def create_app(vocab_dir=None, snapshot_path=None) -> FastAPI:
    app = FastAPI(title="wordbench assistant", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"])
    registry = _load_registry(vocab_dir)
    sessions: dict[str, Session] = {}
    app.state.registry = registry
    app.state.sessions = sessions

    def _persist() -> None:
        if snapshot_path is None:
            return
        doc = {sid: {"board": s.board, "solved": s.solved,
                     "algorithm": s.algorithm, "vocabulary": s.vocab_id}
               for sid, s in sessions.items()}
        try:
            Path(snapshot_path).write_text(json.dumps(doc, sort_keys=True, indent=2))
        except OSError:
            pass  # snapshots are best-effort; the live state is in memory

    def _get(sid: str) -> Session:
        s = sessions.get(sid)
        if s is None:
            raise HTTPException(404, f"no session {sid}")
        return s

    @app.get("/v1/vocabularies")
    def list_vocabularies():
        return [
            {"id": vid, "word_length": v.word_length, "word_count": len(v)}
            for vid, v in sorted(registry.items())
        ]

    @app.post("/v1/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        if body.algorithm not in ("greedy", "clique"):
            raise HTTPException(400, f"unknown algorithm {body.algorithm!r}")
        try:
            mode = Mode(body.mode)
        except ValueError:
            raise HTTPException(400, f"unknown mode {body.mode!r}")
        if body.algorithm == "clique" and mode is not Mode.EASY:
            raise HTTPException(400, "clique sessions play easy mode only")
        vid = body.vocabulary
        if vid is None:
            if body.length is None:
                raise HTTPException(400, "need a vocabulary id or a word length")
            vid = f"words_{body.length}"
        v = registry.get(vid)
        if v is None:
            raise HTTPException(404, f"no vocabulary {vid!r}")
        engine: Engine
        if body.algorithm == "greedy":
            engine = _GreedyEngine(v, mode)
        else:
            engine = _CliqueEngine(v, body.strict_vocab_anagrams)
        s = Session(id=uuid.uuid4().hex[:12], algorithm=body.algorithm, mode=mode,
                    vocab_id=vid, vocab=v, engine=engine)
        sessions[s.id] = s
        _persist()
        return _session_payload(s)

    @app.get("/v1/sessions/{sid}")
    def get_session(sid: str):
        return _session_payload(_get(sid))

    @app.post("/v1/sessions/{sid}/feedback")
    def post_feedback(sid: str, body: FeedbackBody):
        s = _get(sid)
        if s.solved:
            raise HTTPException(400, "session already solved")
        guess = body.guess.strip().lower()
        l = s.vocab.word_length
        if len(guess) != l or not guess.isalpha():
            raise HTTPException(400, f"guess must be {l} letters")
        if len(set(guess)) != l:
            raise HTTPException(400, "guess letters must be distinct")
        suggestion_text, _ = s.suggestion()
        if guess not in s.vocab and guess != suggestion_text:
            raise HTTPException(400, f"{guess!r} is not a vocabulary word")
        if s.mode is Mode.HARD and guess in s.vocab:
            board = Board([(r["guess"], Pattern.from_text(r["pattern"])) for r in s.board])
            check = validate_move(board, guess, GameConfig(l, mode=s.mode), s.vocab)
            if not check:
                raise HTTPException(400, f"hard mode: {check.reason.value}")
        try:
            pattern = Pattern.from_text(body.pattern.strip().upper())
        except (ContractViolation, ValueError):
            raise HTTPException(400, f"bad pattern {body.pattern!r}")
        if len(pattern) != l:
            raise HTTPException(400, f"pattern must be {l} colors")

        s.push_history()
        try:
            s.engine.apply(guess, pattern)
        except Contradiction as e:
            s.restore(s.history.pop())
            raise HTTPException(409, {
                "error": "contradiction",
                "message": str(e),
                "hint": "undo the last report or fix the colors",
            })
        s.board.append({"guess": guess, "pattern": pattern.to_text()})
        s.solved = pattern.is_all_green
        s._suggestion = None
        s.updated_at = time.time()
        _persist()
        return _session_payload(s)

    @app.post("/v1/sessions/{sid}/undo")
    def post_undo(sid: str):
        s = _get(sid)
        if not s.history:
            raise HTTPException(400, "nothing to undo")
        s.restore(s.history.pop())
        _persist()
        return _session_payload(s)

    return app
