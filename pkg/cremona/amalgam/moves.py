# cremona/amalgam/moves.py
"""
Elementary moves on words and replayable certificates.

Allowed schemas:
    MergeA / MergeJ      a run of same-tag letters replaced by a run with the same product
    ShiftIntersection    a letter of A cap J changes its tag
    SigmaTauSwap         tau*sigma <-> sigma*tau, letter for letter
    InsertCancelPair     x^-1 * x inserted (two letters of one tag with trivial product)
Macro moves (Lemma1Macro, CaseARewrite, CaseBRewrite) carry their expansion as sub-moves
whose positions are relative to the start of the macro segment.
"""
import json
import logging
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from pydantic.v1 import BaseModel, Field

from cremona.amalgam.words import (
    A, J, Letter, Word, eval_word, invert_word, product_payload, word_from_dicts, word_to_dicts,
)
from cremona.config import VERIFY_FULL_EVAL
from cremona.errors import BudgetExceeded, CremonaError, UsageError
from cremona.projlinear import in_A_cap_J
from cremona.quadlib import core_jonq, linear_generator
from cremona.scalar import field_from_spec, field_spec

logger = logging.getLogger(__name__)

MERGE_A, MERGE_J = "MergeA", "MergeJ"
SHIFT = "ShiftIntersection"
SWAP = "SigmaTauSwap"
INSERT = "InsertCancelPair"
LEMMA = "Lemma1Macro"
CASE_A = "CaseARewrite"
CASE_B = "CaseBRewrite"
ELEMENTARY_KINDS = (MERGE_A, MERGE_J, SHIFT, SWAP, INSERT)
MACRO_KINDS = (LEMMA, CASE_A, CASE_B)


class Move(BaseModel):
    kind: str = Field(description="Schema of the move, one of the elementary or macro kinds.")
    position: int = Field(description="Index of the first consumed letter (relative to the enclosing segment).")
    consumed: List[Letter] = Field(default_factory=list, description="Letters removed from the word.")
    produced: List[Letter] = Field(default_factory=list, description="Letters inserted in their place.")
    justification: Dict[str, Any] = Field(default_factory=dict, description="Diagnostic data for the move.")
    submoves: List["Move"] = Field(default_factory=list, description="Expansion of a macro move.")

    class Config:
        arbitrary_types_allowed = True

    def elementary_count(self) -> int:
        return 1 if not self.submoves else sum(m.elementary_count() for m in self.submoves)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "position": self.position,
            "consumed": word_to_dicts(self.consumed),
            "produced": word_to_dicts(self.produced),
            "justification": {k: v if isinstance(v, (int, bool, list, dict)) or v is None else str(v)
                              for k, v in self.justification.items()},
            "submoves": [m.to_dict() for m in self.submoves],
        }


Move.update_forward_refs()


def move_from_dict(data: Dict[str, Any], field) -> Move:
    try:
        return Move(kind=data["kind"], position=int(data["position"]),
                    consumed=word_from_dicts(data.get("consumed", []), field),
                    produced=word_from_dicts(data.get("produced", []), field),
                    justification=data.get("justification", {}),
                    submoves=[move_from_dict(m, field) for m in data.get("submoves", [])])
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"Malformed move record: {e}", record=str(data)[:200])


def mirror_move(move: Move, length: int) -> Move:
    """
    The same move on the inverse word: a move u -> v at ``position`` of a word of ``length``
    letters becomes u^-1 -> v^-1 counted from the other end.  Every schema is stable under this.
    """
    count = len(move.consumed)
    submoves, current = [], count
    for sub in move.submoves:
        submoves.append(mirror_move(sub, current))
        current += len(sub.produced) - len(sub.consumed)
    return Move(kind=move.kind, position=length - move.position - count,
                consumed=invert_word(move.consumed), produced=invert_word(move.produced),
                justification={**move.justification, "mirrored": True}, submoves=submoves)


class Trace(BaseModel):
    base_field: str = Field(description="Field specification, 'q' or 'fp:P'.")
    initial: List[Letter] = Field(default_factory=list)
    moves: List[Move] = Field(default_factory=list)
    final: List[Letter] = Field(default_factory=list)

    class Config:
        arbitrary_types_allowed = True

    def elementary_count(self) -> int:
        return sum(m.elementary_count() for m in self.moves)

    def kinds_used(self) -> List[str]:
        seen = set()

        def walk(moves: Iterable[Move]):
            for m in moves:
                seen.add(m.kind)
                walk(m.submoves)

        walk(self.moves)
        return sorted(seen)

    def to_jsonl(self) -> str:
        lines = [json.dumps({"type": "header", "field": self.base_field, "word": word_to_dicts(self.initial)})]
        lines.extend(json.dumps({"type": "move", **m.to_dict()}) for m in self.moves)
        lines.append(json.dumps({"type": "footer", "word": word_to_dicts(self.final)}))
        return "\n".join(lines) + "\n"


def trace_from_jsonl(text: str) -> Trace:
    records = []
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            records.append(json.loads(line))
        except json.JSONDecodeError as e:
            raise UsageError(f"Trace line {number} is not valid JSON: {e}", line=number)
    if len(records) < 2 or records[0].get("type") != "header" or records[-1].get("type") != "footer":
        raise UsageError("A trace needs a header line and a footer line.")
    field = field_from_spec(records[0].get("field", "q"))
    return Trace(base_field=field_spec(field),
                 initial=word_from_dicts(records[0]["word"], field),
                 moves=[move_from_dict(r, field) for r in records[1:-1]],
                 final=word_from_dicts(records[-1]["word"], field))


# --- Building derivations ---

class Derivation:
    """
    A word under rewriting together with the moves applied to it.  Letters are located by
    identity, so callers keep references to the letters they care about.
    """

    def __init__(self, word: Sequence[Letter], field, budget: Optional[int] = None):
        self.field = field
        self.initial: Word = list(word)
        self.word: Word = list(word)
        self.moves: List[Move] = []
        self.budget = budget
        self.spent = 0

    def copy(self) -> "Derivation":
        """Independent word and move list; letters and moves are shared."""
        other = Derivation(self.initial, self.field, budget=self.budget)
        other.word = list(self.word)
        other.moves = list(self.moves)
        other.spent = self.spent
        return other

    def index(self, letter: Letter) -> int:
        for i, current in enumerate(self.word):
            if current is letter:
                return i
        raise ValueError(f"Letter {letter} is not in the word")

    def _record(self, move: Move):
        self.spent += move.elementary_count()
        if self.budget is not None and self.spent > self.budget:
            raise BudgetExceeded("Move budget exhausted.", budget=self.budget, spent=self.spent)
        self.moves.append(move)

    def apply(self, kind: str, position: int, count: int, produced: Sequence[Letter],
              justification: Optional[Dict[str, Any]] = None, submoves: Optional[List[Move]] = None) -> List[Letter]:
        consumed = self.word[position:position + count]
        produced = list(produced)
        if _same_letters(consumed, produced):
            return consumed
        self.word[position:position + count] = produced
        self._record(Move(kind=kind, position=position, consumed=consumed, produced=produced,
                          justification=justification or {}, submoves=submoves or []))
        return produced

    def merge(self, letters: Sequence[Letter], produced: Sequence[Letter], **justification) -> List[Letter]:
        """Replace a contiguous same-tag run (given by its letters) with ``produced``, identities dropped."""
        if not letters:
            raise ValueError("merge needs at least one letter; use insert_cancel_pair to insert")
        tag = letters[0].tag
        start = self.index(letters[0])
        produced = [letter for letter in produced if not letter.is_identity()]
        return self.apply(MERGE_A if tag == A else MERGE_J, start, len(letters), produced, justification)

    def merge_run(self, letters: Sequence[Letter], **justification) -> Optional[Letter]:
        """Merge a run into its product (nothing when the product is trivial)."""
        tag = letters[0].tag
        product = Letter(tag, product_payload(letters, tag, self.field))
        result = self.merge(letters, [product], **justification)
        return result[0] if result else None

    def shift(self, letter: Letter) -> Letter:
        position = self.index(letter)
        return self.apply(SHIFT, position, 1, [letter.shifted()])[0]

    def swap(self, first: Letter, second: Letter) -> Tuple[Letter, Letter]:
        position = self.index(first)
        if self.word[position + 1] is not second:
            raise ValueError("swap expects adjacent letters")
        result = self.apply(SWAP, position, 2, [Letter(second.tag, second.payload), Letter(first.tag, first.payload)])
        return result[0], result[1]

    def insert_cancel_pair(self, position: int, letter: Letter) -> Tuple[Letter, Letter]:
        """Insert letter^-1 * letter before ``position``."""
        pair = [letter.inverse(), letter]
        self.apply(INSERT, position, 0, pair)
        return pair[0], pair[1]

    def macro(self, kind: str, position: int, count: int, segment: "Derivation",
              justification: Optional[Dict[str, Any]] = None) -> List[Letter]:
        """Replace a segment with the result of a derivation run on it."""
        consumed = self.word[position:position + count]
        if any(a is not b for a, b in zip(consumed, segment.initial)) or len(consumed) != len(segment.initial):
            raise ValueError("Macro segment does not match the word")
        produced = list(segment.word)
        self.word[position:position + count] = produced
        self._record(Move(kind=kind, position=position, consumed=consumed, produced=produced,
                          justification=justification or {}, submoves=list(segment.moves)))
        return produced

    def apply_move(self, position: int, move: Move) -> List[Letter]:
        """Apply a move built on another derivation whose consumed letters equal the word's by value."""
        count = len(move.consumed)
        consumed = self.word[position:position + count]
        if not _same_letters(consumed, move.consumed):
            raise ValueError(f"{move.kind} does not match the word at {position}")
        produced = list(move.produced)
        self.word[position:position + count] = produced
        self._record(Move(kind=move.kind, position=position, consumed=consumed, produced=produced,
                          justification=move.justification, submoves=move.submoves))
        return produced

    def to_trace(self) -> Trace:
        return Trace(base_field=field_spec(self.field), initial=list(self.initial), moves=list(self.moves),
                     final=list(self.word))


# --- Verification ---

class VerificationFailure(Exception):
    pass


def _same_letters(a: Sequence[Letter], b: Sequence[Letter]) -> bool:
    return len(a) == len(b) and all(x.same_value(y) for x, y in zip(a, b))


def _check_schema(move: Move, field):
    kind, consumed, produced = move.kind, move.consumed, move.produced
    if kind in (MERGE_A, MERGE_J):
        tag = A if kind == MERGE_A else J
        if any(letter.tag != tag for letter in consumed + produced):
            raise VerificationFailure(f"{kind} mixes letter types")
        if not consumed:
            raise VerificationFailure(f"{kind} consumes nothing")
        if product_payload(consumed, tag, field) != product_payload(produced, tag, field):
            raise VerificationFailure(f"{kind} changes the product")
    elif kind == SHIFT:
        if len(consumed) != 1 or len(produced) != 1 or consumed[0].tag == produced[0].tag:
            raise VerificationFailure("ShiftIntersection must change the tag of one letter")
        a_letter = consumed[0] if consumed[0].tag == A else produced[0]
        j_letter = produced[0] if a_letter is consumed[0] else consumed[0]
        if not in_A_cap_J(a_letter.payload) or j_letter.degree != 1:
            raise VerificationFailure("Shifted letter is not in A cap J")
        if a_letter.map != j_letter.map:
            raise VerificationFailure("Shifted letters differ")
    elif kind == SWAP:
        tau = Letter.a(linear_generator("tau", field))
        sigma = Letter.j(core_jonq("sigma", field))
        forward = _same_letters(consumed, [tau, sigma]) and _same_letters(produced, [sigma, tau])
        backward = _same_letters(consumed, [sigma, tau]) and _same_letters(produced, [tau, sigma])
        if not (forward or backward):
            raise VerificationFailure("SigmaTauSwap letters are not literally tau and sigma")
    elif kind == INSERT:
        if consumed or len(produced) != 2 or produced[0].tag != produced[1].tag:
            raise VerificationFailure("InsertCancelPair must insert two letters of one type")
        if not product_payload(produced, produced[0].tag, field).is_identity():
            raise VerificationFailure("Inserted pair does not cancel")
    elif kind in MACRO_KINDS:
        if not move.submoves:
            raise VerificationFailure(f"{kind} has no expansion")
        segment = list(consumed)
        for sub in move.submoves:
            segment = _replay_move(segment, sub, field)
        if not _same_letters(segment, produced):
            raise VerificationFailure(f"{kind} expansion does not produce the recorded letters")
    else:
        raise VerificationFailure(f"Unknown move kind '{kind}'")


def _replay_move(word: Sequence[Letter], move: Move, field) -> Word:
    position, count = move.position, len(move.consumed)
    if position < 0 or position + count > len(word):
        raise VerificationFailure(f"{move.kind} position {position} is outside the word")
    if not _same_letters(word[position:position + count], move.consumed):
        raise VerificationFailure(f"{move.kind} consumed letters do not match the word at {position}")
    _check_schema(move, field)
    return list(word[:position]) + list(move.produced) + list(word[position + count:])


def verify_trace(trace: Trace, full_eval: bool = VERIFY_FULL_EVAL) -> Tuple[bool, Optional[int], str]:
    """Replay every move; returns (ok, index of the first failing move, reason)."""
    field = field_from_spec(trace.base_field)
    word = list(trace.initial)
    reference = eval_word(word, field) if full_eval else None
    for i, move in enumerate(trace.moves):
        try:
            word = _replay_move(word, move, field)
            if full_eval and eval_word(word, field) != reference:
                raise VerificationFailure("Evaluation of the word changed")
        except VerificationFailure as e:
            logger.info(f"verify_trace: move {i} ({move.kind}) rejected: {e}")
            return False, i, str(e)
        except CremonaError as e:
            logger.info(f"verify_trace: move {i} ({move.kind}) raised {type(e).__name__}: {e.message}")
            return False, i, f"{type(e).__name__}: {e.message}"
    if not _same_letters(word, trace.final):
        return False, len(trace.moves), "Replay does not end in the recorded final word"
    return True, None, "ok"
