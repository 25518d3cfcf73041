# cremona/amalgam/words.py
"""
Letters and words of the amalgamated product of A = PGL(3) and the de Jonquieres group J.

Words are lists written left to right; the rightmost letter applies first, so
``[j_r, a_r, ..., j_1, a_1]`` evaluates to j_r a_r ... j_1 a_1.  Letters compare by identity:
the rewriter follows individual letters through a derivation.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, List, NamedTuple, Sequence, Union

from cremona.bubble import LinearSystemClass, class_of
from cremona.errors import UsageError
from cremona.jonq import JonqElement, cremona_to_jonq, jonq_compose, jonq_inverse, jonq_to_cremona
from cremona.polymap import CremonaMap, compose, compose_all, cremona_to_linear, linear_to_cremona
from cremona.projlinear import ProjLinearMap, in_A_cap_J

logger = logging.getLogger(__name__)

A, J = "A", "J"
Payload = Union[ProjLinearMap, JonqElement]


@dataclass(frozen=True, eq=False)
class Letter:
    """A letter of type A (linear map) or J (de Jonquieres pair)."""
    tag: str
    payload: Payload

    @classmethod
    def a(cls, m: ProjLinearMap) -> "Letter":
        return cls(A, m)

    @classmethod
    def j(cls, g: JonqElement) -> "Letter":
        return cls(J, g)

    @property
    def field(self):
        return self.payload.field

    @cached_property
    def map(self) -> CremonaMap:
        if self.tag == A:
            return linear_to_cremona(self.payload)
        return jonq_to_cremona(self.payload)

    @property
    def degree(self) -> int:
        return 1 if self.tag == A else self.map.degree

    def is_identity(self) -> bool:
        return self.payload.is_identity()

    def linear(self) -> ProjLinearMap:
        """The payload as a matrix; J-letters must have degree one."""
        return self.payload if self.tag == A else cremona_to_linear(self.map)

    def in_intersection(self) -> bool:
        if self.tag == A:
            return in_A_cap_J(self.payload)
        return self.degree == 1

    def shifted(self) -> "Letter":
        """The same element of A cap J with the other tag."""
        if self.tag == A:
            return Letter.j(cremona_to_jonq(self.map))
        return Letter.a(self.linear())

    def inverse(self) -> "Letter":
        if self.tag == A:
            return Letter.a(self.payload.inverse())
        return Letter.j(jonq_inverse(self.payload))

    def same_value(self, other: "Letter") -> bool:
        return self.tag == other.tag and self.payload == other.payload

    def to_dict(self) -> Dict[str, Any]:
        if self.tag == A:
            return {"tag": A, "matrix": self.payload.to_strings()}
        base, fiber = self.payload.to_strings()
        return {"tag": J, "base": base, "fiber": fiber}

    def __str__(self) -> str:
        return f"{self.tag}:{self.payload}"

    def __repr__(self) -> str:
        return f"Letter({self})"


Word = List[Letter]


def letter_from_dict(data: Dict[str, Any], field) -> Letter:
    tag = data.get("tag")
    if tag == A:
        return Letter.a(ProjLinearMap.from_strings(data["matrix"], field))
    if tag == J:
        return Letter.j(JonqElement.from_strings(data["base"], data["fiber"], field))
    raise UsageError(f"Unknown letter tag '{tag}'.", letter=data)


def word_to_dicts(word: Sequence[Letter]) -> List[Dict[str, Any]]:
    return [letter.to_dict() for letter in word]


def word_from_dicts(data: Sequence[Dict[str, Any]], field) -> Word:
    return [letter_from_dict(item, field) for item in data]


def format_word(word: Sequence[Letter]) -> str:
    return " * ".join(str(letter) for letter in word) if word else "(empty)"


def product_payload(letters: Sequence[Letter], tag: str, field) -> Payload:
    """Product of same-tag letters in written order; the empty product is the identity."""
    if any(letter.tag != tag for letter in letters):
        raise ValueError("product_payload expects letters of a single tag")
    if tag == A:
        result = ProjLinearMap.identity(field)
        for letter in letters:
            result = result @ letter.payload
        return result
    result = JonqElement.identity(field)
    for letter in letters:
        result = jonq_compose(result, letter.payload)
    return result


def eval_word(word: Sequence[Letter], field) -> CremonaMap:
    return compose_all([letter.map for letter in word], field)


def invert_word(word: Sequence[Letter]) -> Word:
    return [letter.inverse() for letter in reversed(word)]


def j_indices(word: Sequence[Letter]) -> List[int]:
    """Positions of the J-letters, j_1 (the rightmost) first."""
    return [i for i in range(len(word) - 1, -1, -1) if word[i].tag == J]


def prefix_maps(word: Sequence[Letter], field) -> List[CremonaMap]:
    """P_0 = id and P_i = j_i a_i ... j_1 a_1, composed incrementally from the right."""
    maps = [CremonaMap.identity(field)]
    current = maps[0]
    for i in range(len(word) - 1, -1, -1):
        current = compose(word[i].map, current)
        if word[i].tag == J:
            maps.append(current)
    return maps


def prefix_degrees(word: Sequence[Letter], field) -> List[int]:
    return [f.degree for f in prefix_maps(word, field)]


def prefix_inverse(word: Sequence[Letter], n: int, field) -> CremonaMap:
    """P_n^-1, whose components define the system Lambda_n."""
    if n == 0:
        return CremonaMap.identity(field)
    start = j_indices(word)[n - 1]
    return eval_word(invert_word(word[start:]), field)


def prefix_systems(word: Sequence[Letter], field) -> List[LinearSystemClass]:
    """Lambda_0 (the lines), ..., Lambda_r."""
    systems = []
    for n, P in enumerate(prefix_maps(word, field)):
        systems.append(class_of(P, prefix_inverse(word, n, field)))
    return systems


class RewriteComplexity(NamedTuple):
    D: int
    n: int
    k: int

    @property
    def measure(self):
        return (self.D, self.k)


def complexity(word: Sequence[Letter], field) -> RewriteComplexity:
    degrees = prefix_degrees(word, field)
    D = max(degrees)
    n = max(i for i, d in enumerate(degrees) if d == D)
    positions = j_indices(word)
    k = sum(word[positions[i - 1]].degree - 1 for i in range(1, n + 1))
    return RewriteComplexity(D, n, k)
