# cremona/decompose.py
"""
Greedy decomposition of a birational map into A- and J-letters.

While the degree d is above one, three base points q0, q1, q2 with m0 + m1 + m2 > d are moved
by a linear map alpha to p1, alpha(q1), alpha(q2); with theta the quadratic map of J through
those points, f = (f alpha^-1 theta^-1) theta alpha and the first factor has degree
2d - m0 - m1 - m2.
"""
import logging
from itertools import combinations, permutations
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic.v1 import BaseModel, Field

from cremona.amalgam.words import Letter, Word, eval_word, invert_word, word_to_dicts
from cremona.bubble import BubblePoint, base_points, sorted_points, transform_bubble
from cremona.errors import DecompositionStuck, DegenerateConfiguration
from cremona.jonq import jonq_inverse, jonq_to_cremona
from cremona.polymap import CremonaMap, compose, cremona_to_linear, linear_to_cremona, maps_equal
from cremona.projlinear import ProjLinearMap, standard_point, swap_map
from cremona.quadlib import QuadraticJMap, quadratic_j_map

logger = logging.getLogger(__name__)

__all__ = ["DecompositionStep", "DecompositionResult", "decompose", "invert_word"]


class DecompositionStep(BaseModel):
    points: List[str] = Field(description="The chosen base points, the one sent to p1 first.")
    multiplicities: List[int] = Field(description="Their multiplicities as base points of the current map.")
    degree_before: int
    degree_after: int
    core: str = Field(description="Quadratic core of the J-letter (sigma, nu1 or nu2).")


class DecompositionResult(BaseModel):
    word: List[Letter] = Field(default_factory=list, description="Letters, the rightmost applied first.")
    steps: List[DecompositionStep] = Field(default_factory=list)

    class Config:
        arbitrary_types_allowed = True

    def degrees(self) -> List[int]:
        if not self.steps:
            return []
        return [self.steps[0].degree_before] + [s.degree_after for s in self.steps]

    def to_dict(self) -> Dict[str, Any]:
        return {"word": word_to_dicts(self.word), "steps": [s.dict() for s in self.steps]}


def _admissible(first: BubblePoint, second: BubblePoint, third: BubblePoint) -> bool:
    if not first.is_proper() or not second.is_proper():
        return False
    return third.is_proper() or (third.depth == 1 and third.root in (first.root, second.root))


def _candidates(points: Sequence[Tuple[BubblePoint, int]], d: int):
    """Role assignments of triples with m0 + m1 + m2 > d, largest sums first, sorted order on ties."""
    triples = []
    for order, triple in enumerate(combinations(range(len(points)), 3)):
        total = sum(points[i][1] for i in triple)
        if total > d:
            triples.append((-total, order, triple))
    for _, _, triple in sorted(triples):
        for roles in permutations(triple):
            chosen = [points[i] for i in roles]
            if _admissible(*(q for q, _ in chosen)):
                yield chosen


def _mover(q0: BubblePoint, field) -> ProjLinearMap:
    p1 = standard_point(1, field)
    if q0.root == p1:
        return ProjLinearMap.identity(field)
    return swap_map(q0.root, p1)


def _step(f: CremonaMap) -> Optional[Tuple[ProjLinearMap, QuadraticJMap, CremonaMap, DecompositionStep]]:
    field = f.field
    d = f.degree
    points = sorted_points(base_points(f))
    for chosen in _candidates(points, d):
        (q0, m0), (q1, m1), (q2, m2) = chosen
        alpha = _mover(q0, field)
        try:
            theta = quadratic_j_map(transform_bubble(alpha, q1).root, transform_bubble(alpha, q2))
        except DegenerateConfiguration:
            continue
        theta_inv = jonq_to_cremona(jonq_inverse(theta.jonq))
        rest = compose(compose(f, linear_to_cremona(alpha.inverse())), theta_inv)
        if rest.degree >= d:
            logger.debug(f"decompose: triple {q0}, {q1}, {q2} does not lower degree {d}")
            continue
        step = DecompositionStep(points=[str(q0), str(q1), str(q2)], multiplicities=[m0, m1, m2],
                                 degree_before=d, degree_after=rest.degree, core=theta.core)
        return alpha, theta, rest, step
    return None


def decompose(f: CremonaMap) -> DecompositionResult:
    """A word evaluating to ``f``; raises NotHomaloidal for maps that are not birational."""
    field = f.field
    applied: Word = []
    steps: List[DecompositionStep] = []
    current = f
    while current.degree > 1:
        found = _step(current)
        if found is None:
            points = sorted_points(base_points(current))
            raise DecompositionStuck("No admissible triple of base points lowers the degree.",
                                     degree=current.degree, points={str(q): m for q, m in points})
        alpha, theta, current, step = found
        if not alpha.is_identity():
            applied.append(Letter.a(alpha))
        applied.append(Letter.j(theta.jonq))
        steps.append(step)
        logger.info(f"decompose: degree {step.degree_before} -> {step.degree_after} via {step.points}")
    residue = cremona_to_linear(current)
    if not residue.is_identity():
        applied.append(Letter.a(residue))
    word = list(reversed(applied))
    if not maps_equal(eval_word(word, field), f):
        raise DecompositionStuck("Decomposed word does not evaluate to the input map.", map=str(f))
    return DecompositionResult(word=word, steps=steps)
