# cremona/amalgam/rewriter.py
"""
One step of the reduction of an identity word.

With f = j_r a_r ... j_1 a_1, Lambda_i the image of the lines under the prefix
j_i a_i ... j_1 a_1 and d_i its degree, the reduction works at n, the last index where d_i
reaches its maximum D.  Around j_{n+1} a_{n+1} j_n it compares the multiplicities in
Lambda_n of

    l-points: base points of j_{n+1} a_{n+1}, with l0 = a_{n+1}^-1(p1)
    r-points: base points of j_n^-1, with r0 = p1

and rewrites the word either to lower (D, k) (case a) or to swap l0/l1 or r0/r1 (case b).
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from cremona.amalgam.lemma import lemma1_derivation
from cremona.amalgam.moves import CASE_A, CASE_B, LEMMA, Derivation, Move, mirror_move
from cremona.amalgam.words import (
    A, J, Letter, RewriteComplexity, complexity, j_indices, prefix_degrees, prefix_inverse,
)
from cremona.bubble import BubblePoint, base_points, jonq_degree_formula, multiplicity_at, transform_bubble
from cremona.errors import (
    DegenerateConfiguration, DegreeFormulaMismatch, NotDeJonquieres, ProofGapDetected,
)
from cremona.jonq import jonq_inverse, jonq_to_cremona
from cremona.polymap import CremonaMap, compose, linear_to_cremona
from cremona.projlinear import (
    ProjLinearMap, ProjPoint, apply_linear, collinear, intersection_frame, standard_point, swap_map,
)
from cremona.quadlib import QuadraticJMap, quadratic_j_map

logger = logging.getLogger(__name__)

WeightedPoints = List[Tuple[BubblePoint, int]]


# --- Shape of the word ---

def _runs(word: Sequence[Letter]) -> List[Tuple[int, int]]:
    """Maximal same-tag runs as (start, end) with end exclusive."""
    runs, start = [], 0
    for i in range(1, len(word) + 1):
        if i == len(word) or word[i].tag != word[start].tag:
            runs.append((start, i))
            start = i
    return runs


def preprocess(d: Derivation) -> List[Move]:
    """Merge adjacent letters of one tag and drop identity letters until the word alternates."""
    before = len(d.moves)
    while True:
        target = None
        for start, end in _runs(d.word):
            letters = d.word[start:end]
            if len(letters) > 1 or letters[0].is_identity():
                target = letters
                break
        if target is None:
            return d.moves[before:]
        d.merge_run(target, step="preprocess")


def _absorb(d: Derivation, letter: Letter):
    """Shift a letter of A cap J to the other tag and merge it into its neighbours."""
    shifted = d.shift(letter)
    position = d.index(shifted)
    for start, end in _runs(d.word):
        if start <= position < end:
            d.merge_run(d.word[start:end], step="absorb")
            return


def _neighbours(word: Sequence[Letter], n: int) -> Tuple[Letter, Letter, Letter]:
    """(j_{n+1}, a_{n+1}, j_n) of an alternating word."""
    positions = j_indices(word)
    if n < 1 or n >= len(positions):
        raise ProofGapDetected("The maximal degree is reached by the last prefix of the word.", n=n,
                               letters=len(positions))
    right, left = positions[n - 1], positions[n]
    if right - left != 2 or word[right - 1].tag != A:
        raise ProofGapDetected("Word does not alternate around the maximal prefix.", n=n)
    return word[left], word[right - 1], word[right]


def normalize_neighbors(d: Derivation, n: int) -> List[Move]:
    """
    Make j_n, j_{n+1} non-linear and a_{n+1} move p1.  Returns the moves applied; an empty
    list means the neighbourhood of j_n was already normalized.
    """
    before = len(d.moves)
    j_left, a_mid, j_right = _neighbours(d.word, n)
    if j_right.degree == 1:
        _absorb(d, j_right)
    elif j_left.degree == 1:
        _absorb(d, j_left)
    elif a_mid.in_intersection():
        _absorb(d, a_mid)
    moves = d.moves[before:]
    if moves:
        logger.debug(f"normalize_neighbors: n={n}, {len(moves)} move(s)")
    return moves


# --- Point configuration at n ---

@dataclass
class Neighbourhood:
    """
    Base points around j_n with their multiplicities in Lambda_n.

    Attributes:
        l_points: Base points of j_{n+1} a_{n+1} other than l0, decreasing multiplicity.
        r_points: Base points of j_n^-1 other than r0 = p1, same order.
        degrees: Degrees of all prefix systems.
    """
    complexity: RewriteComplexity
    degrees: List[int]
    j_left: Letter
    a_mid: Letter
    j_right: Letter
    system: CremonaMap
    l0: ProjPoint
    r0: ProjPoint
    m_l0: int
    m_r0: int
    l_points: WeightedPoints
    r_points: WeightedPoints

    @property
    def n(self) -> int:
        return self.complexity.n

    @property
    def d_n(self) -> int:
        return self.degrees[self.n]

    def m(self, q: BubblePoint) -> int:
        if q.is_proper() and q.root == self.l0:
            return self.m_l0
        if q.is_proper() and q.root == self.r0:
            return self.m_r0
        for point, weight in self.l_points + self.r_points:
            if point == q:
                return weight
        return multiplicity_at(self.system, q)

    def to_dict(self) -> Dict:
        return {
            "complexity": list(self.complexity), "d_n": self.d_n,
            "l0": str(self.l0), "m_l0": self.m_l0, "r0": str(self.r0), "m_r0": self.m_r0,
            "l_points": [[str(q), m] for q, m in self.l_points[:2]],
            "r_points": [[str(q), m] for q, m in self.r_points[:2]],
        }


def _weighted(points, center: ProjPoint, system: CremonaMap) -> WeightedPoints:
    weighted = [(q, multiplicity_at(system, q)) for q in points if not (q.is_proper() and q.root == center)]
    return sorted(weighted, key=lambda item: (-item[1], item[0].depth, str(item[0])))


def analyze(word: Sequence[Letter], field) -> Neighbourhood:
    """Read the configuration at n; checks the inequalities the case split relies on."""
    c = complexity(word, field)
    degrees = prefix_degrees(word, field)
    n = c.n
    j_left, a_mid, j_right = _neighbours(word, n)
    system = prefix_inverse(word, n, field)
    p1 = standard_point(1, field)
    l0 = apply_linear(a_mid.payload.inverse(), p1)
    left_map = compose(j_left.map, a_mid.map)
    right_inverse = jonq_to_cremona(jonq_inverse(j_right.payload))
    l_points = _weighted(base_points(left_map), l0, system)
    r_points = _weighted(base_points(right_inverse), p1, system)
    m_l0 = multiplicity_at(system, BubblePoint(l0))
    m_r0 = multiplicity_at(system, BubblePoint(p1))
    hood = Neighbourhood(c, degrees, j_left, a_mid, j_right, system, l0, p1, m_l0, m_r0, l_points, r_points)
    d_n = hood.d_n

    _check_degree_formula(hood, j_left.degree, m_l0, l_points, degrees[n + 1], "left")
    _check_degree_formula(hood, j_right.degree, m_r0, r_points, degrees[n - 1], "right")
    if m_l0 + sum(m for _, m in l_points[:2]) <= d_n:
        raise ProofGapDetected("Multiplicities at l0, l1, l2 do not exceed the degree.", **hood.to_dict())
    if m_r0 + sum(m for _, m in r_points[:2]) < d_n:
        raise ProofGapDetected("Multiplicities at r0, r1, r2 are below the degree.", **hood.to_dict())
    logger.debug(f"analyze: {hood.to_dict()}")
    return hood


def _check_degree_formula(hood: Neighbourhood, degree: int, m0: int, others: WeightedPoints, observed: int,
                          side: str):
    predicted = jonq_degree_formula(hood.d_n, degree, m0, [m for _, m in others])
    if predicted != observed:
        raise DegreeFormulaMismatch(f"Degree formula on the {side} predicts {predicted}, the prefix has degree {observed}.",
                                    side=side, predicted=predicted, computed=observed, **hood.to_dict())


def dispatch(hood: Neighbourhood) -> str:
    """'case_b_right', 'case_b_left' or 'case_a'."""
    if hood.m(hood.r_points[0][0]) > hood.m_r0:
        return "case_b_right"
    if hood.m(hood.l_points[0][0]) > hood.m_l0:
        return "case_b_left"
    return "case_a"


# --- Rewrites ---

def _lemma_move(theta: QuadraticJMap, nu: ProjLinearMap) -> Tuple[Move, QuadraticJMap]:
    try:
        segment, theta_prime = lemma1_derivation(theta, nu)
    except (DegenerateConfiguration, NotDeJonquieres) as e:
        raise ProofGapDetected("Conjugation by the exchanging map failed.", reason=e.message, theta=str(theta.map))
    move = Move(kind=LEMMA, position=0, consumed=list(segment.initial), produced=list(segment.word),
                justification={"theta": str(theta.map), "nu": str(nu), "theta_prime": str(theta_prime.map)},
                submoves=list(segment.moves))
    return move, theta_prime


def _quadratic(second: ProjPoint, third: BubblePoint) -> QuadraticJMap:
    try:
        return quadratic_j_map(second, third)
    except DegenerateConfiguration as e:
        raise ProofGapDetected("No quadratic map of J through the chosen points.", second=str(second),
                               third=str(third), reason=e.message)


def _first_two(points: WeightedPoints, side: str) -> Tuple[BubblePoint, BubblePoint]:
    if len(points) < 2:
        raise ProofGapDetected(f"Fewer than two base points on the {side}.", side=side)
    return points[0][0], points[1][0]


def _candidate_key(q: BubblePoint, hood: Neighbourhood) -> Tuple:
    over_r0 = not q.is_proper() and q.root == hood.r0
    over_l0 = not q.is_proper() and q.root == hood.l0
    return (-hood.m(q), not q.is_proper(), not over_r0, not over_l0, str(q))


def choose_q(hood: Neighbourhood) -> BubblePoint:
    """Point of maximal multiplicity among l1, l2, r1, r2 usable as third base point."""
    excluded = {BubblePoint(hood.l0), BubblePoint(hood.r0)}
    candidates = []
    for q, _ in hood.l_points[:2] + hood.r_points[:2]:
        if q in excluded or q in candidates:
            continue
        if q.is_proper() or (q.depth == 1 and q.root in (hood.l0, hood.r0)):
            candidates.append(q)
    if not candidates:
        raise ProofGapDetected("No admissible third point among l1, l2, r1, r2.", **hood.to_dict())
    candidates.sort(key=lambda q: _candidate_key(q, hood))
    return candidates[0]


def case_a_step(d: Derivation, hood: Neighbourhood) -> List[Move]:
    """j_{n+1} a_{n+1} j_n -> (j_{n+1} theta'^-1) a_{n+1} (theta j_n)."""
    field = d.field
    q = choose_q(hood)
    if hood.m_l0 + hood.m_r0 + hood.m(q) <= hood.d_n:
        raise ProofGapDetected("m(l0) + m(r0) + m(q) does not exceed the degree.", q=str(q), **hood.to_dict())
    if q.is_proper() and collinear(hood.l0, hood.r0, q.root):
        raise ProofGapDetected("l0, r0 and q are aligned.", q=str(q), **hood.to_dict())
    theta = _quadratic(hood.l0, q)

    position = d.index(hood.j_left)
    seg = Derivation([hood.j_left, hood.a_mid, hood.j_right], field)
    j_left, a_mid, j_right = seg.initial

    # nu in A cap J sending a_{n+1}(p1) onto l0, absorbed into j_{n+1}
    a = a_mid.payload
    image = apply_linear(a, hood.r0)
    nu = intersection_frame(hood.l0).inverse() @ intersection_frame(image)
    if not nu.is_identity():
        split = seg.merge([a_mid], [Letter.a(nu.inverse()), Letter.a(nu @ a)], step="send a(p1) to l0")
        a_mid = split[-1]
        moved = seg.shift(split[0])
        j_left = seg.merge_run([j_left, moved], step="j_{n+1} nu^-1")
    a = a_mid.payload
    if apply_linear(a, hood.r0) != hood.l0:
        raise ProofGapDetected("Linear letter does not exchange l0 and r0.", a=str(a), **hood.to_dict())

    lemma, theta_prime = _lemma_move(theta, a)
    _, theta_letter = seg.insert_cancel_pair(seg.index(j_right), Letter.j(theta.jonq))
    seg.merge_run([theta_letter, j_right], step="theta j_n")
    theta_prime_inv, _ = seg.apply_move(seg.index(a_mid), lemma)
    seg.merge_run([j_left, theta_prime_inv], step="j_{n+1} theta'^-1")

    d.macro(CASE_A, position, 3, seg, justification={
        "q": str(q), "theta": str(theta.map), "theta_prime": str(theta_prime.map), **hood.to_dict()})
    logger.info(f"case (a) at n={hood.n}: q={q}, theta={theta.map}")
    return d.moves[-1:]


def case_b_right(d: Derivation, hood: Neighbourhood) -> List[Move]:
    """a_{n+1} j_n -> (a_{n+1} nu^-1) theta'^-1 nu (theta j_n) with nu exchanging r0 and r1."""
    field = d.field
    r1, r2 = _first_two(hood.r_points, "right")
    if not r1.is_proper():
        raise ProofGapDetected("r1 has the largest multiplicity but is infinitely near.", r1=str(r1), **hood.to_dict())
    theta = _quadratic(r1.root, r2)
    nu = swap_map(hood.r0, r1.root)
    lemma, theta_prime = _lemma_move(theta, nu)

    position = d.index(hood.a_mid)
    seg = Derivation([hood.a_mid, hood.j_right], field)
    a_mid, j_right = seg.initial
    _, theta_letter = seg.insert_cancel_pair(1, Letter.j(theta.jonq))
    reduced = seg.merge_run([theta_letter, j_right], step="theta j_n")
    split = seg.merge([a_mid], [Letter.a(a_mid.payload @ nu.inverse()), lemma.consumed[0]], step="a_{n+1} nu^-1 nu")
    seg.apply_move(seg.index(split[-1]), lemma)
    _check_reduced_degree(hood, hood.j_right.degree, reduced, "right")
    moved_system = compose(hood.system, linear_to_cremona(nu.inverse()))
    _check_swapped(hood, multiplicity_at(moved_system, BubblePoint(hood.r0)),
                   multiplicity_at(moved_system, BubblePoint(r1.root)), "right")

    d.macro(CASE_B, position, 2, seg, justification={
        "side": "right", "r1": str(r1), "r2": str(r2), "theta": str(theta.map), "nu": str(nu), **hood.to_dict()})
    logger.info(f"case (b) right at n={hood.n}: exchanging {hood.r0} and {r1.root}")
    return d.moves[-1:]


def case_b_left(d: Derivation, hood: Neighbourhood) -> List[Move]:
    """j_{n+1} a_{n+1} -> (j_{n+1} eta^-1) nu^-1 eta' (nu a_{n+1}) with nu exchanging p1 and a_{n+1}(l1)."""
    field = d.field
    l1, l2 = _first_two(hood.l_points, "left")
    if not l1.is_proper():
        raise ProofGapDetected("l1 has the largest multiplicity but is infinitely near.", l1=str(l1), **hood.to_dict())
    a = hood.a_mid.payload
    try:
        s1, s2 = transform_bubble(a, l1), transform_bubble(a, l2)
    except DegenerateConfiguration as e:
        raise ProofGapDetected("Base point on the left is too deep to transport.", reason=e.message)
    p1 = standard_point(1, field)
    eta = _quadratic(s1.root, s2)
    nu = swap_map(p1, s1.root)
    # nu eta^-1 -> eta'^-1 nu read backwards is eta nu^-1 -> nu^-1 eta'
    forward, _ = _lemma_move(eta, nu)
    lemma = mirror_move(forward, len(forward.consumed))
    eta_value, nu_inv_value = lemma.consumed

    position = d.index(hood.j_left)
    seg = Derivation([hood.j_left, hood.a_mid], field)
    j_left, a_mid = seg.initial
    eta_inv, eta_letter = seg.insert_cancel_pair(1, eta_value)
    reduced = seg.merge_run([j_left, eta_inv], step="j_{n+1} eta^-1")
    seg.merge([a_mid], [nu_inv_value, Letter.a(nu @ a)], step="nu^-1 nu a_{n+1}")
    seg.apply_move(seg.index(eta_letter), lemma)
    _check_reduced_degree(hood, hood.j_left.degree, reduced, "left")
    new_l0 = apply_linear((nu @ a).inverse(), p1)
    _check_swapped(hood, hood.m(BubblePoint(new_l0)), hood.m_l0, "left")

    d.macro(CASE_B, position, 2, seg, justification={
        "side": "left", "l1": str(l1), "l2": str(l2), "eta": str(eta.map), "nu": str(nu), **hood.to_dict()})
    logger.info(f"case (b) left at n={hood.n}: exchanging {hood.l0} and {l1.root}")
    return d.moves[-1:]


def _check_reduced_degree(hood: Neighbourhood, degree: int, reduced: Optional[Letter], side: str):
    observed = reduced.degree if reduced is not None else 1
    if observed != degree - 1:
        raise DegreeFormulaMismatch(f"Case (b) on the {side} left a letter of degree {observed}, expected {degree - 1}.",
                                    side=side, predicted=degree - 1, computed=observed, **hood.to_dict())


def _check_swapped(hood: Neighbourhood, swapped: int, other: int, side: str):
    """After case (b) the new main point must carry the larger multiplicity."""
    if swapped <= other:
        raise ProofGapDetected(f"Case (b) on the {side} did not reverse the multiplicities.",
                               side=side, swapped=swapped, other=other, **hood.to_dict())


def finish_linear(d: Derivation) -> List[Move]:
    """All prefixes linear: every letter lies in A, so the word merges away."""
    before = len(d.moves)
    for letter in list(d.word):
        if letter.tag == J:
            if letter.degree != 1:
                raise ProofGapDetected("Non-linear letter in a word of maximal degree one.", letter=str(letter))
            d.shift(letter)
    if d.word:
        d.merge_run(list(d.word), step="collapse linear word")
    return d.moves[before:]

