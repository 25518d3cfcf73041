# tests/test_lemma.py
import random

import pytest

from cremona.amalgam import Letter, Move, Trace, lemma1_conjugate, verify_trace
from cremona.amalgam.moves import SHIFT, SWAP
from cremona.bubble import BubblePoint
from cremona.errors import DegenerateConfiguration
from cremona.jonq import is_in_J, jonq_inverse, jonq_to_cremona
from cremona.polymap import compose, linear_to_cremona
from cremona.projlinear import ProjLinearMap, apply_linear, swap_map
from cremona.quadlib import linear_generator, quadratic_j_map


def _check_conjugation(theta, nu, qq):
    theta_prime, trace = lemma1_conjugate(theta, nu)
    nu_map = linear_to_cremona(nu)
    theta_inv = jonq_to_cremona(jonq_inverse(theta.jonq))
    theta_prime_inv = jonq_to_cremona(jonq_inverse(theta_prime.jonq))
    assert compose(nu_map, theta_inv) == compose(theta_prime_inv, nu_map)
    assert is_in_J(theta_prime.map)
    assert theta_prime.map.degree == 2
    ok, index, reason = verify_trace(trace)
    assert ok, f"move {index}: {reason}"
    assert len(trace.final) == 2
    assert trace.final[-1].payload == nu
    return trace


def test_sigma_conjugated_by_tau(qq, p2, p3):
    theta = quadratic_j_map(p2, BubblePoint(p3))
    trace = _check_conjugation(theta, linear_generator("tau", qq), qq)
    assert SWAP in trace.kinds_used()


def test_generic_sigma_type(qq, pt, p1):
    q = pt(1, 2, 3)
    theta = quadratic_j_map(q, BubblePoint(pt(0, 1, 1)))
    _check_conjugation(theta, swap_map(p1, q), qq)


@pytest.mark.parametrize("over", ["p1", "q"])
def test_nu_type_cores(qq, pt, p1, over):
    q = pt(1, 2, 3)
    root = p1 if over == "p1" else q
    theta = quadratic_j_map(q, BubblePoint(root, (("first", qq.convert(5)),)))
    trace = _check_conjugation(theta, swap_map(p1, q), qq)
    assert {SHIFT, SWAP} <= set(trace.kinds_used())


def test_exchanging_map_required(qq, pt, p2, p3):
    theta = quadratic_j_map(p2, BubblePoint(p3))
    not_exchanging = ProjLinearMap.of([[1, 0, 0], [0, 2, 0], [0, 0, 1]], qq)
    assert apply_linear(not_exchanging, p2) == p2
    with pytest.raises(DegenerateConfiguration):
        lemma1_conjugate(theta, not_exchanging)


def _random_configuration(rng, qq, pt, p1):
    """Second base point and third point of a quadratic map of J, redrawn until they are in general position."""
    while True:
        try:
            q = pt(*(rng.randint(-4, 4) for _ in range(3)))
            kind = rng.choice(["proper", "p1", "q"])
            if kind == "proper":
                third = BubblePoint(pt(*(rng.randint(-4, 4) for _ in range(3))))
            else:
                third = BubblePoint(p1 if kind == "p1" else q, (("first", qq.convert(rng.randint(-4, 4))),))
            return quadratic_j_map(q, third), q
        except DegenerateConfiguration:
            continue


@pytest.mark.slow
def test_conjugation_sweep_and_mutations(qq, pt, p1):
    rng = random.Random(2024)
    for _ in range(50):
        theta, q = _random_configuration(rng, qq, pt, p1)
        trace = _check_conjugation(theta, swap_map(p1, q), qq)
        i = rng.randrange(len(trace.moves))
        move = trace.moves[i]
        extra = Letter.a(linear_generator("rho1", qq))
        mutated = Move(kind=move.kind, position=move.position, consumed=list(move.consumed),
                       produced=list(move.produced) + [extra], justification=move.justification,
                       submoves=list(move.submoves))
        moves = list(trace.moves)
        moves[i] = mutated
        ok, index, _ = verify_trace(Trace(base_field=trace.base_field, initial=trace.initial, moves=moves,
                                          final=trace.final))
        assert not ok and index == i
