# tests/test_rewriter.py
import pytest

from cremona.amalgam import (
    Derivation, Letter, case_b_left, case_b_right, complexity, eval_word, invert_word, prefix_degrees, preprocess,
    rewrite_identity, verify_trace,
)
from cremona.amalgam.graph import _case_node, default_budget, prepare_node
from cremona.amalgam.moves import CASE_A, CASE_B, ELEMENTARY_KINDS, MACRO_KINDS
from cremona.amalgam.rewriter import (
    _check_degree_formula, _check_reduced_degree, _check_swapped, analyze, dispatch, normalize_neighbors,
)
from cremona.bubble import BubblePoint
from cremona.decompose import decompose
from cremona.errors import DegreeFormulaMismatch, NotIdentityInput, ProofGapDetected
from cremona.jonq import cremona_to_jonq
from cremona.polymap import compose, linear_to_cremona
from cremona.projlinear import ProjLinearMap
from cremona.quadlib import core_jonq, core_map, linear_generator


def _sigma(qq):
    return Letter.j(core_jonq("sigma", qq))


def _tau(qq):
    return Letter.a(linear_generator("tau", qq))


def _assert_reduced(outcome):
    trace = outcome.trace
    assert trace.final == []
    ok, index, reason = verify_trace(trace)
    assert ok, f"move {index}: {reason}"
    assert trace.elementary_count() <= outcome.budget
    assert set(trace.kinds_used()) <= set(ELEMENTARY_KINDS + MACRO_KINDS)


def test_sigma_tau_relation(qq):
    word = [_sigma(qq), _tau(qq), _sigma(qq), _tau(qq)]
    assert complexity(word, qq) == (2, 1, 1)
    outcome = rewrite_identity(word, qq)
    _assert_reduced(outcome)
    assert outcome.stats.get("case_a") == 1
    assert CASE_A in outcome.trace.kinds_used()
    step = outcome.steps[0]
    assert step["before"] == [2, 1, 1]
    assert step["after"] is None or tuple(step["after"][:1]) < (2,)


def test_non_identity_input_is_rejected(qq):
    with pytest.raises(NotIdentityInput):
        rewrite_identity([_sigma(qq), _tau(qq)], qq)


def test_empty_word(qq):
    outcome = rewrite_identity([], qq)
    assert outcome.trace.moves == []
    assert outcome.trace.final == []


def test_preprocess_merges_runs_and_drops_identities(qq):
    d = Derivation([_tau(qq), _tau(qq), _sigma(qq), _sigma(qq)], qq)
    moves = preprocess(d)
    assert d.word == []
    assert moves
    assert verify_trace(d.to_trace())[0]


def test_nu1_relation_word(qq):
    nu1 = Letter.j(core_jonq("nu1", qq))
    rho1 = lambda: Letter.a(linear_generator("rho1", qq))
    word = [nu1, rho1(), _sigma(qq), rho1(), _sigma(qq), rho1()]
    assert eval_word(word, qq).is_identity()
    _assert_reduced(rewrite_identity(word, qq))


def test_word_against_its_decomposition(qq):
    a = Letter.a(ProjLinearMap.of([[1, 2, 3], [0, 1, 4], [5, 0, 1]], qq))
    g = [_sigma(qq), a, _sigma(qq)]
    other = decompose(eval_word(g, qq)).word
    word = g + invert_word(other)
    assert eval_word(word, qq).is_identity()
    outcome = rewrite_identity(word, qq)
    _assert_reduced(outcome)
    for step in outcome.steps:
        if step["case"] == "case_a" and step["after"] is not None:
            before, after = step["before"], step["after"]
            assert (after[0], after[2]) < (before[0], before[2])


def test_default_budget(qq):
    word = [_sigma(qq), _tau(qq), _sigma(qq), _tau(qq)]
    assert default_budget(word) == 10 * 6 ** 2


def test_case_split_on_the_sigma_tau_relation(qq):
    word = [_sigma(qq), _tau(qq), _sigma(qq), _tau(qq)]
    d = Derivation(word, qq)
    assert normalize_neighbors(d, 1) == []
    hood = analyze(d.word, qq)
    assert hood.n == 1 and hood.d_n == 2
    assert dispatch(hood) == "case_a"


# A sends p1 to p2 and no other standard point onto one, so sigma A^-1 sigma has degree 3 with
# its double point at p2.  The word below is j3 tau j2 a2 sigma = identity with prefix degrees 1, 2, 3, 1.

def _right_swap_word(qq):
    a = ProjLinearMap.of([[0, 1, 1], [1, 1, 2], [0, 1, 3]], qq)
    rho1, tau = linear_generator("rho1", qq), linear_generator("tau", qq)
    sigma = core_map("sigma", qq)
    j2 = cremona_to_jonq(compose(sigma, linear_to_cremona(rho1)))
    j3_map = compose(compose(compose(sigma, linear_to_cremona(a.inverse())), sigma), linear_to_cremona(tau))
    return [Letter.j(cremona_to_jonq(j3_map)), Letter.a(tau), Letter.j(j2), Letter.a(rho1 @ a), _sigma(qq)]


def _left_swap_word(qq):
    return invert_word(_right_swap_word(qq))


def _measure(c):
    return c[0], c[2]


def _case_b_move(trace):
    return next(m for m in trace.moves if m.kind == CASE_B)


def test_right_swap_configuration(qq, p1, p2, p3):
    word = _right_swap_word(qq)
    assert eval_word(word, qq).is_identity()
    assert prefix_degrees(word, qq) == [1, 2, 3, 1]
    assert complexity(word, qq) == (3, 2, 2)
    d = Derivation(word, qq)
    assert normalize_neighbors(d, 2) == []
    hood = analyze(d.word, qq)
    assert (hood.n, hood.d_n) == (2, 3)
    assert hood.l0 == p2 and hood.m_l0 == 2
    assert hood.r0 == p1 and hood.m_r0 == 1
    assert hood.r_points[:2] == [(BubblePoint(p2), 2), (BubblePoint(p3), 1)]
    assert dispatch(hood) == "case_b_right"


def test_case_b_right_keeps_measure_and_moves_n(qq):
    d = Derivation(_right_swap_word(qq), qq)
    hood = analyze(d.word, qq)
    before = complexity(d.word, qq)
    (move,) = case_b_right(d, hood)
    after = complexity(d.word, qq)
    assert _measure(after) == _measure(before)
    assert after.n == before.n + 1
    assert prefix_degrees(d.word, qq) == [1, 2, 2, 3, 1]
    assert move.kind == CASE_B and move.justification["side"] == "right"
    assert all(letter.degree <= hood.d_n for letter in move.produced)
    assert eval_word(d.word, qq).is_identity()
    ok, index, reason = verify_trace(d.to_trace())
    assert ok, f"move {index}: {reason}"


def test_left_swap_configuration(qq, p1, p2):
    word = _left_swap_word(qq)
    assert prefix_degrees(word, qq) == [1, 3, 2, 1]
    assert complexity(word, qq) == (3, 1, 2)
    d = Derivation(word, qq)
    assert normalize_neighbors(d, 1) == []
    hood = analyze(d.word, qq)
    assert hood.l0 == p2 and hood.m_l0 == 1
    assert hood.m_r0 == 2
    assert hood.l_points[0] == (BubblePoint(p1), 2)
    assert dispatch(hood) == "case_b_left"


def test_case_b_left_keeps_complexity(qq):
    d = Derivation(_left_swap_word(qq), qq)
    hood = analyze(d.word, qq)
    before = complexity(d.word, qq)
    (move,) = case_b_left(d, hood)
    after = complexity(d.word, qq)
    # the prefix ending at the new j_{n+1} drops below D, so n stays where it was
    assert after == before
    assert prefix_degrees(d.word, qq) == [1, 3, 2, 2, 1]
    assert move.justification["side"] == "left"
    assert all(letter.degree <= hood.d_n for letter in move.produced)
    ok, index, reason = verify_trace(d.to_trace())
    assert ok, f"move {index}: {reason}"


@pytest.mark.parametrize("side", ["right", "left"])
def test_swap_words_reduce_to_the_empty_word(qq, side):
    word = _right_swap_word(qq) if side == "right" else _left_swap_word(qq)
    outcome = rewrite_identity(word, qq)
    _assert_reduced(outcome)
    assert outcome.stats == {f"case_b_{side}": 1}
    step = outcome.steps[0]
    assert step["case"] == f"case_b_{side}"
    assert step["before"] == ([3, 2, 2] if side == "right" else [3, 1, 2])
    assert step["after"] == ([3, 3, 2] if side == "right" else [3, 1, 2])
    move = _case_b_move(outcome.trace)
    assert all(letter.degree <= 3 for letter in move.produced)


def test_case_a_lowers_the_measure(qq):
    outcome = rewrite_identity([_sigma(qq), _tau(qq), _sigma(qq), _tau(qq)], qq)
    for step in outcome.steps:
        assert step["case"] == "case_a"
        assert step["after"] is None or _measure(step["after"]) < _measure(step["before"])


def test_degree_formula_disagreement_raises(qq):
    hood = analyze(_right_swap_word(qq), qq)
    observed = hood.degrees[hood.n + 1]
    _check_degree_formula(hood, hood.j_left.degree, hood.m_l0, hood.l_points, observed, "left")
    with pytest.raises(DegreeFormulaMismatch) as info:
        _check_degree_formula(hood, hood.j_left.degree, hood.m_l0, hood.l_points, observed + 1, "left")
    assert info.value.payload["predicted"] == observed
    assert info.value.payload["computed"] == observed + 1
    assert info.value.payload["side"] == "left"
    assert info.value.payload["complexity"] == [3, 2, 2]


def test_case_b_post_conditions(qq):
    hood = analyze(_right_swap_word(qq), qq)
    _check_reduced_degree(hood, 2, None, "right")
    with pytest.raises(DegreeFormulaMismatch) as info:
        _check_reduced_degree(hood, 2, _sigma(qq), "right")
    assert (info.value.payload["predicted"], info.value.payload["computed"]) == (1, 2)
    with pytest.raises(ProofGapDetected):
        _check_swapped(hood, 1, 2, "right")
    with pytest.raises(ProofGapDetected):
        _check_swapped(hood, 2, 2, "left")
    _check_swapped(hood, 2, 1, "left")


def test_graph_nodes_return_updates_without_touching_their_input(qq):
    state = {"derivation": Derivation(_right_swap_word(qq), qq), "neighbourhood": None, "route": None,
             "steps": [], "stats": {}}
    update = prepare_node(state)
    assert update["route"] == "case_b_right"
    assert update["derivation"] is not state["derivation"]
    assert state["derivation"].moves == []

    prepared = {**state, **update}
    result = _case_node("case_b_right", case_b_right)(prepared)
    assert state["stats"] == {} and prepared["stats"] == {}
    assert result["stats"] == {"case_b_right": 1}
    assert len(prepared["derivation"].word) == 5
    assert len(result["derivation"].word) == 6
    assert result["steps"][0]["moves"] == result["derivation"].spent
