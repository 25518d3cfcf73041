# tests/test_polymap.py
import pytest

from cremona.errors import BasePointEvaluation, CollapsedMap, UsageError
from cremona.polymap import (
    CremonaMap, compose, compose_all, cremona_to_linear, eval_at, linear_to_cremona, maps_equal,
)
from cremona.projlinear import ProjLinearMap


@pytest.mark.parametrize("name", ["sigma", "tau", "nu1", "nu2", "rho1", "rho2"])
def test_generators_are_involutions(gens, qq, name):
    assert compose(gens[name], gens[name]).is_identity()


def test_sigma_tau_commute(gens, parse):
    expected = parse("[X*Z : Y*Z : X*Y]")
    assert compose(gens["sigma"], gens["tau"]) == expected
    assert compose(gens["tau"], gens["sigma"]) == expected


@pytest.mark.parametrize("i", [1, 2])
def test_nu_as_rho_sigma_word(gens, qq, i):
    rho, sigma = gens[f"rho{i}"], gens["sigma"]
    assert compose_all([rho, sigma, rho, sigma, rho], qq) == gens[f"nu{i}"]


def test_tau_conjugates_rho1_to_rho2(gens, qq):
    tau = gens["tau"]
    assert compose_all([tau, gens["rho1"], tau], qq) == gens["rho2"]


def test_common_factor_is_removed(gens, parse):
    # sigma nu1 has a common factor YZ before simplification
    assert compose(gens["sigma"], gens["nu1"]) == gens["nu2"]
    assert parse("[X^2 : X*Y : X*Z]").is_identity()
    assert parse("[2*X*Y : 2*Y^2 : 2*Y*Z]").is_identity()


def test_named_generator_triples(gens, parse):
    assert gens["sigma"] == parse("[Y*Z : X*Z : X*Y]")
    assert gens["nu1"] == parse("[X*Y : Z^2 : Y*Z]")
    assert gens["nu2"] == parse("[Z^2 : X*Y : X*Z]")
    assert gens["rho1"] == parse("[X : Z - Y : Z]")
    assert str(compose(gens["sigma"], gens["sigma"])) == "[X : Y : Z]"


def test_invalid_triples(parse):
    with pytest.raises(CollapsedMap):
        parse("[X : X : X]")
    with pytest.raises(UsageError):
        parse("[X^2 : Y : Z]")
    with pytest.raises(UsageError):
        parse("[X + Y^2 : Y^2 : Z^2]")
    with pytest.raises(UsageError):
        parse("X : Y : Z")


def test_evaluation(gens, pt, p1):
    assert eval_at(gens["sigma"], pt(1, 2, 3)) == pt(6, 3, 2)
    with pytest.raises(BasePointEvaluation):
        eval_at(gens["sigma"], p1)


def test_linear_round_trip(qq):
    m = ProjLinearMap.of([[1, 2, 0], [0, 1, 3], [4, 0, 1]], qq)
    f = linear_to_cremona(m)
    assert f.degree == 1
    assert cremona_to_linear(f) == m
    assert maps_equal(compose(f, linear_to_cremona(m.inverse())), CremonaMap.identity(qq))
