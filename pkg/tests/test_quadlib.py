# tests/test_quadlib.py
import pytest

from cremona.bubble import BubblePoint, base_points
from cremona.errors import DegenerateConfiguration, FactorizationFailed
from cremona.jonq import is_in_J
from cremona.polymap import compose, linear_to_cremona
from cremona.projlinear import ProjLinearMap, in_A_cap_J
from cremona.quadlib import factor_quadratic, factors_product, nu_expand, quadratic_j_map
from cremona.jonq import jonq_compose


def test_standard_points_give_sigma(gens, p2, p3):
    theta = quadratic_j_map(p2, BubblePoint(p3))
    assert theta.map == gens["sigma"]
    assert theta.core == "sigma"


@pytest.mark.parametrize("third_root, core", [("p1", "nu1"), ("q", "nu2")])
def test_first_neighbourhood_third_point(qq, pt, p1, third_root, core):
    q = pt(1, 2, 3)
    root = p1 if third_root == "p1" else q
    third = BubblePoint(root, (("first", qq.convert(5)),))
    theta = quadratic_j_map(q, third)
    assert theta.core == core
    assert theta.map.degree == 2
    assert is_in_J(theta.map)
    assert set(base_points(theta.map)) == {BubblePoint(p1), BubblePoint(q), third}


def test_generic_quadratic_map(qq, pt, p1):
    q, r = pt(1, 2, 3), pt(0, 1, 1)
    theta = quadratic_j_map(q, BubblePoint(r))
    assert base_points(theta.map) == {BubblePoint(p1): 1, BubblePoint(q): 1, BubblePoint(r): 1}
    a1, core, a2 = theta.factors
    assert core == "sigma"
    assert in_A_cap_J(a1) and in_A_cap_J(a2)
    assert factors_product(theta.factors, qq) == theta.map


def test_collinear_points_are_degenerate(pt, p2):
    with pytest.raises(DegenerateConfiguration):
        quadratic_j_map(p2, BubblePoint(pt(1, 1, 0)))
    with pytest.raises(DegenerateConfiguration):
        quadratic_j_map(pt(1, 0, 0), BubblePoint(p2))


def test_factor_quadratic_recovers_product(qq, pt):
    theta = quadratic_j_map(pt(1, 2, 3), BubblePoint(pt(0, 1, 1)))
    a = ProjLinearMap.of([[2, 1, 1], [0, 1, 0], [0, 3, 1]], qq)
    f = compose(linear_to_cremona(a), theta.map)
    factored = factor_quadratic(f)
    assert factors_product(factored.factors, qq) == f
    assert all(in_A_cap_J(m) for m in (factored.factors[0], factored.factors[2]))


def test_factor_quadratic_rejects_maps_outside_j(gens):
    with pytest.raises(FactorizationFailed):
        factor_quadratic(compose(gens["tau"], gens["sigma"]))


@pytest.mark.parametrize("i", [1, 2])
def test_nu_expansion(qq, i):
    from cremona.quadlib import core_jonq
    product = nu_expand(i, qq)[0]
    for g in nu_expand(i, qq)[1:]:
        product = jonq_compose(product, g)
    assert product == core_jonq(f"nu{i}", qq)
