# tests/test_bubble.py
import random

import pytest

from cremona.amalgam import eval_word, invert_word
from cremona.bubble import (
    BubblePoint, LinearSystemClass, base_points, blow_up, bubble_from_line, bubble_line, class_of,
    jonq_degree_formula, multiplicity_at, parse_bubble, proper_base_points, proximity_consistent,
    pushforward_quadratic, sorted_points, transform_bubble,
)
from cremona.errors import DegenerateConfiguration, NonRationalBasePoint, NotHomaloidal, NotSimplified
from cremona.jonq import jonq_compose, jonq_to_cremona
from cremona.polymap import CremonaMap, compose, linear_to_cremona
from cremona.projlinear import ProjLinearMap, swap_map
from cremona.scalar import rings_for
from fuzz.generators import random_generator_word, random_quadratic_jonq


def test_sigma_base_points(gens, p1, p2, p3):
    mults = base_points(gens["sigma"])
    assert mults == {BubblePoint(p1): 1, BubblePoint(p2): 1, BubblePoint(p3): 1}


@pytest.mark.parametrize("name, over", [("nu1", 1), ("nu2", 2)])
def test_nu_base_points(gens, p1, p2, name, over):
    mults = base_points(gens[name])
    assert len(mults) == 3
    assert all(m == 1 for m in mults.values())
    proper = {q.root for q in mults if q.is_proper()}
    assert proper == {p1, p2}
    (near,) = [q for q in mults if not q.is_proper()]
    assert near.depth == 1
    assert near.root == (p1 if over == 1 else p2)
    assert proximity_consistent(mults)


def test_homaloidal_sums_after_conjugation(gens, qq):
    a = linear_to_cremona(ProjLinearMap.of([[1, 2, 3], [0, 1, 4], [5, 0, 1]], qq))
    f = compose(compose(gens["sigma"], a), gens["sigma"])
    mults = base_points(f)
    assert f.degree == 4
    cls = LinearSystemClass.of(f.degree, mults)
    assert cls.is_homaloidal()
    assert cls.sums() == (9, 15)
    assert sorted_points(mults)[0][1] == max(mults.values())


def test_not_homaloidal(parse):
    with pytest.raises(NotHomaloidal):
        base_points(parse("[X^2 : Y^2 : Z^2]"))


def test_non_rational_base_point_reports_factor(parse):
    # conics through p1 and the conjugate points (0 : +-i : 1)
    with pytest.raises(NonRationalBasePoint) as info:
        base_points(parse("[Y^2 + Z^2 : X*Y : X*Z]"))
    assert "factor" in info.value.payload


def test_proper_base_points_of_sigma(gens, p1, p2, p3):
    points, suspects = proper_base_points(gens["sigma"])
    assert set(points) == {p1, p2, p3}
    assert suspects == []


def test_common_factor_is_rejected(qq):
    X, Y, Z = rings_for(qq).plane.gens
    with pytest.raises(NotSimplified):
        base_points([X * Y, X * Z, X ** 2])


def test_multiplicity_outside_base_locus(gens, pt):
    assert multiplicity_at(gens["sigma"], BubblePoint(pt(1, 1, 1))) == 0


def test_bubble_parse_and_print(qq, p1):
    q = parse_bubble("(1:0:0)[first,2]", qq)
    assert q.root == p1 and q.depth == 1
    assert parse_bubble(str(q), qq) == q
    assert q.lies_over(BubblePoint(p1))
    assert q.parent == BubblePoint(p1)


def test_tangent_lines_round_trip(qq, pt):
    root = pt(1, 2, 3)
    line = (qq.convert(1), qq.convert(1), qq.convert(-1))  # X + Y - Z through (1:2:3)
    q = bubble_from_line(root, line)
    assert bubble_from_line(root, bubble_line(q)) == q


def test_linear_maps_transport_directions(qq, pt, p1):
    q = BubblePoint(p1, (("first", qq.convert(2)),))
    s = swap_map(p1, pt(1, 2, 3))
    image = transform_bubble(s, q)
    assert image.root == pt(1, 2, 3)
    assert transform_bubble(s.inverse(), image) == q


def test_class_of_quadratic_map(gens):
    sigma = gens["sigma"]
    cls = class_of(sigma, sigma)
    assert cls.degree == 2
    assert cls.is_homaloidal()


def test_degree_formula():
    # sigma applied to the lines: 2 * 1 - 1 * 0 - 0 - 0
    assert jonq_degree_formula(1, 2, 0, [0, 0]) == 2
    assert jonq_degree_formula(4, 2, 3, [1, 1]) == 3


def test_blow_up_finds_the_infinitely_near_point(gens, p1, p3):
    data = blow_up(BubblePoint(p1), gens["nu1"])
    assert data.multiplicity == 1
    ((q, m),) = data.exceptional
    assert m == 1 and q.parent == BubblePoint(p1)
    assert blow_up(BubblePoint(p1), gens["sigma"]).exceptional == ()
    with pytest.raises(DegenerateConfiguration):
        blow_up(BubblePoint(p3), gens["nu1"])


def test_pushforward_of_the_lines(gens, qq):
    sigma = gens["sigma"]
    lines = LinearSystemClass.of(1, {})
    conics, system = pushforward_quadratic(lines, CremonaMap.identity(qq), sigma, sigma)
    assert conics.degree == 2 and conics.sums() == (3, 3)
    back, system = pushforward_quadratic(conics, system, sigma, sigma)
    assert back.degree == 1 and system.is_identity()
    with pytest.raises(ValueError):
        pushforward_quadratic(lines, CremonaMap.identity(qq), CremonaMap.identity(qq), CremonaMap.identity(qq))


def _random_map_with_inverse(rng, qq):
    word = random_generator_word(rng, qq, rng.randint(1, 3))
    return eval_word(word, qq), eval_word(invert_word(word), qq)


@pytest.mark.slow
def test_homaloidal_sweep(qq):
    rng = random.Random(31)
    for _ in range(200):
        f, inverse = _random_map_with_inverse(rng, qq)
        cls = class_of(f, inverse)
        d = cls.degree
        assert cls.sums() == (3 * d - 3, d * d - 1)
        assert proximity_consistent(cls.as_dict())


@pytest.mark.slow
def test_degree_formula_sweep(qq, p1):
    rng = random.Random(37)
    for _ in range(100):
        f, inverse = _random_map_with_inverse(rng, qq)
        g = jonq_to_cremona(jonq_compose(random_quadratic_jonq(rng, qq), random_quadratic_jonq(rng, qq)))
        points = base_points(g) if g.degree > 1 else {}
        m0 = multiplicity_at(inverse, BubblePoint(p1))
        others = [multiplicity_at(inverse, q) for q in points if q != BubblePoint(p1)]
        predicted = jonq_degree_formula(f.degree, g.degree, m0, others)
        assert predicted == compose(g, f).degree
