# tests/test_projlinear.py
import pytest

from cremona.errors import DegenerateConfiguration, UsageError
from cremona.projlinear import (
    Moebius, ProjLinearMap, apply_linear, collinear, in_A_cap_J, intersection_frame, linear_map_through,
    parse_point, swap_map,
)


def test_points_are_normalized(qq, pt):
    assert pt(2, 4, 6) == pt(1, 2, 3)
    assert pt(0, -3, 3) == pt(0, 1, -1)
    assert str(pt(2, 1, 0)) == "(1:1/2:0)"
    assert parse_point("(2:4:6)", qq) == pt(1, 2, 3)
    with pytest.raises(DegenerateConfiguration):
        pt(0, 0, 0)
    with pytest.raises(UsageError):
        parse_point("1:2:3", qq)


def test_collinearity(pt, p1, p2):
    assert collinear(p1, p2, pt(1, 1, 0))
    assert not collinear(p1, p2, pt(1, 1, 1))


def test_matrices(qq):
    m = ProjLinearMap.of([[2, 0, 0], [0, 2, 0], [0, 0, 2]], qq)
    assert m.is_identity()
    with pytest.raises(DegenerateConfiguration):
        ProjLinearMap.of([[1, 2, 3], [2, 4, 6], [0, 0, 1]], qq)
    a = ProjLinearMap.of([[1, 2, 0], [0, 1, 3], [4, 0, 1]], qq)
    assert (a @ a.inverse()).is_identity()
    assert ProjLinearMap.from_strings(a.to_strings(), qq) == a


def test_frame_map_sends_four_points(pt, p1, p2, p3):
    src = [p1, p2, p3, pt(1, 1, 1)]
    dst = [pt(1, 2, 3), pt(0, 1, 1), pt(1, 0, 2), pt(3, -1, 1)]
    m = linear_map_through(src, dst)
    assert [apply_linear(m, p) for p in src] == dst
    with pytest.raises(DegenerateConfiguration):
        linear_map_through(src, [p1, p2, pt(1, 1, 0), pt(1, 1, 1)])


def test_swap_map_is_an_exchanging_involution(pt, p1):
    q = pt(1, 2, 3)
    s = swap_map(p1, q)
    assert apply_linear(s, p1) == q
    assert apply_linear(s, q) == p1
    assert (s @ s).is_identity()
    with pytest.raises(DegenerateConfiguration):
        swap_map(q, q)


def test_intersection_frame_fixes_p1(pt, p1, p2):
    q = pt(1, 2, 3)
    c = intersection_frame(q)
    assert in_A_cap_J(c)
    assert apply_linear(c, q) == p2
    assert apply_linear(c, p1) == p1


def test_moebius_canonical_form(qq):
    assert Moebius.of([3, 0, 0, 3], qq).is_identity()
    m = Moebius.of([1, 2, 3, 4], qq)
    assert (m @ m.inverse()).is_identity()
    assert m.apply(qq.zero) == qq.convert(1) / qq.convert(2)
    with pytest.raises(DegenerateConfiguration):
        Moebius.of([1, 2, 2, 4], qq)
