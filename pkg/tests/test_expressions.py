# tests/test_expressions.py
import pytest

from cremona.errors import UsageError
from cremona.expressions import (
    Inverse, Name, Product, Triple, format_expression, parse_expression, to_map, to_word,
)
from cremona.polymap import compose


def test_products_apply_right_to_left(qq, gens):
    expr = parse_expression("sigma * rho1", qq)
    assert expr == Product((Name("sigma"), Name("rho1")))
    assert to_map(expr, qq) == compose(gens["sigma"], gens["rho1"])
    assert to_map(parse_expression("sigma*sigma", qq), qq).is_identity()


def test_inverse_and_parentheses(qq, gens):
    expr = parse_expression("(sigma * tau)^-1", qq)
    assert isinstance(expr, Inverse)
    assert to_map(expr, qq) == compose(gens["tau"], gens["sigma"])
    assert to_word(parse_expression("id", qq), qq) == []


def test_literals(qq, gens):
    assert to_map(parse_expression("[Y*Z : X*Z : X*Y]", qq), qq) == gens["sigma"]
    assert to_map(parse_expression("A[0,1,0;1,0,0;0,0,1]", qq), qq) == gens["tau"]
    assert to_map(parse_expression("J[0,1;1,0 | 1,0;0,1]", qq), qq) == gens["nu1"]


@pytest.mark.parametrize("text", [
    "sigma * tau * sigma * tau",
    "(sigma * rho1)^-1 * nu2",
    "[Y*Z : X*Z : X*Y] * A[1,2,0;0,1,3;4,0,1]",
    "J[0,1;1,0 | 1,0;0,1]^-1",
])
def test_print_parse_fixed_point(qq, text):
    expr = parse_expression(text, qq)
    assert parse_expression(format_expression(expr), qq) == expr


def test_triples_outside_j_become_words(qq, gens):
    word = to_word(parse_expression("[Y*Z : X*Z : X*Y]", qq), qq)
    assert [x.tag for x in word] == ["J"]
    word = to_word(Triple(compose(gens["tau"], gens["sigma"])), qq)
    assert len(word) >= 2


@pytest.mark.parametrize("text", ["", "foo", "sigma *", "(sigma", "[X : Y", "sigma tau", "A[1,0;0,1]"])
def test_malformed_expressions(qq, text):
    with pytest.raises(UsageError):
        to_map(parse_expression(text, qq), qq)
