# tests/test_decompose.py
import random

import pytest

from cremona.amalgam import Letter, eval_word, invert_word
from cremona.decompose import decompose
from cremona.errors import NotHomaloidal
from cremona.polymap import compose, linear_to_cremona
from cremona.projlinear import ProjLinearMap
from cremona.quadlib import core_jonq
from fuzz.generators import random_generator_word


def test_sigma(gens):
    result = decompose(gens["sigma"])
    assert len(result.word) <= 3
    assert eval_word(result.word, gens["sigma"].field) == gens["sigma"]
    assert result.degrees() == [2, 1]


def test_linear_map_is_a_single_letter(qq):
    m = ProjLinearMap.of([[1, 2, 3], [0, 1, 4], [5, 0, 1]], qq)
    result = decompose(linear_to_cremona(m))
    assert len(result.word) == 1 and result.word[0].payload == m
    assert result.steps == []


def test_degree_four_map(gens, qq):
    a = linear_to_cremona(ProjLinearMap.of([[1, 2, 3], [0, 1, 4], [5, 0, 1]], qq))
    f = compose(compose(gens["sigma"], a), gens["sigma"])
    result = decompose(f)
    assert eval_word(result.word, qq) == f
    assert result.degrees() == [4, 2, 1]
    assert result.steps[0].multiplicities == [2, 2, 2]
    assert result.to_dict()["steps"][0]["degree_before"] == 4


def test_not_birational(parse):
    with pytest.raises(NotHomaloidal):
        decompose(parse("[X^2 : Y^2 : Z^2]"))


def test_invert_word(qq):
    sigma = Letter.j(core_jonq("sigma", qq))
    (inverse,) = invert_word([sigma])
    assert inverse.same_value(sigma)
    a = Letter.a(ProjLinearMap.of([[1, 2, 0], [0, 1, 3], [4, 0, 1]], qq))
    j = Letter.j(core_jonq("nu1", qq))
    inv = invert_word([a, j])
    assert inv[0].tag == "J" and inv[1].tag == "A"
    assert eval_word(inv + [a, j], qq).is_identity()


@pytest.mark.slow
def test_random_round_trips(qq):
    rng = random.Random(11)
    for _ in range(100):
        word = random_generator_word(rng, qq, rng.randint(1, 4))
        f = eval_word(word, qq)
        result = decompose(f)
        assert eval_word(result.word, qq) == f
        degrees = result.degrees()
        assert all(b < a for a, b in zip(degrees, degrees[1:]))
