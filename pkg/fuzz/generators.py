# fuzz/generators.py
"""Random letters, generator words and identity words with small coefficients."""
import logging
import random
from typing import List

from cremona.amalgam.words import Letter, Word, eval_word, invert_word
from cremona.decompose import decompose
from cremona.errors import CremonaError, DegenerateConfiguration
from cremona.jonq import JonqElement, jonq_compose, linear_to_jonq
from cremona.projlinear import Moebius, ProjLinearMap
from cremona.quadlib import CORES, LINEAR_NAMES, core_jonq, linear_generator
from cremona.scalar import rings_for
from fuzz.config import FUZZ_COEFF_BOUND, LETTER_KINDS, MAX_DRAWS

logger = logging.getLogger(__name__)


def random_scalar(rng: random.Random, field, bound: int = FUZZ_COEFF_BOUND):
    num = rng.randint(-bound, bound)
    den = rng.choice([d for d in range(-bound, bound + 1) if d != 0])
    return field.convert(num) / field.convert(den)


def random_linear(rng: random.Random, field, fix_p1: bool = False, bound: int = FUZZ_COEFF_BOUND) -> ProjLinearMap:
    """A random element of PGL(3), or of A cap J when ``fix_p1``."""
    for _ in range(MAX_DRAWS):
        rows = [[random_scalar(rng, field, bound) for _ in range(3)] for _ in range(3)]
        if fix_p1:
            rows[1][0] = rows[2][0] = field.zero
        try:
            return ProjLinearMap.of(rows, field)
        except DegenerateConfiguration:
            continue
    raise DegenerateConfiguration("Could not draw an invertible matrix.", draws=MAX_DRAWS)


def random_quadratic_jonq(rng: random.Random, field, bound: int = FUZZ_COEFF_BOUND) -> JonqElement:
    """a1 * core * a2 with a1, a2 random in A cap J."""
    core = core_jonq(rng.choice(CORES), field)
    a1 = linear_to_jonq(random_linear(rng, field, fix_p1=True, bound=bound))
    a2 = linear_to_jonq(random_linear(rng, field, fix_p1=True, bound=bound))
    return jonq_compose(jonq_compose(a1, core), a2)


def random_jonq(rng: random.Random, field, max_degree: int = 3, bound: int = FUZZ_COEFF_BOUND) -> JonqElement:
    """A de Jonquieres pair with fiber entries of degree at most ``max_degree``."""
    pencil = rings_for(field).pencil
    for _ in range(MAX_DRAWS):
        try:
            base = Moebius.of([random_scalar(rng, field, bound) for _ in range(4)], field)
            entries = [pencil.from_dict({(k,): random_scalar(rng, field, bound)
                                       for k in range(rng.randint(0, max_degree) + 1)}) for _ in range(4)]
            return JonqElement.of(base, Moebius.of(entries, field))
        except DegenerateConfiguration:
            continue
    raise DegenerateConfiguration("Could not draw an invertible de Jonquieres pair.", draws=MAX_DRAWS)


def random_letter(rng: random.Random, field, kind: str = None) -> Letter:
    kind = kind or rng.choice(LETTER_KINDS)
    if kind == "linear":
        return Letter.a(random_linear(rng, field))
    if kind == "quadratic":
        return Letter.j(random_quadratic_jonq(rng, field))
    name = rng.choice(CORES + LINEAR_NAMES)
    if name in CORES:
        return Letter.j(core_jonq(name, field))
    return Letter.a(linear_generator(name, field))


def random_generator_word(rng: random.Random, field, length: int) -> Word:
    """Alternating word of the given length over random A-letters, quadratic J-letters and named generators."""
    word: List[Letter] = []
    tag = rng.choice(("A", "J"))
    for _ in range(length):
        if tag == "A":
            letter = random_letter(rng, field, rng.choice(("linear", "named")))
            while letter.tag != "A":
                letter = random_letter(rng, field, "named")
        else:
            letter = random_letter(rng, field, rng.choice(("quadratic", "named")))
            while letter.tag != "J":
                letter = random_letter(rng, field, "named")
        word.append(letter)
        tag = "J" if tag == "A" else "A"
    return word


def identity_word(rng: random.Random, field, length: int, mode: str = "decomposed") -> Word:
    """
    A word evaluating to the identity.  In "decomposed" mode the second half is an independent
    decomposition of eval(g)^-1, so the word does not cancel letter by letter.
    """
    g = random_generator_word(rng, field, length)
    if mode == "formal":
        return g + invert_word(g)
    try:
        other = decompose(eval_word(g, field)).word
    except CremonaError as e:
        logger.info(f"identity_word: decomposition failed ({type(e).__name__}); using the formal inverse")
        return g + invert_word(g)
    return g + invert_word(other)
