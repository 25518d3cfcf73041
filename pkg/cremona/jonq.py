# cremona/jonq.py
"""
The de Jonquieres group: birational maps preserving the pencil of lines through p1 = (1:0:0).

The lines through p1 are Y = tZ, so in the affine coordinates x = X/Z, y = Y/Z such a map reads

    (x, y) -> ((alpha(y) x + beta(y)) / (gamma(y) x + delta(y)), (a y + b) / (c y + d))

and is stored as a pair of 2x2 matrices: ``base`` over the field, acting on the pencil
parameter y, and ``fiber`` with polynomial entries in y (denominators cleared).
"""
import logging
from dataclasses import dataclass
from typing import List, Sequence

from sympy.polys.rings import PolyElement

from cremona.errors import DegenerateConfiguration, NotDeJonquieres, UsageError
from cremona.polymap import CremonaMap, linear_to_cremona
from cremona.projlinear import Moebius, ProjLinearMap
from cremona.scalar import parse_poly, parse_scalar, rings_for

logger = logging.getLogger(__name__)


def _cancel(f: PolyElement, g: PolyElement):
    _, p, q = f.cofactors(g)
    return p, q


def _substitute_base(fiber: Moebius, base: Moebius) -> Moebius:
    """Replace y by base(y) in the fiber entries and clear the common denominator."""
    e = fiber.max_degree()
    if e == 0:
        return fiber
    pencil = fiber.entries[0].ring
    y = pencil.gens[0]
    a, b, c, d = base.entries
    num, den = y * a + b, y * c + d
    num_powers = [pencil.one]
    den_powers = [pencil.one]
    for _ in range(e):
        num_powers.append(num_powers[-1] * num)
        den_powers.append(den_powers[-1] * den)
    entries = []
    for p in fiber.entries:
        value = pencil.zero
        for (k,), coeff in p.iterterms():
            value += num_powers[k] * den_powers[e - k] * coeff
        entries.append(value)
    return Moebius.of(entries, fiber.field)


@dataclass(frozen=True)
class JonqElement:
    base: Moebius
    fiber: Moebius

    @property
    def field(self):
        return self.base.field

    @classmethod
    def of(cls, base: Moebius, fiber: Moebius) -> "JonqElement":
        if base.is_polynomial or not fiber.is_polynomial:
            raise ValueError("JonqElement expects a scalar base and a polynomial fiber")
        return cls(base, fiber)

    @classmethod
    def identity(cls, field) -> "JonqElement":
        return cls(Moebius.identity(field), Moebius.identity(field, rings_for(field).pencil))

    def is_identity(self) -> bool:
        return self.base.is_identity() and self.fiber.is_identity()

    def to_strings(self) -> List[List[str]]:
        return [self.base.to_strings(), self.fiber.to_strings()]

    @classmethod
    def from_strings(cls, base: Sequence[str], fiber: Sequence[str], field) -> "JonqElement":
        if len(base) != 4 or len(fiber) != 4:
            raise UsageError("A de Jonquieres pair needs four base and four fiber entries.")
        pencil = rings_for(field).pencil
        return cls.of(Moebius.of([parse_scalar(e, field) for e in base], field),
                      Moebius.of([parse_poly(e, pencil) for e in fiber], field))

    def __str__(self) -> str:
        b, f = self.base.to_strings(), self.fiber.to_strings()
        return f"J[{b[0]},{b[1]};{b[2]},{b[3]} | {f[0]},{f[1]};{f[2]},{f[3]}]"


def jonq_compose(g: JonqElement, h: JonqElement) -> JonqElement:
    """g after h."""
    return JonqElement(g.base @ h.base, _substitute_base(g.fiber, h.base) @ h.fiber)


def jonq_inverse(g: JonqElement) -> JonqElement:
    base_inv = g.base.inverse()
    return JonqElement(base_inv, _substitute_base(g.fiber.inverse(), base_inv))


def _homogenize(p: PolyElement, e: int, plane) -> PolyElement:
    """Z^e * p(Y/Z) as a form in Y, Z."""
    return plane.from_dict({(0, k, e - k): coeff for (k,), coeff in p.iterterms()})


def jonq_to_cremona(g: JonqElement) -> CremonaMap:
    field = g.field
    plane = rings_for(field).plane
    X, Y, Z = plane.gens
    a, b, c, d = g.base.entries
    e = g.fiber.max_degree()
    alpha, beta, gamma, delta = (_homogenize(p, e, plane) for p in g.fiber.entries)
    N = alpha * X + beta * Z
    Dn = gamma * X + delta * Z
    top, bottom = Y * a + Z * b, Y * c + Z * d
    return CremonaMap.of([N * bottom, top * Dn, bottom * Dn])


def _linear_yz(p: PolyElement):
    """Coefficients (a, b) of p = a Y + b Z, or None if p has another shape."""
    if any(monom not in ((0, 1, 0), (0, 0, 1)) for monom in p.itermonoms()):
        return None
    zero = p.ring.domain.zero
    return p.get((0, 1, 0), zero), p.get((0, 0, 1), zero)


def _fiber_entries(P: PolyElement, pencil):
    """alpha, beta with P(x, y, 1) = alpha(y) x + beta(y), or None if P has degree > 1 in x."""
    alpha, beta = {}, {}
    for (i, j, _), coeff in P.iterterms():
        if i > 1:
            return None
        target = alpha if i == 1 else beta
        target[(j,)] = target.get((j,), pencil.domain.zero) + coeff
    return pencil.from_dict(alpha), pencil.from_dict(beta)


def cremona_to_jonq(f: CremonaMap) -> JonqElement:
    F0, F1, F2 = f.components
    if not F1 or not F2:
        raise NotDeJonquieres("The map does not preserve the pencil of lines through p1.", map=str(f))
    field = f.field
    pencil = rings_for(field).pencil
    p, q = _cancel(F1, F2)
    top, bottom = _linear_yz(p), _linear_yz(q)
    if top is None or bottom is None:
        raise NotDeJonquieres("The map does not preserve the pencil of lines through p1.", map=str(f))
    try:
        base = Moebius.of([top[0], top[1], bottom[0], bottom[1]], field)
    except DegenerateConfiguration:
        raise NotDeJonquieres("The induced map of the pencil is not invertible.", map=str(f))
    P, Q = _cancel(F0, F2)
    upper, lower = _fiber_entries(P, pencil), _fiber_entries(Q, pencil)
    if upper is None or lower is None:
        raise NotDeJonquieres("The map is not a Moebius transformation on the lines through p1.", map=str(f))
    try:
        fiber = Moebius.of([upper[0], upper[1], lower[0], lower[1]], field)
    except DegenerateConfiguration:
        raise NotDeJonquieres("The map collapses the lines through p1.", map=str(f))
    return JonqElement(base, fiber)


def is_in_J(f: CremonaMap) -> bool:
    try:
        cremona_to_jonq(f)
    except NotDeJonquieres:
        return False
    return True


def jonq_degree(g: JonqElement) -> int:
    return jonq_to_cremona(g).degree


def linear_to_jonq(m: ProjLinearMap) -> JonqElement:
    """An element of A cap J as a de Jonquieres pair."""
    return cremona_to_jonq(linear_to_cremona(m))


