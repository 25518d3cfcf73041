# cremona/polymap.py
"""
Homogeneous polynomials in X, Y, Z and Cremona maps as simplified triples of them.
"""
import logging
from dataclasses import dataclass, field as dc_field
from typing import Any, Dict, List, Sequence, Tuple

from sympy.polys.rings import PolyElement

from cremona.errors import BasePointEvaluation, CollapsedMap, UsageError
from cremona.projlinear import ProjLinearMap, ProjPoint
from cremona.scalar import format_poly, parse_poly, rings_for

logger = logging.getLogger(__name__)

HomPoly = PolyElement  # element of rings_for(field).plane with a single total degree


def total_degree(p: PolyElement) -> int:
    if not p:
        return -1
    return max(sum(m) for m in p.itermonoms())


def is_homogeneous(p: PolyElement) -> bool:
    return len({sum(m) for m in p.itermonoms()}) <= 1


def _power(base: PolyElement, exponent: int, cache: Dict[int, PolyElement]) -> PolyElement:
    if exponent not in cache:
        if exponent == 1:
            cache[1] = base
        else:
            half = _power(base, exponent // 2, cache)
            value = half * half
            if exponent % 2:
                value = value * base
            cache[exponent] = value
    return cache[exponent]


def substitute(poly: PolyElement, images: Sequence[PolyElement], target) -> PolyElement:
    """Simultaneous substitution of ``images`` for the generators of ``poly.ring``."""
    caches = [dict() for _ in images]
    result = target.zero
    for monom, coeff in poly.iterterms():
        term = target.ground_new(coeff)
        for i, e in enumerate(monom):
            if e:
                term = term * _power(images[i], e, caches[i])
        result += term
    return result


@dataclass(frozen=True)
class CremonaMap:
    """
    A rational map of the plane as (f0 : f1 : f2) with gcd 1, normalized so the coefficient
    of the lexicographically smallest monomial of the first nonzero component is one.
    """
    components: Tuple[PolyElement, PolyElement, PolyElement]
    field: Any = dc_field(compare=False, repr=False, hash=False)

    @classmethod
    def of(cls, components: Sequence[PolyElement]) -> "CremonaMap":
        f0, f1, f2 = components
        plane = f0.ring
        if not (f0 or f1 or f2):
            raise CollapsedMap("All three components vanish.")
        if not all(is_homogeneous(f) for f in (f0, f1, f2)):
            raise UsageError("Components must be homogeneous.", components=[format_poly(f) for f in (f0, f1, f2)])
        degrees = {total_degree(f) for f in (f0, f1, f2) if f}
        if len(degrees) != 1:
            raise UsageError("Components must have a common degree.",
                             components=[format_poly(f) for f in (f0, f1, f2)])
        common = f0.gcd(f1).gcd(f2)
        if total_degree(common) > 0:
            f0, f1, f2 = (f.exquo(common) if f else f for f in (f0, f1, f2))
        if max(total_degree(f) for f in (f0, f1, f2)) < 1:
            raise CollapsedMap("The image of the map is a point.",
                               components=[format_poly(f) for f in components])
        lead_poly = next(f for f in (f0, f1, f2) if f)
        lead = lead_poly[min(lead_poly.keys())]
        return cls(tuple(f.quo_ground(lead) if f else plane.zero for f in (f0, f1, f2)), plane.domain)

    @classmethod
    def identity(cls, field) -> "CremonaMap":
        return cls.of(rings_for(field).plane.gens)

    @property
    def degree(self) -> int:
        return max(total_degree(f) for f in self.components)

    @property
    def ring(self):
        return self.components[0].ring

    def is_identity(self) -> bool:
        return self == CremonaMap.identity(self.field)

    def to_strings(self) -> List[str]:
        return [format_poly(f) for f in self.components]

    def __str__(self) -> str:
        return "[" + " : ".join(self.to_strings()) + "]"


def parse_map(text: str, field) -> CremonaMap:
    raw = str(text).strip()
    if not (raw.startswith("[") and raw.endswith("]")) or raw.count(":") != 2:
        raise UsageError(f"Cannot read map '{text}' (expected '[P0 : P1 : P2]').", value=text)
    plane = rings_for(field).plane
    return CremonaMap.of([parse_poly(part, plane) for part in raw[1:-1].split(":")])


def compose(g: CremonaMap, f: CremonaMap) -> CremonaMap:
    """g after f: substitute the components of f into g and simplify."""
    plane = g.ring
    return CremonaMap.of([substitute(gi, f.components, plane) for gi in g.components])


def compose_all(maps: Sequence[CremonaMap], field) -> CremonaMap:
    """Product of maps written left to right (the last one applies first)."""
    result = CremonaMap.identity(field)
    for m in reversed(maps):
        result = compose(m, result)
    return result


def degree(f: CremonaMap) -> int:
    return f.degree


def eval_at(f: CremonaMap, p: ProjPoint) -> ProjPoint:
    values = [fi(*p.coords) if fi else p.field.zero for fi in f.components]
    if all(v == p.field.zero for v in values):
        raise BasePointEvaluation(f"{p} is a base point of the map.", point=str(p), map=str(f))
    return ProjPoint.of(values, p.field)


def maps_equal(f: CremonaMap, g: CremonaMap) -> bool:
    return f == g


def linear_to_cremona(m: ProjLinearMap) -> CremonaMap:
    plane = rings_for(m.field).plane
    X, Y, Z = plane.gens
    return CremonaMap.of([row[0] * X + row[1] * Y + row[2] * Z for row in m.rows])


def cremona_to_linear(f: CremonaMap) -> ProjLinearMap:
    """Matrix of a degree-one map."""
    if f.degree != 1:
        raise ValueError(f"Map of degree {f.degree} is not linear")
    field = f.field
    rows = []
    for fi in f.components:
        rows.append([fi.get(monom, field.zero) for monom in ((1, 0, 0), (0, 1, 0), (0, 0, 1))])
    return ProjLinearMap.of(rows, field)
