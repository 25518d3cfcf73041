# cremona/quadlib.py
"""
Named generators and quadratic de Jonquieres maps.

    sigma = (YZ : XZ : XY)     tau  = (Y : X : Z)
    nu1   = (XY : Z^2 : YZ)    nu2  = (Z^2 : XY : XZ)
    rho1  = (X : Z-Y : Z)      rho2 = (Z-X : Y : Z)

sigma, nu1 and nu2 are de Jonquieres letters; tau, rho1 and rho2 are linear.  A quadratic
map of J is always written a1 * core * a2 with a1, a2 fixing p1 and core one of sigma, nu1, nu2.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Optional, Sequence, Tuple, Union

from cremona.bubble import BubblePoint, base_points, bubble_line
from cremona.errors import DegenerateConfiguration, FactorizationFailed
from cremona.jonq import JonqElement, cremona_to_jonq, jonq_compose, jonq_to_cremona
from cremona.polymap import CremonaMap, compose, cremona_to_linear, linear_to_cremona
from cremona.projlinear import (
    Moebius, ProjLinearMap, ProjPoint, cross, in_A_cap_J, standard_point,
)
from cremona.scalar import rings_for

logger = logging.getLogger(__name__)

CORES = ("sigma", "nu1", "nu2")
LINEAR_NAMES = ("tau", "rho1", "rho2")

_LINEAR_ROWS = {
    "tau": [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
    "rho1": [[1, 0, 0], [0, -1, 1], [0, 0, 1]],
    "rho2": [[-1, 0, 1], [0, 1, 0], [0, 0, 1]],
}
# (base, fiber) of the quadratic cores in the affine coordinates x = X/Z, y = Y/Z; the base acts on y
_CORE_MATRICES = {
    "sigma": ([0, 1, 1, 0], [0, 1, 1, 0]),
    "nu1": ([0, 1, 1, 0], [1, 0, 0, 1]),
    "nu2": ([1, 0, 0, 1], [0, 1, 1, 0]),
}


@lru_cache(maxsize=None)
def linear_generator(name: str, field) -> ProjLinearMap:
    return ProjLinearMap.of(_LINEAR_ROWS[name], field)


@lru_cache(maxsize=None)
def core_jonq(name: str, field) -> JonqElement:
    pencil = rings_for(field).pencil
    base, fiber = _CORE_MATRICES[name]
    return JonqElement(Moebius.of(base, field), Moebius.of([pencil.ground_new(field.convert(e)) for e in fiber], field))


@lru_cache(maxsize=None)
def core_map(name: str, field) -> CremonaMap:
    return jonq_to_cremona(core_jonq(name, field))


def rho_jonq(i: int, field) -> JonqElement:
    return cremona_to_jonq(linear_to_cremona(linear_generator(f"rho{i}", field)))


@lru_cache(maxsize=None)
def named_generators(field) -> Dict[str, CremonaMap]:
    """All six generators as polynomial triples; each is checked to be an involution."""
    table = {name: core_map(name, field) for name in CORES}
    table.update({name: linear_to_cremona(linear_generator(name, field)) for name in LINEAR_NAMES})
    for name, f in table.items():
        if not compose(f, f).is_identity():
            raise DegenerateConfiguration(f"Generator {name} is not an involution.", generator=name)
    return table


def nu_expand(i: int, field) -> Tuple[JonqElement, ...]:
    """nu_i as the J-word rho_i * sigma * rho_i * sigma * rho_i."""
    if i not in (1, 2):
        raise ValueError(f"nu_expand expects 1 or 2, got {i}")
    rho, sigma = rho_jonq(i, field), core_jonq("sigma", field)
    return (rho, sigma, rho, sigma, rho)


# --- Quadratic maps of J ---

@dataclass(frozen=True)
class QuadraticJMap:
    """
    A quadratic de Jonquieres map with base points p1, ``second`` (proper) and ``third``
    (proper, or in the first neighbourhood of p1 or of ``second``).

    Attributes:
        map: The polynomial triple.
        jonq: The same map as a de Jonquieres pair.
        factors: (a1, core name, a2) with a1, a2 in A cap J and map = a1 * core * a2.
    """
    map: CremonaMap
    jonq: JonqElement
    second: ProjPoint
    third: BubblePoint
    factors: Tuple[ProjLinearMap, str, ProjLinearMap]

    @property
    def field(self):
        return self.map.field

    @property
    def core(self) -> str:
        return self.factors[1]

    def to_dict(self) -> Dict:
        a1, core, a2 = self.factors
        return {"map": str(self.map), "second": str(self.second), "third": str(self.third),
                "factors": [str(a1), core, str(a2)]}


def _p1_vector(field):
    return (field.one, field.zero, field.zero)


def _frame_columns(second: ProjPoint, third: BubblePoint) -> Tuple[Tuple, str]:
    """Third column w of c^-1 = (e1, second, w) and the core matching the configuration."""
    field = second.field
    p1 = standard_point(1, field)
    if third.is_proper():
        return third.root.coords, "sigma"
    if third.depth != 1:
        raise DegenerateConfiguration("Only first-neighbourhood points are supported for quadratic maps.",
                                      point=str(third))
    L = bubble_line(third)
    if third.root == p1:
        return (field.zero, -L[2], L[1]), "nu1"
    if third.root == second:
        for M in ((field.one, field.zero, field.zero), (field.zero, field.one, field.zero),
                  (field.zero, field.zero, field.one)):
            if sum((M[i] * second.coords[i] for i in range(3)), field.zero) != field.zero:
                return cross(L, M), "nu2"
    raise DegenerateConfiguration("The third point must lie over p1 or over the second point.", point=str(third))


def quadratic_j_map(second: ProjPoint, third: BubblePoint) -> QuadraticJMap:
    """The quadratic map c^-1 * core * c of J with base points p1, second and third."""
    field = second.field
    if second == standard_point(1, field):
        raise DegenerateConfiguration("The second base point must differ from p1.", point=str(second))
    w, core = _frame_columns(second, third)
    try:
        c_inv = ProjLinearMap.from_columns([_p1_vector(field), second.coords, w], field)
    except DegenerateConfiguration:
        raise DegenerateConfiguration("Base points are aligned or the direction points along the line through p1.",
                                      second=str(second), third=str(third))
    c = c_inv.inverse()
    jonq = jonq_compose(jonq_compose(_linear_jonq(c_inv), core_jonq(core, field)), _linear_jonq(c))
    theta = jonq_to_cremona(jonq)
    logger.debug(f"quadratic_j_map: second {second}, third {third} -> core {core}, {theta}")
    return QuadraticJMap(theta, jonq, second, third, (c_inv, core, c))


def _linear_jonq(m: ProjLinearMap) -> JonqElement:
    return cremona_to_jonq(linear_to_cremona(m))


def _assignments(f: CremonaMap, hint: Optional[ProjPoint]):
    field = f.field
    p1 = BubblePoint(standard_point(1, field))
    mults = base_points(f)
    if f.degree != 2 or mults.get(p1) != 1:
        raise FactorizationFailed("Not a quadratic map with a simple base point at p1.", map=str(f))
    others = [q for q in mults if q != p1]
    proper_points = [q.root for q in others if q.is_proper()]
    options = []
    for second in proper_points:
        rest = [q for q in others if q.root != second or not q.is_proper()]
        if len(rest) == 1:
            options.append((second, rest[0]))
    options.sort(key=lambda item: (item[0] != hint, item[0].sort_key()))
    return options


def factor_quadratic(f: Union[CremonaMap, QuadraticJMap],
                     second: Optional[ProjPoint] = None) -> QuadraticJMap:
    """
    Write a quadratic map of J as a1 * core * a2 with a1, a2 in A cap J.  The assignment of
    the base points putting ``second`` in the second position is tried first.
    """
    if isinstance(f, QuadraticJMap):
        if second is None or second == f.second:
            return f
        f = f.map
    field = f.field
    for s, t in _assignments(f, second):
        try:
            frame = quadratic_j_map(s, t)
        except DegenerateConfiguration:
            continue
        _, core, a2 = frame.factors
        residue = compose(compose(f, linear_to_cremona(a2.inverse())), core_map(core, field))
        if residue.degree != 1:
            continue
        a1 = cremona_to_linear(residue)
        if not in_A_cap_J(a1):
            continue
        logger.debug(f"factor_quadratic: {f} = {a1} * {core} * {a2}")
        return QuadraticJMap(f, cremona_to_jonq(f), s, t, (a1, core, a2))
    raise FactorizationFailed("No assignment of base points factors the quadratic map.", map=str(f))


def factors_product(factors: Sequence, field) -> CremonaMap:
    a1, core, a2 = factors
    return compose(compose(linear_to_cremona(a1), core_map(core, field)), linear_to_cremona(a2))
