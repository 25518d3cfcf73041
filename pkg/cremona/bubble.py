# cremona/bubble.py
"""
Base points of plane linear systems, proper and infinitely near.

A system is given by three homogeneous polynomials (the components of a Cremona map read as
the pull-back of the lines).  Proper base points come from resultant elimination; points
infinitely near a base point are found by blowing up in explicit affine charts:

* local coordinates at a proper point ``(1:b:c)`` are ``X=1, Y=b+u, Z=c+v``; at ``(0:1:c)``
  they are ``X=u, Y=1, Z=c+v``; at ``(0:0:1)`` they are ``X=u, Y=v, Z=1``;
* the "first" chart of a blow-up is ``(u, v) = (u, u*t)``, a point of the exceptional curve
  being stored as ``("first", t0)``;
* the "second" chart ``(u, v) = (s*v, v)`` is only used for the single direction ``u = 0``,
  stored as ``("second", 0)``.

Multiplicities are orders of the strict transform of the system.
"""
import logging
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy.polys.rings import PolyElement

from cremona.config import ELIMINATION_DIRECTIONS, MAX_TOWER_DEPTH
from cremona.errors import (
    DegenerateConfiguration, DegreeFormulaMismatch, NonRationalBasePoint, NotHomaloidal, NotSimplified, UsageError,
)
from cremona.polymap import CremonaMap, compose, substitute, total_degree
from cremona.projlinear import (
    ProjLinearMap, ProjPoint, apply_linear, parse_point, standard_point, transform_line,
)
from cremona.scalar import Scalar, format_poly, format_scalar, parse_scalar, rational_roots, rings_for, scalar_key

logger = logging.getLogger(__name__)

FIRST, SECOND = "first", "second"
Step = Tuple[str, Scalar]
System = Union[CremonaMap, Sequence[PolyElement]]


@dataclass(frozen=True)
class BubblePoint:
    """A proper point of the plane (empty tower) or a point infinitely near it."""
    root: ProjPoint
    tower: Tuple[Step, ...] = ()

    @property
    def field(self):
        return self.root.field

    @property
    def depth(self) -> int:
        return len(self.tower)

    def is_proper(self) -> bool:
        return not self.tower

    @property
    def parent(self) -> Optional["BubblePoint"]:
        if not self.tower:
            return None
        return BubblePoint(self.root, self.tower[:-1])

    def child(self, step: Step) -> "BubblePoint":
        return BubblePoint(self.root, self.tower + (step,))

    def lies_over(self, other: "BubblePoint") -> bool:
        """True if self is infinitely near ``other`` (strictly above it in the same tower)."""
        return (self.root == other.root and len(self.tower) > len(other.tower)
                and self.tower[:len(other.tower)] == other.tower)

    def __str__(self) -> str:
        steps = "".join(f"[{chart},{format_scalar(c, self.field)}]" for chart, c in self.tower)
        return f"{self.root}{steps}"

    def sort_key(self) -> Tuple:
        return (self.depth, self.root.sort_key(),
                tuple((chart, scalar_key(c, self.field)) for chart, c in self.tower))


_STEP_PATTERN = re.compile(r"\[(first|second),([^\]]+)\]")


def parse_bubble(text: str, field) -> BubblePoint:
    raw = str(text).strip()
    end = raw.find(")")
    if end < 0:
        raise UsageError(f"Cannot read bubble point '{text}'.", value=text)
    root = parse_point(raw[:end + 1], field)
    rest = raw[end + 1:]
    steps = _STEP_PATTERN.findall(rest)
    if "".join(f"[{c},{v}]" for c, v in steps) != rest.replace(" ", ""):
        raise UsageError(f"Cannot read tower of bubble point '{text}'.", value=text)
    return BubblePoint(root, tuple((chart, parse_scalar(value, field)) for chart, value in steps))


def proper(p: ProjPoint) -> BubblePoint:
    return BubblePoint(p)


MultiplicityMap = Dict[BubblePoint, int]


@dataclass(frozen=True)
class LinearSystemClass:
    """Degree of a linear system together with the multiplicities of its base points."""
    degree: int
    mults: Tuple[Tuple[BubblePoint, int], ...]

    @classmethod
    def of(cls, degree: int, mults: MultiplicityMap) -> "LinearSystemClass":
        items = sorted(((q, m) for q, m in mults.items() if m > 0), key=lambda item: (-item[1], item[0].sort_key()))
        return cls(degree, tuple(items))

    def as_dict(self) -> MultiplicityMap:
        return dict(self.mults)

    def multiplicity(self, q: BubblePoint) -> int:
        return self.as_dict().get(q, 0)

    def sums(self) -> Tuple[int, int]:
        return sum(m for _, m in self.mults), sum(m * m for _, m in self.mults)

    def is_homaloidal(self) -> bool:
        d = self.degree
        return self.sums() == (3 * d - 3, d * d - 1)

    def to_dict(self) -> Dict:
        return {"degree": self.degree, "mults": {str(q): m for q, m in self.mults}}


# --- Local charts ---

def _components(system: System) -> Tuple[PolyElement, PolyElement, PolyElement]:
    if isinstance(system, CremonaMap):
        return system.components
    comps = tuple(system)
    if len(comps) != 3:
        raise ValueError("A linear system is given by three homogeneous polynomials")
    common = comps[0].gcd(comps[1]).gcd(comps[2])
    if total_degree(common) > 0:
        raise NotSimplified("The three components share a common factor.", factor=format_poly(common))
    return comps


def _chart_images(root: ProjPoint, local) -> List[PolyElement]:
    u, v = local.gens
    x, y, z = root.coords
    if x != root.field.zero:
        return [local.one, local.ground_new(y) + u, local.ground_new(z) + v]
    if y != root.field.zero:
        return [u, local.one, local.ground_new(z) + v]
    return [u, v, local.one]


def _to_local(components: Sequence[PolyElement], root: ProjPoint) -> List[PolyElement]:
    local = rings_for(root.field).local
    images = _chart_images(root, local)
    return [substitute(f, images, local) for f in components if f]


def order(g: PolyElement) -> float:
    """Vanishing order at the origin of a local polynomial (infinite for zero)."""
    if not g:
        return float("inf")
    return min(a + b for a, b in g.itermonoms())


def system_order(local_system: Sequence[PolyElement]) -> int:
    return int(min(order(g) for g in local_system))


def _strict_first(g: PolyElement, m: int, t0: Scalar) -> PolyElement:
    local = g.ring
    if not g:
        return g
    moved = local.from_dict({(a + b - m, b): c for (a, b), c in g.iterterms()})
    if t0 != local.domain.zero:
        v = local.gens[1]
        moved = moved.compose(v, v + t0)
    return moved


def _strict_second(g: PolyElement, m: int) -> PolyElement:
    if not g:
        return g
    return g.ring.from_dict({(a, a + b - m): c for (a, b), c in g.iterterms()})


def _blow_up_step(local_system: Sequence[PolyElement], m: int, step: Step) -> List[PolyElement]:
    chart, t0 = step
    if chart == FIRST:
        return [_strict_first(g, m, t0) for g in local_system]
    return [_strict_second(g, m) for g in local_system]


def _leading_form(g: PolyElement, m: int, line) -> PolyElement:
    """The degree-m part of g evaluated at (u, v) = (1, x)."""
    return line.from_dict({(b,): c for (a, b), c in g.iterterms() if a + b == m}) if g else line.zero


@dataclass(frozen=True)
class BlowUpData:
    """Strict transforms of a system at a base point and the base points on the exceptional curve."""
    center: BubblePoint
    multiplicity: int
    first_chart: Tuple[PolyElement, ...]
    second_chart: Tuple[PolyElement, ...]
    exceptional: Tuple[Tuple[BubblePoint, int], ...]


def _exceptional_points(center: BubblePoint, local_system: Sequence[PolyElement], m: int):
    """Yields (point, strict transform at it, multiplicity) for every base point on the exceptional curve."""
    field = center.field
    line = rings_for(field).line
    common = line.zero
    for g in local_system:
        common = common.gcd(_leading_form(g, m, line))
    report = rational_roots(common)
    if report.nonlinear_factors:
        raise NonRationalBasePoint("A base point on an exceptional curve is not rational.",
                                   point=str(center), factor=format_poly(report.nonlinear_factors[0]))
    steps: List[Step] = [(FIRST, root) for root, _ in report.roots]
    if all((0, m) not in g for g in local_system):
        steps.append((SECOND, field.zero))
    for step in steps:
        transformed = _blow_up_step(local_system, m, step)
        mult = system_order(transformed)
        if mult > 0:
            yield center.child(step), transformed, mult


def blow_up(q: BubblePoint, system: System) -> BlowUpData:
    components = _components(system)
    local_system = _local_system_at(components, q)
    m = system_order(local_system)
    if m == 0:
        raise DegenerateConfiguration(f"{q} is not a base point of the system.", point=str(q))
    exceptional = tuple((p, mult) for p, _, mult in _exceptional_points(q, local_system, m))
    logger.debug(f"blow_up at {q}: multiplicity {m}, {len(exceptional)} exceptional base point(s)")
    return BlowUpData(
        center=q,
        multiplicity=m,
        first_chart=tuple(_strict_first(g, m, q.field.zero) for g in local_system),
        second_chart=tuple(_strict_second(g, m) for g in local_system),
        exceptional=exceptional,
    )


def _local_system_at(components: Sequence[PolyElement], q: BubblePoint) -> List[PolyElement]:
    local_system = _to_local(components, q.root)
    for step in q.tower:
        m = system_order(local_system)
        if m == 0:
            return [g.ring.one for g in local_system]
        local_system = _blow_up_step(local_system, m, step)
    return local_system


def multiplicity_at(system: System, q: BubblePoint) -> int:
    return system_order(_local_system_at(_components(system), q))


# --- Directions at a proper point ---

def bubble_from_line(root: ProjPoint, line: Sequence[Scalar]) -> BubblePoint:
    """The point infinitely near ``root`` in the direction of a line through it."""
    field = root.field
    if sum((line[i] * root.coords[i] for i in range(3)), field.zero) != field.zero:
        raise DegenerateConfiguration("The line does not pass through the point.", point=str(root))
    x, y, _ = root.coords
    if x != field.zero:
        alpha, beta = line[1], line[2]
    elif y != field.zero:
        alpha, beta = line[0], line[2]
    else:
        alpha, beta = line[0], line[1]
    if beta != field.zero:
        return BubblePoint(root, ((FIRST, -alpha / beta),))
    return BubblePoint(root, ((SECOND, field.zero),))


def bubble_line(q: BubblePoint) -> Tuple[Scalar, Scalar, Scalar]:
    """The line through ``q.root`` whose direction is the first-neighbourhood point ``q``."""
    if q.depth != 1:
        raise DegenerateConfiguration("Only first-neighbourhood points have a tangent line.", point=str(q))
    field = q.field
    chart, t0 = q.tower[0]
    alpha, beta = (-t0, field.one) if chart == FIRST else (field.one, field.zero)
    x, y, z = q.root.coords
    if x != field.zero:
        return (-alpha * y - beta * z, alpha, beta)
    if y != field.zero:
        return (alpha, -beta * z, beta)
    return (alpha, beta, field.zero)


def transform_bubble(m: ProjLinearMap, q: BubblePoint) -> BubblePoint:
    """Image of a proper or first-neighbourhood point under a linear map."""
    image_root = apply_linear(m, q.root)
    if q.is_proper():
        return BubblePoint(image_root)
    return bubble_from_line(image_root, transform_line(m, bubble_line(q)))


# --- Proper base points ---

def _restrict_x(F: PolyElement, y: Scalar, z: Scalar, line) -> PolyElement:
    values: Dict[Tuple[int], Scalar] = {}
    for (a, b, c), coeff in F.iterterms():
        values[(a,)] = values.get((a,), line.domain.zero) + coeff * y ** b * z ** c
    return line.from_dict({k: val for k, val in values.items() if val != line.domain.zero})


def _projection_roots(R: PolyElement, field) -> Tuple[List[Tuple[Scalar, Scalar]], List[PolyElement]]:
    """Rational zeros (y:z) of a binary form and its irrational factors."""
    line = rings_for(field).line
    full = max(sum(monom[-2:]) for monom in R.itermonoms())
    dehom: Dict[Tuple[int], Scalar] = {}
    for monom, coeff in R.iterterms():
        dehom[(monom[-2],)] = dehom.get((monom[-2],), field.zero) + coeff
    affine = line.from_dict(dehom)
    zeros = []
    suspects: List[PolyElement] = []
    if affine.degree() > 0:
        report = rational_roots(affine)
        zeros.extend((root, field.one) for root, _ in report.roots)
        suspects.extend(report.nonlinear_factors)
    if affine.degree() < full:
        zeros.append((field.one, field.zero))
    return zeros, suspects


def _coprime_pairs(components: Sequence[PolyElement]) -> List[Tuple[PolyElement, PolyElement]]:
    nonzero = [f for f in components if f]
    if len(nonzero) < 2:
        return []
    F0, F1 = nonzero[0], nonzero[1]
    G = F0.gcd(F1)
    pairs = []
    rest = nonzero[2] if len(nonzero) > 2 else None
    if total_degree(G) > 0 and rest is not None:
        pairs.append((G, rest))
    A, B = F0.exquo(G), F1.exquo(G)
    if total_degree(A) > 0 and total_degree(B) > 0:
        pairs.append((A, B))
    return pairs


def _elimination_change(A: PolyElement, B: PolyElement, field) -> List[List[Scalar]]:
    for direction in ELIMINATION_DIRECTIONS:
        c = [field.convert(entry) for entry in direction]
        if A(*c) != field.zero and B(*c) != field.zero:
            return [[c[0], field.zero, field.zero], [c[1], field.one, field.zero], [c[2], field.zero, field.one]]
    raise DegenerateConfiguration("No elimination direction avoids both curves.",
                                  curves=[format_poly(A), format_poly(B)])


def proper_base_points(system: System) -> Tuple[List[ProjPoint], List[PolyElement]]:
    """
    Rational common zeros of the three components, and the irreducible factors of the
    elimination resultants that could hide irrational ones.
    """
    components = _components(system)
    plane = components[0].ring
    field = plane.domain
    line = rings_for(field).line
    X, Y, Z = plane.gens
    found: Dict[ProjPoint, None] = {}
    suspects: List[PolyElement] = []
    for A, B in _coprime_pairs(components):
        M = _elimination_change(A, B, field)
        images = [M[i][0] * X + M[i][1] * Y + M[i][2] * Z for i in range(3)]
        A_, B_ = substitute(A, images, plane), substitute(B, images, plane)
        moved = [substitute(F, images, plane) for F in components if F]
        R = A_.resultant(B_)
        zeros, irrational = _projection_roots(R, field)
        suspects.extend(irrational)
        for y, z in zeros:
            h = line.zero
            for F in moved:
                h = h.gcd(_restrict_x(F, y, z, line))
            if h.degree() <= 0:
                continue
            report = rational_roots(h)
            if report.nonlinear_factors:
                raise NonRationalBasePoint("A proper base point is not rational.",
                                           factor=format_poly(report.nonlinear_factors[0]))
            for x, _ in report.roots:
                coords = [M[i][0] * x + M[i][1] * y + M[i][2] * z for i in range(3)]
                found[ProjPoint.of(coords, field)] = None
    points = sorted(found, key=lambda p: p.sort_key())
    logger.debug(f"proper_base_points: {len(points)} point(s), {len(suspects)} irrational factor(s)")
    return points, suspects


def _explore(center: BubblePoint, local_system, m: int, mults: MultiplicityMap, bound: int):
    if center.depth >= MAX_TOWER_DEPTH:
        raise NotHomaloidal("Tower of infinitely near base points does not terminate.", point=str(center))
    for point, transformed, mult in _exceptional_points(center, local_system, m):
        mults[point] = mult
        if sum(k * k for k in mults.values()) > bound:
            raise NotHomaloidal("Multiplicities exceed the homaloidal bound.", point=str(point), bound=bound)
        _explore(point, transformed, mult, mults, bound)


def base_points(system: System) -> MultiplicityMap:
    """All base points with multiplicities, certified by the homaloidal identities."""
    components = _components(system)
    d = max(total_degree(f) for f in components)
    bound = d * d - 1
    points, suspects = proper_base_points(components)
    mults: MultiplicityMap = {}
    for p in points:
        center = BubblePoint(p)
        local_system = _to_local(components, p)
        m = system_order(local_system)
        if m == 0:
            continue
        mults[center] = m
        if sum(k * k for k in mults.values()) > bound:
            raise NotHomaloidal("Multiplicities exceed the homaloidal bound.", point=str(p), bound=bound)
        _explore(center, local_system, m, mults, bound)
    total, squares = sum(mults.values()), sum(m * m for m in mults.values())
    if (total, squares) != (3 * d - 3, bound):
        if suspects:
            raise NonRationalBasePoint("Some base points are not defined over the base field.",
                                       factor=format_poly(suspects[0]), degree=d)
        raise NotHomaloidal("The base points do not form a homaloidal system.",
                            degree=d, sum=total, sum_of_squares=squares)
    logger.debug(f"base_points: degree {d}, {len(mults)} point(s)")
    return mults


def sorted_points(mults: MultiplicityMap) -> List[Tuple[BubblePoint, int]]:
    """Decreasing multiplicity; infinitely near points after the points they lie over."""
    return sorted(mults.items(), key=lambda item: (-item[1], item[0].depth, str(item[0])))


def proximity_consistent(mults: MultiplicityMap) -> bool:
    return all(mults.get(q.parent, 0) >= m for q, m in mults.items() if q.parent is not None)


def class_of(f: CremonaMap, inverse: CremonaMap) -> LinearSystemClass:
    """Class of the image of the lines under f, read from the components of f^-1."""
    if f.degree == 1:
        return LinearSystemClass.of(1, {})
    return LinearSystemClass.of(f.degree, base_points(inverse))


def jonq_degree_formula(d_n: int, D: int, m0: int, others: Sequence[int]) -> int:
    """Degree of the system after a de Jonquieres map of degree D whose point of multiplicity D-1 has weight m0."""
    return D * d_n - (D - 1) * m0 - sum(others)


def pushforward_quadratic(cls: LinearSystemClass, system: CremonaMap, theta: CremonaMap,
                          theta_inv: CremonaMap) -> Tuple[LinearSystemClass, CremonaMap]:
    """
    Image of a system under a quadratic map.  ``system`` is the triple whose pull-back of the
    lines is the system (the inverse of the map it belongs to); the transported triple is
    returned with the new class.
    """
    if theta.degree != 2:
        raise ValueError("pushforward_quadratic expects a quadratic map")
    theta_points = base_points(theta)
    inverse_points = base_points(theta_inv)
    weights = [cls.multiplicity(q) for q in theta_points]
    d = cls.degree
    predicted = 2 * d - sum(weights)
    transported = compose(system, theta_inv)
    if transported.degree != predicted:
        raise DegreeFormulaMismatch("Quadratic transport disagrees with the degree formula.",
                                    predicted=predicted, computed=transported.degree)
    new_mults = base_points(transported) if transported.degree > 1 else {}
    expected = sorted(d - sum(weights) + w for w in weights)
    observed = sorted(multiplicity_at(transported, q) for q in inverse_points)
    if expected != observed:
        raise DegreeFormulaMismatch("Multiplicities at the new base points disagree with the formula.",
                                    expected=expected, observed=observed)
    return LinearSystemClass.of(transported.degree, new_mults), transported
