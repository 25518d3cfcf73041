# cremona/projlinear.py
"""
Points of the projective plane and the linear groups acting on them: PGL(3) acting on
points (the letters of type A) and PGL(2) over the base field or over k(y).

All values are stored in a canonical representative (first nonzero entry equal to one,
or monic and content-free for polynomial entries) so equality is literal comparison.
"""
import logging
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Any, Iterable, List, Sequence, Tuple

from sympy.polys.rings import PolyElement

from cremona.errors import DegenerateConfiguration, DivisionByZero, UsageError
from cremona.scalar import Scalar, format_poly, format_scalar, parse_scalar, scalar_key

logger = logging.getLogger(__name__)

# Completion candidates for frames, tried in this order
_COMPLETION_POINTS = [
    (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3), (1, -1, 2), (2, 1, -1), (1, 3, -2), (3, -2, 1),
]


def _det3(m: Sequence[Sequence[Scalar]]) -> Scalar:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _adj3(m: Sequence[Sequence[Scalar]]) -> List[List[Scalar]]:
    """Adjugate matrix, so that m * adj(m) = det(m) * I."""
    cof = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            rows = [r for r in range(3) if r != i]
            cols = [c for c in range(3) if c != j]
            minor = m[rows[0]][cols[0]] * m[rows[1]][cols[1]] - m[rows[0]][cols[1]] * m[rows[1]][cols[0]]
            cof[i][j] = minor if (i + j) % 2 == 0 else -minor
    return [[cof[j][i] for j in range(3)] for i in range(3)]


def _mul3(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(3)), a[0][0] * 0) for j in range(3)] for i in range(3)]


# --- Points ---

@dataclass(frozen=True)
class ProjPoint:
    """A point (X:Y:Z) with its first nonzero coordinate equal to one."""
    coords: Tuple[Scalar, Scalar, Scalar]
    field: Any = dc_field(compare=False, repr=False, hash=False)

    @classmethod
    def of(cls, coords: Iterable, field) -> "ProjPoint":
        values = [field.convert(c) for c in coords]
        if len(values) != 3:
            raise ValueError("A projective point needs three coordinates")
        lead = next((c for c in values if c != field.zero), None)
        if lead is None:
            raise DegenerateConfiguration("The zero vector is not a projective point.")
        return cls(tuple(c / lead for c in values), field)

    def vector(self) -> Tuple[Scalar, Scalar, Scalar]:
        return self.coords

    def __str__(self) -> str:
        return "(" + ":".join(format_scalar(c, self.field) for c in self.coords) + ")"

    def sort_key(self) -> Tuple:
        return tuple(scalar_key(c, self.field) for c in self.coords)


def standard_point(i: int, field) -> ProjPoint:
    """p1 = (1:0:0), p2 = (0:1:0), p3 = (0:0:1)."""
    coords = [0, 0, 0]
    coords[i - 1] = 1
    return ProjPoint.of(coords, field)


def parse_point(text: str, field) -> ProjPoint:
    raw = str(text).strip()
    if not (raw.startswith("(") and raw.endswith(")")) or raw.count(":") != 2:
        raise UsageError(f"Cannot read point '{text}' (expected '(X:Y:Z)').", value=text)
    return ProjPoint.of([parse_scalar(part, field) for part in raw[1:-1].split(":")], field)


def collinear(p: ProjPoint, q: ProjPoint, r: ProjPoint) -> bool:
    return _det3([p.coords, q.coords, r.coords]) == p.field.zero


def line_through(p: ProjPoint, q: ProjPoint) -> Tuple[Scalar, Scalar, Scalar]:
    """Coefficients (a, b, c) of the line aX + bY + cZ = 0 through two distinct points."""
    (x1, y1, z1), (x2, y2, z2) = p.coords, q.coords
    return (y1 * z2 - z1 * y2, z1 * x2 - x1 * z2, x1 * y2 - y1 * x2)


def cross(u: Sequence[Scalar], w: Sequence[Scalar]) -> Tuple[Scalar, Scalar, Scalar]:
    return (u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0])


# --- PGL(3) ---

@dataclass(frozen=True)
class ProjLinearMap:
    """An invertible 3x3 matrix up to scale; rows act on column vectors (X, Y, Z)."""
    rows: Tuple[Tuple[Scalar, ...], ...]
    field: Any = dc_field(compare=False, repr=False, hash=False)

    @classmethod
    def of(cls, rows: Iterable[Iterable], field) -> "ProjLinearMap":
        matrix = [[field.convert(c) for c in row] for row in rows]
        if len(matrix) != 3 or any(len(row) != 3 for row in matrix):
            raise ValueError("A plane linear map needs a 3x3 matrix")
        if _det3(matrix) == field.zero:
            raise DegenerateConfiguration("Singular matrix does not define an element of PGL(3).",
                                          matrix=[[format_scalar(c, field) for c in row] for row in matrix])
        lead = next(c for row in matrix for c in row if c != field.zero)
        return cls(tuple(tuple(c / lead for c in row) for row in matrix), field)

    @classmethod
    def identity(cls, field) -> "ProjLinearMap":
        return cls.of([[1, 0, 0], [0, 1, 0], [0, 0, 1]], field)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], field) -> "ProjLinearMap":
        return cls.of([[columns[j][i] for j in range(3)] for i in range(3)], field)

    def __matmul__(self, other: "ProjLinearMap") -> "ProjLinearMap":
        """Product self * other (other applies first)."""
        return ProjLinearMap.of(_mul3(self.rows, other.rows), self.field)

    def inverse(self) -> "ProjLinearMap":
        return ProjLinearMap.of(_adj3(self.rows), self.field)

    def is_identity(self) -> bool:
        return self == ProjLinearMap.identity(self.field)

    def column(self, j: int) -> Tuple[Scalar, Scalar, Scalar]:
        return tuple(self.rows[i][j] for i in range(3))

    def to_strings(self) -> List[str]:
        return [format_scalar(c, self.field) for row in self.rows for c in row]

    @classmethod
    def from_strings(cls, entries: Sequence[str], field) -> "ProjLinearMap":
        if len(entries) != 9:
            raise UsageError("A matrix needs nine entries in row-major order.", entries=list(entries))
        values = [parse_scalar(e, field) for e in entries]
        return cls.of([values[0:3], values[3:6], values[6:9]], field)

    def __str__(self) -> str:
        return "A[" + ";".join(",".join(format_scalar(c, self.field) for c in row) for row in self.rows) + "]"


def apply_linear(m: ProjLinearMap, p: ProjPoint) -> ProjPoint:
    image = [sum((m.rows[i][j] * p.coords[j] for j in range(3)), m.field.zero) for i in range(3)]
    return ProjPoint.of(image, p.field)


def transform_line(m: ProjLinearMap, line: Sequence[Scalar]) -> Tuple[Scalar, Scalar, Scalar]:
    """Image of the line {l . v = 0} under m, i.e. coefficients of l . m^-1."""
    inv = _adj3(m.rows)
    return tuple(sum((line[i] * inv[i][j] for i in range(3)), m.field.zero) for j in range(3))


def in_A_cap_J(m: ProjLinearMap) -> bool:
    """True iff m fixes p1 = (1:0:0), i.e. the first column is proportional to e1."""
    zero = m.field.zero
    return m.rows[1][0] == zero and m.rows[2][0] == zero


def _frame_matrix(points: Sequence[ProjPoint]):
    """Columns lambda_i * p_i sending the standard frame e1, e2, e3, (1,1,1) onto the four points."""
    field = points[0].field
    basis = [list(p.coords) for p in points[:3]]
    columns_matrix = [[basis[j][i] for j in range(3)] for i in range(3)]
    if _det3(columns_matrix) == field.zero:
        raise DegenerateConfiguration("Three of the frame points are collinear.",
                                      points=[str(p) for p in points[:3]])
    adj = _adj3(columns_matrix)
    target = points[3].coords
    lambdas = [sum((adj[i][j] * target[j] for j in range(3)), field.zero) for i in range(3)]
    if any(lam == field.zero for lam in lambdas):
        raise DegenerateConfiguration("Frame points are not in general position.", points=[str(p) for p in points])
    return [[columns_matrix[i][j] * lambdas[j] for j in range(3)] for i in range(3)]


def linear_map_through(src: Sequence[ProjPoint], dst: Sequence[ProjPoint]) -> ProjLinearMap:
    """The unique element of PGL(3) sending src[i] to dst[i] for four points in general position."""
    if len(src) != 4 or len(dst) != 4:
        raise ValueError("linear_map_through expects four source and four target points")
    field = src[0].field
    m_src = _frame_matrix(src)
    m_dst = _frame_matrix(dst)
    return ProjLinearMap.of(_mul3(m_dst, _adj3(m_src)), field)


def general_position(points: Sequence[ProjPoint]) -> bool:
    return not any(collinear(a, b, c) for a, b, c in combinations(points, 3))


def complete_frame(p: ProjPoint, q: ProjPoint) -> Tuple[ProjPoint, ProjPoint]:
    """First two candidate points that complete {p, q} to a frame."""
    field = p.field
    candidates = [ProjPoint.of(c, field) for c in _COMPLETION_POINTS]
    for r in candidates:
        if r in (p, q) or collinear(p, q, r):
            continue
        for s in candidates:
            if s in (p, q, r):
                continue
            if general_position([p, q, r, s]):
                return r, s
    raise DegenerateConfiguration("Cannot complete the pair to a projective frame.", p=str(p), q=str(q))


def swap_map(p: ProjPoint, q: ProjPoint) -> ProjLinearMap:
    """
    Involution exchanging p and q: tau conjugated by the frame map sending
    (p1, p2, r, s) to (p, q, r, s), where r, s come from ``complete_frame``.
    """
    if p == q:
        raise DegenerateConfiguration("swap_map needs two distinct points.", point=str(p))
    field = p.field
    r, s = complete_frame(p, q)
    std = [standard_point(1, field), standard_point(2, field), standard_point(3, field), ProjPoint.of((1, 1, 1), field)]
    frame = linear_map_through(std, [p, q, r, s])
    tau = ProjLinearMap.of([[0, 1, 0], [1, 0, 0], [0, 0, 1]], field)
    return frame @ tau @ frame.inverse()


def intersection_frame(q: ProjPoint, third: Sequence[Scalar] = None) -> ProjLinearMap:
    """
    An element c of A cap J with c(q) = p2.  The inverse has columns (e1, q, w); w defaults to
    the first of e3, e2 completing a basis.
    """
    field = q.field
    e1 = (field.one, field.zero, field.zero)
    options = [third] if third is not None else [(field.zero, field.zero, field.one), (field.zero, field.one, field.zero)]
    for w in options:
        if _det3([[e1[i], q.coords[i], w[i]] for i in range(3)]) != field.zero:
            return ProjLinearMap.from_columns([e1, q.coords, w], field).inverse()
    raise DegenerateConfiguration("Point lies on the excluded line through p1.", point=str(q))


# --- PGL(2) over k and over k(y) ---

@dataclass(frozen=True)
class Moebius:
    """
    2x2 invertible matrix (a, b; c, d) up to scale.  Entries are either scalars (PGL(2,k))
    or polynomials in one variable standing for an element of PGL(2,k(y)) with denominators cleared.
    """
    entries: Tuple[Any, Any, Any, Any]
    field: Any = dc_field(compare=False, repr=False, hash=False)

    @property
    def is_polynomial(self) -> bool:
        return isinstance(self.entries[0], PolyElement)

    @classmethod
    def of(cls, entries: Sequence, field) -> "Moebius":
        a, b, c, d = entries
        if isinstance(a, PolyElement):
            det = a * d - b * c
            if not det:
                raise DegenerateConfiguration("Singular matrix over k(y).",
                                              entries=[format_poly(e) for e in entries])
            content = a.gcd(b).gcd(c).gcd(d)
            values = [e.exquo(content) for e in (a, b, c, d)]
            lead = next(e for e in values if e).LC
            return cls(tuple(e.quo_ground(lead) for e in values), field)
        values = [field.convert(e) for e in entries]
        if values[0] * values[3] - values[1] * values[2] == field.zero:
            raise DegenerateConfiguration("Singular matrix over the base field.",
                                          entries=[format_scalar(e, field) for e in values])
        lead = next(e for e in values if e != field.zero)
        return cls(tuple(e / lead for e in values), field)

    @classmethod
    def identity(cls, field, line_ring=None) -> "Moebius":
        if line_ring is not None:
            return cls.of([line_ring.one, line_ring.zero, line_ring.zero, line_ring.one], field)
        return cls.of([1, 0, 0, 1], field)

    def __matmul__(self, other: "Moebius") -> "Moebius":
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return Moebius.of([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h], self.field)

    def inverse(self) -> "Moebius":
        a, b, c, d = self.entries
        return Moebius.of([d, -b, -c, a], self.field)

    def det(self):
        a, b, c, d = self.entries
        return a * d - b * c

    def is_identity(self) -> bool:
        a, b, c, d = self.entries
        return not b and not c and a == d

    def max_degree(self) -> int:
        if not self.is_polynomial:
            return 0
        return max(e.degree() for e in self.entries if e)

    def apply(self, value: Scalar) -> Scalar:
        a, b, c, d = self.entries
        den = c * value + d
        if den == self.field.zero:
            raise DivisionByZero("Moebius map evaluated at its pole.", value=format_scalar(value, self.field))
        return (a * value + b) / den

    def to_strings(self) -> List[str]:
        if self.is_polynomial:
            return [format_poly(e) for e in self.entries]
        return [format_scalar(e, self.field) for e in self.entries]

    def __str__(self) -> str:
        s = self.to_strings()
        return f"[{s[0]},{s[1]};{s[2]},{s[3]}]"
