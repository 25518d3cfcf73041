# cremona/scalar.py
"""
Exact field arithmetic.

Scalars are plain elements of a sympy domain: ``QQ`` for the rationals (the default) or
``FF(p)`` for the prime field used by the fuzz suite.  Domain elements are immutable and
already canonical (reduced fraction, positive denominator), so they double as dictionary
keys everywhere in the library.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, List, NamedTuple, Tuple

import sympy as sp
from sympy import FF, QQ
from sympy.polys.rings import PolyElement, ring

from cremona.config import DEFAULT_FIELD, MIN_PRIME
from cremona.errors import DivisionByZero, UsageError

logger = logging.getLogger(__name__)

Scalar = Any  # an element of QQ or FF(p)


class Rings(NamedTuple):
    """Polynomial rings shared by every module for one base field."""
    field: Any
    plane: Any      # X, Y, Z
    local: Any      # u, v (affine charts and blow-ups)
    line: Any       # x (univariate: rational functions, roots)
    pencil: Any     # y (fiber coefficients of de Jonquieres maps)


@lru_cache(maxsize=None)
def rings_for(field) -> Rings:
    plane = ring("X,Y,Z", field)[0]
    local = ring("u,v", field)[0]
    line = ring("x", field)[0]
    pencil = ring("y", field)[0]
    return Rings(field, plane, local, line, pencil)


@lru_cache(maxsize=None)
def field_from_spec(spec: str = DEFAULT_FIELD):
    """Parse ``q`` or ``fp:P`` into a sympy domain."""
    text = (spec or "q").strip().lower()
    if text in ("q", "qq"):
        return QQ
    if text.startswith("fp:"):
        try:
            p = int(text[3:])
        except ValueError:
            raise UsageError(f"Invalid prime in field specification '{spec}'.", field=spec)
        if p < MIN_PRIME or not sp.isprime(p):
            raise UsageError(f"Field characteristic must be a prime >= {MIN_PRIME}, got {p}.", field=spec)
        return FF(p)
    raise UsageError(f"Unknown field specification '{spec}' (expected 'q' or 'fp:P').", field=spec)


def field_spec(field) -> str:
    return "q" if field == QQ else f"fp:{field.mod}"


# --- Scalars ---

def parse_scalar(text: str, field) -> Scalar:
    """Read ``num/den`` or an integer."""
    raw = str(text).strip()
    try:
        if "/" in raw:
            num, den = raw.split("/", 1)
            num, den = int(num), int(den)
        else:
            num, den = int(raw), 1
    except ValueError:
        raise UsageError(f"Cannot read scalar '{text}'.", value=text)
    if field.convert(den) == field.zero:
        raise DivisionByZero(f"Zero denominator in scalar '{text}'.", value=text)
    return field.convert(num) / field.convert(den)


def format_scalar(a: Scalar, field) -> str:
    if field == QQ:
        num, den = int(field.numer(a)), int(field.denom(a))
        return str(num) if den == 1 else f"{num}/{den}"
    return str(int(field.to_sympy(a)) % field.mod)


def scalar_key(a: Scalar, field) -> Tuple:
    """Total order used for deterministic tie-breaks."""
    if field == QQ:
        return (abs(a), a < 0, a)
    return (int(field.to_sympy(a)) % field.mod,)


def scalar_arith(a: Scalar, b: Scalar, op: str, field) -> Scalar:
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        if b == field.zero:
            raise DivisionByZero("Division of a scalar by zero.", numerator=format_scalar(a, field))
        return a / b
    raise ValueError(f"Unknown scalar operation '{op}'")


# --- Univariate polynomials and rational functions in x ---

def format_poly(p: PolyElement) -> str:
    return str(p).replace("**", "^")


def parse_poly(text: str, target_ring) -> PolyElement:
    """Read a polynomial written with ``^`` or ``**`` in the generators of ``target_ring``."""
    names = {str(g): sp.Symbol(str(g)) for g in target_ring.gens}
    try:
        expr = sp.sympify(str(text).replace("^", "**"), locals=names)
        return target_ring.from_expr(expr)
    except (sp.SympifyError, ValueError, TypeError, SyntaxError) as e:
        raise UsageError(f"Cannot read polynomial '{text}': {e}", value=text)


@dataclass(frozen=True)
class RationalFunction:
    """
    An element of k(x) stored as numerator/denominator with gcd 1 and monic denominator.
    Build instances with ``RationalFunction.of`` so the canonical form is enforced.
    """
    num: PolyElement
    den: PolyElement

    @classmethod
    def of(cls, num: PolyElement, den: PolyElement = None) -> "RationalFunction":
        den = num.ring.one if den is None else den
        if not den:
            raise DivisionByZero("Rational function with zero denominator.", numerator=format_poly(num))
        if not num:
            return cls(num.ring.zero, num.ring.one)
        _, p, q = num.cofactors(den)
        lc = q.LC
        return cls(p.quo_ground(lc), q.quo_ground(lc))

    @property
    def ring(self):
        return self.num.ring

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction.of(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction.of(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction.of(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if not other.num:
            raise DivisionByZero("Division of a rational function by zero.", numerator=str(self))
        return RationalFunction.of(self.num * other.den, self.den * other.num)

    def is_zero(self) -> bool:
        return not self.num

    def __str__(self) -> str:
        if self.den == self.ring.one:
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"


def parse_ratfun(text: str, field) -> RationalFunction:
    line = rings_for(field).line
    expr_text = str(text).replace("^", "**")
    try:
        expr = sp.together(sp.sympify(expr_text, locals={"x": sp.Symbol("x")}))
    except (sp.SympifyError, TypeError, SyntaxError) as e:
        raise UsageError(f"Cannot read rational function '{text}': {e}", value=text)
    num, den = sp.fraction(expr)
    return RationalFunction.of(line.from_expr(num), line.from_expr(den))


def ratfun_arith(f: RationalFunction, g: RationalFunction, op: str) -> RationalFunction:
    if op == "+":
        return f + g
    if op == "-":
        return f - g
    if op == "*":
        return f * g
    if op == "/":
        return f / g
    raise ValueError(f"Unknown rational function operation '{op}'")


@dataclass(frozen=True)
class RootReport:
    """Rational roots with multiplicities and the root-free cofactor."""
    roots: Tuple[Tuple[Scalar, int], ...]
    cofactor: PolyElement

    @property
    def nonlinear_factors(self) -> List[PolyElement]:
        if self.cofactor.degree() <= 0:
            return []
        return [factor for factor, _ in self.cofactor.factor_list()[1]]


def rational_roots(p: PolyElement) -> RootReport:
    """All roots of ``p`` in the base field, plus the cofactor without such roots."""
    field = p.ring.domain
    if not p:
        raise ValueError("rational_roots requires a nonzero polynomial")
    coeff, factors = p.factor_list()
    roots = []
    cofactor = p.ring.ground_new(coeff)
    for factor, mult in factors:
        if factor.degree() == 1:
            lead = factor.coeff(p.ring.gens[0])
            roots.append((-factor.coeff(1) / lead, mult))
        else:
            cofactor *= factor ** mult
    roots.sort(key=lambda item: scalar_key(item[0], field))
    logger.debug(f"rational_roots: {format_poly(p)} -> {len(roots)} roots, cofactor degree {cofactor.degree()}")
    return RootReport(tuple(roots), cofactor)
