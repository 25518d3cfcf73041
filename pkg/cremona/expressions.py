# cremona/expressions.py
"""
Expression language of the command line.

    expr   := term ('*' term)*
    term   := atom ('^-1')*
    atom   := NAME | '[' P0 ':' P1 ':' P2 ']' | 'A[' r1 ';' r2 ';' r3 ']'
            | 'J[' a,b;c,d '|' f1,f2;f3,f4 ']' | '(' expr ')'

In a J-literal the base matrix acts on y = Y/Z and f1..f4 are polynomials in y.
Names are sigma, tau, nu1, nu2, rho1, rho2 and id.  Products are read as words: the rightmost
factor applies first, so "sigma * tau" is sigma after tau.
"""
import logging
import re
from dataclasses import dataclass
from typing import List, Tuple, Union

from cremona.amalgam.words import Letter, Word, eval_word, invert_word
from cremona.errors import NotDeJonquieres, UsageError
from cremona.jonq import JonqElement, cremona_to_jonq
from cremona.polymap import CremonaMap, cremona_to_linear, parse_map
from cremona.projlinear import ProjLinearMap
from cremona.quadlib import CORES, LINEAR_NAMES, core_jonq, linear_generator

logger = logging.getLogger(__name__)

NAMES = CORES + LINEAR_NAMES + ("id",)


@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class Triple:
    map: CremonaMap


@dataclass(frozen=True)
class Matrix:
    matrix: ProjLinearMap


@dataclass(frozen=True)
class Pair:
    element: JonqElement


@dataclass(frozen=True)
class Inverse:
    item: "Expression"


@dataclass(frozen=True)
class Product:
    items: Tuple["Expression", ...]


Expression = Union[Name, Triple, Matrix, Pair, Inverse, Product]

_TOKEN = re.compile(r"\s*(?:(?P<inv>\^-1)|(?P<star>\*)|(?P<open>\()|(?P<close>\))|(?P<name>[a-z][a-z0-9]*)"
                    r"|(?P<bracket>[AJ]?\[))")


class _Parser:
    def __init__(self, text: str, field):
        self.text = text
        self.field = field
        self.pos = 0

    def _error(self, message: str):
        raise UsageError(f"{message} at position {self.pos} in '{self.text}'.", position=self.pos)

    def _peek(self):
        match = _TOKEN.match(self.text, self.pos)
        if match is None or match.end() == match.start():
            return None, None
        return match.lastgroup, match

    def _bracket_body(self, start: int) -> str:
        end = self.text.find("]", start)
        if end < 0:
            self._error("Unclosed bracket")
        self.pos = end + 1
        return self.text[start:end]

    def parse(self) -> Expression:
        expr = self.expr()
        if self.text[self.pos:].strip():
            self._error("Unexpected trailing input")
        return expr

    def expr(self) -> Expression:
        items = [self.term()]
        while True:
            kind, match = self._peek()
            if kind != "star":
                break
            self.pos = match.end()
            items.append(self.term())
        return items[0] if len(items) == 1 else Product(tuple(items))

    def term(self) -> Expression:
        item = self.atom()
        while True:
            kind, match = self._peek()
            if kind != "inv":
                return item
            self.pos = match.end()
            item = Inverse(item)

    def atom(self) -> Expression:
        kind, match = self._peek()
        if kind is None:
            self._error("Expected a generator, a bracket or '('")
        self.pos = match.end()
        if kind == "name":
            name = match.group("name")
            if name not in NAMES:
                self._error(f"Unknown generator '{name}'")
            return Name(name)
        if kind == "open":
            inner = self.expr()
            kind, match = self._peek()
            if kind != "close":
                self._error("Expected ')'")
            self.pos = match.end()
            return inner
        if kind == "bracket":
            opener = match.group("bracket")
            body = self._bracket_body(self.pos)
            if opener == "[":
                return Triple(parse_map(f"[{body}]", self.field))
            if opener == "A[":
                rows = [row.split(",") for row in body.split(";")]
                return Matrix(ProjLinearMap.from_strings([e.strip() for row in rows for e in row], self.field))
            return Pair(_parse_pair(body, self.field))
        self._error(f"Unexpected '{match.group(0).strip()}'")


def _parse_pair(body: str, field) -> JonqElement:
    if body.count("|") != 1:
        raise UsageError(f"A de Jonquieres pair needs one '|': 'J[{body}]'.", value=body)
    base, fiber = body.split("|")
    base_entries = [e.strip() for row in base.split(";") for e in row.split(",")]
    fiber_entries = [e.strip() for row in fiber.split(";") for e in row.split(",")]
    return JonqElement.from_strings(base_entries, fiber_entries, field)


def parse_expression(text: str, field) -> Expression:
    if not str(text).strip():
        raise UsageError("Empty expression.")
    return _Parser(str(text), field).parse()


def format_expression(expr: Expression) -> str:
    if isinstance(expr, Name):
        return expr.name
    if isinstance(expr, Triple):
        return str(expr.map)
    if isinstance(expr, Matrix):
        return str(expr.matrix)
    if isinstance(expr, Pair):
        return str(expr.element)
    if isinstance(expr, Inverse):
        inner = format_expression(expr.item)
        return f"({inner})^-1" if isinstance(expr.item, Product) else f"{inner}^-1"
    return " * ".join(f"({format_expression(e)})" if isinstance(e, Product) else format_expression(e)
                      for e in expr.items)


def _map_letter(f: CremonaMap) -> Word:
    if f.degree == 1:
        m = cremona_to_linear(f)
        return [] if m.is_identity() else [Letter.a(m)]
    try:
        return [Letter.j(cremona_to_jonq(f))]
    except NotDeJonquieres:
        from cremona.decompose import decompose
        logger.info(f"Triple {f} is not de Jonquieres; decomposing it into letters")
        return decompose(f).word


def to_word(expr: Expression, field) -> Word:
    """Letters of the expression; triples outside A and J are decomposed."""
    if isinstance(expr, Name):
        if expr.name == "id":
            return []
        if expr.name in CORES:
            return [Letter.j(core_jonq(expr.name, field))]
        return [Letter.a(linear_generator(expr.name, field))]
    if isinstance(expr, Triple):
        return _map_letter(expr.map)
    if isinstance(expr, Matrix):
        return [Letter.a(expr.matrix)]
    if isinstance(expr, Pair):
        return [Letter.j(expr.element)]
    if isinstance(expr, Inverse):
        return invert_word(to_word(expr.item, field))
    word: List[Letter] = []
    for item in expr.items:
        word.extend(to_word(item, field))
    return word


def to_map(expr: Expression, field) -> CremonaMap:
    """The map an expression denotes; a bare triple is returned as given (no birationality check)."""
    if isinstance(expr, Triple):
        return expr.map
    return eval_word(to_word(expr, field), field)
