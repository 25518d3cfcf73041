# cremona/errors.py
from typing import Any, Dict


class CremonaError(Exception):
    """
    Base class for every domain failure raised by the library.

    Attributes:
        message: Human readable description.
        payload: Diagnostic values (points, factors, degrees) reported by the CLI as JSON.
    """

    def __init__(self, message: str, **payload: Any):
        super().__init__(message)
        self.message = message
        self.payload = payload

    def to_dict(self) -> Dict[str, Any]:
        details = {key: value if isinstance(value, (int, bool, list, dict)) or value is None else str(value)
                   for key, value in self.payload.items()}
        return {"status": "error", "error": type(self).__name__, "message": self.message, "details": details}


# --- Arithmetic ---
class DivisionByZero(CremonaError):
    pass


# --- Geometry of points and maps ---
class DegenerateConfiguration(CremonaError):
    """Collinear points, a forbidden tangent direction, or a linear map that does not swap."""


class CollapsedMap(CremonaError):
    """The triple does not define a dominant map (its image is a point)."""


class BasePointEvaluation(CremonaError):
    pass


class NotSimplified(CremonaError):
    pass


# --- Base points and linear systems ---
class NonRationalBasePoint(CremonaError):
    """A base point is only defined over an extension; payload carries the irreducible factor."""


class NotHomaloidal(CremonaError):
    pass


class DegreeFormulaMismatch(CremonaError):
    pass


# --- de Jonquieres maps ---
class NotDeJonquieres(CremonaError):
    pass


class FactorizationFailed(CremonaError):
    pass


# --- Rewriting ---
class ProofGapDetected(CremonaError):
    """A precondition asserted by the reduction argument failed on a concrete word."""


class NotIdentityInput(CremonaError):
    pass


class BudgetExceeded(CremonaError):
    pass


class DecompositionStuck(CremonaError):
    pass


# --- Input handling (exit code 2 in the CLI) ---
class UsageError(CremonaError):
    """Malformed expression, field specification or trace file."""
