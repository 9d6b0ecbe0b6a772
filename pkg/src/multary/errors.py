"""Exception hierarchy shared by all multary modules.

Every error carries enough structure to serialize as a JSON object, which
the CLI emits on standard error for domain failures (exit code 1).
"""

from __future__ import annotations


class MultaryError(Exception):
    """Base class for all domain errors."""

    def payload(self) -> dict:
        return {}

    def to_json(self) -> dict:
        out = {"error": type(self).__name__, "message": str(self)}
        out.update(self.payload())
        return out


class WrongLength(MultaryError):
    pass


class ValueOutOfRange(MultaryError):
    pass


class ArityMismatch(MultaryError):
    pass


class DimensionMismatch(MultaryError):
    pass


class OrderMismatch(MultaryError):
    pass


class PositionOutOfRange(MultaryError):
    pass


class SegmentOutOfRange(MultaryError):
    pass


class TooManyFixings(MultaryError):
    pass


class LatinViolation(MultaryError):
    """A line of the table repeats a value.

    `position` is the 1-based coordinate that varies along the violated
    line, `fixed` the values of the remaining coordinates in order, and
    `value` the first repeated entry.
    """

    def __init__(self, position: int, fixed: tuple, value: int):
        self.position = position
        self.fixed = tuple(fixed)
        self.value = value
        super().__init__(
            f"line at position {position} with fixed arguments {self.fixed} "
            f"repeats value {value}"
        )

    def payload(self) -> dict:
        return {
            "position": self.position,
            "fixed": list(self.fixed),
            "value": self.value,
        }


class NotThetaComplete(MultaryError):
    """Carries the witness theta subgraph: (node u, node v, three paths)."""

    def __init__(self, witness):
        self.witness = witness
        u, v, paths = witness
        super().__init__(
            f"nodes {u} and {v} are joined by three internally disjoint "
            f"paths but are not adjacent"
        )

    def payload(self) -> dict:
        u, v, paths = self.witness
        return {"nodes": [u, v], "paths": [list(p) for p in paths]}


class NotFullyReducible(MultaryError):
    pass


class CriterionFailed(MultaryError):
    pass


class MalformedTree(MultaryError):
    pass


class BudgetExceeded(MultaryError):
    pass


class PreconditionFailed(MultaryError):
    pass


class NotBinary(MultaryError):
    pass


class ArityTooSmall(MultaryError):
    pass


class ClassSizeMismatch(MultaryError):
    pass


class FormatError(MultaryError):
    pass


class InternalInconsistency(MultaryError):
    """Raised when a structural theorem the code relies on appears violated.

    This always signals an implementation bug, never bad user input.
    """
