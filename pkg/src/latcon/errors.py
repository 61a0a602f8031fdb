"""Exception hierarchy for the toolkit.

Every domain error derives from LatconError so callers (and the CLI) can
distinguish bad input from programming mistakes.
"""

from __future__ import annotations


class LatconError(Exception):
    """Base class for all toolkit errors."""


class UnknownElement(LatconError):
    """An element id does not belong to the lattice."""


class CycleDetected(LatconError):
    """The cover relation has a directed cycle."""


class NotTransitiveReduction(LatconError):
    """A cover pair is implied by other cover pairs (or duplicated)."""


class NotALattice(LatconError):
    """A pair of elements has no unique meet or join."""

    def __init__(self, x: str, y: str, what: str = "meet or join"):
        super().__init__(f"no unique {what} for elements {x!r} and {y!r}")
        self.pair = (x, y)


class NoBoundElement(LatconError):
    """The order has no least or no greatest element."""


class ConLTooLarge(LatconError):
    """Refusing to enumerate the congruence lattice beyond the size guard."""


class NotGraded(LatconError):
    """A cover edge does not raise the rank by exactly one."""


class DuplicateXpos(LatconError):
    """Two elements of the same rank share a horizontal position."""


class EdgesCross(LatconError):
    """Two cover edges of the diagram cross away from their endpoints."""

    def __init__(self, e1: tuple[str, str], e2: tuple[str, str]):
        super().__init__(f"edges {e1} and {e2} cross")
        self.edges = (e1, e2)


class NotAnSpsDiagram(LatconError):
    """The diagram is not slim, planar and semimodular."""


class NotACorner(LatconError):
    """The element is not a corner of the diagram."""


class NoCorners(LatconError):
    """The diagram has no corners to remove."""


class NotACoveringPair(LatconError):
    """The two congruences do not form a covering pair of distinct
    join-irreducible congruences."""


class InternalContradiction(LatconError):
    """A structural invariant the search relies on was violated."""


class InvalidChain(LatconError):
    """The supplied witness chain does not validate."""


class UnknownFixture(LatconError):
    """No fixture with the requested name."""


class BoundExceeded(LatconError):
    """Enumeration request beyond the configured size bound."""


class ParseError(LatconError):
    """Syntax error in the lattice text format; carries the line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
