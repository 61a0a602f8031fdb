"""Spread relations between intervals and prime intervals, and the
step-by-step checker for witness sequences.

Three one-step relations move a congruence from one interval to another:

* perspectivity: [a,b] up to [c,d] when a = b^c and d = b v c; down is the
  converse direction.
* congruence-perspectivity: the weaker one-sided form, up when d = b v c
  and a <= c, down when c = a^d and d <= b.
* prime-perspectivity (between covering pairs only): down when
  1q <= 1p, 0p v 1q = 1p and 0p ^ 1q <= 0q; up is the exact dual.  A
  prime-perspectivity that is not a perspectivity is established by an N5
  sublattice; p = q is the degenerate one-element case.

On a planar diagram, p swings to q when both hang from the same element,
that element covers at least three elements, and the bottom of q is at
neither end of the left-to-right list of covered elements.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Optional, Union

from .core import FiniteLattice, Interval, PrimeInterval
from .errors import InternalContradiction
from .planar import PlanarDiagram, is_sps
from .errors import NotAnSpsDiagram


class StepKind(enum.Enum):
    PERSP_UP = "persp_up"
    PERSP_DN = "persp_dn"
    CPERSP_UP = "cpersp_up"
    CPERSP_DN = "cpersp_dn"
    PPERSP_UP = "ppersp_up"
    PPERSP_DN = "ppersp_dn"
    SWING = "swing"


@dataclass(frozen=True)
class WitnessSequence:
    """A chain of intervals (or prime intervals) with a declared step kind
    between consecutive items; len(steps) == len(items) - 1."""

    items: tuple
    steps: tuple

    def __post_init__(self):
        if not self.items:
            raise ValueError("a witness sequence needs at least one item")
        if len(self.steps) != len(self.items) - 1:
            raise ValueError("need exactly one step between consecutive items")


class ValidationResult(NamedTuple):
    ok: bool
    failed_at: Optional[int]


# -- interval relations ----------------------------------------------------


def persp_up(lattice: FiniteLattice, i: Interval, j: Interval) -> bool:
    a, b = i
    c, d = j
    return lattice.meet(b, c) == a and lattice.join(b, c) == d


def persp_dn(lattice: FiniteLattice, i: Interval, j: Interval) -> bool:
    a, b = i
    c, d = j
    return lattice.meet(a, d) == c and lattice.join(a, d) == b


def persp(lattice: FiniteLattice, i: Interval, j: Interval) -> bool:
    return persp_up(lattice, i, j) or persp_dn(lattice, i, j)


def cpersp_up(lattice: FiniteLattice, i: Interval, j: Interval) -> bool:
    a, b = i
    c, d = j
    return lattice.join(b, c) == d and lattice.leq(a, c)


def cpersp_dn(lattice: FiniteLattice, i: Interval, j: Interval) -> bool:
    a, b = i
    c, d = j
    return lattice.meet(a, d) == c and lattice.leq(d, b)


def cpersp(lattice: FiniteLattice, i: Interval, j: Interval) -> bool:
    return cpersp_up(lattice, i, j) or cpersp_dn(lattice, i, j)


# -- prime interval relations ------------------------------------------------


def _require_prime(lattice: FiniteLattice, p: PrimeInterval) -> None:
    if not lattice.is_cover(p.lo, p.hi):
        raise ValueError(f"[{p.lo!r}, {p.hi!r}] is not a prime interval")


def ppersp_dn(lattice: FiniteLattice, p: PrimeInterval, q: PrimeInterval) -> bool:
    _require_prime(lattice, p)
    _require_prime(lattice, q)
    return (
        lattice.leq(q.hi, p.hi)
        and lattice.join(p.lo, q.hi) == p.hi
        and lattice.leq(lattice.meet(p.lo, q.hi), q.lo)
    )


def ppersp_up(lattice: FiniteLattice, p: PrimeInterval, q: PrimeInterval) -> bool:
    _require_prime(lattice, p)
    _require_prime(lattice, q)
    return (
        lattice.leq(p.lo, q.lo)
        and lattice.meet(p.hi, q.lo) == p.lo
        and lattice.leq(q.hi, lattice.join(p.hi, q.lo))
    )


def ppersp(lattice: FiniteLattice, p: PrimeInterval, q: PrimeInterval) -> bool:
    return ppersp_dn(lattice, p, q) or ppersp_up(lattice, p, q)


NOT_RELATED = "not_related"
EQUAL = "equal"
PERSPECTIVITY = "perspectivity"
N5_ESTABLISHED = "n5_established"


@dataclass(frozen=True)
class PperspClass:
    """Classification of a prime-perspectivity: how the congruence spread
    from p to q is realized.  For the N5 case the witness is the five
    generated elements (bottom, side, chain lo, chain hi, top)."""

    kind: str
    witness: Optional[tuple[str, str, str, str, str]] = None


def _check_n5(lattice: FiniteLattice, w: tuple[str, str, str, str, str]) -> None:
    o, u, s, t, i = w
    ok = (
        len(set(w)) == 5
        and lattice.lt(o, s)
        and lattice.lt(s, t)
        and lattice.lt(t, i)
        and lattice.meet(u, s) == o
        and lattice.meet(u, t) == o
        and lattice.join(u, s) == i
        and lattice.join(u, t) == i
    )
    if not ok:
        raise InternalContradiction(f"candidate N5 witness {w} fails its equations")


def classify_ppersp(
    lattice: FiniteLattice, p: PrimeInterval, q: PrimeInterval
) -> PperspClass:
    """Classify the relation from p to q: equal, a plain perspectivity, a
    prime-perspectivity established by an N5 sublattice, or unrelated."""
    _require_prime(lattice, p)
    _require_prime(lattice, q)
    if p == q:
        return PperspClass(EQUAL)
    if persp(lattice, p, q):
        return PperspClass(PERSPECTIVITY)
    if ppersp_dn(lattice, p, q):
        w = (
            lattice.meet(p.lo, q.hi),
            p.lo,
            q.lo,
            q.hi,
            lattice.join(p.lo, q.lo),
        )
        _check_n5(lattice, w)
        return PperspClass(N5_ESTABLISHED, w)
    if ppersp_up(lattice, p, q):
        w = (
            lattice.meet(p.hi, q.hi),
            p.hi,
            q.lo,
            q.hi,
            lattice.join(p.hi, q.lo),
        )
        _check_n5(lattice, w)
        return PperspClass(N5_ESTABLISHED, w)
    return PperspClass(NOT_RELATED)


def swing(diagram: PlanarDiagram, p: PrimeInterval, q: PrimeInterval) -> bool:
    """True when p and q share their top, that top covers at least three
    elements, and q's bottom is interior in the left-to-right cover list.
    p = q is not excluded here; callers impose distinctness."""
    if not is_sps(diagram):
        raise NotAnSpsDiagram("swings are defined on slim planar semimodular diagrams")
    lat = diagram.lattice
    _require_prime(lat, p)
    _require_prime(lat, q)
    if p.hi != q.hi:
        return False
    row = diagram.lower_covers_lr(p.hi)
    return len(row) >= 3 and q.lo not in (row[0], row[-1])


# -- sequence validation -----------------------------------------------------

MODE_CPROJ = "cproj"
MODE_PPROJ = "pproj"
MODE_SWING_LEMMA = "swing_lemma"

_CPROJ_STEPS = {StepKind.CPERSP_UP, StepKind.CPERSP_DN}
_PPROJ_STEPS = {StepKind.PPERSP_UP, StepKind.PPERSP_DN}
_SLIDE_STEPS = {StepKind.PERSP_DN, StepKind.SWING}


def _step_holds(
    lattice: FiniteLattice,
    diagram: Optional[PlanarDiagram],
    kind: StepKind,
    a,
    b,
) -> bool:
    if kind is StepKind.PERSP_UP:
        return persp_up(lattice, a, b)
    if kind is StepKind.PERSP_DN:
        return persp_dn(lattice, a, b)
    if kind is StepKind.CPERSP_UP:
        return cpersp_up(lattice, a, b)
    if kind is StepKind.CPERSP_DN:
        return cpersp_dn(lattice, a, b)
    if kind is StepKind.PPERSP_UP:
        return ppersp_up(lattice, a, b)
    if kind is StepKind.PPERSP_DN:
        return ppersp_dn(lattice, a, b)
    if kind is StepKind.SWING:
        if diagram is None:
            raise TypeError("a swing step needs a PlanarDiagram context")
        return swing(diagram, a, b)
    raise ValueError(f"unknown step kind {kind!r}")


def validate_sequence(
    context: Union[FiniteLattice, PlanarDiagram],
    seq: WitnessSequence,
    mode: str,
) -> ValidationResult:
    """Check a witness sequence step by step.

    Returns (True, None) or (False, index): the index of the offending
    step, or of the offending item for item-level failures (repeats, the
    wrong interval shape for the mode).

    Modes: 'cproj' restricts steps to congruence-perspectivities between
    intervals; 'pproj' to prime-perspectivities between pairwise distinct
    prime intervals; 'swing_lemma' allows at most one leading upward
    perspectivity followed by downward perspectivities and swings, and
    requires the tops to be non-increasing after the leading step.
    """
    if isinstance(context, PlanarDiagram):
        diagram: Optional[PlanarDiagram] = context
        lattice = context.lattice
    else:
        diagram = None
        lattice = context
    items = seq.items
    steps = seq.steps

    seen = set()
    for k, it in enumerate(items):
        if it in seen:
            return ValidationResult(False, k)
        seen.add(it)

    for k, it in enumerate(items):
        if mode == MODE_CPROJ:
            if not lattice.leq(it.lo, it.hi):
                return ValidationResult(False, k)
        else:
            if not lattice.is_cover(it.lo, it.hi):
                return ValidationResult(False, k)

    for k, st in enumerate(steps):
        if mode == MODE_CPROJ and st not in _CPROJ_STEPS:
            return ValidationResult(False, k)
        if mode == MODE_PPROJ and st not in _PPROJ_STEPS:
            return ValidationResult(False, k)
        if mode == MODE_SWING_LEMMA:
            allowed = _SLIDE_STEPS | ({StepKind.PERSP_UP} if k == 0 else set())
            if st not in allowed:
                return ValidationResult(False, k)

    for k, st in enumerate(steps):
        if not _step_holds(lattice, diagram, st, items[k], items[k + 1]):
            return ValidationResult(False, k)

    if mode == MODE_SWING_LEMMA:
        start = 1 if steps and steps[0] is StepKind.PERSP_UP else 0
        for k in range(start, len(items) - 1):
            if not lattice.leq(items[k + 1].hi, items[k].hi):
                return ValidationResult(False, k)

    return ValidationResult(True, None)
