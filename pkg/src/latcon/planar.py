"""Planar diagrams for slim planar semimodular lattices.

A diagram is a lattice plus a rank (vertical) and an xpos (horizontal)
coordinate per element.  Validation is geometric: every cover edge must
raise the rank by exactly one, xpos must be distinct within a rank, and the
straight-line segments of distinct cover edges must not cross away from
shared endpoints.  With gradedness enforced, two edges can only cross when
they span the same rank band and swap horizontal order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .core import FiniteLattice
from .errors import (
    DuplicateXpos,
    EdgesCross,
    NotACorner,
    NotAnSpsDiagram,
    NotGraded,
)


class PlanarDiagram:
    """Validated embedding of a graded lattice; immutable after construction.

    Use build_diagram to construct.  Left-to-right cover lists (sorted by
    the neighbours' xpos) are precomputed; they are what the swing relation
    and the boundary walks consume.
    """

    __slots__ = ("lattice", "rank", "xpos", "_lower_lr", "_upper_lr", "_sps")

    def __init__(
        self,
        lattice: FiniteLattice,
        rank: Mapping[str, int],
        xpos: Mapping[str, int],
    ):
        missing = [e for e in lattice.elements if e not in rank or e not in xpos]
        if missing:
            raise ValueError(f"missing rank/xpos assignment for {missing[0]!r}")
        for lo, hi in lattice.covers:
            if rank[hi] != rank[lo] + 1:
                raise NotGraded(
                    f"cover {lo!r} < {hi!r} spans ranks {rank[lo]} to {rank[hi]}"
                )
        by_rank: dict[int, dict[int, str]] = {}
        for e in lattice.elements:
            row = by_rank.setdefault(rank[e], {})
            if xpos[e] in row:
                raise DuplicateXpos(
                    f"elements {row[xpos[e]]!r} and {e!r} share xpos {xpos[e]} at rank {rank[e]}"
                )
            row[xpos[e]] = e

        # Graded straight-line test: edges live in one rank band each, so a
        # crossing is exactly a strict swap of horizontal order.
        bands: dict[int, list[tuple[str, str]]] = {}
        for lo, hi in lattice.covers:
            bands.setdefault(rank[lo], []).append((lo, hi))
        for edges in bands.values():
            for i in range(len(edges)):
                a, b = edges[i]
                for j in range(i + 1, len(edges)):
                    c, d = edges[j]
                    if a == c or b == d:
                        continue
                    if (xpos[a] - xpos[c]) * (xpos[b] - xpos[d]) < 0:
                        raise EdgesCross((a, b), (c, d))

        self.lattice = lattice
        self.rank = {e: rank[e] for e in lattice.elements}
        self.xpos = {e: xpos[e] for e in lattice.elements}
        self._lower_lr = {
            e: tuple(sorted(lattice.lower_covers(e), key=lambda v: xpos[v]))
            for e in lattice.elements
        }
        self._upper_lr = {
            e: tuple(sorted(lattice.upper_covers(e), key=lambda v: xpos[v]))
            for e in lattice.elements
        }
        self._sps: Optional[bool] = None

    def __repr__(self) -> str:
        return f"PlanarDiagram({len(self.lattice.elements)} elements)"

    def lower_covers_lr(self, x: str) -> tuple[str, ...]:
        return self._lower_lr[x]

    def upper_covers_lr(self, x: str) -> tuple[str, ...]:
        return self._upper_lr[x]


def build_diagram(
    lattice: FiniteLattice, rank: Mapping[str, int], xpos: Mapping[str, int]
) -> PlanarDiagram:
    """Validate the assignments and return the diagram."""
    return PlanarDiagram(lattice, rank, xpos)


def is_semimodular(lattice: FiniteLattice) -> bool:
    """Exhaustive test of: x^y covered by x implies y covered by x v y."""
    for x in lattice.elements:
        for y in lattice.elements:
            if lattice.is_cover(lattice.meet(x, y), x) and not lattice.is_cover(
                y, lattice.join(x, y)
            ):
                return False
    return True


def is_slim(lattice: FiniteLattice) -> bool:
    """Slim means no M3 sublattice."""
    return lattice.find_M3() is None


def is_sps(diagram: PlanarDiagram) -> bool:
    """Slim, planar (already enforced by the embedding) and semimodular."""
    if diagram._sps is None:
        diagram._sps = is_slim(diagram.lattice) and is_semimodular(diagram.lattice)
    return diagram._sps


def boundaries(diagram: PlanarDiagram) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Left and right boundary chains, following the left-most (right-most)
    upper cover from the bottom element up to the top."""
    lat = diagram.lattice

    def walk(side: int) -> tuple[str, ...]:
        chain = [lat.bottom]
        while chain[-1] != lat.top:
            chain.append(diagram.upper_covers_lr(chain[-1])[side])
        return tuple(chain)

    return walk(0), walk(-1)


@dataclass(frozen=True)
class Corner:
    """Doubly irreducible boundary element whose unique upper cover covers
    exactly two elements and whose unique lower cover is covered by exactly
    two elements."""

    element: str
    side: str  # "left" or "right"
    upper: str
    lower: str


def corners(diagram: PlanarDiagram) -> tuple[Corner, ...]:
    if not is_sps(diagram):
        raise NotAnSpsDiagram("corners are defined on slim planar semimodular diagrams")
    lat = diagram.lattice
    left, right = boundaries(diagram)
    out = []
    for e in lat.elements:
        if e in (lat.bottom, lat.top):
            continue
        ups = lat.upper_covers(e)
        downs = lat.lower_covers(e)
        if len(ups) != 1 or len(downs) != 1:
            continue
        if len(lat.lower_covers(ups[0])) != 2 or len(lat.upper_covers(downs[0])) != 2:
            continue
        if e in left:
            out.append(Corner(e, "left", ups[0], downs[0]))
        elif e in right:
            out.append(Corner(e, "right", ups[0], downs[0]))
    return tuple(out)


def is_rectangular(diagram: PlanarDiagram) -> bool:
    """Exactly one corner per side, and the two corners are complementary."""
    cs = corners(diagram)
    lefts = [c for c in cs if c.side == "left"]
    rights = [c for c in cs if c.side == "right"]
    if len(lefts) != 1 or len(rights) != 1:
        return False
    lat = diagram.lattice
    cl, cr = lefts[0].element, rights[0].element
    return lat.meet(cl, cr) == lat.bottom and lat.join(cl, cr) == lat.top


def remove_corner(diagram: PlanarDiagram, element: str) -> PlanarDiagram:
    """Diagram on the sublattice without the corner, with inherited
    coordinates; the result is revalidated from scratch."""
    match = [c for c in corners(diagram) if c.element == element]
    if not match:
        raise NotACorner(f"{element!r} is not a corner of the diagram")
    lat = diagram.lattice
    keep = [e for e in lat.elements if e != element]
    covers = []
    for x in keep:
        for y in keep:
            if not lat.lt(x, y):
                continue
            if any(z != x and z != y and lat.lt(x, z) and lat.lt(z, y) for z in keep):
                continue
            covers.append((x, y))
    sub = FiniteLattice(keep, covers)
    rank = {e: diagram.rank[e] for e in keep}
    xpos = {e: diagram.xpos[e] for e in keep}
    return PlanarDiagram(sub, rank, xpos)
