"""Fixture catalog and exhaustive small-lattice enumeration.

The enumerator favours correctness over speed: every bounded order on n
elements is the two-point extension of an arbitrary order on the n-2
middle elements, so it generates all naturally-labelled middle orders by
choosing a down-set for each new element, deduplicates them up to
isomorphism, attaches the bounds and keeps the results that are lattices.
The stream is deterministic and duplicate-free, one lattice per
isomorphism class.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from .core import FiniteLattice
from .errors import BoundExceeded, EdgesCross, NotALattice, UnknownFixture
from .planar import PlanarDiagram, build_diagram, is_semimodular, is_slim


@dataclass(frozen=True)
class Fixture:
    name: str
    lattice: FiniteLattice
    diagram: Optional[PlanarDiagram]


def _chain(ids: list[str]) -> tuple[list[str], list[tuple[str, str]]]:
    return ids, list(zip(ids, ids[1:]))


def _fan_rows() -> tuple[list[str], list[tuple[str, str]]]:
    # Triangular fan: rows of 1,2,3,4,5 elements under a single top, each
    # row zigzag-covered by the next; the top covers all five of the last
    # row, so it is a hinge with five elements under it.
    rows = [
        ["0"],
        ["a1", "a2"],
        ["g1", "g2", "g3"],
        ["d1", "d2", "d3", "d4"],
        ["c1", "c2", "c3", "c4", "c5"],
        ["1"],
    ]
    elements = [e for row in rows for e in row]
    covers: list[tuple[str, str]] = []
    covers += [("0", "a1"), ("0", "a2")]
    for lower, upper in zip(rows[1:4], rows[2:5]):
        for k, e in enumerate(lower):
            covers.append((e, upper[k]))
            covers.append((e, upper[k + 1]))
    covers += [(c, "1") for c in rows[4]]
    return elements, covers


def _grid3x3() -> tuple[list[str], list[tuple[str, str]], dict, dict]:
    ids = [f"{i}{j}" for i in range(3) for j in range(3)]
    covers = []
    for i in range(3):
        for j in range(3):
            if i < 2:
                covers.append((f"{i}{j}", f"{i+1}{j}"))
            if j < 2:
                covers.append((f"{i}{j}", f"{i}{j+1}"))
    rank = {f"{i}{j}": i + j for i in range(3) for j in range(3)}
    xpos = {f"{i}{j}": j for i in range(3) for j in range(3)}
    return ids, covers, rank, xpos


def _rank_by_height(lat: FiniteLattice) -> dict[str, int]:
    return {e: lat.height(e) for e in lat.elements}


def _row_xpos(order: list[list[str]]) -> dict[str, int]:
    return {e: k for row in order for k, e in enumerate(row)}


@lru_cache(maxsize=None)
def _build_fixture(name: str) -> Fixture:
    if name == "C2":
        elems, covers = _chain(["0", "1"])
        lat = FiniteLattice(elems, covers)
        dia = build_diagram(lat, _rank_by_height(lat), {e: 0 for e in elems})
    elif name == "C3":
        elems, covers = _chain(["0", "m", "1"])
        lat = FiniteLattice(elems, covers)
        dia = build_diagram(lat, _rank_by_height(lat), {e: 0 for e in elems})
    elif name == "C2x2":
        lat = FiniteLattice(
            ["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]
        )
        dia = build_diagram(
            lat, _rank_by_height(lat), _row_xpos([["0"], ["a", "b"], ["1"]])
        )
    elif name == "N5":
        lat = FiniteLattice(
            ["o", "a", "b", "c", "i"],
            [("o", "a"), ("a", "b"), ("b", "i"), ("o", "c"), ("c", "i")],
        )
        dia = None  # admits no graded rank function
    elif name == "M3":
        lat = FiniteLattice(
            ["o", "x", "y", "z", "i"],
            [("o", "x"), ("o", "y"), ("o", "z"), ("x", "i"), ("y", "i"), ("z", "i")],
        )
        dia = build_diagram(
            lat, _rank_by_height(lat), _row_xpos([["o"], ["x", "y", "z"], ["i"]])
        )
    elif name == "S7":
        lat = FiniteLattice(
            ["0", "a", "b", "e1", "e2", "e3", "1"],
            [
                ("0", "a"),
                ("0", "b"),
                ("a", "e1"),
                ("a", "e2"),
                ("b", "e2"),
                ("b", "e3"),
                ("e1", "1"),
                ("e2", "1"),
                ("e3", "1"),
            ],
        )
        dia = build_diagram(
            lat,
            _rank_by_height(lat),
            _row_xpos([["0"], ["a", "b"], ["e1", "e2", "e3"], ["1"]]),
        )
    elif name == "FAN5":
        elems, covers = _fan_rows()
        lat = FiniteLattice(elems, covers)
        dia = build_diagram(
            lat,
            _rank_by_height(lat),
            _row_xpos(
                [
                    ["0"],
                    ["a1", "a2"],
                    ["g1", "g2", "g3"],
                    ["d1", "d2", "d3", "d4"],
                    ["c1", "c2", "c3", "c4", "c5"],
                    ["1"],
                ]
            ),
        )
    elif name == "GRID3x3":
        ids, covers, rank, xpos = _grid3x3()
        lat = FiniteLattice(ids, covers)
        dia = build_diagram(lat, rank, xpos)
    else:
        raise UnknownFixture(f"no fixture named {name!r}")
    return Fixture(name, lat, dia)


FIXTURE_NAMES = ("C2", "C3", "C2x2", "N5", "M3", "S7", "FAN5", "GRID3x3")

_SPS_FIXTURES = ("C2", "C3", "C2x2", "S7", "FAN5", "GRID3x3")


def fixture(name: str) -> Fixture:
    """Named, validated fixture; unknown names raise UnknownFixture."""
    if name not in FIXTURE_NAMES:
        raise UnknownFixture(f"no fixture named {name!r}")
    return _build_fixture(name)


# -- isomorphism -------------------------------------------------------------


def _invariants(lat: FiniteLattice) -> list[tuple]:
    n = len(lat.elements)
    up, down = lat._up, lat._down
    base = [
        (
            lat.height(e),
            len(lat._lcov[i]),
            len(lat._ucov[i]),
            bin(down[i]).count("1"),
            bin(up[i]).count("1"),
        )
        for i, e in enumerate(lat.elements)
    ]
    # one refinement round: add the sorted neighbour invariant multisets
    return [
        (
            base[i],
            tuple(sorted(base[j] for j in lat._lcov[i])),
            tuple(sorted(base[j] for j in lat._ucov[i])),
        )
        for i in range(n)
    ]


def is_isomorphic(l1: FiniteLattice, l2: FiniteLattice) -> bool:
    """Exact isomorphism test: invariant-pruned backtracking on the order."""
    n = len(l1.elements)
    if n != len(l2.elements) or len(l1.covers) != len(l2.covers):
        return False
    inv1, inv2 = _invariants(l1), _invariants(l2)
    if sorted(inv1) != sorted(inv2):
        return False
    candidates = [
        [j for j in range(n) if inv2[j] == inv1[i]] for i in range(n)
    ]
    order = sorted(range(n), key=lambda i: len(candidates[i]))
    up1, up2 = l1._up, l2._up
    image = [-1] * n
    used = [False] * n

    def assign(k: int) -> bool:
        if k == n:
            return True
        i = order[k]
        for j in candidates[i]:
            if used[j]:
                continue
            ok = True
            for k2 in range(k):
                i2 = order[k2]
                if (up1[i] >> i2 & 1) != (up2[j] >> image[i2] & 1) or (
                    up1[i2] >> i & 1
                ) != (up2[image[i2]] >> j & 1):
                    ok = False
                    break
            if ok:
                image[i] = j
                used[j] = True
                if assign(k + 1):
                    return True
                used[j] = False
                image[i] = -1
        return False

    return assign(0)


# -- enumeration -------------------------------------------------------------


def _natural_middle_orders(m: int) -> Iterator[tuple[int, ...]]:
    """All strict orders on labels 0..m-1 compatible with the label order,
    produced by choosing a downward-closed lower set for each new element.
    Yields tuples of strict-lower-set bitmasks."""
    down = [0] * m

    def extend(k: int) -> Iterator[tuple[int, ...]]:
        if k == m:
            yield tuple(down)
            return
        for mask in range(1 << k):
            closed = True
            rest = mask
            while rest:
                low = rest & -rest
                if down[low.bit_length() - 1] & ~mask:
                    closed = False
                    break
                rest ^= low
            if closed:
                down[k] = mask
                yield from extend(k + 1)

    yield from extend(0)


def _middle_to_lattice(m: int, down: tuple[int, ...]) -> Optional[FiniteLattice]:
    """Attach bounds to a middle order and keep the result if it is a
    lattice.  Element ids are x0 (bottom) .. x{m+1} (top)."""
    n = m + 2
    ids = [f"x{i}" for i in range(n)]
    covers: list[tuple[str, str]] = []
    for j in range(m):
        strict = down[j]
        reduced = strict
        rest = strict
        while rest:
            low = rest & -rest
            reduced &= ~down[low.bit_length() - 1]
            rest ^= low
        rest = reduced
        while rest:
            low = rest & -rest
            covers.append((ids[low.bit_length()], ids[j + 1]))
            rest ^= low
        if not strict:
            covers.append((ids[0], ids[j + 1]))
    ups = [0] * m
    for j in range(m):
        rest = down[j]
        while rest:
            low = rest & -rest
            ups[low.bit_length() - 1] |= 1 << j
            rest ^= low
    for j in range(m):
        if not ups[j]:
            covers.append((ids[j + 1], ids[n - 1]))
    if m == 0:
        covers.append((ids[0], ids[1]))
    try:
        return FiniteLattice(ids, covers)
    except NotALattice:
        return None


def enumerate_lattices(n: int, bound: int = 8) -> Iterator[FiniteLattice]:
    """All lattices with exactly n elements, one per isomorphism class, in a
    deterministic order.  n above the bound raises BoundExceeded."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > bound:
        raise BoundExceeded(f"n={n} exceeds the enumeration bound {bound}")
    if n == 1:
        yield FiniteLattice(["x0"], [])
        return
    buckets: dict[tuple, list[FiniteLattice]] = {}
    for down in _natural_middle_orders(n - 2):
        lat = _middle_to_lattice(n - 2, down)
        if lat is None:
            continue
        key = tuple(sorted(_invariants(lat)))
        known = buckets.setdefault(key, [])
        if any(is_isomorphic(lat, rep) for rep in known):
            continue
        known.append(lat)
        yield lat


def _search_embedding(lat: FiniteLattice) -> Optional[PlanarDiagram]:
    """First valid layered embedding, trying per-rank permutations in
    lexicographic element order; None when every assignment crosses."""
    rank = _rank_by_height(lat)
    for lo, hi in lat.covers:
        if rank[hi] != rank[lo] + 1:
            return None
    rows: dict[int, list[str]] = {}
    for e in lat.elements:
        rows.setdefault(rank[e], []).append(e)
    levels = [rows[r] for r in sorted(rows)]
    for perm_rows in itertools.product(*(itertools.permutations(r) for r in levels)):
        xpos = {e: k for row in perm_rows for k, e in enumerate(row)}
        try:
            return build_diagram(lat, rank, xpos)
        except EdgesCross:
            continue
    return None


def sps_corpus(max_n: int, bound: int = 8) -> Iterator[PlanarDiagram]:
    """Every slim planar semimodular lattice with at most max_n elements
    (one witness embedding each), followed by the named SPS fixtures that
    are not already covered up to isomorphism."""
    if max_n > bound:
        raise BoundExceeded(f"max_n={max_n} exceeds the enumeration bound {bound}")
    emitted: list[FiniteLattice] = []
    for n in range(1, max_n + 1):
        for lat in enumerate_lattices(n, bound):
            if not (is_slim(lat) and is_semimodular(lat)):
                continue
            dia = _search_embedding(lat)
            if dia is not None:
                emitted.append(lat)
                yield dia
    for name in _SPS_FIXTURES:
        fx = fixture(name)
        if any(
            len(fx.lattice.elements) == len(prev.elements)
            and is_isomorphic(fx.lattice, prev)
            for prev in emitted
        ):
            continue
        emitted.append(fx.lattice)
        yield fx.diagram
