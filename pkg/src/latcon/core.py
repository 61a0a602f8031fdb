"""Finite lattices built from cover relations.

Elements are opaque string ids.  All iteration follows the input order, so
every derived object (tables, interval lists, sublattice searches) is
reproducible run to run.  Order, meet and join are precomputed dense tables;
instances are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple, Optional, Sequence

from .errors import (
    CycleDetected,
    NoBoundElement,
    NotALattice,
    NotTransitiveReduction,
    UnknownElement,
)


class Interval(NamedTuple):
    """Closed interval [lo, hi]; lo <= hi in the owning lattice."""

    lo: str
    hi: str


class PrimeInterval(NamedTuple):
    """Covering pair [lo, hi]: hi covers lo with nothing in between."""

    lo: str
    hi: str


class FiniteLattice:
    """A finite lattice described by its cover (Hasse) relation.

    Construction validates everything: the cover relation must be acyclic
    and equal to its own transitive reduction, and the induced order must
    have a least and a greatest element and unique pairwise meets/joins.
    """

    __slots__ = (
        "elements",
        "covers",
        "_idx",
        "_up",
        "_down",
        "_meet",
        "_join",
        "_ucov",
        "_lcov",
        "_cover_set",
        "_bottom",
        "_top",
        "_height",
    )

    def __init__(self, elements: Sequence[str], covers: Sequence[tuple[str, str]]):
        elems = tuple(str(e) for e in elements)
        if len(set(elems)) != len(elems):
            raise ValueError("duplicate element ids")
        if not elems:
            raise ValueError("a lattice needs at least one element")
        n = len(elems)
        idx = {e: i for i, e in enumerate(elems)}

        cov: list[tuple[int, int]] = []
        for lo, hi in covers:
            if lo not in idx:
                raise UnknownElement(f"cover references unknown element {lo!r}")
            if hi not in idx:
                raise UnknownElement(f"cover references unknown element {hi!r}")
            if lo == hi:
                raise CycleDetected(f"self-cover {lo!r}")
            cov.append((idx[lo], idx[hi]))
        if len(set(cov)) != len(cov):
            raise NotTransitiveReduction("duplicate cover pair")

        ucov: list[list[int]] = [[] for _ in range(n)]
        lcov: list[list[int]] = [[] for _ in range(n)]
        for a, b in cov:
            ucov[a].append(b)
            lcov[b].append(a)

        # Kahn toposort; leftovers mean a directed cycle.
        indeg = [len(lcov[i]) for i in range(n)]
        topo = [i for i in range(n) if indeg[i] == 0]
        head = 0
        while head < len(topo):
            u = topo[head]
            head += 1
            for v in ucov[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    topo.append(v)
        if len(topo) != n:
            raise CycleDetected("cover relation has a directed cycle")

        # Reflexive-transitive closure as bitmasks (bit i = element i).
        up = [0] * n
        for u in reversed(topo):
            m = 1 << u
            for v in ucov[u]:
                m |= up[v]
            up[u] = m
        down = [0] * n
        for u in topo:
            m = 1 << u
            for v in lcov[u]:
                m |= down[v]
            down[u] = m

        for a, b in cov:
            between = up[a] & down[b] & ~(1 << a) & ~(1 << b)
            if between:
                z = _lowest_bit_index(between)
                raise NotTransitiveReduction(
                    f"cover {elems[a]!r} < {elems[b]!r} is implied via {elems[z]!r}"
                )

        full = (1 << n) - 1
        minimals = [i for i in range(n) if down[i] == 1 << i]
        maximals = [i for i in range(n) if up[i] == 1 << i]
        if len(minimals) != 1:
            raise NoBoundElement(f"{len(minimals)} minimal elements, expected one")
        if len(maximals) != 1:
            raise NoBoundElement(f"{len(maximals)} maximal elements, expected one")
        bottom, top = minimals[0], maximals[0]
        if up[bottom] != full or down[top] != full:
            raise NoBoundElement("order is not connected through its bounds")

        # glb exists for (i, j) iff the common lower set is itself some
        # element's lower set; dually for lub.
        down_key = {down[i]: i for i in range(n)}
        up_key = {up[i]: i for i in range(n)}
        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                g = down_key.get(down[i] & down[j])
                if g is None:
                    raise NotALattice(elems[i], elems[j], "meet")
                l = up_key.get(up[i] & up[j])
                if l is None:
                    raise NotALattice(elems[i], elems[j], "join")
                meet[i][j] = meet[j][i] = g
                join[i][j] = join[j][i] = l

        height = [0] * n
        for u in topo:
            for v in lcov[u]:
                if height[v] + 1 > height[u]:
                    height[u] = height[v] + 1

        self.elements = elems
        self.covers = tuple((elems[a], elems[b]) for a, b in cov)
        self._idx = idx
        self._up = up
        self._down = down
        self._meet = meet
        self._join = join
        self._ucov = [tuple(v) for v in ucov]
        self._lcov = [tuple(v) for v in lcov]
        self._cover_set = frozenset(cov)
        self._bottom = bottom
        self._top = top
        self._height = height

    @classmethod
    def from_covers(
        cls, elements: Sequence[str], covers: Sequence[tuple[str, str]]
    ) -> "FiniteLattice":
        """Build and validate a lattice from element ids and cover pairs."""
        return cls(elements, covers)

    # -- basic queries ----------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteLattice({len(self.elements)} elements, {len(self.covers)} covers)"

    def index(self, x: str) -> int:
        try:
            return self._idx[x]
        except KeyError:
            raise UnknownElement(f"unknown element {x!r}") from None

    def __contains__(self, x: str) -> bool:
        return x in self._idx

    @property
    def bottom(self) -> str:
        return self.elements[self._bottom]

    @property
    def top(self) -> str:
        return self.elements[self._top]

    def leq(self, x: str, y: str) -> bool:
        return bool(self._up[self.index(x)] >> self.index(y) & 1)

    def lt(self, x: str, y: str) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x: str, y: str) -> bool:
        i, j = self.index(x), self.index(y)
        return bool((self._up[i] >> j | self._up[j] >> i) & 1)

    def meet(self, x: str, y: str) -> str:
        return self.elements[self._meet[self.index(x)][self.index(y)]]

    def join(self, x: str, y: str) -> str:
        return self.elements[self._join[self.index(x)][self.index(y)]]

    def is_cover(self, lo: str, hi: str) -> bool:
        return (self.index(lo), self.index(hi)) in self._cover_set

    def lower_covers(self, x: str) -> tuple[str, ...]:
        return tuple(self.elements[i] for i in self._lcov[self.index(x)])

    def upper_covers(self, x: str) -> tuple[str, ...]:
        return tuple(self.elements[i] for i in self._ucov[self.index(x)])

    def height(self, x: str) -> int:
        """Length of the longest chain from the bottom up to x."""
        return self._height[self.index(x)]

    # -- intervals ---------------------------------------------------------

    def interval(self, lo: str, hi: str) -> Interval:
        if not self.leq(lo, hi):
            raise ValueError(f"[{lo!r}, {hi!r}] is not an interval: {lo!r} <= {hi!r} fails")
        return Interval(lo, hi)

    def prime(self, lo: str, hi: str) -> PrimeInterval:
        if not self.is_cover(lo, hi):
            raise ValueError(f"[{lo!r}, {hi!r}] is not a prime interval")
        return PrimeInterval(lo, hi)

    def is_prime(self, iv: Interval) -> bool:
        return self.is_cover(iv.lo, iv.hi)

    def prime_intervals(self) -> tuple[PrimeInterval, ...]:
        """All covering pairs, in input cover order."""
        return tuple(PrimeInterval(lo, hi) for lo, hi in self.covers)

    def intervals(self, include_trivial: bool = False) -> tuple[Interval, ...]:
        """All intervals [lo, hi], lexicographic by element input positions."""
        out = []
        n = len(self.elements)
        for i in range(n):
            for j in range(n):
                if i == j and not include_trivial:
                    continue
                if self._up[i] >> j & 1:
                    out.append(Interval(self.elements[i], self.elements[j]))
        return tuple(out)

    def interval_mask(self, iv: Interval) -> int:
        return self._up[self.index(iv.lo)] & self._down[self.index(iv.hi)]

    def interval_elements(self, iv: Interval) -> tuple[str, ...]:
        m = self.interval_mask(iv)
        return tuple(e for i, e in enumerate(self.elements) if m >> i & 1)

    def contains_interval(self, inner: Interval, outer: Interval) -> bool:
        return self.leq(outer.lo, inner.lo) and self.leq(inner.hi, outer.hi)

    def length(self, iv: Interval) -> int:
        """Length of the longest chain inside [lo, hi]."""
        lo_i, hi_i = self.index(iv.lo), self.index(iv.hi)
        if not self._up[lo_i] >> hi_i & 1:
            raise ValueError(f"[{iv.lo!r}, {iv.hi!r}] is not an interval")
        mask = self._up[lo_i] & self._down[hi_i]
        members = sorted(
            (i for i in range(len(self.elements)) if mask >> i & 1),
            key=lambda i: self._height[i],
        )
        # Every member above lo has a lower cover inside the interval, so
        # processing in height order the maximum below is always available.
        best: dict[int, int] = {}
        for i in members:
            if i == lo_i:
                best[i] = 0
            else:
                best[i] = max(best[j] + 1 for j in self._lcov[i] if mask >> j & 1)
        return best[hi_i]

    # -- structure ---------------------------------------------------------

    def dual(self) -> "FiniteLattice":
        """The same elements with the order reversed."""
        return FiniteLattice(self.elements, tuple((hi, lo) for lo, hi in self.covers))

    def find_M3(self) -> Optional[tuple[str, str, str, str, str]]:
        """First M3 sublattice (o, x, y, z, i): a three-element antichain with
        equal pairwise meets o and equal pairwise joins i.  Scans candidate
        triples in input order; None when absent."""
        n = len(self.elements)
        up, meet, join = self._up, self._meet, self._join
        for x in range(n):
            for y in range(x + 1, n):
                if (up[x] >> y | up[y] >> x) & 1:
                    continue
                o = meet[x][y]
                i = join[x][y]
                for z in range(y + 1, n):
                    if (up[x] >> z | up[z] >> x | up[y] >> z | up[z] >> y) & 1:
                        continue
                    if (
                        meet[x][z] == o
                        and meet[y][z] == o
                        and join[x][z] == i
                        and join[y][z] == i
                    ):
                        e = self.elements
                        return (e[o], e[x], e[y], e[z], e[i])
        return None

    def find_N5(self) -> Optional[tuple[str, str, str, str, str]]:
        """First N5 sublattice (o, s, t, u, i): chain o < s < t < i and a side
        element u incomparable to s and t with s^u = t^u = o, s v u = t v u = i.
        Scans (s, t, u) in input order; None when absent."""
        n = len(self.elements)
        up, meet, join = self._up, self._meet, self._join
        for s in range(n):
            for t in range(n):
                if s == t or not up[s] >> t & 1:
                    continue
                for u in range(n):
                    if u in (s, t):
                        continue
                    if (up[u] >> s | up[s] >> u | up[u] >> t | up[t] >> u) & 1:
                        continue
                    o = meet[s][u]
                    i = join[s][u]
                    if meet[t][u] == o and join[t][u] == i:
                        e = self.elements
                        return (e[o], e[s], e[t], e[u], e[i])
        return None


def _lowest_bit_index(mask: int) -> int:
    return (mask & -mask).bit_length() - 1
