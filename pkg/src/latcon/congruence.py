"""Brute-force congruence engine for finite lattices.

A congruence is a partition of the element set with the substitution
property: x = y (mod theta) forces x^w = y^w and x v w = y v w for every w.
Principal congruences are computed as substitution-closure fixpoints; the
module also builds the order of the distinct congruences generated by prime
intervals and, at desk scale, the whole congruence lattice.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import FiniteLattice, Interval, PrimeInterval
from .errors import ConLTooLarge


class Congruence:
    """Partition in canonical form: blocks ordered by their least member,
    members ordered by element input position.  Equality and hashing are
    structural, so partitions compare across construction routes."""

    __slots__ = ("blocks", "_order", "_block_no")

    def __init__(self, order: Sequence[str], groups: Iterable[Iterable[str]]):
        order = tuple(order)
        pos = {x: k for k, x in enumerate(order)}
        raw = [sorted(set(g), key=pos.__getitem__) for g in groups]
        seen: list[str] = [x for g in raw for x in g]
        if len(seen) != len(set(seen)) or set(seen) != set(order):
            raise ValueError("blocks must partition the element set")
        raw.sort(key=lambda g: pos[g[0]])
        self.blocks = tuple(tuple(g) for g in raw)
        self._order = order
        self._block_no = {x: k for k, g in enumerate(self.blocks) for x in g}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Congruence) and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash(self.blocks)

    def __repr__(self) -> str:
        return "Congruence(%s)" % " ".join(
            "{%s}" % ",".join(g) for g in self.blocks
        )

    def same_block(self, x: str, y: str) -> bool:
        return self._block_no[x] == self._block_no[y]

    def block_of(self, x: str) -> tuple[str, ...]:
        return self.blocks[self._block_no[x]]

    def refines(self, other: "Congruence") -> bool:
        """True when every block of self lies inside a block of other."""
        return all(
            other._block_no[g[0]] == other._block_no[x] for g in self.blocks for x in g
        )

    def join(self, other: "Congruence") -> "Congruence":
        """Smallest partition coarser than both (transitive closure of the
        union); for congruences the result is again a congruence."""
        parent = list(range(len(self._order)))
        pos = {x: k for k, x in enumerate(self._order)}

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for cong in (self, other):
            for g in cong.blocks:
                r = find(pos[g[0]])
                for x in g[1:]:
                    parent[find(pos[x])] = r
        groups: dict[int, list[str]] = {}
        for x in self._order:
            groups.setdefault(find(pos[x]), []).append(x)
        return Congruence(self._order, groups.values())

    @classmethod
    def identity(cls, lattice: FiniteLattice) -> "Congruence":
        return cls(lattice.elements, [[x] for x in lattice.elements])

    @classmethod
    def full(cls, lattice: FiniteLattice) -> "Congruence":
        return cls(lattice.elements, [list(lattice.elements)])


def is_congruence(lattice: FiniteLattice, partition: Congruence) -> bool:
    """Exhaustive substitution-property check."""
    for g in partition.blocks:
        for a in g:
            for b in g:
                if a >= b:
                    continue
                for w in lattice.elements:
                    if not partition.same_block(lattice.meet(a, w), lattice.meet(b, w)):
                        return False
                    if not partition.same_block(lattice.join(a, w), lattice.join(b, w)):
                        return False
    return True


def principal_congruence(lattice: FiniteLattice, a: str, b: str) -> Congruence:
    """Smallest congruence identifying a and b.

    Worklist closure: start from the merge of {a, b}; every newly merged
    pair (x, y) forces the merges of x^w with y^w and x v w with y v w for
    all w.  Union-find supplies transitivity; merges only grow, so the
    fixpoint is reached after at most n-1 unions.
    """
    n = len(lattice.elements)
    ia, ib = lattice.index(a), lattice.index(b)
    meet, join = lattice._meet, lattice._join
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    queue: deque[tuple[int, int]] = deque()

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri
            queue.append((i, j))

    union(ia, ib)
    while queue:
        x, y = queue.popleft()
        mx, my, jx, jy = meet[x], meet[y], join[x], join[y]
        for w in range(n):
            union(mx[w], my[w])
            union(jx[w], jy[w])
    groups: dict[int, list[str]] = {}
    for i, e in enumerate(lattice.elements):
        groups.setdefault(find(i), []).append(e)
    return Congruence(lattice.elements, groups.values())


def principal_congruence_naive(lattice: FiniteLattice, a: str, b: str) -> Congruence:
    """Full-rescan closure used as the oracle for the worklist version:
    repeatedly scan every currently-equivalent pair against every element
    until nothing merges."""
    n = len(lattice.elements)
    meet, join = lattice._meet, lattice._join
    label = list(range(n))
    ia, ib = lattice.index(a), lattice.index(b)

    def merge(i: int, j: int) -> bool:
        li, lj = label[i], label[j]
        if li == lj:
            return False
        for k in range(n):
            if label[k] == lj:
                label[k] = li
        return True

    merge(ia, ib)
    changed = True
    while changed:
        changed = False
        for x in range(n):
            for y in range(x + 1, n):
                if label[x] != label[y]:
                    continue
                for w in range(n):
                    if merge(meet[x][w], meet[y][w]):
                        changed = True
                    if merge(join[x][w], join[y][w]):
                        changed = True
    groups: dict[int, list[str]] = {}
    for i, e in enumerate(lattice.elements):
        groups.setdefault(label[i], []).append(e)
    return Congruence(lattice.elements, groups.values())


def con_prime(lattice: FiniteLattice, p: PrimeInterval) -> Congruence:
    """Congruence generated by collapsing the prime interval p."""
    return principal_congruence(lattice, p.lo, p.hi)


def collapses(theta: Congruence, iv: Interval) -> bool:
    """True when the interval's endpoints share a block."""
    return theta.same_block(iv.lo, iv.hi)


@dataclass(frozen=True)
class ConjOrder:
    """Distinct congruences generated by prime intervals, ordered by
    blockwise refinement.  generators pairs each congruence with the first
    prime interval producing it; covers is the transitive reduction."""

    generators: tuple[tuple[PrimeInterval, Congruence], ...]
    leq: tuple[tuple[bool, ...], ...]
    covers: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.generators)

    @property
    def congruences(self) -> tuple[Congruence, ...]:
        return tuple(c for _, c in self.generators)

    def index_of(self, theta: Congruence) -> int:
        for k, (_, c) in enumerate(self.generators):
            if c == theta:
                return k
        raise ValueError("congruence is not generated by a prime interval")

    def is_cover(self, lower: int, upper: int) -> bool:
        return (lower, upper) in self.covers


def conj_order(lattice: FiniteLattice) -> ConjOrder:
    """Build the order of join-irreducible congruences con(p), p prime."""
    gens: list[tuple[PrimeInterval, Congruence]] = []
    for p in lattice.prime_intervals():
        theta = con_prime(lattice, p)
        if all(theta != c for _, c in gens):
            gens.append((p, theta))
    k = len(gens)
    leq = tuple(
        tuple(gens[i][1].refines(gens[j][1]) for j in range(k)) for i in range(k)
    )
    covers = []
    for i in range(k):
        for j in range(k):
            if i == j or not leq[i][j]:
                continue
            if any(m not in (i, j) and leq[i][m] and leq[m][j] for m in range(k)):
                continue
            covers.append((i, j))
    return ConjOrder(tuple(gens), leq, tuple(covers))


def all_congruences(
    lattice: FiniteLattice, max_elements: int = 14
) -> tuple[Congruence, ...]:
    """Every congruence of the lattice, as joins of subsets of the
    congruences generated by prime intervals (plus equality).  Guarded by
    max_elements to keep desk-scale runtimes."""
    if len(lattice.elements) > max_elements:
        raise ConLTooLarge(
            f"{len(lattice.elements)} elements exceeds the bound {max_elements}"
        )
    base = Congruence.identity(lattice)
    jis = [c for _, c in conj_order(lattice).generators]
    found = [base]
    frontier = [base]
    while frontier:
        nxt = []
        for c in frontier:
            for j in jis:
                m = c.join(j)
                if m not in found:
                    found.append(m)
                    nxt.append(m)
        frontier = nxt
    return tuple(found)
