"""Witness-sequence search and construction.

Searches are breadth-first with deterministic neighbour order (element and
cover input order), so every returned sequence is shortest and reproducible.
Presence of a witness is meant to coincide with collapse under the principal
congruence of the source prime interval; the equivalence harnesses at the
bottom of the module check exactly that, pair by pair.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .congruence import Congruence, collapses, con_prime, conj_order
from .core import FiniteLattice, Interval, PrimeInterval
from .errors import (
    InternalContradiction,
    InvalidChain,
    NoCorners,
    NotACoveringPair,
    NotAnSpsDiagram,
)
from .perspectivity import (
    MODE_CPROJ,
    MODE_PPROJ,
    MODE_SWING_LEMMA,
    N5_ESTABLISHED,
    StepKind,
    WitnessSequence,
    classify_ppersp,
    cpersp_dn,
    cpersp_up,
    persp_dn,
    persp_up,
    ppersp_dn,
    ppersp_up,
    swing,
    validate_sequence,
)
from .planar import PlanarDiagram, corners, is_sps, remove_corner


def cproj_witness(
    lattice: FiniteLattice, p: PrimeInterval, q: PrimeInterval
) -> Optional[WitnessSequence]:
    """Shortest chain of intervals from p to q under congruence-perspectivity
    steps, breadth-first over all intervals; None when unreachable."""
    start, goal = Interval(*p), Interval(*q)
    if start == goal:
        return WitnessSequence((start,), ())
    nodes = lattice.intervals()
    prev: dict[Interval, tuple[Interval, StepKind]] = {}
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for nxt in nodes:
            if nxt in seen:
                continue
            if cpersp_up(lattice, cur, nxt):
                step = StepKind.CPERSP_UP
            elif cpersp_dn(lattice, cur, nxt):
                step = StepKind.CPERSP_DN
            else:
                continue
            seen.add(nxt)
            prev[nxt] = (cur, step)
            if nxt == goal:
                return _backtrace(start, goal, prev)
            queue.append(nxt)
    return None


def pproj_witness(
    lattice: FiniteLattice, p: PrimeInterval, q: PrimeInterval
) -> Optional[WitnessSequence]:
    """Shortest chain of prime intervals from p to q under
    prime-perspectivity steps; None when unreachable.  Breadth-first search
    keeps the items pairwise distinct automatically."""
    if p == q:
        return WitnessSequence((p,), ())
    nodes = lattice.prime_intervals()
    prev: dict[PrimeInterval, tuple[PrimeInterval, StepKind]] = {}
    seen = {p}
    queue = deque([p])
    while queue:
        cur = queue.popleft()
        for nxt in nodes:
            if nxt in seen:
                continue
            if ppersp_dn(lattice, cur, nxt):
                step = StepKind.PPERSP_DN
            elif ppersp_up(lattice, cur, nxt):
                step = StepKind.PPERSP_UP
            else:
                continue
            seen.add(nxt)
            prev[nxt] = (cur, step)
            if nxt == q:
                return _backtrace(p, q, prev)
            queue.append(nxt)
    return None


def _backtrace(start, goal, prev) -> WitnessSequence:
    items = [goal]
    steps = []
    while items[-1] != start:
        before, step = prev[items[-1]]
        steps.append(step)
        items.append(before)
    return WitnessSequence(tuple(reversed(items)), tuple(reversed(steps)))


# -- constructive translation of interval chains to prime chains -------------


def cproj_to_pproj(
    lattice: FiniteLattice, chain: WitnessSequence, b: PrimeInterval
) -> WitnessSequence:
    """Translate a congruence-perspectivity chain of intervals into a
    prime-perspectivity chain ending at the prime interval b, which must lie
    in the chain's last interval.  The construction walks the chain
    backwards, peeling one interval per step; repeats introduced by the
    concatenation are spliced out, so the result validates in pproj mode.
    """
    ok, idx = validate_sequence(lattice, chain, MODE_CPROJ)
    if not ok:
        raise InvalidChain(f"interval chain fails to validate at index {idx}")
    last = chain.items[-1]
    if not (lattice.leq(last.lo, b.lo) and lattice.leq(b.hi, last.hi)):
        raise InvalidChain(f"{b} does not lie in the final interval {last}")
    if not lattice.is_cover(b.lo, b.hi):
        raise InvalidChain(f"{b} is not a prime interval")

    items: list[PrimeInterval] = [b]
    steps: list[StepKind] = []
    target = b
    for k in range(len(chain.steps) - 1, -1, -1):
        i_k, j_k = chain.items[k], chain.items[k + 1]
        if chain.steps[k] is StepKind.CPERSP_UP:
            piece_items, piece_steps = _translate_up(lattice, i_k, j_k, target)
        else:
            dual = lattice.dual()
            rev_items, rev_steps = _translate_up(
                dual,
                Interval(i_k.hi, i_k.lo),
                Interval(j_k.hi, j_k.lo),
                PrimeInterval(target.hi, target.lo),
            )
            piece_items = [PrimeInterval(hi, lo) for lo, hi in rev_items]
            flip = {StepKind.PPERSP_UP: StepKind.PPERSP_DN,
                    StepKind.PPERSP_DN: StepKind.PPERSP_UP}
            piece_steps = [flip[s] for s in rev_steps]
        items = piece_items[:-1] + items
        steps = piece_steps + steps
        target = piece_items[0]

    items, steps = _splice_repeats(items, steps)
    return WitnessSequence(tuple(items), tuple(steps))


def _translate_up(
    lattice: FiniteLattice, i: Interval, j: Interval, b: PrimeInterval
) -> tuple[list[PrimeInterval], list[StepKind]]:
    """Prime chain from some prime interval inside i to b inside j, given
    that i is congruence-perspective up to j.

    Induction on the length of i.  Normalisations: if j lies inside i the
    chain is trivial; otherwise shrink j to start at b's bottom, then shrink
    i so its bottom is 1_i ^ 0_b.  With u a fixed atom of i, either
    [0_i, u] reaches b in one upward prime-perspectivity, or the prime
    interval b1 just below u v 1_b drops to b by a plain down-perspectivity
    and the search recurses on the shorter interval [u, 1_i].
    """
    while True:
        if lattice.is_cover(i.lo, i.hi):
            a = PrimeInterval(i.lo, i.hi)
            if a == b:
                return [b], []
            if not ppersp_up(lattice, a, b):
                raise InternalContradiction(f"expected {a} ppersp_up {b}")
            return [a, b], [StepKind.PPERSP_UP]
        if lattice.leq(i.lo, j.lo) and lattice.leq(j.hi, i.hi):
            return [b], []
        if b.lo != j.lo:
            j = Interval(b.lo, j.hi)
        low = lattice.meet(i.hi, b.lo)
        if i.lo != low:
            i = Interval(low, i.hi)
            continue
        u = next(
            e
            for e in lattice.elements
            if lattice.is_cover(i.lo, e) and lattice.leq(e, i.hi) and e != i.hi
        )
        base = lattice.join(u, b.lo)
        if lattice.leq(b.hi, base):
            a = PrimeInterval(i.lo, u)
            if a == b:
                return [b], []
            if not ppersp_up(lattice, a, b):
                raise InternalContradiction(f"expected {a} ppersp_up {b}")
            return [a, b], [StepKind.PPERSP_UP]
        top1 = lattice.join(u, b.hi)
        z = next(
            e for e in lattice.elements if lattice.is_cover(e, top1) and lattice.leq(base, e)
        )
        b1 = PrimeInterval(z, top1)
        if not persp_dn(lattice, b1, b):
            raise InternalContradiction(f"expected {b1} persp_dn {b}")
        items, steps = _translate_up(
            lattice, Interval(u, i.hi), Interval(z, j.hi), b1
        )
        return items + [b], steps + [StepKind.PPERSP_DN]


def _splice_repeats(items: list, steps: list) -> tuple[list, list]:
    changed = True
    while changed:
        changed = False
        first: dict = {}
        for k, it in enumerate(items):
            if it in first:
                i0 = first[it]
                items = items[: i0 + 1] + items[k + 1 :]
                steps = steps[:i0] + steps[k:]
                changed = True
                break
            first[it] = k
    return items, steps


# -- N5 extraction ------------------------------------------------------------


@dataclass(frozen=True)
class N5Extraction:
    """An N5 sublattice realizing a covering pair of join-irreducible
    congruences, with the prime intervals p0, q0 inside it that generate
    the same congruences as the queried p and q."""

    sublattice: tuple[str, str, str, str, str]
    p0: PrimeInterval
    q0: PrimeInterval


def n5_witness(
    lattice: FiniteLattice, p: PrimeInterval, q: PrimeInterval
) -> N5Extraction:
    """Extract the N5 sublattice behind a covering pair con(p) > con(q) of
    distinct join-irreducible congruences.

    The prime chain from p to q walks congruences downward, so with a
    covering pair there is a unique switch index; the classification of
    that single step cannot be a perspectivity (which preserves the
    congruence), hence yields the N5 witness.
    """
    order = conj_order(lattice)
    theta_p, theta_q = con_prime(lattice, p), con_prime(lattice, q)
    ip, iq = order.index_of(theta_p), order.index_of(theta_q)
    if not order.is_cover(iq, ip):
        raise NotACoveringPair(
            f"con({p.lo},{p.hi}) does not cover con({q.lo},{q.hi}) among the "
            "join-irreducible congruences"
        )
    seq = pproj_witness(lattice, p, q)
    if seq is None:
        raise InternalContradiction("covering congruences admit no prime chain")
    cons = [con_prime(lattice, r) for r in seq.items]
    switches = [
        k
        for k in range(len(seq.items) - 1)
        if cons[k] == theta_p and cons[k + 1] == theta_q
    ]
    if len(switches) != 1:
        raise InternalContradiction(
            f"expected a unique congruence switch, found {len(switches)}"
        )
    k = switches[0]
    p0, q0 = seq.items[k], seq.items[k + 1]
    verdict = classify_ppersp(lattice, p0, q0)
    if verdict.kind != N5_ESTABLISHED or verdict.witness is None:
        raise InternalContradiction(
            f"switch step ({p0}, {q0}) classifies as {verdict.kind}, not an N5"
        )
    return N5Extraction(verdict.witness, p0, q0)


# -- swings -------------------------------------------------------------------


def swing_witness(
    diagram: PlanarDiagram, p: PrimeInterval, q: PrimeInterval
) -> Optional[WitnessSequence]:
    """Witness of the strong spread form on a slim planar semimodular
    diagram: climb upward at most once (p up-perspective to r, r = p
    allowed), then slide down or swing.  Climb targets are tried in input
    order; each target gets a breadth-first search over slides and swings.
    """
    if not is_sps(diagram):
        raise NotAnSpsDiagram("swing witnesses need a slim planar semimodular diagram")
    lat = diagram.lattice
    if p == q:
        return WitnessSequence((p,), ())
    primes = lat.prime_intervals()
    for r in primes:
        if not persp_up(lat, p, r):
            continue
        prev: dict[PrimeInterval, tuple[PrimeInterval, StepKind]] = {}
        seen = {r, p}
        queue = deque([r])
        found = r == q
        while queue and not found:
            cur = queue.popleft()
            for nxt in primes:
                if nxt in seen:
                    continue
                if persp_dn(lat, cur, nxt):
                    step = StepKind.PERSP_DN
                elif swing(diagram, cur, nxt):
                    step = StepKind.SWING
                else:
                    continue
                seen.add(nxt)
                prev[nxt] = (cur, step)
                if nxt == q:
                    found = True
                    break
                queue.append(nxt)
        if not found:
            continue
        tail = _backtrace(r, q, prev) if r != q else WitnessSequence((r,), ())
        if r == p:
            return tail
        return WitnessSequence((p,) + tail.items, (StepKind.PERSP_UP,) + tail.steps)
    return None


# -- exhaustive harnesses ------------------------------------------------------


@dataclass(frozen=True)
class Disagreement:
    p: PrimeInterval
    q: PrimeInterval
    oracle: bool
    cproj: Optional[bool]
    pproj: Optional[bool]
    swing: Optional[bool]
    note: str = ""


@dataclass(frozen=True)
class EquivalenceReport:
    pairs: int
    swing_checked: bool
    disagreements: tuple[Disagreement, ...]

    @property
    def ok(self) -> bool:
        return not self.disagreements


def check_equivalences(
    lattice: FiniteLattice, diagram: Optional[PlanarDiagram] = None
) -> EquivalenceReport:
    """For every ordered pair of distinct prime intervals compare: collapse
    under the congruence oracle, interval-chain reachability, prime-chain
    reachability and (with a diagram) swing reachability.  Every produced
    witness must also validate; the report lists any disagreement."""
    primes = lattice.prime_intervals()
    cons = {p: con_prime(lattice, p) for p in primes}
    use_swing = diagram is not None and is_sps(diagram)
    out = []
    pairs = 0
    for p in primes:
        for q in primes:
            if p == q:
                continue
            pairs += 1
            oracle = collapses(cons[p], Interval(*q))
            note = []

            cw = cproj_witness(lattice, p, q)
            cp: Optional[bool] = cw is not None
            if cw is not None and not validate_sequence(lattice, cw, MODE_CPROJ).ok:
                note.append("cproj witness invalid")
            pw = pproj_witness(lattice, p, q)
            pp: Optional[bool] = pw is not None
            if pw is not None and not validate_sequence(lattice, pw, MODE_PPROJ).ok:
                note.append("pproj witness invalid")
            sw: Optional[bool] = None
            if use_swing:
                sq = swing_witness(diagram, p, q)
                sw = sq is not None
                if sq is not None and not validate_sequence(
                    diagram, sq, MODE_SWING_LEMMA
                ).ok:
                    note.append("swing witness invalid")

            wrong = (
                cp != oracle
                or pp != oracle
                or (sw is not None and sw != oracle)
                or note
            )
            if wrong:
                out.append(Disagreement(p, q, oracle, cp, pp, sw, "; ".join(note)))
    return EquivalenceReport(pairs, use_swing, tuple(out))


@dataclass(frozen=True)
class CornerCheck:
    corner: str
    collapse_preserved: bool
    swing_equivalence: bool
    removed_primes_expected: bool

    @property
    def ok(self) -> bool:
        return (
            self.collapse_preserved
            and self.swing_equivalence
            and self.removed_primes_expected
        )


@dataclass(frozen=True)
class CornerPreservationReport:
    checks: tuple[CornerCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def check_corner_preservation(diagram: PlanarDiagram) -> CornerPreservationReport:
    """For each corner c, remove it and verify: (a) the collapse relation on
    the remaining prime intervals is the restriction of the original one,
    (b) oracle collapse still coincides with swing reachability on the
    smaller diagram, and (c) exactly the two prime intervals at c vanish."""
    if not is_sps(diagram):
        raise NotAnSpsDiagram("corner checks need a slim planar semimodular diagram")
    cs = corners(diagram)
    if not cs:
        raise NoCorners("the diagram has no corners")
    lat = diagram.lattice
    checks = []
    for c in cs:
        small = remove_corner(diagram, c.element)
        sub = small.lattice
        lost = set(lat.prime_intervals()) - set(sub.prime_intervals())
        expected = {
            PrimeInterval(c.lower, c.element),
            PrimeInterval(c.element, c.upper),
        }
        removed_ok = lost == expected and set(sub.prime_intervals()) <= set(
            lat.prime_intervals()
        )

        primes = sub.prime_intervals()
        cons_small = {p: con_prime(sub, p) for p in primes}
        cons_big = {p: con_prime(lat, p) for p in primes}
        collapse_ok = all(
            collapses(cons_small[p], Interval(*q))
            == collapses(cons_big[p], Interval(*q))
            for p in primes
            for q in primes
        )
        swing_ok = all(
            (swing_witness(small, p, q) is not None)
            == collapses(cons_small[p], Interval(*q))
            for p in primes
            for q in primes
            if p != q
        )
        checks.append(CornerCheck(c.element, collapse_ok, swing_ok, removed_ok))
    return CornerPreservationReport(tuple(checks))
