"""Greedy thinning of translate covers, with size-bound bookkeeping.

Given A, a candidate set B inside (x1, x2], and a target window (m, m+n]
already covered by the translates A + i over i in B, greedy_thin() selects
a subset S that still covers the window, always taking the candidate whose
translate covers the most still-uncovered targets (ties broken by smallest
element).  The trace records the chosen order, the per-step marginal gains,
and the derived size bounds.

The quantity controlling the bound is the depth
    depth = |A n [1, m - x1)| - (x2 - x1 - |B|),
a lower bound on how many candidate translates hit each target.  With
cutoff = floor(depth / ln depth) the selection satisfies

    |S| <= (|B| / depth) * H(cutoff) + n / cutoff

where H is the exact harmonic number.  Depths below 3 are a degenerate
regime where the cutoff formula collapses; thinning is skipped there and
S = B is returned with the trace flagged.
"""

from __future__ import annotations

import heapq
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .cover import block_cover
from .errors import CoverFailed, PreconditionViolated
from .natset import NatSet, count_in, from_interval, sumset

__all__ = [
    "DEGENERATE_DEPTH",
    "GreedyInstance",
    "GreedyTrace",
    "greedy_cover",
    "greedy_thin",
    "thin_block",
    "choose_gain_cutoff",
    "two_term_bound",
    "closed_form_bound",
]

#: Depths below this skip thinning entirely (floor(d / ln d) is 0 or undefined).
DEGENERATE_DEPTH = 3


@dataclass(frozen=True)
class GreedyInstance:
    """A thinning problem: cover (m, m+n] from translates A + i, i in B."""

    a: NatSet
    b: NatSet
    m: int
    n: int
    x1: int
    x2: int

    def depth(self) -> int:
        return count_in(self.a, 1, self.m - self.x1, "[)") - (self.x2 - self.x1 - len(self.b))

    def validate(self) -> int:
        """Check every precondition; returns the depth on success."""
        if self.n < 1:
            raise PreconditionViolated("n >= 1", f"got n={self.n}")
        if not (1 <= self.x1 < self.x2):
            raise PreconditionViolated("1 <= x1 < x2", f"got x1={self.x1}, x2={self.x2}")
        window = from_interval(self.x1, self.x2, "(]", horizon=max(self.b.horizon, self.x2))
        if not self.b.issubset(window):
            raise PreconditionViolated(
                "B subset of (x1, x2]", f"B has elements outside ({self.x1}, {self.x2}]"
            )
        if self.m + self.n > self.x2:
            raise PreconditionViolated(
                "m + n <= x2", f"got m+n={self.m + self.n}, x2={self.x2}"
            )
        d = self.depth()
        if d <= 0:
            raise PreconditionViolated(
                "depth > 0",
                f"|A n [1,{self.m - self.x1})| - ({self.x2}-{self.x1}-{len(self.b)}) = {d}",
            )
        reach = sumset(self.a, self.b, self.m + self.n)
        target = from_interval(self.m, self.m + self.n, "(]", horizon=self.m + self.n)
        if not target.issubset(reach):
            raise PreconditionViolated(
                "initial cover",
                f"({self.m}, {self.m + self.n}] not contained in the union of translates",
            )
        return d


@dataclass(frozen=True)
class GreedyTrace:
    """Bookkeeping of one thinning run.

    gains[j] is the number of targets newly covered at step j; peak_gain is
    gains[0]; gain_counts maps each gain value to how many steps achieved it
    (so sum of gain * count recovers the window size).  Degenerate runs skip
    the greedy selection: chosen is then B in ascending order and gains are
    the marginal gains replayed in that order, so the sum identity still
    holds but monotonicity may not.
    """

    chosen: tuple[int, ...]
    gains: tuple[int, ...]
    peak_gain: int
    gain_counts: Mapping[int, int]
    depth: int
    gain_cutoff: int
    bound_two_term: float | None
    bound_closed_form: float | None
    degenerate: bool


def _relevant_elements(a: NatSet, m: int, n: int) -> list[int]:
    # Elements above m + n - 1 cannot land a sum inside (m, m+n].
    return [x for x in a.to_list() if x <= m + n - 1]


def _marginal_run(a_list, order, m, n):
    """Replay candidates in the given order, recording marginal gains."""
    flags = bytearray(n + 1)
    for i in range(1, n + 1):
        flags[i] = 1
    gains = []
    end = m + n
    for b_el in order:
        g = 0
        for x in a_list:
            t = x + b_el
            if t > end:
                break
            if t > m and flags[t - m]:
                flags[t - m] = 0
                g += 1
        gains.append(g)
    return gains


def greedy_cover(a: NatSet, b: NatSet, m: int, n: int) -> tuple[list[int], list[int]]:
    """Run the greedy selection alone; no thinning-bound preconditions.

    Requires only that the translates of B cover (m, m+n].  Returns the
    chosen candidates in selection order together with their marginal gains.
    Gains are maintained lazily in a max-heap keyed by (-gain, element):
    marginal gains only ever shrink, so a popped entry whose recomputed gain
    still beats the heap top is the true argmax, and the element tie-break
    is the key's second component.  The result is identical to recomputing
    every gain at every step.
    """
    a_list = _relevant_elements(a, m, n)
    end = m + n
    # Prefix counts of A up to the window end make the initial gains O(1) each.
    present = bytearray(end + 1)
    for x in a_list:
        present[x] = 1
    prefix = [0] * (end + 1)
    acc = 0
    for i in range(1, end + 1):
        acc += present[i]
        prefix[i] = acc

    heap = []
    for b_el in b:
        if b_el >= end:
            continue  # x >= 1 pushes every sum past the window
        lo = m - b_el
        g = prefix[end - b_el] - (prefix[lo] if lo > 0 else 0)
        if g > 0:
            heap.append((-g, b_el))
    heapq.heapify(heap)

    flags = bytearray(n + 1)
    for i in range(1, n + 1):
        flags[i] = 1
    uncovered = n
    chosen: list[int] = []
    gains: list[int] = []
    heappop, heapreplace = heapq.heappop, heapq.heapreplace
    while uncovered:
        if not heap:
            raise CoverFailed("candidates exhausted with targets still uncovered")
        # Peek: if the top's key is still its true gain, it is the argmax with
        # the right tie-break; otherwise sink it to its updated key in place.
        negg, b_el = heap[0]
        g = 0
        for x in a_list:
            t = x + b_el
            if t > end:
                break
            if t > m and flags[t - m]:
                g += 1
        if g != -negg:
            if g == 0:
                heappop(heap)
            else:
                heapreplace(heap, (-g, b_el))
            continue
        heappop(heap)
        for x in a_list:
            t = x + b_el
            if t > end:
                break
            if t > m and flags[t - m]:
                flags[t - m] = 0
        uncovered -= g
        chosen.append(b_el)
        gains.append(g)
    return chosen, gains


def _greedy_cover_reference(a: NatSet, b: NatSet, m: int, n: int):
    """Full per-step recomputation; the plain reference the fast path must match."""
    a_list = _relevant_elements(a, m, n)
    end = m + n
    flags = bytearray(n + 1)
    for i in range(1, n + 1):
        flags[i] = 1
    uncovered = n
    remaining = b.to_list()
    chosen, gains = [], []
    while uncovered:
        best_g, best_b = 0, None
        for b_el in remaining:
            g = 0
            for x in a_list:
                t = x + b_el
                if t > end:
                    break
                if t > m and flags[t - m]:
                    g += 1
            if g > best_g:  # strict: first (smallest) element wins ties
                best_g, best_b = g, b_el
        if best_b is None:
            raise CoverFailed("candidates exhausted with targets still uncovered")
        for x in a_list:
            t = x + best_b
            if t > end:
                break
            if t > m and flags[t - m]:
                flags[t - m] = 0
                uncovered -= 1
        remaining.remove(best_b)
        chosen.append(best_b)
        gains.append(best_g)
    return chosen, gains


def choose_gain_cutoff(depth: int) -> int:
    """floor(depth / ln depth) for depth >= 3; 1 in the degenerate regime."""
    if depth < DEGENERATE_DEPTH:
        return 1
    return int(depth / math.log(depth))


def _harmonic(k: int) -> Fraction:
    return sum((Fraction(1, i) for i in range(1, k + 1)), Fraction(0))


def _two_term_bound_exact(num_candidates: int, depth: int, num_targets: int, cutoff: int) -> Fraction:
    if cutoff < 1:
        raise ValueError(f"cutoff must be at least 1, got {cutoff}")
    if depth < 1:
        raise ValueError(f"depth must be at least 1, got {depth}")
    return Fraction(num_candidates, depth) * _harmonic(cutoff) + Fraction(num_targets, cutoff)


def two_term_bound(num_candidates: int, depth: int, num_targets: int, cutoff: int) -> float:
    """(|B| / depth) * H(cutoff) + n / cutoff, exact rationals reported as float."""
    return float(_two_term_bound_exact(num_candidates, depth, num_targets, cutoff))


def closed_form_bound(num_candidates: int, depth: int, num_targets: int, cutoff: int) -> float:
    """Same shape with H(cutoff) relaxed to 1 + ln cutoff (its elementary bound)."""
    if cutoff < 1:
        raise ValueError(f"cutoff must be at least 1, got {cutoff}")
    if depth < 1:
        raise ValueError(f"depth must be at least 1, got {depth}")
    return (num_candidates / depth) * (1.0 + math.log(cutoff)) + num_targets / cutoff


def greedy_thin(inst: GreedyInstance) -> tuple[NatSet, GreedyTrace]:
    """Thin the candidate set, or return it whole in the degenerate regime.

    Validates every instance precondition first.  Non-degenerate runs come
    with the two bound values computed from the instance's depth; the greedy
    result always satisfies the two-term bound.
    """
    depth = inst.validate()
    if depth < DEGENERATE_DEPTH:
        order = inst.b.to_list()
        gains = _marginal_run(_relevant_elements(inst.a, inst.m, inst.n), order, inst.m, inst.n)
        trace = GreedyTrace(
            chosen=tuple(order),
            gains=tuple(gains),
            peak_gain=gains[0] if gains else 0,
            gain_counts=dict(Counter(g for g in gains if g)),
            depth=depth,
            gain_cutoff=1,
            bound_two_term=None,
            bound_closed_form=None,
            degenerate=True,
        )
        return inst.b, trace

    chosen, gains = greedy_cover(inst.a, inst.b, inst.m, inst.n)
    cutoff = choose_gain_cutoff(depth)
    trace = GreedyTrace(
        chosen=tuple(chosen),
        gains=tuple(gains),
        peak_gain=gains[0],
        gain_counts=dict(Counter(gains)),
        depth=depth,
        gain_cutoff=cutoff,
        bound_two_term=two_term_bound(len(inst.b), depth, inst.n, cutoff),
        bound_closed_form=closed_form_bound(len(inst.b), depth, inst.n, cutoff),
        degenerate=False,
    )
    selected = NatSet(sorted(chosen), inst.b.horizon)
    return selected, trace


def thin_block(a: NatSet, q: int) -> tuple[NatSet, GreedyTrace]:
    """Thin the cover of the dyadic block (2q, 4q] drawn from (q, 4q] minus A.

    Requires |A n [1, q)| > |A n (q, 4q]| and a horizon of at least 4q.
    The block cover is established first (so the greedy instance's initial
    cover is a theorem, not an assumption), then thinned; the depth equals
    |A n [1, q)| - |A n (q, 4q]|.
    """
    if q < 1:
        raise PreconditionViolated("q >= 1", f"got q={q}")
    if a.horizon < 4 * q:
        raise PreconditionViolated("horizon >= 4q", f"horizon {a.horizon} < {4 * q}")
    low = count_in(a, 1, q, "[)")
    high = count_in(a, q, 4 * q, "(]")
    if low <= high:
        raise PreconditionViolated(
            "|A n [1,q)| > |A n (q,4q]|", f"got {low} <= {high} at q={q}"
        )
    result = block_cover(a, q, 2 * q, 4 * q)
    inst = GreedyInstance(a=a, b=result.candidate_set, m=2 * q, n=2 * q, x1=q, x2=4 * q)
    return greedy_thin(inst)
