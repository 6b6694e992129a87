"""Independent brute-force references for differential testing.

Nothing here shares an algorithm with the fast paths: the sumset reference
is a plain double loop over elements, and minimal_cover enumerates subsets.
Both exist so the optimized implementations have something honest to be
checked against.
"""

from __future__ import annotations

from .errors import NoCover, TooLarge
from .natset import NatSet, _range_mask, from_interval, sumset

__all__ = [
    "SUBSET_SEARCH_CAP",
    "minimal_cover",
    "gap_detector",
    "sumset_reference",
]

#: Exhaustive subset search is 2^|B|; beyond this it stops being a desk run.
SUBSET_SEARCH_CAP = 22


def minimal_cover(a: NatSet, b: NatSet, m: int, n: int) -> tuple[NatSet, int]:
    """Smallest S inside B whose translates cover (m, m+n], found exhaustively.

    Among minimum-cardinality covers, returns the lexicographically smallest
    element list.  Depth-first search in ascending element order with a
    static-gain prune (sound because per-candidate coverage never grows), so
    the first cover found at the minimum size is the lexicographic winner.
    """
    b_list = b.to_list()
    if len(b_list) > SUBSET_SEARCH_CAP:
        raise TooLarge(f"|B| = {len(b_list)} exceeds the search cap {SUBSET_SEARCH_CAP}")
    end = m + n
    target = _range_mask(m + 1, end)
    covers = []
    for b_el in b_list:
        mask = 0
        for x in a:
            t = x + b_el
            if t > end:
                break
            if t > m:
                mask |= 1 << t
        covers.append(mask)
    union = 0
    for mask in covers:
        union |= mask
    if union & target != target:
        raise NoCover(f"even the full candidate set misses ({m}, {end}]")

    sizes = [mask.bit_count() for mask in covers]
    # suffix_max[i]: best static gain available from candidate i onward
    suffix_max = [0] * (len(covers) + 1)
    for i in range(len(covers) - 1, -1, -1):
        suffix_max[i] = max(suffix_max[i + 1], sizes[i])

    best_single = suffix_max[0]
    lower = -(-n // best_single) if best_single else 0  # ceil(n / best gain)

    def search(start: int, slots: int, covered: int, picked: list[int]) -> list[int] | None:
        if covered & target == target:
            return picked
        if slots == 0:
            return None
        missing = (target & ~covered).bit_count()
        if slots * suffix_max[start] < missing:
            return None
        for j in range(start, len(covers) - slots + 1):
            found = search(j + 1, slots - 1, covered | covers[j], picked + [b_list[j]])
            if found is not None:
                return found
        return None

    for k in range(max(lower, 1), len(covers) + 1):
        found = search(0, k, 0, [])
        if found is not None:
            return NatSet(found, b.horizon), len(found)
    raise NoCover("unreachable: the full set covers but no subset size did")


def gap_detector(a: NatSet, lo: int, hi: int) -> NatSet:
    """Points of (lo, hi] not expressible as a + v with a in A, v not in A.

    Uses the whole complement of A within [1, hi] as the candidate side, so
    a nonempty result proves no subset of the complement can cover those
    points either.  Within (lo, hi] the evidence is exact: sums involving
    anything beyond hi cannot land at or below hi.
    """
    if hi > a.horizon:
        raise ValueError(f"hi={hi} beyond horizon {a.horizon}")
    h = max(hi, 1)
    outside = NatSet._from_mask(_range_mask(1, hi) & ~a._mask, h)
    reach = sumset(a, outside, h)
    window = from_interval(lo, hi, "(]", horizon=h)
    return NatSet._from_mask(window._mask & ~reach._mask, h)


def sumset_reference(a: NatSet, b: NatSet, horizon: int | None = None) -> NatSet:
    """O(|A| * |B|) element-pair sumset; same contract as natset.sumset."""
    h = horizon if horizon is not None else max(a.horizon, b.horizon)
    b_list = b.to_list()
    out = set()
    for x in a:
        if x >= h:
            break
        for y in b_list:
            s = x + y
            if s > h:
                break
            out.add(s)
    return NatSet(sorted(out), h)
