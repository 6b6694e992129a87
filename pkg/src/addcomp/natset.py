"""Exact sets of natural numbers truncated to a finite horizon.

Elements live in [1, horizon] and membership is stored densely as one big
integer (bit i set exactly when i is in the set).  Every operation is exact
on [1, horizon]; results that would land outside are clipped, and the
clipping is part of each operation's contract.  The dense form makes the
hot paths (sumset, interval counting) single big-integer shifts and masks.

NatSet values are immutable after construction, so any number of threads
may read them concurrently.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

__all__ = [
    "INTERVAL_KINDS",
    "NatSet",
    "DensitySample",
    "DensityProfile",
    "from_interval",
    "sumset",
    "translate",
    "reflect",
    "count_in",
    "density_profile",
    "read_elements",
    "read_set_file",
    "write_set_file",
]

#: Interval notations: "(]" is (lo, hi], "[)" is [lo, hi), and so on.
INTERVAL_KINDS = ("()", "(]", "[)", "[]")

# For each byte value, the offsets of its set bits; used to enumerate members.
_BYTE_OFFSETS = tuple(tuple(i for i in range(8) if b >> i & 1) for b in range(256))


def _closed_bounds(lo: int, hi: int, kind: str) -> tuple[int, int]:
    """Normalize an interval of the given kind to closed integer bounds."""
    if kind not in INTERVAL_KINDS:
        raise ValueError(f"unknown interval kind {kind!r}, expected one of {INTERVAL_KINDS}")
    if kind[0] == "(":
        lo += 1
    if kind[1] == ")":
        hi -= 1
    return lo, hi


def _range_mask(lo: int, hi: int) -> int:
    """Bitmask with bits lo..hi set; zero when the range is empty."""
    if lo > hi:
        return 0
    return ((1 << (hi - lo + 1)) - 1) << lo


def _iter_mask(mask: int) -> Iterator[int]:
    """Yield set bit positions in ascending order (bytewise table scan)."""
    for byte_index, byte in enumerate(mask.to_bytes((mask.bit_length() + 7) >> 3, "little")):
        if byte:
            base = byte_index << 3
            for off in _BYTE_OFFSETS[byte]:
                yield base + off


class NatSet:
    """An immutable finite set of naturals in [1, horizon].

    The horizon is the truncation point of the finite model: the set knows
    nothing about integers above it, and all arithmetic on NatSets clips
    results to [1, horizon].
    """

    __slots__ = ("_horizon", "_mask", "_count")

    def __init__(self, elements: Iterable[int] = (), horizon: int | None = None):
        elems = list(elements)
        if horizon is None:
            horizon = max(elems, default=1)
        if horizon < 1:
            raise ValueError(f"horizon must be at least 1, got {horizon}")
        buf = bytearray((horizon >> 3) + 1)
        for e in elems:
            if e < 1:
                raise ValueError(f"elements must be positive naturals, got {e}")
            if e > horizon:
                raise ValueError(f"element {e} exceeds horizon {horizon}")
            buf[e >> 3] |= 1 << (e & 7)
        self._horizon = horizon
        self._mask = int.from_bytes(bytes(buf), "little")
        self._count = -1

    @classmethod
    def _from_mask(cls, mask: int, horizon: int) -> "NatSet":
        # Internal fast path; callers guarantee mask only has bits in [1, horizon].
        obj = object.__new__(cls)
        obj._horizon = horizon
        obj._mask = mask
        obj._count = -1
        return obj

    @property
    def horizon(self) -> int:
        return self._horizon

    def __len__(self) -> int:
        if self._count < 0:
            self._count = self._mask.bit_count()
        return self._count

    def __bool__(self) -> bool:
        return self._mask != 0

    def __contains__(self, x: int) -> bool:
        return 1 <= x <= self._horizon and (self._mask >> x) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return _iter_mask(self._mask)

    def to_list(self) -> list[int]:
        """All elements, ascending."""
        return list(_iter_mask(self._mask))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NatSet):
            return NotImplemented
        return self._horizon == other._horizon and self._mask == other._mask

    def __hash__(self) -> int:
        return hash((self._horizon, self._mask))

    def __repr__(self) -> str:
        n = len(self)
        if n <= 10:
            return f"NatSet({self.to_list()}, horizon={self._horizon})"
        head = ", ".join(str(x) for x, _ in zip(self, range(6)))
        return f"NatSet([{head}, ...] <{n} elements>, horizon={self._horizon})"

    def min_element(self) -> int | None:
        if not self._mask:
            return None
        return (self._mask & -self._mask).bit_length() - 1

    def max_element(self) -> int | None:
        if not self._mask:
            return None
        return self._mask.bit_length() - 1

    def _require_same_horizon(self, other: "NatSet") -> None:
        if self._horizon != other._horizon:
            raise ValueError(
                f"horizon mismatch: {self._horizon} vs {other._horizon}; "
                "use with_horizon() to align first"
            )

    def union(self, other: "NatSet") -> "NatSet":
        self._require_same_horizon(other)
        return NatSet._from_mask(self._mask | other._mask, self._horizon)

    def intersection(self, other: "NatSet") -> "NatSet":
        self._require_same_horizon(other)
        return NatSet._from_mask(self._mask & other._mask, self._horizon)

    def difference(self, other: "NatSet") -> "NatSet":
        self._require_same_horizon(other)
        return NatSet._from_mask(self._mask & ~other._mask, self._horizon)

    __or__ = union
    __and__ = intersection
    __sub__ = difference

    def issubset(self, other: "NatSet") -> bool:
        """Element containment; horizons need not match."""
        return self._mask & ~other._mask == 0

    def isdisjoint(self, other: "NatSet") -> bool:
        return self._mask & other._mask == 0

    def complement(self) -> "NatSet":
        """[1, horizon] minus this set."""
        return NatSet._from_mask(_range_mask(1, self._horizon) & ~self._mask, self._horizon)

    def with_horizon(self, horizon: int) -> "NatSet":
        """Same elements re-truncated to a new horizon (clips when shrinking)."""
        if horizon < 1:
            raise ValueError(f"horizon must be at least 1, got {horizon}")
        if horizon == self._horizon:
            return self
        return NatSet._from_mask(self._mask & _range_mask(1, horizon), horizon)

    def content_digest(self) -> str:
        """SHA-256 over the canonical encoding; binds certificates to inputs."""
        h = hashlib.sha256()
        h.update(b"natset:1:")
        h.update(self._horizon.to_bytes(8, "little"))
        h.update(self._mask.to_bytes((self._mask.bit_length() + 7) >> 3, "little"))
        return h.hexdigest()


def _pick_horizon(horizon: int | None, *sets: NatSet) -> int:
    h = horizon if horizon is not None else max(s.horizon for s in sets)
    if h < 1:
        raise ValueError(f"horizon must be at least 1, got {h}")
    return h


def from_interval(lo: int, hi: int, kind: str = "(]", *, horizon: int) -> NatSet:
    """Integers in the requested interval, clipped to [1, horizon].

    An empty intersection yields the empty set; no errors for inverted bounds.
    """
    if horizon < 1:
        raise ValueError(f"horizon must be at least 1, got {horizon}")
    lo2, hi2 = _closed_bounds(lo, hi, kind)
    lo2 = max(lo2, 1)
    hi2 = min(hi2, horizon)
    return NatSet._from_mask(_range_mask(lo2, hi2), horizon)


def sumset(a: NatSet, b: NatSet, horizon: int | None = None) -> NatSet:
    """{x + y : x in a, y in b}, clipped to [1, horizon].

    Exact for every n <= horizon: a representation n = x + y forces
    x, y < n <= horizon, so truncating the inputs at the horizon loses no
    representation of any in-range n.  Iterates the smaller operand and
    ORs shifted copies of the other's mask.
    """
    h = _pick_horizon(horizon, a, b)
    small, big = (a, b) if len(a) <= len(b) else (b, a)
    big_mask = big._mask
    acc = 0
    for e in small:
        if e >= h:
            break
        acc |= big_mask << e
    return NatSet._from_mask(acc & _range_mask(1, h), h)


def translate(b: NatSet, u: int, horizon: int | None = None) -> NatSet:
    """{u + y : y in b}, clipped to [1, horizon]; u may be negative."""
    h = _pick_horizon(horizon, b)
    mask = b._mask << u if u >= 0 else b._mask >> -u
    return NatSet._from_mask(mask & _range_mask(1, h), h)


def reflect(u: int, b: NatSet, horizon: int | None = None) -> NatSet:
    """{u - y : y in b} intersected with [1, horizon]."""
    h = _pick_horizon(horizon, b)
    buf = bytearray((h >> 3) + 1)
    for y in b:
        v = u - y
        if 1 <= v <= h:
            buf[v >> 3] |= 1 << (v & 7)
    return NatSet._from_mask(int.from_bytes(bytes(buf), "little"), h)


def count_in(a: NatSet, lo: int, hi: int, kind: str = "(]") -> int:
    """|a intersect interval|; bounds outside [1, horizon] clip harmlessly."""
    lo2, hi2 = _closed_bounds(lo, hi, kind)
    lo2 = max(lo2, 1)
    hi2 = min(hi2, a._horizon)
    if lo2 > hi2:
        return 0
    return ((a._mask >> lo2) & ((1 << (hi2 - lo2 + 1)) - 1)).bit_count()


class DensitySample(NamedTuple):
    n: int
    count: int
    ratio: float


@dataclass(frozen=True)
class DensityProfile:
    """Counting ratios |A n [1, n]| / n at chosen sample points.

    upper_estimate / lower_estimate are the max / min ratio over the tail
    half of the samples, a finite stand-in for the limsup / liminf.
    """

    samples: tuple[DensitySample, ...]
    upper_estimate: float
    lower_estimate: float


def density_profile(a: NatSet, sample_points: Sequence[int]) -> DensityProfile:
    """Exact counts and ratios at strictly increasing in-horizon points."""
    pts = list(sample_points)
    if not pts:
        raise ValueError("need at least one sample point")
    prev = 0
    for n in pts:
        if n <= prev:
            raise ValueError("sample points must be strictly increasing")
        if n > a.horizon:
            raise ValueError(f"sample point {n} beyond horizon {a.horizon}")
        prev = n
    samples = []
    for n in pts:
        c = count_in(a, 1, n, "[]")
        samples.append(DensitySample(n, c, c / n))
    tail = samples[len(samples) // 2 :]
    return DensityProfile(
        samples=tuple(samples),
        upper_estimate=max(s.ratio for s in tail),
        lower_estimate=min(s.ratio for s in tail),
    )


# ---------------------------------------------------------------------------
# Set file format: one strictly increasing positive integer per line,
# '#' starts a comment line, blank lines are ignored.
# ---------------------------------------------------------------------------


def read_elements(path) -> list[int]:
    """Parse a set file into its (strictly increasing) element list."""
    out: list[int] = []
    prev = 0
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                value = int(line)
            except ValueError:
                raise ValueError(f"{path}:{line_no}: not an integer: {line!r}") from None
            if value < 1:
                raise ValueError(f"{path}:{line_no}: elements must be positive, got {value}")
            if value <= prev:
                raise ValueError(
                    f"{path}:{line_no}: elements must be strictly increasing "
                    f"({value} after {prev})"
                )
            out.append(value)
            prev = value
    return out


def read_set_file(path, horizon: int | None = None) -> NatSet:
    """Load a set file; elements beyond an explicit horizon are clipped."""
    elems = read_elements(path)
    if horizon is None:
        horizon = elems[-1] if elems else 1
    return NatSet((e for e in elems if e <= horizon), horizon)


def write_set_file(path, values: NatSet | Iterable[int], comment: str | None = None) -> None:
    """Write elements in the set file format, optionally with a '#' header."""
    with open(path, "w", encoding="utf-8") as fh:
        if comment:
            for line in comment.splitlines():
                fh.write(f"# {line}\n")
        for v in values:
            fh.write(f"{v}\n")
