"""Sequence families for the base set A, and the growth-ratio analysis.

A SequenceSpec names the family (explicit data, powers, geometric, fibonacci,
primes, composites, squares) and the horizon; generate() realizes it as a
NatSet.  analyze_ratio() finds a witnessed growth bound a_{n+1} >= alpha * a_n
on a tail of the sequence and derives from it the parameters the dyadic
builder needs.  Ratio comparisons are done in exact rational arithmetic so
grid values like 1.05 behave as 21/20, not as their binary float neighbours.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import IndexOutOfRange, RatioNotSatisfied
from .natset import NatSet, read_elements

__all__ = [
    "ALPHA_GRID",
    "FAMILIES",
    "SequenceSpec",
    "RatioAnalysis",
    "parse_spec",
    "generate",
    "analyze_ratio",
    "ratio_tail_holds",
]

#: Candidate growth bounds tried (largest first) when no hint is given.
ALPHA_GRID = (
    Fraction(2),
    Fraction(3, 2),
    Fraction(5, 4),
    Fraction(11, 10),
    Fraction(21, 20),
)

FAMILIES = ("explicit", "powers", "geometric", "fibonacci", "primes", "composites", "squares")

_GEOMETRIC_ITERATION_CAP = 100_000


@dataclass(frozen=True)
class SequenceSpec:
    """A rule producing the base set: family name, parameters, horizon."""

    family: str
    horizon: int
    k: int | None = None                     # powers: base
    c: Fraction | None = None                # geometric: scale
    alpha: Fraction | None = None            # geometric: ratio
    elements: tuple[int, ...] | None = None  # explicit data
    source: str | None = None                # original spec string, if parsed

    def describe(self) -> str:
        """Canonical spec string for reports."""
        if self.source:
            return self.source
        if self.family == "powers":
            return f"powers:{self.k}"
        if self.family == "geometric":
            return f"geometric:c={self.c},alpha={self.alpha}"
        if self.family == "explicit":
            return f"explicit:<{len(self.elements or ())} elements>"
        return self.family


def _coerce_fraction(value, what: str) -> Fraction:
    # Strings go through Fraction directly so "1.05" means 21/20 exactly.
    try:
        if isinstance(value, str):
            return Fraction(value)
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError):
        raise ValueError(f"cannot interpret {value!r} as a {what}") from None


def parse_spec(text: str, horizon: int | None = None) -> SequenceSpec:
    """Parse a CLI spec string.

    Grammar: ``powers:K``, ``geometric:c=C,alpha=A``, ``primes``,
    ``composites``, ``fib``, ``squares``, ``file:PATH``.
    """
    head, _, rest = text.partition(":")
    head = head.strip().lower()
    if head == "fib":
        head = "fibonacci"
    if head == "file":
        if not rest:
            raise ValueError("file: spec needs a path")
        elems = tuple(read_elements(rest))
        h = horizon if horizon is not None else (elems[-1] if elems else 1)
        return SequenceSpec("explicit", h, elements=elems, source=text)
    if horizon is None:
        raise ValueError(f"spec {text!r} needs an explicit horizon")
    if head == "powers":
        try:
            k = int(rest)
        except ValueError:
            raise ValueError(f"powers spec needs an integer base, got {rest!r}") from None
        return SequenceSpec("powers", horizon, k=k, source=text)
    if head == "geometric":
        params = {}
        for part in rest.split(","):
            key, _, val = part.partition("=")
            params[key.strip()] = val.strip()
        missing = {"c", "alpha"} - params.keys()
        if missing:
            raise ValueError(f"geometric spec is missing {sorted(missing)}")
        return SequenceSpec(
            "geometric",
            horizon,
            c=_coerce_fraction(params["c"], "scale"),
            alpha=_coerce_fraction(params["alpha"], "ratio"),
            source=text,
        )
    if head in ("fibonacci", "primes", "composites", "squares"):
        if rest:
            raise ValueError(f"family {head!r} takes no parameters")
        return SequenceSpec(head, horizon, source=text)
    raise ValueError(f"unknown sequence family {text!r}")


def _prime_flags(limit: int) -> bytearray:
    """flags[i] == 1 iff i is prime, for 0 <= i <= limit."""
    flags = bytearray(limit + 1)
    if limit >= 2:
        flags[2:] = b"\x01" * (limit - 1)
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    return flags


def _generate_geometric(c: Fraction, alpha: Fraction, horizon: int) -> list[int]:
    if c <= 0:
        raise ValueError(f"geometric scale must be positive, got {c}")
    if alpha <= 1:
        raise ValueError(f"geometric ratio must exceed 1, got {alpha}")
    out: list[int] = []
    num = c.numerator * alpha.numerator
    den = c.denominator * alpha.denominator
    i = 1
    while True:
        value = num // den
        if value > horizon:
            break
        if value >= 1 and (not out or value > out[-1]):
            out.append(value)
        num *= alpha.numerator
        den *= alpha.denominator
        i += 1
        if i > _GEOMETRIC_ITERATION_CAP:
            raise ValueError("geometric ratio too close to 1 for exact generation")
    return out


def generate(spec: SequenceSpec) -> NatSet:
    """Realize the family as a NatSet on [1, spec.horizon]."""
    h = spec.horizon
    if h < 1:
        raise ValueError(f"horizon must be at least 1, got {h}")
    family = spec.family
    if family == "explicit":
        elems = list(spec.elements or ())
        for prev, cur in zip(elems, elems[1:]):
            if cur <= prev:
                raise ValueError(f"explicit sequence must be strictly increasing ({cur} after {prev})")
        if elems and elems[0] < 1:
            raise ValueError(f"explicit sequence must be positive, got {elems[0]}")
        return NatSet((e for e in elems if e <= h), h)
    if family == "powers":
        k = spec.k
        if k is None or k < 2:
            raise ValueError(f"powers base must be an integer >= 2, got {k}")
        vals = []
        v = 1
        while v <= h:
            vals.append(v)
            v *= k
        return NatSet(vals, h)
    if family == "geometric":
        if spec.c is None or spec.alpha is None:
            raise ValueError("geometric family needs c and alpha")
        return NatSet(_generate_geometric(spec.c, spec.alpha, h), h)
    if family == "fibonacci":
        vals = []
        x, y = 1, 2
        while x <= h:
            vals.append(x)
            x, y = y, x + y
        return NatSet(vals, h)
    if family == "primes":
        flags = _prime_flags(h)
        return NatSet((i for i in range(2, h + 1) if flags[i]), h)
    if family == "composites":
        flags = _prime_flags(h)
        return NatSet((i for i in range(4, h + 1) if not flags[i]), h)
    if family == "squares":
        return NatSet((i * i for i in range(1, math.isqrt(h) + 1)), h)
    raise ValueError(f"unknown sequence family {family!r}")


@dataclass(frozen=True)
class RatioAnalysis:
    """Parameters derived from a witnessed tail growth bound.

    n0         1-based index from which a_{n+1} >= alpha * a_n holds in-horizon
    alpha      the growth bound (float view of alpha_exact)
    r          smallest power with alpha**r >= 4
    p          1 + max(a_{n0}, a_{2r+1}): above p every (x, 4x] slice of the
               sequence is both short (at most r elements) and outnumbered by
               the initial segment
    gamma      2 + floor(log2 p): first dyadic block exponent
    threshold  2**(gamma + 1): point from which coverage is guaranteed
    certified  True when the family guarantees the ratio analytically;
               False when it was only verified on the finite prefix
    """

    n0: int
    alpha: float
    r: int
    p: int
    gamma: int
    threshold: int
    certified: bool
    alpha_exact: Fraction


def _min_tail_start(seq: Sequence[int], alpha: Fraction) -> int | None:
    """Minimal 1-based n0 with a_{n+1} >= alpha * a_n for all n >= n0.

    Returns None when no tail with at least one consecutive pair satisfies
    the bound (a vacuous tail does not count as a witness).
    """
    num, den = alpha.numerator, alpha.denominator
    last_bad = 0  # largest 1-based pair index n where the bound fails
    for i in range(len(seq) - 1):
        if seq[i + 1] * den < seq[i] * num:
            last_bad = i + 1
    n0 = last_bad + 1
    if n0 > len(seq) - 1:
        return None
    return n0


def ratio_tail_holds(seq: Sequence[int], n0: int, alpha: Fraction) -> bool:
    """Exact check of the tail bound over every in-horizon index n >= n0."""
    num, den = alpha.numerator, alpha.denominator
    return all(seq[i + 1] * den >= seq[i] * num for i in range(n0 - 1, len(seq) - 1))


def analyze_ratio(
    seq: Sequence[int] | NatSet,
    alpha_hint=None,
    *,
    certified: bool = False,
) -> RatioAnalysis:
    """Derive the builder parameters from a strictly increasing sequence.

    With a hint, the hinted ratio is verified on a minimal tail and used
    as-is.  Without one, the largest grid value admitting a valid tail wins
    (larger alpha means smaller r and p, hence an earlier threshold).

    Raises RatioNotSatisfied when no ratio holds on any nonvacuous tail, and
    IndexOutOfRange when the sequence is too short for the derived r.
    """
    if isinstance(seq, NatSet):
        seq = seq.to_list()
    else:
        seq = list(seq)
    for prev, cur in zip(seq, seq[1:]):
        if cur <= prev:
            raise ValueError(f"sequence must be strictly increasing ({cur} after {prev})")
    if len(seq) < 2:
        raise RatioNotSatisfied(f"need at least two elements, got {len(seq)}")

    if alpha_hint is not None:
        alpha = _coerce_fraction(alpha_hint, "ratio bound")
        if alpha <= 1:
            raise ValueError(f"ratio bound must exceed 1, got {alpha}")
        n0 = _min_tail_start(seq, alpha)
        if n0 is None:
            raise RatioNotSatisfied(f"no tail satisfies a_(n+1) >= {alpha} * a_n")
    else:
        n0 = None
        alpha = ALPHA_GRID[0]
        for cand in ALPHA_GRID:
            n0 = _min_tail_start(seq, cand)
            if n0 is not None:
                alpha = cand
                break
        if n0 is None:
            raise RatioNotSatisfied(
                "no grid ratio holds on any tail; the sequence grows too slowly"
            )

    r = 1
    power = alpha
    while power < 4:
        power *= alpha
        r += 1

    if len(seq) < 2 * r + 2:
        raise IndexOutOfRange(
            f"need at least {2 * r + 2} elements within the horizon for r={r}, got {len(seq)}"
        )
    p = 1 + max(seq[n0 - 1], seq[2 * r])  # strictly above max(a_n0, a_(2r+1))
    gamma = p.bit_length() + 1            # == 2 + floor(log2 p)
    return RatioAnalysis(
        n0=n0,
        alpha=float(alpha),
        r=r,
        p=p,
        gamma=gamma,
        threshold=1 << (gamma + 1),
        certified=certified,
        alpha_exact=alpha,
    )
