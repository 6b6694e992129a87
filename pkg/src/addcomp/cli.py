"""Command-line surface: build, verify, thin, density, gap, oracle.

Reports are JSON with a fixed key order; density data can also be written
as CSV (``n,count,ratio``) for plotting.  Set files use the shared format:
one strictly increasing positive integer per line, '#' comments allowed.

Exit codes: 0 success / verified, 1 a verification or coverage check came
back negative, 2 invalid input or unsatisfiable parameters.  The --threads
knob is accepted for interface stability (ADDCOMP_THREADS overrides the
default); results never depend on it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .builder import ComplementBuild, build_complement, geometric_points, verify_cover
from .errors import (
    AddcompError,
    BlockPreconditionFailed,
    CoverFailed,
    IndexOutOfRange,
    NoCover,
    PreconditionViolated,
    RatioNotSatisfied,
    TooLarge,
)
from .greedy import GreedyInstance, GreedyTrace, greedy_cover, greedy_thin, thin_block
from .natset import NatSet, density_profile, from_interval, read_set_file, write_set_file
from .oracle import gap_detector, minimal_cover
from .sequences import FAMILIES, generate, parse_spec

__all__ = ["main"]

_MAX_LISTED = 20

_INVALID_INPUT = (
    ValueError,
    OSError,
    RatioNotSatisfied,
    IndexOutOfRange,
    PreconditionViolated,
    BlockPreconditionFailed,
    TooLarge,
)


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _resolve_set(text: str, horizon: int | None) -> NatSet:
    """Interpret an argument as a sequence spec or as a set file path."""
    head = text.partition(":")[0].lower()
    if head in FAMILIES or head in ("fib", "file"):
        return generate(parse_spec(text, horizon))
    if os.path.exists(text):
        return read_set_file(text, horizon)
    raise ValueError(f"{text!r} is neither a known sequence spec nor an existing file")


def _parse_range(text: str) -> tuple[int, int]:
    lo_text, sep, hi_text = text.partition("..")
    if not sep:
        raise ValueError(f"range must look like LO..HI, got {text!r}")
    lo, hi = int(lo_text), int(hi_text)
    if hi < lo:
        raise ValueError(f"range upper end {hi} below lower end {lo}")
    return lo, hi


def _write_json(path: str | None, payload: dict) -> None:
    text = json.dumps(payload, indent=2)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _print_missing(missing) -> None:
    shown = list(missing[:_MAX_LISTED])
    print(f"missing {len(missing)} point(s): {' '.join(map(str, shown))}"
          + (f" ... and {len(missing) - len(shown)} more" if len(missing) > len(shown) else ""))


def _build_report(build: ComplementBuild) -> dict:
    return {
        "tool_version": __version__,
        "spec": build.source,
        "horizon": build.horizon,
        "parameters": {
            "n0": build.analysis.n0,
            "alpha": build.analysis.alpha,
            "r": build.analysis.r,
            "p": build.analysis.p,
            "gamma": build.analysis.gamma,
            "threshold": build.analysis.threshold,
            "certified": build.analysis.certified,
        },
        "blocks": [
            {
                "exponent": blk.exponent,
                "base": blk.base,
                "size": blk.size,
                "degenerate": blk.degenerate,
                "depth": blk.depth,
                "gain_cutoff": blk.gain_cutoff,
                "bound_two_term": blk.bound_two_term,
                "bound_closed_form": blk.bound_closed_form,
                "translate_bound_ok": blk.translate_bound_ok,
            }
            for blk in build.blocks
        ],
        "coverage": {
            "lo": build.coverage.lo,
            "hi": build.coverage.hi,
            "ok": build.coverage.ok,
            "missing_count": len(build.coverage.missing),
        },
        "density_samples": [
            {"n": s.n, "count": s.count, "ratio": s.ratio} for s in build.density.samples
        ],
    }


def _trace_report(trace: GreedyTrace, *, context: dict) -> dict:
    payload = dict(context)
    payload.update(
        {
            "tool_version": __version__,
            "depth": trace.depth,
            "gain_cutoff": trace.gain_cutoff,
            "degenerate": trace.degenerate,
            "selected_size": len(trace.chosen),
            "peak_gain": trace.peak_gain,
            "bound_two_term": trace.bound_two_term,
            "bound_closed_form": trace.bound_closed_form,
            "gain_counts": {str(g): c for g, c in sorted(trace.gain_counts.items(), reverse=True)},
            "chosen": list(trace.chosen),
            "gains": list(trace.gains),
        }
    )
    return payload


def _cmd_build(args) -> int:
    try:
        spec = parse_spec(args.spec, args.horizon)
        build = build_complement(spec, alpha_hint=args.alpha)
    except CoverFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _INVALID_INPUT as exc:
        return _fail(str(exc))
    if args.out:
        write_set_file(args.out, build.complement, comment=f"complement of {build.source}")
    if args.report:
        _write_json(args.report, _build_report(build))
    cov = build.coverage
    print(
        f"built {len(build.complement)} elements in {len(build.blocks)} blocks "
        f"(gamma={build.analysis.gamma}, threshold={build.threshold})"
    )
    if cov.ok:
        print(f"coverage ({cov.lo}, {cov.hi}] verified")
        return 0
    _print_missing(cov.missing)
    return 1


def _cmd_verify(args) -> int:
    try:
        lo, hi = _parse_range(args.range)
        a = _resolve_set(args.a, max(hi, args.horizon or 1))
        b = read_set_file(args.b_file).with_horizon(max(hi, 1))
        a = a.with_horizon(max(a.horizon, hi))
        cert = verify_cover(a, b, lo, hi)
    except _INVALID_INPUT as exc:
        return _fail(str(exc))
    if cert.ok:
        print(f"coverage ({lo}, {hi}] verified; a={cert.a_digest[:12]} b={cert.b_digest[:12]}")
        return 0
    _print_missing(cert.missing)
    return 1


def _cmd_thin(args) -> int:
    try:
        if args.q is not None:
            a = _resolve_set(args.a, args.horizon or 4 * args.q)
            selected, trace = thin_block(a, args.q)
            context = {"source": args.a, "q": args.q, "m": 2 * args.q, "n": 2 * args.q,
                       "x1": args.q, "x2": 4 * args.q}
        else:
            needed = [name for name in ("m", "n", "x1", "x2", "b_file")
                      if getattr(args, name) is None]
            if needed:
                raise ValueError(f"explicit mode needs --{', --'.join(needed)} (or use --q)")
            a = _resolve_set(args.a, args.horizon or args.x2)
            b = read_set_file(args.b_file).with_horizon(args.x2)
            inst = GreedyInstance(a=a, b=b, m=args.m, n=args.n, x1=args.x1, x2=args.x2)
            selected, trace = greedy_thin(inst)
            context = {"source": args.a, "m": args.m, "n": args.n,
                       "x1": args.x1, "x2": args.x2}
    except _INVALID_INPUT as exc:
        return _fail(str(exc))
    if args.out:
        write_set_file(args.out, selected, comment=f"thinned cover from {args.a}")
    if args.report:
        _write_json(args.report, _trace_report(trace, context=context))
    bound = f", bound {trace.bound_two_term:.2f}" if trace.bound_two_term is not None else ""
    label = " (degenerate, kept whole)" if trace.degenerate else ""
    print(f"selected {len(selected)} candidates at depth {trace.depth}{bound}{label}")
    return 0


def _cmd_density(args) -> int:
    try:
        s = _resolve_set(args.set, args.horizon)
        points = geometric_points(s.horizon, args.samples)
        profile = density_profile(s, points)
    except _INVALID_INPUT as exc:
        return _fail(str(exc))
    if args.format == "csv":
        lines = ["n,count,ratio"]
        lines += [f"{x.n},{x.count},{x.ratio}" for x in profile.samples]
        text = "\n".join(lines)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        else:
            print(text)
    else:
        _write_json(
            args.out,
            {
                "tool_version": __version__,
                "set": args.set,
                "horizon": s.horizon,
                "upper_estimate": profile.upper_estimate,
                "lower_estimate": profile.lower_estimate,
                "samples": [{"n": x.n, "count": x.count, "ratio": x.ratio}
                            for x in profile.samples],
            },
        )
    return 0


def _cmd_gap(args) -> int:
    try:
        lo, hi = _parse_range(args.range)
        a = _resolve_set(args.a, max(hi, args.horizon or 1))
        gaps = gap_detector(a, lo, hi)
    except _INVALID_INPUT as exc:
        return _fail(str(exc))
    if not gaps:
        print(f"no gaps in ({lo}, {hi}]: every point splits as (element) + (non-element)")
        return 0
    _print_missing(gaps.to_list())
    print(
        f"within ({lo}, {hi}] this is exact (sums from beyond {hi} cannot land here); "
        "it says nothing about larger targets"
    )
    return 1


def _cmd_oracle(args) -> int:
    try:
        horizon = args.horizon or (args.x2 if args.x2 else None)
        a = _resolve_set(args.a, horizon)
        if args.b_file:
            b = read_set_file(args.b_file)
        elif args.x1 is not None and args.x2 is not None:
            window = from_interval(args.x1, args.x2, "(]", horizon=max(args.x2, a.horizon))
            b = NatSet._from_mask(window._mask & ~a._mask, window.horizon)
        else:
            raise ValueError("provide --b-file or both --x1 and --x2")
        optimal, size = minimal_cover(a, b, args.m, args.n)
    except (TooLarge, ValueError, OSError, PreconditionViolated) as exc:
        return _fail(str(exc))
    except NoCover as exc:
        print(f"no cover: {exc}", file=sys.stderr)
        return 1
    chosen, gains = greedy_cover(a, b, args.m, args.n)
    payload = {
        "tool_version": __version__,
        "m": args.m,
        "n": args.n,
        "candidates": len(b),
        "optimal_size": size,
        "optimal": optimal.to_list(),
        "greedy_size": len(chosen),
        "greedy": sorted(chosen),
        "greedy_matches_optimal": len(chosen) == size,
    }
    if args.report:
        _write_json(args.report, payload)
    print(f"optimal cover size {size}: {' '.join(map(str, optimal))}")
    print(f"greedy cover size {len(chosen)}"
          + (" (matches optimal)" if len(chosen) == size else " (strictly larger)"))
    return 0


def _add_common_set_args(parser, name="a", help_text="sequence spec or set file"):
    parser.add_argument(name, help=help_text)
    parser.add_argument("--horizon", type=int, default=None, help="truncation point")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="addcomp",
        description="Construct, thin, and exactly verify sparse additive complements.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--threads",
        type=int,
        default=int(os.environ.get("ADDCOMP_THREADS", "0")),
        help="worker cap (0 = all cores); never changes any output byte",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a verified complement from dyadic blocks")
    p.add_argument("spec", help=f"sequence spec ({', '.join(FAMILIES)}, file:PATH)")
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--alpha", default=None, help="growth-ratio hint, e.g. 1.5")
    p.add_argument("--out", default=None, help="write the complement as a set file")
    p.add_argument("--report", default=None, help="write the JSON report")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("verify", help="check that A + B covers a range")
    _add_common_set_args(p)
    p.add_argument("b_file", help="set file with the complement candidate")
    p.add_argument("--range", required=True, help="LO..HI, checks (LO, HI]")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("thin", help="greedy-thin a translate cover")
    _add_common_set_args(p)
    p.add_argument("--q", type=int, default=None, help="dyadic mode: thin (2q,4q] from (q,4q]")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--x1", type=int, default=None)
    p.add_argument("--x2", type=int, default=None)
    p.add_argument("--b-file", default=None, help="explicit candidate set file")
    p.add_argument("--out", default=None, help="write the selection as a set file")
    p.add_argument("--report", default=None, help="write the JSON trace report")
    p.set_defaults(func=_cmd_thin)

    p = sub.add_parser("density", help="sample |S n [1,n]| / n at geometric points")
    _add_common_set_args(p, name="set")
    p.add_argument("--samples", type=int, default=32)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("gap", help="points not reachable as (element) + (non-element)")
    _add_common_set_args(p)
    p.add_argument("--range", required=True, help="LO..HI, scans (LO, HI]")
    p.set_defaults(func=_cmd_gap)

    p = sub.add_parser("oracle", help="exhaustive minimum cover on a tiny instance")
    _add_common_set_args(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x1", type=int, default=None)
    p.add_argument("--x2", type=int, default=None)
    p.add_argument("--b-file", default=None)
    p.add_argument("--report", default=None)
    p.set_defaults(func=_cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AddcompError as exc:  # anything a subcommand did not map itself
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
