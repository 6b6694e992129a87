import pytest

from addcomp import (
    BlockPreconditionFailed,
    NatSet,
    PreconditionViolated,
    RatioNotSatisfied,
    SequenceSpec,
    build_complement,
    density_zero_diagnostic,
    from_interval,
    generate,
    parse_spec,
    sumset,
    verify_cover,
)
from addcomp.builder import _build_blocks, geometric_points
from addcomp.sequences import analyze_ratio


def test_build_powers_small_horizon():
    build = build_complement(parse_spec("powers:2", 1 << 12))
    assert build.analysis.gamma == 6
    assert build.threshold == 128
    assert [b.exponent for b in build.blocks] == [6, 7, 8, 9, 10]
    assert (build.coverage.lo, build.coverage.hi) == (128, 1 << 11)
    assert build.coverage.ok
    a = generate(parse_spec("powers:2", 1 << 12))
    assert build.complement.isdisjoint(a)
    assert build.analysis.certified


def test_build_blocks_stay_in_their_interval():
    build = build_complement(parse_spec("powers:2", 1 << 14))
    for blk in build.blocks:
        box = from_interval(blk.base, 4 * blk.base, "(]", horizon=blk.selected.horizon)
        assert blk.selected.issubset(box)
        assert blk.size == len(blk.selected)
        assert blk.translate_bound_ok
        if not blk.degenerate:
            assert blk.size <= blk.bound_two_term


def test_build_each_block_covers_its_dyadic_range():
    horizon = 1 << 14
    build = build_complement(parse_spec("powers:2", horizon))
    a = generate(parse_spec("powers:2", horizon))
    for blk in build.blocks:
        hi = 4 * blk.base
        window = from_interval(2 * blk.base, hi, "(]", horizon=hi)
        assert window.issubset(sumset(a, blk.selected, hi))


def test_build_explicit_with_hint():
    elems = tuple(10**i for i in range(7))
    spec = SequenceSpec("explicit", 10**6, elements=elems)
    build = build_complement(spec, alpha_hint="10")
    assert build.analysis.gamma == 8
    assert build.threshold == 512
    assert build.coverage.ok
    assert (build.coverage.lo, build.coverage.hi) == (512, 1 << 19)
    assert not build.analysis.certified
    # the sparse early blocks collapse to the degenerate whole-interval form
    assert any(b.degenerate for b in build.blocks)


def test_build_composites_propagates_ratio_failure():
    with pytest.raises(RatioNotSatisfied):
        build_complement(parse_spec("composites", 10**5))


def test_build_rejects_too_small_horizon():
    # powers:2 needs gamma 6, so the first block ends at 256
    with pytest.raises(PreconditionViolated):
        build_complement(parse_spec("powers:2", 200))


def test_block_precondition_failure_is_reported():
    # a forged analysis with gamma below the legitimate value trips the
    # runtime counting check on the first block
    a = generate(parse_spec("powers:2", 1 << 12))
    analysis = analyze_ratio(a.to_list())
    forged = type(analysis)(
        n0=analysis.n0,
        alpha=analysis.alpha,
        r=analysis.r,
        p=analysis.p,
        gamma=1,
        threshold=4,
        certified=False,
        alpha_exact=analysis.alpha_exact,
    )
    with pytest.raises(BlockPreconditionFailed) as err:
        _build_blocks(a, forged, 1 << 12)
    assert err.value.exponent == 1


def test_density_samples_start_at_threshold():
    build = build_complement(parse_spec("powers:2", 1 << 13))
    ns = [s.n for s in build.density.samples]
    assert ns[0] == build.threshold
    assert ns == [1 << j for j in range(7, 14)]


def test_verify_cover_parity_counterexample():
    evens = NatSet(range(2, 101, 2), 100)
    odds = NatSet(range(1, 101, 2), 100)
    cert = verify_cover(evens, odds, 2, 100)
    assert not cert.ok
    assert cert.missing == tuple(range(4, 101, 2))


def test_verify_cover_empty_complement():
    a = NatSet([1, 2, 3], 50)
    cert = verify_cover(a, NatSet([], 50), 10, 50)
    assert not cert.ok
    assert cert.missing == tuple(range(11, 51))


def test_verify_cover_primes_complement_composites():
    h = 10**4
    comp = generate(parse_spec("composites", h))
    primes = generate(parse_spec("primes", h))
    with_one = NatSet([1] + primes.to_list(), h)
    cert = verify_cover(comp, with_one, 10, h)
    assert cert.ok
    assert cert.missing == ()


def test_verify_cover_digests_bind_inputs():
    a = NatSet([1, 2], 10)
    b = NatSet([3], 10)
    cert1 = verify_cover(a, b, 3, 5)
    cert2 = verify_cover(a, NatSet([4], 10), 3, 5)
    assert cert1.a_digest == cert2.a_digest
    assert cert1.b_digest != cert2.b_digest


def test_verify_cover_needs_full_knowledge():
    with pytest.raises(ValueError):
        verify_cover(NatSet([1], 10), NatSet([2], 30), 5, 20)


def test_diagnostic_linear_sequence():
    out = density_zero_diagnostic(range(1, 10**4 + 1), 8)
    final_t, final_avg = out[-1]
    assert final_t == 10**4
    # sum of ln(i)/i grows like (ln n)^2 / 2, so the average is tiny
    assert final_avg < 0.005
    assert all(avg >= 0 for _, avg in out)


def test_diagnostic_powers_decay():
    xs = [2**i for i in range(1, 101)]
    out = dict(density_zero_diagnostic(xs, 3))  # samples at t = 1, 10, 100
    assert out[100] < out[10]


def test_diagnostic_rejects_disorder():
    with pytest.raises(ValueError):
        density_zero_diagnostic([1, 3, 3], 4)
    with pytest.raises(ValueError):
        density_zero_diagnostic([], 4)


def test_geometric_points_shape():
    pts = geometric_points(10**6, 10)
    assert pts[0] >= 1
    assert pts[-1] == 10**6
    assert pts == sorted(set(pts))


def test_density_decay_across_blocks():
    build = build_complement(parse_spec("powers:2", 1 << 15))
    assert len(build.blocks) >= 8
    samples = build.density.samples
    assert samples[-1].ratio <= samples[3].ratio
