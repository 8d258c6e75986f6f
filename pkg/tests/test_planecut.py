from itertools import combinations

import pytest

from geochroma.exactgeom import (
    Point,
    coordinate_configuration,
    generate_general_position,
    proper_cross,
)
from geochroma.planecut import (
    PlanecutError,
    is_prime_power,
    nine_regions,
    prime_power_below,
    recount_regions,
    six_fan,
    six_parts_two_parallel,
)


def test_six_parts_bound_n60():
    # guaranteed bound: at least n/6 - 1 = 9 points per region
    cfg = generate_general_position(60, seed=0)
    asg = six_parts_two_parallel(cfg)
    assert all(len(r) >= 9 for r in asg.regions)
    assert len(asg.spill) <= 6


def test_six_parts_recount_oracle_n100():
    cfg = generate_general_position(100, seed=3)
    asg = six_parts_two_parallel(cfg)
    recount_regions(asg, cfg)
    # independent recount: rebuild regions from the stored cuts alone
    for i, region in enumerate(asg.regions):
        (pattern,) = asg.patterns[i]
        rebuilt = [
            v
            for v in range(cfg.n)
            if all(
                p == 0 or cut.side(cfg.points[v]) == p
                for p, cut in zip(pattern, asg.cuts)
            )
        ]
        assert rebuilt == region


def test_six_parts_parabola_n6():
    cfg = coordinate_configuration([(t, t * t) for t in range(6)])
    asg = six_parts_two_parallel(cfg)
    members = sorted(v for r in asg.regions for v in r) + sorted(asg.spill)
    assert sorted(members) == list(range(6))


@pytest.mark.parametrize("n", (30, 60, 120))
def test_six_parts_bound_many_seeds(n):
    lo = -(-n // 6) - 1
    for seed in range(100):
        cfg = generate_general_position(n, seed=seed)
        asg = six_parts_two_parallel(cfg)
        assert all(len(r) >= lo for r in asg.regions), (n, seed)


def test_six_parts_two_cuts_parallel():
    cfg = generate_general_position(40, seed=8)
    asg = six_parts_two_parallel(cfg)
    a, b = asg.cuts[0], asg.cuts[1]
    assert a.a * b.b - a.b * b.a == 0  # same normal direction


def test_six_fan_counts_and_recount():
    cfg = generate_general_position(24, seed=2)
    asg = six_fan(cfg, 3)
    assert [len(r) for r in asg.regions] == [3] * 6
    assert len(asg.spill) <= 6
    recount_regions(asg, cfg)
    assert asg.center is not None
    # the center is not an input point
    cx, cy = asg.center
    assert all(not (p.x == cx and p.y == cy) for p in cfg.points)


def test_six_fan_exact_partition_m6():
    cfg = generate_general_position(6, seed=5)
    asg = six_fan(cfg, 1)
    assert [len(r) for r in asg.regions] == [1] * 6
    assert asg.spill == []


def test_six_fan_regions_clockwise():
    from fractions import Fraction

    cfg = generate_general_position(24, seed=2)
    asg = six_fan(cfg, 3)
    cx, cy = asg.center
    reps = []
    for r in asg.regions:
        p = cfg.points[r[0]]
        reps.append((Fraction(p.x) - cx, Fraction(p.y) - cy))
    # consecutive representatives turn clockwise: cross(v_i, v_{i+1}) < 0
    cw_steps = sum(
        1
        for i in range(6)
        if reps[i][0] * reps[(i + 1) % 6][1] - reps[i][1] * reps[(i + 1) % 6][0] < 0
    )
    assert cw_steps >= 5  # one wrap step may exceed pi and flip sign


def test_six_fan_infeasible():
    cfg = generate_general_position(10, seed=1)
    with pytest.raises(PlanecutError):
        six_fan(cfg, 2)  # needs 12 points


def test_nine_regions_n90():
    cfg = generate_general_position(90, seed=6)
    asg = nine_regions(cfg, 9)
    assert [len(r) for r in asg.regions] == [9] * 9
    recount_regions(asg, cfg)
    assert asg.strips is not None and len(asg.strips) == 3


def test_nine_regions_minimal():
    cfg = generate_general_position(9, seed=13)
    asg = nine_regions(cfg, 1)
    assert [len(r) for r in asg.regions] == [1] * 9


def test_nine_regions_infeasible_q():
    cfg = generate_general_position(30, seed=4)
    with pytest.raises(PlanecutError):
        nine_regions(cfg, 4)  # strips of ~10 cannot fill merged regions


def test_nine_regions_strips_are_separated():
    # no segment within one strip crosses a segment within another strip
    cfg = generate_general_position(24, seed=9)
    asg = nine_regions(cfg, 2)
    pts = cfg.points
    strips = asg.strips
    for s1, s2 in combinations(range(3), 2):
        for a, b in combinations(strips[s1], 2):
            for c, d in combinations(strips[s2], 2):
                assert not proper_cross(pts[a], pts[b], pts[c], pts[d])


def test_nine_regions_merged_pattern_membership():
    cfg = generate_general_position(54, seed=21)
    asg = nine_regions(cfg, 5)
    pts = cfg.points
    for ri in (6, 7, 8):
        pats = asg.patterns[ri]
        for v in asg.regions[ri]:
            sig = tuple(cut.side(pts[v]) for cut in asg.cuts)
            assert any(
                all(p == 0 or p == s for p, s in zip(pat, sig)) for pat in pats
            )


def test_prime_power_below_examples():
    assert prime_power_below(9) == 9
    assert prime_power_below(10) == 9
    assert prime_power_below(100) == 97


def test_prime_power_below_against_sieve():
    # independent oracle: sieve of Eratosthenes, then explicit p^k enumeration
    N = 200
    sieve = [True] * (N + 1)
    sieve[0] = sieve[1] = False
    for i in range(2, N + 1):
        if sieve[i]:
            for j in range(2 * i, N + 1, i):
                sieve[j] = False
    powers = set()
    for p in range(2, N + 1):
        if sieve[p]:
            v = p
            while v <= N:
                powers.add(v)
                v *= p
    for x in range(2, N + 1):
        expected = max(v for v in powers if v <= x)
        assert prime_power_below(x) == expected
        assert is_prime_power(x) == (x in powers)


def test_region_assignment_serialization():
    cfg = generate_general_position(30, seed=2)
    asg = six_parts_two_parallel(cfg)
    d = asg.to_dict()
    assert len(d["regions"]) == 6
    assert len(d["cuts"]) == 3
