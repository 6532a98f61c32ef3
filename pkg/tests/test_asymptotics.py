"""Closed-form expansions and counting statistics.

The generic m-interval expansions are checked against the independently
coded single-interval laws (exact reductions), against hand-computable
term values, against each other (the linear term of the gap expansion is
a signed sum of the conditional means), and against the determinant at
moderate r where the neglected tail is small.
"""

import math

import numpy as np
import pytest

from sinegap import (
    DYSON_CONSTANT,
    EULER_GAMMA,
    ExpansionBreakdown,
    IntervalPartition,
    ValidationError,
    WeightConfiguration,
    basor_widom_log,
    conditional_stats,
    counting_stats,
    dyson_gap_log,
    fredholm_det,
    positive_weights_expansion,
    var_cov_expansion,
    zero_weight_expansion,
)

PI2 = math.pi**2


def random_partition(rng, m, span=(0.1, 0.9)):
    gaps = rng.uniform(*span, m)
    x0 = rng.uniform(-2.0, 2.0)
    return IntervalPartition(tuple(np.concatenate(([x0], x0 + np.cumsum(gaps)))))


# ---------------------------------------------------------------------------
# breakdown container


def test_breakdown_total_is_exact_sum():
    b = ExpansionBreakdown(1.5, -2.25, 0.125, 3.0)
    assert b.total == 1.5 + -2.25 + 0.125 + 3.0
    with pytest.raises(Exception):
        b.total = 0.0


def test_breakdown_rejects_nonfinite():
    with pytest.raises(ValidationError):
        ExpansionBreakdown(math.nan, 0.0, 0.0, 0.0)
    with pytest.raises(ValidationError):
        ExpansionBreakdown(0.0, math.inf, 0.0, 0.0)


# ---------------------------------------------------------------------------
# single-interval laws


def test_dyson_gap_terms():
    b = dyson_gap_log(10.0, 0.0, 1.0)
    assert b.r_squared_term == -12.5
    assert b.r_linear_term == 0.0
    assert b.log_r_term == -0.25 * math.log(10.0)
    assert b.constant_term == DYSON_CONSTANT  # log length vanishes
    b2 = dyson_gap_log(1.0, 0.3, 0.8)
    assert b2.r_squared_term == -(0.5 * 0.5) / 8.0
    assert abs(b2.constant_term - (-0.25 * math.log(0.5) + DYSON_CONSTANT)) < 1e-16


def test_basor_widom_terms():
    b = basor_widom_log(1.0, 0.0, 1.0, -1.1)
    assert b.r_squared_term == 0.0
    assert abs(b.r_linear_term - (-1.1 / math.pi)) < 1e-16
    assert b.log_r_term == 0.0  # log 1
    zero = basor_widom_log(7.0, 0.0, 2.0, 0.0)
    assert zero.total == 0.0  # s = 1 means F = 1


def test_single_interval_laws_validate():
    with pytest.raises(ValidationError):
        dyson_gap_log(-1.0, 0.0, 1.0)
    with pytest.raises(ValidationError):
        dyson_gap_log(1.0, 1.0, 0.5)
    with pytest.raises(ValidationError):
        basor_widom_log(1.0, 0.0, 1.0, math.inf)


# ---------------------------------------------------------------------------
# exact reductions of the generic expansions


def test_positive_expansion_reduces_to_basor_widom():
    rng = np.random.default_rng(41)
    for _ in range(20):
        x0 = rng.uniform(-3.0, 3.0)
        length = rng.uniform(0.05, 4.0)
        u1 = rng.uniform(-3.0, 3.0)
        r = rng.uniform(0.5, 50.0)
        a = positive_weights_expansion((x0, x0 + length), (u1,), r)
        b = basor_widom_log(r, x0, x0 + length, u1)
        assert abs(a.total - b.total) < 1e-13
        assert abs(a.r_linear_term - b.r_linear_term) < 1e-13


def test_zero_expansion_reduces_to_dyson():
    rng = np.random.default_rng(43)
    for _ in range(20):
        x0 = rng.uniform(-3.0, 3.0)
        length = rng.uniform(0.05, 4.0)
        r = rng.uniform(0.5, 50.0)
        a = zero_weight_expansion((x0, x0 + length), 1, (), r)
        b = dyson_gap_log(r, x0, x0 + length)
        assert abs(a.total - b.total) < 1e-13
        assert a.r_squared_term == b.r_squared_term


def test_positive_expansion_zero_u_is_zero():
    b = positive_weights_expansion((0.0, 0.5, 1.2), (0.0, 0.0), 9.0)
    assert b.total == 0.0


# ---------------------------------------------------------------------------
# structural invariances


def test_expansions_are_translation_invariant():
    part = IntervalPartition((0.0, 0.5, 1.1, 1.7))
    u3 = (-0.8, -1.8, -1.32)
    uz = (0.8, -1.32)
    for c in (-4.0, 1.3):
        moved = part.translated(c)
        a = positive_weights_expansion(part, u3, 12.0)
        b = positive_weights_expansion(moved, u3, 12.0)
        assert abs(a.total - b.total) < 1e-12
        az = zero_weight_expansion(part, 2, uz, 12.0)
        bz = zero_weight_expansion(moved, 2, uz, 12.0)
        assert abs(az.total - bz.total) < 1e-12


def test_zero_expansion_linear_term_is_signed_mean_sum():
    # the r-linear coefficient is the signed sum of the conditional means:
    # left-of-gap ratios enter with -u_j mu_hat_j, right-of-gap with +u_j mu_hat_j
    part = IntervalPartition((0.0, 0.5, 1.1, 1.7, 2.5))
    p, r = 3, 7.0
    u = (0.8, 1.8, -1.87)
    b = zero_weight_expansion(part, p, u, r)
    stats = conditional_stats(part, p, r)
    want = 0.0
    for uj, j, mu in zip(u, stats.labels, stats.mu):
        want += (uj * mu) if j >= p + 1 else (-uj * mu)
    assert abs(b.r_linear_term - want) < 1e-12


def test_zero_expansion_pair_denominator_identity():
    # |a^2 - b^2| = (x_p - x_{p-1})(x_k - x_j) for j < k both off the gap
    # (the sign flips when the pair straddles the gap), so the pair
    # logarithm never sees a vanishing denominator
    rng = np.random.default_rng(47)
    for _ in range(25):
        part = random_partition(rng, 4)
        x = part.as_array()
        p = int(rng.integers(1, 5))
        idx = [j for j in range(5) if j not in (p - 1, p)]
        for a_i in range(len(idx)):
            for b_i in range(a_i + 1, len(idx)):
                j, k = idx[a_i], idx[b_i]
                a = math.sqrt(abs(x[k] - x[p]) * abs(x[j] - x[p - 1]))
                b = math.sqrt(abs(x[k] - x[p - 1]) * abs(x[j] - x[p]))
                lhs = abs(a * a - b * b)
                rhs = (x[p] - x[p - 1]) * (x[k] - x[j])
                assert abs(lhs - rhs) < 1e-12 * max(1.0, rhs)
                assert abs(a - b) > 1e-12


def test_expansion_validation():
    part = IntervalPartition((0.0, 0.5, 1.2))
    with pytest.raises(ValidationError):
        positive_weights_expansion(part, (0.1,), 5.0)  # wrong length
    with pytest.raises(ValidationError):
        positive_weights_expansion(part, (0.1, math.nan), 5.0)
    with pytest.raises(ValidationError):
        zero_weight_expansion(part, 3, (0.1,), 5.0)  # p out of range
    with pytest.raises(ValidationError):
        zero_weight_expansion(part, 1, (0.1, 0.2), 5.0)  # wrong length
    with pytest.raises(ValidationError):
        positive_weights_expansion(part, (0.1, 0.2), 0.0)


# ---------------------------------------------------------------------------
# agreement with the determinant at moderate r


def test_positive_expansion_tracks_determinant():
    part = IntervalPartition((0.0, 0.7, 1.2))
    u = (-1.1, -2.4)
    w = WeightConfiguration.from_positive_u(u)
    r = 30.0
    numeric = fredholm_det(part, w, r).log_f.real
    asym = positive_weights_expansion(part, u, r).total
    assert abs(numeric - asym) < 0.02


def test_zero_expansion_tracks_determinant():
    part = IntervalPartition((0.0, 0.5, 1.1, 1.7))
    u = (0.8, -1.32)
    w = WeightConfiguration.from_zero_u(u, 2, 3)
    r = 30.0
    numeric = fredholm_det(part, w, r).log_f.real
    asym = zero_weight_expansion(part, 2, u, r).total
    assert abs(numeric - asym) < 0.02


# ---------------------------------------------------------------------------
# counting statistics


def test_counting_stats_hand_values():
    t = counting_stats(IntervalPartition((0.0, math.pi)), 1.0)
    assert abs(t.mu[0] - 1.0) < 1e-15
    t2 = counting_stats(IntervalPartition((0.0, 1.0)), math.e / 2.0)
    assert abs(t2.sigma2[0] - 1.0 / PI2) < 1e-15  # log(2 r) = 1
    t3 = counting_stats(IntervalPartition((0.0, 0.5, 1.2)), 4.0)
    assert t3.labels == (1, 2)
    assert abs(t3.mu[1] - 4.0 * 1.2 / math.pi) < 1e-15
    want = math.log(2.0 * 4.0 * 0.5 * 1.2 / 0.7) / (2.0 * PI2)
    assert abs(t3.cross[0, 1] - want) < 1e-15
    assert t3.cross[0, 0] == t3.sigma2[0]
    assert t3.cross[1, 0] == t3.cross[0, 1]


def test_conditional_stats_hand_values():
    t = conditional_stats(IntervalPartition((0.0, 1.0, 2.0)), 2, 5.0)
    assert t.labels == (0,)
    assert abs(t.mu[0] - 5.0 * math.sqrt(2.0) / math.pi) < 1e-14
    # sigma_hat^2 at j=0: log(4 sqrt(2*1) |0-2-1| 5 / 1) / (2 pi^2)
    want = math.log(4.0 * math.sqrt(2.0) * 3.0 * 5.0) / (2.0 * PI2)
    assert abs(t.sigma2[0] - want) < 1e-14


def test_conditional_cross_is_r_independent():
    part = IntervalPartition((0.0, 0.5, 1.1, 1.7, 2.5))
    a = conditional_stats(part, 3, 2.0)
    b = conditional_stats(part, 3, 50.0)
    off_a = a.cross[~np.eye(3, dtype=bool)]
    off_b = b.cross[~np.eye(3, dtype=bool)]
    assert np.max(np.abs(off_a - off_b)) == 0.0


def test_var_cov_offsets():
    part = IntervalPartition((0.0, 0.5, 1.2))
    base = counting_stats(part, 20.0)
    full = var_cov_expansion(part, 20.0)
    var_off = (1.0 + EULER_GAMMA) / PI2
    assert np.max(np.abs(full.sigma2 - base.sigma2 - var_off)) < 1e-16
    assert abs(full.cross[0, 1] - base.cross[0, 1] - var_off / 2.0) < 1e-16
    assert np.max(np.abs(full.mu - base.mu)) == 0.0
    assert full.cross[0, 0] == full.sigma2[0]


def test_statistics_triple_read_only():
    t = counting_stats(IntervalPartition((0.0, 1.0)), 2.0)
    with pytest.raises(ValueError):
        t.mu[0] = 0.0
    with pytest.raises(ValueError):
        t.cross[0, 0] = 0.0
