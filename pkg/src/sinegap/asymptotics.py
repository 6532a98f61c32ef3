"""Closed-form large-r expansions of log F and the counting statistics.

Two regimes are covered, distinguished by the weights:

* all weights positive ("positive" mode): log F grows linearly in r, with
  a log r correction and an O(1) constant built from Barnes-G pairs;
* exactly one weight zero ("one_zero" mode, a hard gap on interval p):
  the Gaussian-decay gap law -r^2 (x_p - x_{p-1})^2 / 8 leads, decorated
  by square-root interactions with the surviving intervals.

Every expansion is returned as an ExpansionBreakdown splitting the value
into the r^2, r, log r and constant contributions, so convergence studies
can attribute the error.  Mixed terms of the form c * log(2 r d) are
split as c * log r into the log-r slot and c * log(2 d) into the constant
slot.

The statistics functions give the matching mean / variance / covariance
expansions of the interval counts N_(r x_0, r x_j) (nested intervals
anchored at x_0), plus the hatted variants conditioned on a hard gap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ValidationError
from .fredholm import IntervalPartition, reduced_indices
from .specfun import DYSON_CONSTANT, EULER_GAMMA, barnes_pair

__all__ = [
    "ExpansionBreakdown",
    "StatisticsTriple",
    "dyson_gap_log",
    "basor_widom_log",
    "positive_weights_expansion",
    "zero_weight_expansion",
    "counting_stats",
    "conditional_stats",
    "var_cov_expansion",
]

PI = math.pi
PI2 = math.pi * math.pi


@dataclass(frozen=True)
class ExpansionBreakdown:
    """One asymptotic value split by power of r.  `total` is always the
    exact float sum of the four parts."""

    r_squared_term: float
    r_linear_term: float
    log_r_term: float
    constant_term: float
    total: float = field(init=False)

    def __post_init__(self):
        for name in ("r_squared_term", "r_linear_term", "log_r_term", "constant_term"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValidationError(f"{name} is not finite: {v!r}")
        object.__setattr__(
            self,
            "total",
            self.r_squared_term + self.r_linear_term + self.log_r_term + self.constant_term,
        )


@dataclass(frozen=True)
class StatisticsTriple:
    """Per-interval means and variances plus the pair covariances.

    `labels[i]` names the endpoint index j behind row i (counts live on
    the nested intervals (r x_0, r x_j), or on the intervals away from the
    gap for the conditional variants).  `cross` is symmetric with the
    variances on its diagonal.
    """

    mu: np.ndarray
    sigma2: np.ndarray
    cross: np.ndarray
    labels: tuple[int, ...]

    def __post_init__(self):
        self.mu.setflags(write=False)
        self.sigma2.setflags(write=False)
        self.cross.setflags(write=False)


def _check_r(r: float) -> float:
    r = float(r)
    if not math.isfinite(r) or r <= 0.0:
        raise ValidationError(f"scale r must be positive and finite, got {r!r}")
    return r


def _as_partition(partition) -> IntervalPartition:
    if isinstance(partition, IntervalPartition):
        return partition
    return IntervalPartition(partition)


def dyson_gap_log(r: float, x0: float, x1: float) -> ExpansionBreakdown:
    """Gap law for a single empty interval (m = 1, s = 0):

        log F = -r^2 (x1-x0)^2 / 8 - (1/4) log(r (x1-x0))
                + (1/3) log 2 + 3 zeta'(-1) + O(1/r).

    Depends on r and x1 - x0 only.
    """
    r = _check_r(r)
    length = float(x1) - float(x0)
    if not (math.isfinite(length) and length > 0.0):
        raise ValidationError(f"need x1 > x0, got x0 = {x0!r}, x1 = {x1!r}")
    return ExpansionBreakdown(
        r_squared_term=-((r * length) ** 2) / 8.0,
        r_linear_term=0.0,
        log_r_term=-0.25 * math.log(r),
        constant_term=-0.25 * math.log(length) + DYSON_CONSTANT,
    )


def basor_widom_log(r: float, x0: float, x1: float, u1: float) -> ExpansionBreakdown:
    """Single-interval law for a positive weight s_1 = e^{u1}:

        log F = r u1 (x1-x0) / pi + (u1^2 / (2 pi^2)) log(2 r (x1-x0))
                + 2 log[G(1 + u1/(2 pi i)) G(1 - u1/(2 pi i))] + O(1/r).
    """
    r = _check_r(r)
    length = float(x1) - float(x0)
    if not (math.isfinite(length) and length > 0.0):
        raise ValidationError(f"need x1 > x0, got x0 = {x0!r}, x1 = {x1!r}")
    u1 = float(u1)
    if not math.isfinite(u1):
        raise ValidationError(f"u1 must be finite, got {u1!r}")
    c = u1 * u1 / (2.0 * PI2)
    return ExpansionBreakdown(
        r_squared_term=0.0,
        r_linear_term=r * u1 * length / PI,
        log_r_term=c * math.log(r),
        constant_term=c * math.log(2.0 * length) + 2.0 * barnes_pair(u1),
    )


def positive_weights_expansion(partition, u: Sequence[float], r: float) -> ExpansionBreakdown:
    """Large-r law of log F for all-positive weights, parameterized by the
    log-ratios u_j = log(s_j / s_{j+1}), j = 1..m (s_{m+1} = 1):

        log F = (r/pi) sum_j u_j (x_j - x_0)
              + sum_j (u_j^2 / (2 pi^2)) log(2 r (x_j - x_0))
              + sum_{j<k} (u_j u_k / (2 pi^2))
                    log(2 r (x_j - x_0)(x_k - x_0) / (x_k - x_j))
              + sum_j pair(u_j) + pair(sum_j u_j) + O(log r / r),

    with pair(u) = log[G(1 + u/(2 pi i)) G(1 - u/(2 pi i))].
    """
    partition = _as_partition(partition)
    r = _check_r(r)
    u = np.asarray(u, dtype=float)
    m = partition.m
    if u.shape != (m,):
        raise ValidationError(f"expected {m} log-ratios, got shape {u.shape}")
    if not np.all(np.isfinite(u)):
        raise ValidationError(f"u must be finite, got {u!r}")

    x = partition.as_array()
    d = x[1:] - x[0]  # x_j - x_0, j = 1..m

    r_linear = r * float(np.sum(u * d)) / PI

    log_r_coeff = float(np.sum(u * u)) / (2.0 * PI2)
    constant = float(np.sum(u * u / (2.0 * PI2) * np.log(2.0 * d)))
    for j in range(m):
        for k in range(j + 1, m):
            cjk = u[j] * u[k] / (2.0 * PI2)
            log_r_coeff += cjk
            constant += cjk * math.log(2.0 * d[j] * d[k] / (x[k + 1] - x[j + 1]))
    constant += math.fsum(barnes_pair(float(uj)) for uj in u)
    constant += barnes_pair(float(np.sum(u)))

    return ExpansionBreakdown(
        r_squared_term=0.0,
        r_linear_term=r_linear,
        log_r_term=log_r_coeff * math.log(r),
        constant_term=constant,
    )


def zero_weight_expansion(partition, p: int, u: Sequence[float], r: float) -> ExpansionBreakdown:
    """Large-r law of log F with a hard gap on interval p (s_p = 0).

    `u` holds the m - 1 finite log-ratios u_j = log(s_j / s_{j+1}) for
    j in {0..m} minus {p-1, p} in increasing j, with s_0 = s_{m+1} = 1.
    Writing g = x_p - x_{p-1}:

        log F = -r^2 g^2 / 8
              - (r/pi) [ sum_{j<=p-2} u_j sqrt((x_p-x_j)(x_{p-1}-x_j))
                         - sum_{j>=p+1} u_j sqrt((x_j-x_p)(x_j-x_{p-1})) ]
              + sum_j (u_j^2 / (4 pi^2))
                    log(4 sqrt(|x_j-x_p| |x_j-x_{p-1}|) |2 x_j-x_p-x_{p-1}| r / g)
              - (1/4) log(r g)
              + sum_{j<k} (u_j u_k / (2 pi^2)) log((a + b) / |a - b|)
              + (1/3) log 2 + 3 zeta'(-1) + sum_j pair(u_j) + O(log r / r),

    where a = sqrt(|x_k-x_p| |x_j-x_{p-1}|), b = sqrt(|x_k-x_{p-1}| |x_j-x_p|).
    For m = 1 the sums are empty and this is exactly the single-gap law.
    """
    partition = _as_partition(partition)
    r = _check_r(r)
    m = partition.m
    idx = reduced_indices(m, p)
    u = np.asarray(u, dtype=float)
    if u.shape != (m - 1,):
        raise ValidationError(f"expected {m - 1} log-ratios for m = {m}, p = {p}, got shape {u.shape}")
    if not np.all(np.isfinite(u)):
        raise ValidationError(f"u must be finite, got {u!r}")
    by_index = dict(zip(idx, u))

    x = partition.as_array()
    gap = x[p] - x[p - 1]

    r_squared = -((r * gap) ** 2) / 8.0

    lin = 0.0
    for j, uj in by_index.items():
        if j <= p - 2:
            lin += uj * math.sqrt((x[p] - x[j]) * (x[p - 1] - x[j]))
        else:  # j >= p + 1
            lin -= uj * math.sqrt((x[j] - x[p]) * (x[j] - x[p - 1]))
    r_linear = -r * lin / PI

    log_r_coeff = -0.25
    constant = -0.25 * math.log(gap) + DYSON_CONSTANT
    for j, uj in by_index.items():
        cj = uj * uj / (4.0 * PI2)
        log_r_coeff += cj
        factor = (
            4.0
            * math.sqrt(abs(x[j] - x[p]) * abs(x[j] - x[p - 1]))
            * abs(2.0 * x[j] - x[p] - x[p - 1])
            / gap
        )
        constant += cj * math.log(factor)
    for a_i in range(len(idx)):
        for b_i in range(a_i + 1, len(idx)):
            j, k = idx[a_i], idx[b_i]
            a = math.sqrt(abs(x[k] - x[p]) * abs(x[j] - x[p - 1]))
            b = math.sqrt(abs(x[k] - x[p - 1]) * abs(x[j] - x[p]))
            constant += u[a_i] * u[b_i] / (2.0 * PI2) * math.log((a + b) / abs(a - b))
    constant += math.fsum(barnes_pair(float(uj)) for uj in u)

    return ExpansionBreakdown(
        r_squared_term=r_squared,
        r_linear_term=r_linear,
        log_r_term=log_r_coeff * math.log(r),
        constant_term=constant,
    )


def counting_stats(partition, r: float) -> StatisticsTriple:
    """Leading-order statistics of the nested counts N_(r x_0, r x_j):

        mu_j    = r (x_j - x_0) / pi
        sigma_j^2 = log(2 r (x_j - x_0)) / pi^2
        Sigma_jk  = log(2 r (x_j - x_0)(x_k - x_0) / |x_k - x_j|) / (2 pi^2)

    for j, k = 1..m, j != k.  The diagonal of `cross` carries sigma_j^2.
    """
    partition = _as_partition(partition)
    r = _check_r(r)
    x = partition.as_array()
    m = partition.m
    d = x[1:] - x[0]

    mu = r * d / PI
    sigma2 = np.log(2.0 * r * d) / PI2
    cross = np.diag(sigma2.copy())
    for j in range(m):
        for k in range(j + 1, m):
            v = math.log(2.0 * r * d[j] * d[k] / abs(x[k + 1] - x[j + 1])) / (2.0 * PI2)
            cross[j, k] = cross[k, j] = v
    return StatisticsTriple(mu=mu, sigma2=sigma2, cross=cross, labels=tuple(range(1, m + 1)))


def conditional_stats(partition, p: int, r: float) -> StatisticsTriple:
    """Statistics of the counts conditioned on a hard gap on interval p.

    For j in {0..m} minus {p-1, p} (labels), with g = x_p - x_{p-1}:

        mu_hat_j     = (r/pi) sqrt(|x_p - x_j| |x_{p-1} - x_j|)
        sigma_hat_j^2 = log(4 sqrt(|x_j-x_p| |x_j-x_{p-1}|)
                            |2 x_j - x_p - x_{p-1}| r / g) / (2 pi^2)
        Sigma_hat_jk  = log((a + b)/|a - b|) / (2 pi^2)   (r-independent),

    a, b as in `zero_weight_expansion`.  Note label j = 0 is meaningful
    here: it indexes the ratio u_0 = -log s_1 across the left boundary.
    """
    partition = _as_partition(partition)
    r = _check_r(r)
    m = partition.m
    idx = reduced_indices(m, p)
    x = partition.as_array()
    gap = x[p] - x[p - 1]

    mu = np.array([r / PI * math.sqrt(abs(x[p] - x[j]) * abs(x[p - 1] - x[j])) for j in idx])
    sigma2 = np.array(
        [
            math.log(
                4.0
                * math.sqrt(abs(x[j] - x[p]) * abs(x[j] - x[p - 1]))
                * abs(2.0 * x[j] - x[p] - x[p - 1])
                * r
                / gap
            )
            / (2.0 * PI2)
            for j in idx
        ]
    )
    cross = np.diag(sigma2.copy())
    for a_i in range(len(idx)):
        for b_i in range(a_i + 1, len(idx)):
            j, k = idx[a_i], idx[b_i]
            a = math.sqrt(abs(x[k] - x[p]) * abs(x[j] - x[p - 1]))
            b = math.sqrt(abs(x[k] - x[p - 1]) * abs(x[j] - x[p]))
            cross[a_i, b_i] = cross[b_i, a_i] = math.log((a + b) / abs(a - b)) / (2.0 * PI2)
    return StatisticsTriple(mu=mu, sigma2=sigma2, cross=cross, labels=idx)


def var_cov_expansion(partition, r: float) -> StatisticsTriple:
    """Variance and covariance of the nested counts including the
    constant correction:

        Var[N_j]      = sigma_j^2(r) + (1 + gamma_E)/pi^2 + O(1/r)
        Cov[N_j, N_k] = Sigma_jk(r) + (1 + gamma_E)/(2 pi^2) + O(log r / r).

    The means carry no correction: E[N_j] = r (x_j - x_0)/pi exactly.
    """
    base = counting_stats(partition, r)
    var_off = (1.0 + EULER_GAMMA) / PI2
    cov_off = (1.0 + EULER_GAMMA) / (2.0 * PI2)
    sigma2 = base.sigma2 + var_off
    cross = base.cross + cov_off
    np.fill_diagonal(cross, sigma2)
    return StatisticsTriple(mu=base.mu.copy(), sigma2=sigma2, cross=cross, labels=base.labels)
