"""Count distributions and moments extracted from the determinant.

F(s) = E[prod_k s_k^{N_k}] is entire in s, so the joint law of the
interval counts (N_1, ..., N_m) comes out of a discrete Fourier inversion
of F over the torus s_j = exp(i theta_j).  Thinning and conditional gap
probabilities are determinant ratios, and numerical cumulants come from
central differences of log F in the exponential parameterization
s_j = exp(u_j + ... + u_m), whose gradient/Hessian at u = 0 are exactly
the means and covariances of the nested counts N_(r x_0, r x_j).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from .asymptotics import StatisticsTriple
from .errors import NumericalError, ValidationError
from .fredholm import IntervalPartition, WeightConfiguration, fredholm_det

__all__ = [
    "JointPMF",
    "joint_pmf",
    "thinned_gap_probability",
    "conditional_zero_probability",
    "numerical_cumulants",
]

NEGATIVE_TOL = 1e-9
IMAG_TOL = 1e-8


@dataclass(frozen=True)
class JointPMF:
    """P(N_1 = k_1, ..., N_m = k_m) for k_j <= max_counts[j], plus the
    mass left outside the table.  table.shape == tuple(K_j + 1)."""

    table: np.ndarray
    residual_mass: float
    max_counts: tuple[int, ...]

    def __post_init__(self):
        self.table.setflags(write=False)

    def probability(self, counts: Sequence[int]) -> float:
        return float(self.table[tuple(counts)])


def _as_partition(partition) -> IntervalPartition:
    if isinstance(partition, IntervalPartition):
        return partition
    return IntervalPartition(partition)


def joint_pmf(
    partition,
    r: float,
    max_counts: Sequence[int] | int,
    n_quad: int = 64,
    n_grid_per_dim: int | None = None,
) -> JointPMF:
    """Joint count probabilities by Fourier inversion on the unit torus.

    P(k) = (2 pi)^{-m} \\int F(e^{i theta}) e^{-i k . theta} dtheta is
    evaluated with a uniform grid of n_grid_per_dim points per dimension
    (default, and minimum, 2 max(K_j) + 2); the trapezoid rule on the
    torus is a plain DFT, so the grid values are FFT'd.  Supported for
    m <= 3.  By normalization the full DFT sums to F(1) = 1 exactly, and
    the mass not in the table is reported as residual_mass.

    Entries in (-1e-9, 0) are clamped to 0 (roundoff from the inversion);
    anything below -1e-9 raises, as does any imaginary part above 1e-8.
    """
    partition = _as_partition(partition)
    m = partition.m
    if m > 3:
        raise ValidationError(f"joint_pmf supports m <= 3 intervals, got m = {m}")
    if isinstance(max_counts, (int, np.integer)) and not isinstance(max_counts, bool):
        max_counts = (int(max_counts),) * m
    ks = tuple(int(k) for k in max_counts)
    if len(ks) != m or any(k < 0 for k in ks):
        raise ValidationError(f"max_counts must give one K_j >= 0 per interval, got {max_counts!r}")
    min_grid = 2 * max(ks) + 2
    if n_grid_per_dim is None:
        n_grid_per_dim = min_grid
    if not isinstance(n_grid_per_dim, int) or n_grid_per_dim < min_grid:
        raise ValidationError(
            f"n_grid_per_dim must be an integer >= 2 max(K_j) + 2 = {min_grid}, got {n_grid_per_dim!r}"
        )

    g = n_grid_per_dim
    phases = np.exp(2j * math.pi * np.arange(g) / g)
    f_grid = np.empty((g,) * m, dtype=complex)
    for combo in product(range(g), repeat=m):
        weights = WeightConfiguration(tuple(phases[i] for i in combo))
        log_f = fredholm_det(partition, weights, r, n_quad).log_f
        f_grid[combo] = np.exp(log_f)

    coeff = np.fft.fftn(f_grid) / g**m
    table = coeff[tuple(slice(0, k + 1) for k in ks)]

    max_imag = float(np.max(np.abs(table.imag)))
    if max_imag > IMAG_TOL:
        raise NumericalError(f"inversion left imaginary mass {max_imag:.3e} > {IMAG_TOL:g}")
    table = table.real.copy()
    low = float(table.min())
    if low < -NEGATIVE_TOL:
        raise NumericalError(f"negative probability {low:.3e} below -{NEGATIVE_TOL:g}")
    table[table < 0.0] = 0.0

    residual = 1.0 - float(table.sum())
    return JointPMF(table=table, residual_mass=residual, max_counts=ks)


def _validate_unit_weights(s, m: int) -> WeightConfiguration:
    arr = np.asarray(s, dtype=float)
    if arr.shape != (m,):
        raise ValidationError(f"expected {m} weights, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
        raise ValidationError(f"weights must lie in [0, 1], got {arr!r}")
    return WeightConfiguration(tuple(float(v) for v in arr))


def thinned_gap_probability(partition, s, r: float, n: int = 64) -> float:
    """Probability that the thinned process (each point of interval k kept
    independently with probability 1 - s_k) has no points at all: exactly
    F(s).  Equals 1 at s = 1 and the hard-gap probability at s = 0."""
    partition = _as_partition(partition)
    weights = _validate_unit_weights(s, partition.m)
    log_f = fredholm_det(partition, weights, r, n).log_f
    return min(1.0, math.exp(log_f.real))


def conditional_zero_probability(partition, s, r: float, n: int = 64) -> float:
    """P(no points of the original process | the thinned process is empty)
    = F((x_0, x_m), s = 0) / F(x, s), a ratio of two determinants in
    (0, 1].  At s = 0 thinning removes nothing and the ratio is 1."""
    partition = _as_partition(partition)
    weights = _validate_unit_weights(s, partition.m)
    num = fredholm_det(partition.merged(), WeightConfiguration((0.0,)), r, n).log_f.real
    den = fredholm_det(partition, weights, r, n).log_f.real
    return min(1.0, math.exp(num - den))


def numerical_cumulants(
    partition,
    r: float,
    order: int = 2,
    h: float = 1e-3,
    n: int = 64,
) -> StatisticsTriple:
    """Cumulants of the nested counts N_(r x_0, r x_j) by differencing.

    log F(u) with s_j = exp(u_j + ... + u_m) is the joint cumulant
    generating function of (N_1, ..., N_m), so

        mean_j  = d/du_j log F |_0,      var_j = d^2/du_j^2 log F |_0,
        cov_jk  = d^2/(du_j du_k) log F |_0.

    Central differences at steps h and h/2 are combined by one Richardson
    step (error O(h^4)).  `order` = 1 computes means only (variances and
    covariances are returned as NaN); `order` = 2 computes all three.
    h must lie in [1e-4, 1e-1].
    """
    partition = _as_partition(partition)
    r = float(r)
    if not math.isfinite(r) or r <= 0.0:
        raise ValidationError(f"scale r must be positive and finite, got {r!r}")
    if order not in (1, 2):
        raise ValidationError(f"order must be 1 or 2, got {order!r}")
    h = float(h)
    if not (1e-4 <= h <= 1e-1):
        raise ValidationError(f"step h must lie in [1e-4, 1e-1], got {h!r}")
    m = partition.m

    def log_f(u: np.ndarray) -> float:
        s = np.exp(np.cumsum(u[::-1])[::-1])
        weights = WeightConfiguration(tuple(float(v) for v in s))
        return fredholm_det(partition, weights, r, n).log_f.real

    def at(**deltas) -> float:
        u = np.zeros(m)
        for j, d in deltas.items():
            u[int(j)] += d
        return log_f(u)

    def richardson(coarse: float, fine: float) -> float:
        return (4.0 * fine - coarse) / 3.0

    f0 = log_f(np.zeros(m))
    plus = np.empty((m, 2))
    minus = np.empty((m, 2))
    for j in range(m):
        for col, step in enumerate((h, h / 2.0)):
            plus[j, col] = at(**{str(j): step})
            minus[j, col] = at(**{str(j): -step})

    def d1(j: int, col: int, step: float) -> float:
        return (plus[j, col] - minus[j, col]) / (2.0 * step)

    mu = np.array([richardson(d1(j, 0, h), d1(j, 1, h / 2.0)) for j in range(m)])

    if order == 1:
        nan = np.full(m, np.nan)
        return StatisticsTriple(
            mu=mu, sigma2=nan, cross=np.full((m, m), np.nan), labels=tuple(range(1, m + 1))
        )

    def d2(j: int, col: int, step: float) -> float:
        return (plus[j, col] - 2.0 * f0 + minus[j, col]) / (step * step)

    sigma2 = np.array([richardson(d2(j, 0, h), d2(j, 1, h / 2.0)) for j in range(m)])

    cross = np.diag(sigma2.copy())
    for j in range(m):
        for k in range(j + 1, m):

            def mixed(step: float) -> float:
                pp = at(**{str(j): step, str(k): step})
                pm = at(**{str(j): step, str(k): -step})
                mp = at(**{str(j): -step, str(k): step})
                mm = at(**{str(j): -step, str(k): -step})
                return (pp - pm - mp + mm) / (4.0 * step * step)

            cross[j, k] = cross[k, j] = richardson(mixed(h), mixed(h / 2.0))

    return StatisticsTriple(mu=mu, sigma2=sigma2, cross=cross, labels=tuple(range(1, m + 1)))
