"""Corroboration of theta values: how often the plug-in interval covers them.

The corroboration of theta at parameter psi is the probability, under
repeated sampling of the observed data at psi, that theta lands inside the
plug-in interval of the replicate. Evaluated at the MLE it is the observed
corroboration; evaluated at a hypothesized truth it is the actual
corroboration, whose value at the true theta is the confidence level of
the plug-in interval.

Two estimators are provided:

* ``corroboration_bootstrap`` resamples B replicate tables and averages
  closed-interval membership indicators. One set of B replicates serves
  every grid point (common random numbers), which keeps the empirical
  curve close to its population shape (nested, quasi-concave level sets)
  and makes the cost independent of the grid size.
* ``corroboration_normal`` (missing-data setting only) replaces the joint
  law of the two estimated bounds with a bivariate normal with matching
  moments, and integrates the resulting coverage probability by
  one-dimensional adaptive quadrature over the lower bound, conditioning
  the upper offset on it. ``corroboration_normal_curve`` evaluates the
  same integral on a whole grid at once with fixed Gauss-Legendre panels
  (the integrand is analytic once the membership kink is made an
  integration limit); it agrees with the adaptive version to ~1e-12.

Level sets of a curve are reported as the convex hull of qualifying grid
points: the population level sets are intervals, so raggedness from a
finite B is noise. Max-set thresholds are relaxed by half a lattice step
on bootstrap curves (exact ties at the maximum are common there) and by a
1e-9 float guard on normal curves; level sets at a caller-chosen alpha
use only a float-noise guard, so nothing strictly below alpha qualifies.
"""

from __future__ import annotations

import io
import math
import os
from dataclasses import dataclass
from typing import IO, Union

import numpy as np
from scipy import integrate
from scipy.special import ndtr

from .errors import DegenerateVariance, EmptyLevelSet, ValidationError
from .identify import ThetaInterval, theta_interval
from .model import Psi, PsiMatched, PsiMissing
from .sampling import ReplicateStream, missing_pvals

GRID_STEP = 0.001
NORMAL_TIE_EPS = 1e-9
_TAIL_SIGMAS = 13.0
_GL_PANELS = 10
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)

Sizes = Union[int, tuple[int, int]]


def default_grid() -> np.ndarray:
    """Equispaced theta grid on [0, 1] with step 0.001 (1001 points)."""
    return GRID_STEP * np.arange(1001)


@dataclass(frozen=True)
class CorroborationCurve:
    """Corroboration estimates over an ordered theta grid."""

    grid: np.ndarray
    values: np.ndarray
    method: str  # "bootstrap" | "normal"
    psi_at: Psi
    sizes: Sizes
    B: int | None = None
    master_seed: int | None = None

    def __post_init__(self) -> None:
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        if grid.ndim != 1 or grid.size == 0:
            raise ValidationError("grid must be a nonempty 1-D array")
        if grid[0] < 0.0 or grid[-1] > 1.0 or np.any(np.diff(grid) <= 0.0):
            raise ValidationError("grid must be strictly increasing within [0, 1]")
        if values.shape != grid.shape:
            raise ValidationError("values must match the grid point-for-point")
        if np.any(values < 0.0) or np.any(values > 1.0):
            raise ValidationError("corroboration values must lie in [0, 1]")
        if self.method not in ("bootstrap", "normal"):
            raise ValidationError(f"unknown method {self.method!r}")
        if self.method == "bootstrap":
            if self.B is None or self.B < 1:
                raise ValidationError("bootstrap curves need a replicate count B >= 1")
            lattice = values * self.B
            if np.max(np.abs(lattice - np.round(lattice))) > 1e-6:
                raise ValidationError("bootstrap values must be multiples of 1/B")

    @property
    def tie_epsilon(self) -> float:
        """Threshold slack for max-set extraction on this curve: half a
        lattice step for bootstrap values, a float guard otherwise."""
        if self.method == "bootstrap":
            return 0.5 / self.B  # type: ignore[operator]
        return NORMAL_TIE_EPS

    def value_at(self, theta: float) -> float:
        """Value at a grid point that matches theta exactly."""
        idx = np.nonzero(self.grid == theta)[0]
        if idx.size == 0:
            raise ValidationError(f"theta = {theta} is not a grid point of this curve")
        return float(self.values[idx[0]])

    def to_csv(self, destination: str | IO[str]) -> None:
        """Write ``theta,corroboration`` rows with 6 decimal places."""
        if isinstance(destination, (str, os.PathLike)):
            with open(destination, "w", encoding="utf-8", newline="\n") as handle:
                self.to_csv(handle)
            return
        destination.write("theta,corroboration\n")
        for theta, value in zip(self.grid, self.values):
            destination.write(f"{theta:.6f},{value:.6f}\n")

    def to_csv_text(self) -> str:
        buffer = io.StringIO()
        self.to_csv(buffer)
        return buffer.getvalue()


@dataclass(frozen=True)
class LevelSet:
    """A corroboration level set, reported as one closed interval."""

    interval: ThetaInterval
    level: float
    kind: str  # "alpha_level" | "h_offset" | "max_set"


def bounds_batch_streams(psi: Psi, sizes: Sizes, B: int, master_seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Plug-in interval bounds (L, U) of B replicate tables drawn at psi,
    one independent stream per replicate (spawn keys 0..B-1)."""
    if isinstance(psi, PsiMissing):
        n = int(sizes)  # type: ignore[arg-type]
        pvals = missing_pvals(psi)
        counts = np.empty((B, 3), dtype=np.int64)
        for b in range(B):
            counts[b] = ReplicateStream(master_seed, b).rng().multinomial(n, pvals)
        return counts[:, 0] / n, (counts[:, 0] + counts[:, 2]) / n
    if isinstance(psi, PsiMatched):
        n1, n2 = (int(s) for s in sizes)  # type: ignore[misc]
        p1 = np.empty(B)
        p2 = np.empty(B)
        for b in range(B):
            rng = ReplicateStream(master_seed, b).rng()
            p1[b] = rng.binomial(n1, psi.l1p) / n1
            p2[b] = rng.binomial(n2, psi.lp1) / n2
        return np.maximum(p1 + p2 - 1.0, 0.0), np.minimum(p1, p2)
    raise TypeError(f"expected a Psi variant, got {type(psi).__name__}")


def bounds_batch_from_rng(psi: Psi, sizes: Sizes, B: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Replicate bounds drawn sequentially from one generator.

    For nested bootstrap layers that already run inside a single outer
    replicate's task; the outer replicate owns ``rng``, so reproducibility
    under parallel outer scheduling is unaffected.
    """
    if isinstance(psi, PsiMissing):
        n = int(sizes)  # type: ignore[arg-type]
        counts = rng.multinomial(n, missing_pvals(psi), size=B)
        return counts[:, 0] / n, (counts[:, 0] + counts[:, 2]) / n
    if isinstance(psi, PsiMatched):
        n1, n2 = (int(s) for s in sizes)  # type: ignore[misc]
        p1 = rng.binomial(n1, psi.l1p, size=B) / n1
        p2 = rng.binomial(n2, psi.lp1, size=B) / n2
        return np.maximum(p1 + p2 - 1.0, 0.0), np.minimum(p1, p2)
    raise TypeError(f"expected a Psi variant, got {type(psi).__name__}")


def coverage_share(lower: np.ndarray, upper: np.ndarray, grid: np.ndarray) -> np.ndarray:
    """Fraction of closed intervals [lower_b, upper_b] covering each grid
    point, via sorted endpoint counting."""
    lower = np.sort(lower)
    upper = np.sort(upper)
    covered = np.searchsorted(lower, grid, side="right") - np.searchsorted(upper, grid, side="left")
    return covered / lower.size


def corroboration_bootstrap(
    psi: Psi,
    sizes: Sizes,
    grid: np.ndarray | None = None,
    B: int = 5000,
    master_seed: int = 0,
) -> CorroborationCurve:
    """Bootstrap estimate of the corroboration curve at psi.

    Draws B replicate tables at psi (per-replicate streams spawned from
    ``master_seed``), forms each replicate's plug-in interval, and returns
    the share of intervals covering each grid point. The same replicates
    serve the whole grid.
    """
    if B < 1:
        raise ValidationError(f"replicate count B = {B} must be at least 1")
    if grid is None:
        grid = default_grid()
    grid = np.asarray(grid, dtype=float)
    lower, upper = bounds_batch_streams(psi, sizes, B, master_seed)
    values = coverage_share(lower, upper, grid)
    return CorroborationCurve(
        grid=grid, values=values, method="bootstrap",
        psi_at=psi, sizes=sizes, B=B, master_seed=master_seed,
    )


def _normal_params(psi: PsiMissing, n: int) -> tuple[float, float, float, float, float]:
    if n < 1:
        raise ValidationError(f"sample size n = {n} must be at least 1")
    if psi.l11 in (0.0, 1.0) or psi.l_plus0 in (0.0, 1.0):
        raise DegenerateVariance(
            f"normal approximation undefined at l11 = {psi.l11}, l_plus0 = {psi.l_plus0}"
        )
    var_a = psi.l11 * (1.0 - psi.l11) / n
    var_b = psi.l_plus0 * (1.0 - psi.l_plus0) / n
    cov = -psi.l11 * psi.l_plus0 / n
    # conditional variance of the width given the lower bound; zero iff l01 = 0
    cond_var = max(var_b - cov * cov / var_a, 0.0)
    return psi.l11, psi.l_plus0, var_a, cov, cond_var


def corroboration_normal(psi: PsiMissing, n: int, theta: float) -> float:
    """Normal-approximation corroboration of one theta (missing data).

    The estimated bounds (lower, lower + width) are treated as bivariate
    normal with the multinomial moments; the coverage probability is the
    integral over lower-bound values a <= theta of the normal density
    times the conditional probability that the width reaches theta - a.
    Adaptive quadrature, absolute tolerance well below 1e-6.
    """
    if not isinstance(psi, PsiMissing):
        raise ValidationError("the normal approximation applies to the missing-data setting only")
    if not 0.0 <= theta <= 1.0:
        raise ValidationError(f"theta = {theta} is not in [0, 1]")
    mu_a, mu_b, var_a, cov, cond_var = _normal_params(psi, n)
    sd_a = math.sqrt(var_a)
    slope = cov / var_a
    lo = mu_a - _TAIL_SIGMAS * sd_a
    hi = mu_a + _TAIL_SIGMAS * sd_a
    up = min(theta, hi)
    if up <= lo:
        return 0.0
    if cond_var <= 0.0:
        # width degenerates to 1 - lower: coverage reduces to Pr(lower <= theta)
        return float(ndtr((up - mu_a) / sd_a) - ndtr((lo - mu_a) / sd_a))
    sd_cond = math.sqrt(cond_var)

    def integrand(a: float) -> float:
        z = (a - mu_a) / sd_a
        density = math.exp(-0.5 * z * z) / (sd_a * math.sqrt(2.0 * math.pi))
        mu_cond = mu_b + slope * (a - mu_a)
        return density * ndtr((mu_cond - (theta - a)) / sd_cond)

    value, _ = integrate.quad(integrand, lo, up, epsabs=1e-9, epsrel=1e-10, limit=200)
    return float(min(max(value, 0.0), 1.0))


def corroboration_normal_curve(psi: PsiMissing, n: int, grid: np.ndarray | None = None) -> CorroborationCurve:
    """Normal-approximation corroboration over a whole grid.

    Same integral as ``corroboration_normal``, evaluated with
    ``_GL_PANELS`` Gauss-Legendre panels per grid point so the grid
    vectorizes; the integrand is analytic on each panel because the
    membership kink at a = theta is the upper integration limit.
    """
    if grid is None:
        grid = default_grid()
    grid = np.asarray(grid, dtype=float)
    mu_a, mu_b, var_a, cov, cond_var = _normal_params(psi, n)
    sd_a = math.sqrt(var_a)
    slope = cov / var_a
    lo = mu_a - _TAIL_SIGMAS * sd_a
    hi = mu_a + _TAIL_SIGMAS * sd_a
    upper_limits = np.minimum(grid, hi)
    values = np.zeros_like(grid)
    active = upper_limits > lo
    if active.any():
        if cond_var <= 0.0:
            values[active] = ndtr((upper_limits[active] - mu_a) / sd_a) - ndtr(
                (lo - mu_a) / sd_a
            )
        else:
            sd_cond = math.sqrt(cond_var)
            width = upper_limits[active] - lo
            edges = lo + width[:, None] * np.linspace(0.0, 1.0, _GL_PANELS + 1)[None, :]
            half = 0.5 * (edges[:, 1:] - edges[:, :-1])
            mid = 0.5 * (edges[:, 1:] + edges[:, :-1])
            a = mid[:, :, None] + half[:, :, None] * _GL_NODES[None, None, :]
            weights = half[:, :, None] * _GL_WEIGHTS[None, None, :]
            z = (a - mu_a) / sd_a
            density = np.exp(-0.5 * z * z) / (sd_a * math.sqrt(2.0 * math.pi))
            mu_cond = mu_b + slope * (a - mu_a)
            theta_col = grid[active][:, None, None]
            survival = ndtr((mu_cond - (theta_col - a)) / sd_cond)
            values[active] = (weights * density * survival).sum(axis=(1, 2))
    values = np.clip(values, 0.0, 1.0)
    return CorroborationCurve(
        grid=grid, values=values, method="normal", psi_at=psi, sizes=n,
    )


def asymptotic_corroboration(psi: Psi, theta: float) -> float | None:
    """Large-sample limit of the actual corroboration at psi.

    Returns 0 outside the identification region, 1 on its open interior,
    and the boundary constants of the two settings at the endpoints;
    ``None`` where no limit is defined (boundary cases with a degenerate
    region, a missing-data lower endpoint at 0, or an upper endpoint at 1).
    """
    if not 0.0 <= theta <= 1.0:
        raise ValidationError(f"theta = {theta} is not in [0, 1]")
    region = theta_interval(psi)
    if not region.contains(theta):
        return 0.0
    if region.strictly_inside(theta):
        return 1.0
    if region.width == 0.0:
        return None
    if isinstance(psi, PsiMissing):
        if theta == region.lower:
            return 0.5 if region.lower > 0.0 else None
        return 0.5 if region.upper < 1.0 else None
    if theta == region.lower:
        return 0.5 if psi.l1p + psi.lp1 >= 1.0 else 1.0
    return 0.5 if psi.l1p != psi.lp1 else 0.25


def _hull(curve: CorroborationCurve, qualifying: np.ndarray) -> ThetaInterval:
    idx = np.nonzero(qualifying)[0]
    return ThetaInterval(float(curve.grid[idx[0]]), float(curve.grid[idx[-1]]))


def max_corroboration_set(curve: CorroborationCurve, h: float = 0.0) -> LevelSet:
    """Grid points within offset h of the curve maximum, as one interval.

    h = 0 gives the maximum corroboration set (the hardest-to-refute
    values); larger h relaxes it.
    """
    if h < 0.0:
        raise ValidationError(f"offset h = {h} must be nonnegative")
    threshold = float(np.max(curve.values)) - h - curve.tie_epsilon
    return LevelSet(
        interval=_hull(curve, curve.values >= threshold),
        level=h,
        kind="max_set" if h == 0.0 else "h_offset",
    )


def level_set(curve: CorroborationCurve, alpha: float) -> LevelSet:
    """Grid points with corroboration at least alpha, as one interval.

    The threshold here is the caller's alpha itself (with a float-noise
    guard only): relaxing by the lattice tie step would let values
    strictly below alpha qualify, e.g. zero-valued points as alpha
    approaches 0.
    """
    if not 0.0 < alpha <= 1.0:
        raise ValidationError(f"level alpha = {alpha} must be in (0, 1]")
    qualifying = curve.values >= alpha - 1e-12
    if not qualifying.any():
        raise EmptyLevelSet(f"no grid point reaches corroboration {alpha}")
    return LevelSet(interval=_hull(curve, qualifying), level=alpha, kind="alpha_level")
