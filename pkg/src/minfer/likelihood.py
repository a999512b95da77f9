"""Profile likelihood of theta for the missing-data setting.

The observed-data log likelihood is
``n11*log(l11) + n01*log(l01) + n_plus0*log(l_plus0)`` over the simplex.
Profiling theta means maximizing subject to ``l11 <= theta <= l11 + l_plus0``.
The maximizer has three regimes:

* ``theta`` below the cell proportion ``n11/n``: the lower constraint is
  active, ``l11 = theta``, and the remaining mass ``1 - theta`` is split
  across (l01, l_plus0) proportional to (n01, n_plus0);
* ``theta`` inside ``[n11/n, (n11 + n_plus0)/n]``: the unconstrained MLE is
  feasible, so the profile is flat at the full-likelihood maximum;
* ``theta`` above: the upper constraint is active, ``l01 = 1 - theta``, and
  the mass ``theta`` is split across (l11, l_plus0) proportional to
  (n11, n_plus0).

``profile_oracle`` re-solves the same constrained maximization numerically
(coarse grid over the feasible simplex slice plus local polish) and exists
solely to cross-check the closed form.

Everything is computed in log space: simulated counts reach 1e6 and the
likelihood product would underflow. Convention: a zero count contributes
zero regardless of its cell probability; a positive count on a zero
probability gives -inf.

The point-identifying benchmark ``mcar_log_lik`` is the binomial likelihood
``n11*log(theta) + n01*log(1 - theta)`` obtained when response is
independent of the outcome; it ignores n_plus0 entirely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ThetaOutOfDomain, ValidationError
from .model import MissingTable


@dataclass(frozen=True)
class LikelihoodPoint:
    """One grid evaluation of a likelihood: raw log value and the version
    standardized so the best point on the grid scores 1."""

    theta: float
    log_lik: float
    standardized: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.standardized <= 1.0:
            raise ValidationError(
                f"standardized likelihood {self.standardized} is not in [0, 1]"
            )


def _check_theta(theta: float) -> None:
    if not 0.0 <= theta <= 1.0:
        raise ThetaOutOfDomain(f"theta = {theta} is not in [0, 1]")


def _cell_term(count: int, prob: float) -> float:
    if count == 0:
        return 0.0
    if prob <= 0.0:
        return -math.inf
    return count * math.log(prob)


def _log_lik(data: MissingTable, l11: float, l01: float, l_plus0: float) -> float:
    return (
        _cell_term(data.n11, l11)
        + _cell_term(data.n01, l01)
        + _cell_term(data.n_plus0, l_plus0)
    )


def profile_log_lik(data: MissingTable, theta: float) -> float:
    """Log profile likelihood of theta (closed form, up to the constant
    multinomial coefficient)."""
    _check_theta(theta)
    n = data.n
    l11_hat = data.n11 / n
    upper_hat = (data.n11 + data.n_plus0) / n

    if theta < l11_hat:
        rest = data.n01 + data.n_plus0
        l11 = theta
        if rest > 0:
            l01 = (1.0 - theta) * data.n01 / rest
            l_plus0 = (1.0 - theta) * data.n_plus0 / rest
        else:
            l01, l_plus0 = 0.0, 1.0 - theta
    elif theta > upper_hat:
        top = data.n11 + data.n_plus0
        l01 = 1.0 - theta
        if top > 0:
            l11 = theta * data.n11 / top
            l_plus0 = theta * data.n_plus0 / top
        else:
            l11, l_plus0 = theta, 0.0
    else:
        l11, l01, l_plus0 = l11_hat, data.n01 / n, data.n_plus0 / n
    return _log_lik(data, l11, l01, l_plus0)


def _grid_log_lik(data: MissingTable, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    # log likelihood in bound coordinates: l11 = u, l_plus0 = v - u,
    # l01 = 1 - v; -inf where a positive count meets a zero probability
    ll = np.zeros(np.broadcast(u, v).shape)
    with np.errstate(divide="ignore", invalid="ignore"):
        for count, p in ((data.n11, u), (data.n01, 1.0 - v), (data.n_plus0, v - u)):
            if count > 0:
                ll = ll + np.where(p > 0.0, count * np.log(np.maximum(p, 1e-300)), -np.inf)
    return ll


def profile_oracle(data: MissingTable, theta: float, points: int = 81, rounds: int = 5) -> float:
    """Numerically maximize the constrained log likelihood; verification
    oracle for ``profile_log_lik``, independent of the branch formulas.

    Works in bound coordinates (u, v) = (l11, l11 + l_plus0), where the
    constraint set {l11 <= theta <= l11 + l_plus0 <= 1} is the rectangle
    [0, theta] x [theta, 1] and its edges are grid-aligned. Scans a grid,
    then repeatedly zooms it around the incumbent; five rounds drive the
    parameter resolution below 1e-7, comfortably past the 1e-6 target in
    log likelihood.
    """
    _check_theta(theta)

    u_lo, u_hi = 0.0, theta
    v_lo, v_hi = theta, 1.0
    best_val = -math.inf
    for _ in range(rounds):
        u_axis = np.linspace(u_lo, u_hi, points)
        v_axis = np.linspace(v_lo, v_hi, points)
        u, v = np.meshgrid(u_axis, v_axis, indexing="ij")
        ll = _grid_log_lik(data, u, v)
        idx = np.unravel_index(np.argmax(ll), ll.shape)
        if not math.isfinite(float(ll[idx])):
            return -math.inf
        if float(ll[idx]) > best_val:
            best_val = float(ll[idx])
            best_u, best_v = float(u[idx]), float(v[idx])
        # shrink the box to two old grid steps around the incumbent
        step_u = (u_hi - u_lo) / (points - 1)
        step_v = (v_hi - v_lo) / (points - 1)
        u_lo = max(0.0, best_u - 2.0 * step_u)
        u_hi = min(theta, best_u + 2.0 * step_u)
        v_lo = max(theta, best_v - 2.0 * step_v)
        v_hi = min(1.0, best_v + 2.0 * step_v)
    return best_val


def mcar_log_lik(data: MissingTable, theta: float) -> float:
    """Binomial log likelihood under outcome-independent response."""
    _check_theta(theta)
    return _cell_term(data.n11, theta) + _cell_term(data.n01, 1.0 - theta)


def profile_lr(data: MissingTable, theta_star: float, theta_ref: float) -> float:
    """Profile likelihood ratio of theta_star against theta_ref."""
    return math.exp(profile_log_lik(data, theta_star) - profile_log_lik(data, theta_ref))


def standardize(log_liks: np.ndarray) -> np.ndarray:
    """Rescale log likelihoods on a grid so the maximum becomes 1."""
    log_liks = np.asarray(log_liks, dtype=float)
    peak = np.max(log_liks)
    if not np.isfinite(peak):
        return np.zeros_like(log_liks)
    return np.exp(log_liks - peak)


def profile_curve(data: MissingTable, grid: np.ndarray) -> np.ndarray:
    """Standardized profile likelihood over a theta grid (peak value 1)."""
    values = np.array([profile_log_lik(data, float(t)) for t in grid])
    return standardize(values)


def mcar_curve(data: MissingTable, grid: np.ndarray) -> np.ndarray:
    """Standardized benchmark likelihood over a theta grid (peak value 1)."""
    values = np.array([mcar_log_lik(data, float(t)) for t in grid])
    return standardize(values)


def _points(grid: np.ndarray, log_liks: np.ndarray) -> list[LikelihoodPoint]:
    std = standardize(log_liks)
    return [
        LikelihoodPoint(float(t), float(ll), float(s))
        for t, ll, s in zip(grid, log_liks, std)
    ]


def profile_points(data: MissingTable, grid: np.ndarray) -> list[LikelihoodPoint]:
    """Profile likelihood over a grid as (theta, log_lik, standardized)."""
    return _points(grid, np.array([profile_log_lik(data, float(t)) for t in grid]))


def mcar_points(data: MissingTable, grid: np.ndarray) -> list[LikelihoodPoint]:
    """Benchmark likelihood over a grid as (theta, log_lik, standardized)."""
    return _points(grid, np.array([mcar_log_lik(data, float(t)) for t in grid]))
