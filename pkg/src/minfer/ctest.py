"""The corroboration test.

Null: theta_star lies strictly inside the identification region.
Alternative: theta_star lies outside it. Both hypotheses induce exactly
the same family of observed-data laws, so likelihood-ratio testing has no
traction; the test statistic is instead membership of theta_star in the
plug-in region: T = 1 strictly inside, T = 0 outside the closed region,
and a third "boundary" outcome when theta_star sits exactly on an
endpoint, where the rule is undefined. The null is rejected when T = 0,
and the result is reported with its observed power, one minus the
observed corroboration of theta_star.

No Type-I error rate is reported: the corroboration of theta_star is the
same under either hypothesis, so it can estimate only the Type-II side.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Sequence, Union

import numpy as np

from .corroborate import Sizes, bounds_batch_streams, corroboration_bootstrap, corroboration_normal
from .errors import BoundaryTheta, ThetaOutOfDomain, ValidationError
from .identify import ml_region, theta_interval
from .model import MissingTable, ObservedTable, Psi, PsiMissing, mle_psi
from .sampling import derive_seed

QUADRANT_HA = "support H_A"
QUADRANT_HB = "support H_B"
QUADRANT_NEITHER = "support neither, improbable event"
QUADRANT_INDETERMINATE = "indeterminate"

# split between "low" and "high" observed power for the quadrant label
POWER_SPLIT = 0.5


@dataclass(frozen=True)
class TestResult:
    """Outcome of one corroboration test."""

    theta_star: float
    T: Union[int, str]  # 1, 0, or "boundary"
    observed_corroboration: float
    observed_power: float
    decision: str  # "reject_HA" | "not_reject" | "indeterminate"
    quadrant: str

    def to_dict(self) -> dict:
        return asdict(self)


def _observed_corroboration(
    data: ObservedTable, theta_star: float, method: str, B: int, master_seed: int
) -> float:
    psi_hat = mle_psi(data)
    if method == "normal":
        if not isinstance(data, MissingTable):
            raise ValidationError("the normal method applies to missing-data inputs only")
        return corroboration_normal(psi_hat, data.n, theta_star)
    sizes: Sizes = data.n if isinstance(data, MissingTable) else (data.n1, data.n2)
    curve = corroboration_bootstrap(
        psi_hat, sizes, grid=np.array([theta_star]), B=B, master_seed=master_seed
    )
    return float(curve.values[0])


def corroboration_test(
    data: ObservedTable,
    theta_star: float,
    method: str | None = None,
    B: int = 5000,
    master_seed: int = 0,
) -> TestResult:
    """Run the corroboration test of theta_star on the observed data.

    ``method`` picks the observed-corroboration estimator ("normal" or
    "bootstrap"); the default is normal for missing-data inputs and
    bootstrap for matched-data inputs.
    """
    if not 0.0 <= theta_star <= 1.0:
        raise ThetaOutOfDomain(f"theta_star = {theta_star} is not in [0, 1]")
    if method is None:
        method = "normal" if isinstance(data, MissingTable) else "bootstrap"
    if method not in ("normal", "bootstrap"):
        raise ValidationError(f"unknown method {method!r}")

    region = ml_region(data)
    if region.strictly_inside(theta_star):
        T: Union[int, str] = 1
        decision = "not_reject"
    elif not region.contains(theta_star):
        T = 0
        decision = "reject_HA"
    else:
        T = "boundary"
        decision = "indeterminate"

    corroboration = _observed_corroboration(data, theta_star, method, B, master_seed)
    power = 1.0 - corroboration

    if T == 1:
        quadrant = QUADRANT_HA if power <= POWER_SPLIT else QUADRANT_NEITHER
    elif T == 0:
        quadrant = QUADRANT_HB if power > POWER_SPLIT else QUADRANT_NEITHER
    else:
        quadrant = QUADRANT_INDETERMINATE

    return TestResult(
        theta_star=theta_star,
        T=T,
        observed_corroboration=corroboration,
        observed_power=power,
        decision=decision,
        quadrant=quadrant,
    )


def chernoff_consistency_check(
    psi0: Psi,
    theta_star: float,
    n_schedule: Sequence[int],
    reps: int = 2000,
    master_seed: int = 0,
) -> list[tuple[int, float]]:
    """Empirical rejection rates of the test along a sample-size schedule.

    Simulates ``reps`` datasets at psi0 for each n and reports the share
    rejected (theta_star outside the closed replicate region). theta_star
    must be strictly interior or strictly exterior to the identification
    region at psi0; rates then drift to 0 or 1 respectively.
    """
    if not 0.0 <= theta_star <= 1.0:
        raise ThetaOutOfDomain(f"theta_star = {theta_star} is not in [0, 1]")
    if reps < 1:
        raise ValidationError(f"reps = {reps} must be at least 1")
    region0 = theta_interval(psi0)
    if theta_star == region0.lower or theta_star == region0.upper:
        raise BoundaryTheta(
            f"theta_star = {theta_star} sits exactly on an identification bound"
        )
    rates = []
    for i, n in enumerate(n_schedule):
        n = int(n)
        if n < 1:
            raise ValidationError(f"schedule entry n = {n} must be at least 1")
        sizes: Sizes = n if isinstance(psi0, PsiMissing) else (n, n)
        lo, up = bounds_batch_streams(psi0, sizes, reps, derive_seed(master_seed, i))
        rejected = ~((lo <= theta_star) & (theta_star <= up))
        rates.append((n, float(np.count_nonzero(rejected) / reps)))
    return rates
