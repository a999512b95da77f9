"""Assurance of relaxed maximum corroboration sets via double bootstrap.

The assurance of an estimated set is the probability that all of its
points are genuinely irrefutable, i.e. that the set lands entirely inside
the identification region. Confidence regions for the region contract
toward it from outside; a high-assurance set grows toward it from inside.

``assurance_sweep`` runs the double bootstrap once and evaluates every
requested offset h on the shared replicates:

1. draw replicate table b from the observed-data law at the MLE of
   ``data`` (stream spawned from (master_seed, b));
2. compute the replicate's corroboration curve at its own MLE on the same
   theta grid (inner method: normal quadrature or a nested bootstrap
   consuming the replicate's stream), and extract the interval of points
   within h of the curve maximum, [L_b, U_b];
3. set delta_b = 1 exactly when Lhat <= L_b < U_b <= Uhat, where
   [Lhat, Uhat] is the plug-in region of the observed data.

The report aggregates tau_hat = mean(delta_b), L_bar = mean(L_b), and
U_bar = mean(U_b). The middle inequality in step 3 is deliberately
strict, so a replicate whose offset-h set collapses to a single grid
point contributes delta_b = 0; such replicates are tallied in
``singleton_count`` because smooth inner curves at h = 0 produce them
every time and the tally is the honest signal of that regime.

Outer replicates are independent; ``threads`` caps a worker pool that
fills per-replicate slots by index, so results are identical for any
thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import IO, Sequence

import numpy as np

from .corroborate import (
    Sizes,
    bounds_batch_from_rng,
    coverage_share,
    default_grid,
    NORMAL_TIE_EPS,
    bounds_batch_streams,
    corroboration_normal_curve,
)
from .errors import DegenerateVariance, NoQualifyingH, ValidationError
from .identify import ml_region
from .model import MissingTable, ObservedTable, PsiMatched, PsiMissing, mle_psi
from .sampling import ReplicateStream, missing_pvals

DEFAULT_INNER_B = 1000


@dataclass(frozen=True)
class AssuranceReport:
    """Double-bootstrap assurance estimate for one offset h.

    ``h is None`` marks the variant where the plug-in region itself plays
    the role of the estimated set (inner_method "ml_region").
    """

    h: float | None
    tau_hat: float
    L_bar: float
    U_bar: float
    B_outer: int
    inner_method: str  # "normal" | "bootstrap" | "ml_region"
    inner_B: int | None
    master_seed: int
    singleton_count: int
    fallback_count: int

    def __post_init__(self) -> None:
        if not 0.0 <= self.tau_hat <= 1.0:
            raise ValidationError(f"tau_hat = {self.tau_hat} is not in [0, 1]")
        if not 0.0 <= self.L_bar <= self.U_bar <= 1.0:
            raise ValidationError(
                f"expected endpoints [{self.L_bar}, {self.U_bar}] are not ordered in [0, 1]"
            )

    def to_dict(self) -> dict:
        return asdict(self)


def _default_inner_method(data: ObservedTable) -> str:
    # the normal approximation exists only for the missing-data law
    return "normal" if isinstance(data, MissingTable) else "bootstrap"


def _replicate_psi_and_rng(data: ObservedTable, psi_hat, master_seed: int, b: int):
    rng = ReplicateStream(master_seed, b).rng()
    if isinstance(data, MissingTable):
        n = data.n
        c11, c01, c0 = rng.multinomial(n, missing_pvals(psi_hat))
        return PsiMissing(c11 / n, c01 / n, c0 / n), rng
    nx = rng.binomial(data.n1, psi_hat.l1p)
    ny = rng.binomial(data.n2, psi_hat.lp1)
    return PsiMatched(nx / data.n1, ny / data.n2), rng


def assurance_sweep(
    data: ObservedTable,
    h_list: Sequence[float],
    B_outer: int = 5000,
    inner_method: str | None = None,
    inner_B: int = DEFAULT_INNER_B,
    master_seed: int = 0,
    grid: np.ndarray | None = None,
    threads: int = 1,
) -> list[AssuranceReport]:
    """Assurance reports for several offsets h from one shared outer
    bootstrap (common random numbers across the h values)."""
    hs = [float(h) for h in h_list]
    if not hs:
        raise ValidationError("h_list must be nonempty")
    for h in hs:
        if not 0.0 <= h < 1.0:
            raise ValidationError(f"offset h = {h} must lie in [0, 1)")
    if B_outer < 1:
        raise ValidationError(f"B_outer = {B_outer} must be at least 1")
    if inner_method is None:
        inner_method = _default_inner_method(data)
    if inner_method not in ("normal", "bootstrap"):
        raise ValidationError(f"unknown inner method {inner_method!r}")
    if inner_method == "normal" and not isinstance(data, MissingTable):
        raise ValidationError("the normal inner method applies to missing-data inputs only")
    if inner_B < 1:
        raise ValidationError(f"inner_B = {inner_B} must be at least 1")
    if grid is None:
        grid = default_grid()
    grid = np.asarray(grid, dtype=float)

    psi_hat = mle_psi(data)
    sizes: Sizes = data.n if isinstance(data, MissingTable) else (data.n1, data.n2)
    region_hat = ml_region(data)

    n_h = len(hs)
    lower = np.empty((n_h, B_outer))
    upper = np.empty((n_h, B_outer))
    fallbacks = np.zeros(B_outer, dtype=bool)
    h_arr = np.asarray(hs)

    def run_replicate(b: int) -> None:
        psi_b, rng = _replicate_psi_and_rng(data, psi_hat, master_seed, b)
        tie = NORMAL_TIE_EPS
        values = None
        if inner_method == "normal":
            try:
                values = corroboration_normal_curve(psi_b, int(sizes), grid).values
            except DegenerateVariance:
                fallbacks[b] = True
        if values is None:
            lo_b, up_b = bounds_batch_from_rng(psi_b, sizes, inner_B, rng)
            values = coverage_share(lo_b, up_b, grid)
            tie = 0.5 / inner_B
        thresholds = values.max() - h_arr - tie
        for i in range(n_h):
            idx = np.nonzero(values >= thresholds[i])[0]
            lower[i, b] = grid[idx[0]]
            upper[i, b] = grid[idx[-1]]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run_replicate, range(B_outer)))
    else:
        for b in range(B_outer):
            run_replicate(b)

    reports = []
    for i, h in enumerate(hs):
        lo, up = lower[i], upper[i]
        singles = int(np.count_nonzero(lo == up))
        delta = (region_hat.lower <= lo) & (lo < up) & (up <= region_hat.upper)
        reports.append(
            AssuranceReport(
                h=h,
                tau_hat=float(np.count_nonzero(delta) / B_outer),
                L_bar=float(np.sum(lo) / B_outer),
                U_bar=float(np.sum(up) / B_outer),
                B_outer=B_outer,
                inner_method=inner_method,
                inner_B=inner_B if inner_method == "bootstrap" or fallbacks.any() else None,
                master_seed=master_seed,
                singleton_count=singles,
                fallback_count=int(np.count_nonzero(fallbacks)),
            )
        )
    return reports


def assurance_bootstrap(
    data: ObservedTable,
    h: float,
    B_outer: int = 5000,
    inner_method: str | None = None,
    inner_B: int = DEFAULT_INNER_B,
    master_seed: int = 0,
    grid: np.ndarray | None = None,
    threads: int = 1,
) -> AssuranceReport:
    """Double-bootstrap assurance of the offset-h set; see module docs."""
    return assurance_sweep(
        data, [h], B_outer=B_outer, inner_method=inner_method,
        inner_B=inner_B, master_seed=master_seed, grid=grid, threads=threads,
    )[0]


def assurance_of_ml_region(
    data: ObservedTable,
    B_outer: int = 5000,
    master_seed: int = 0,
) -> AssuranceReport:
    """Assurance of the plug-in region itself: each replicate's set is its
    own plug-in region, no inner curve involved."""
    if B_outer < 1:
        raise ValidationError(f"B_outer = {B_outer} must be at least 1")
    psi_hat = mle_psi(data)
    sizes: Sizes = data.n if isinstance(data, MissingTable) else (data.n1, data.n2)
    region_hat = ml_region(data)
    lo, up = bounds_batch_streams(psi_hat, sizes, B_outer, master_seed)
    delta = (region_hat.lower <= lo) & (lo < up) & (up <= region_hat.upper)
    return AssuranceReport(
        h=None,
        tau_hat=float(np.count_nonzero(delta) / B_outer),
        L_bar=float(np.sum(lo) / B_outer),
        U_bar=float(np.sum(up) / B_outer),
        B_outer=B_outer,
        inner_method="ml_region",
        inner_B=None,
        master_seed=master_seed,
        singleton_count=int(np.count_nonzero(lo == up)),
        fallback_count=0,
    )


def select_h(
    data: ObservedTable,
    tau_min: float,
    candidates: Sequence[float],
    **sweep_kwargs,
) -> tuple[float, AssuranceReport]:
    """Largest candidate offset whose assurance still reaches tau_min.

    Candidates must be sorted ascending. Raises NoQualifyingH when even
    the smallest offset falls short.
    """
    cands = [float(h) for h in candidates]
    if not cands:
        raise ValidationError("candidate list must be nonempty")
    if any(a > b for a, b in zip(cands, cands[1:])):
        raise ValidationError("candidates must be sorted ascending")
    reports = assurance_sweep(data, cands, **sweep_kwargs)
    for report in reversed(reports):
        if report.tau_hat >= tau_min:
            return report.h, report  # type: ignore[return-value]
    raise NoQualifyingH(
        f"no candidate h reaches assurance {tau_min}; "
        f"best is {max(r.tau_hat for r in reports):.4f}"
    )


def reports_to_csv(reports: Sequence[AssuranceReport], destination: str | IO[str]) -> None:
    """Write ``h,tau,L_bar,U_bar`` rows with 6 decimal places."""
    if isinstance(destination, str):
        with open(destination, "w", encoding="utf-8", newline="\n") as handle:
            reports_to_csv(reports, handle)
        return
    destination.write("h,tau,L_bar,U_bar\n")
    for r in reports:
        h_text = "" if r.h is None else f"{r.h:.6f}"
        destination.write(f"{h_text},{r.tau_hat:.6f},{r.L_bar:.6f},{r.U_bar:.6f}\n")
