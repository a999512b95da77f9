"""Data model for the two incomplete 2x2-table settings.

Missing-data setting: a binary outcome X is observed only when the
response indicator R equals 1; the observation is the count triple
(n11, n01, n_plus0) with total n, sampled multinomial(n; l11, l01, l_plus0).

Matched-data setting: two binary variables X and Y are observed in two
independent samples; the observation is (nx out of n1, ny out of n2), with
nx ~ binomial(n1, l1p) and ny ~ binomial(n2, lp1).

Counts are exact integers; estimated probabilities are double precision.
Degenerate tables (zero cells) are accepted here and handled downstream.
All types are immutable and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .errors import EmptySample, InconsistentTotals, NegativeCount, ValidationError

SIMPLEX_TOL = 1e-12


def _coerce_counts(obj: object, names: Sequence[str]) -> None:
    for name in names:
        value = getattr(obj, name)
        if isinstance(value, bool) or value != int(value):
            raise ValidationError(f"{name} must be an integer, got {value!r}")
        if value < 0:
            raise NegativeCount(f"{name} = {value} is negative")
        object.__setattr__(obj, name, int(value))


@dataclass(frozen=True)
class MissingTable:
    """Observed counts (n11, n01, n_plus0) in the missing-data setting."""

    n11: int
    n01: int
    n_plus0: int

    def __post_init__(self) -> None:
        _coerce_counts(self, ("n11", "n01", "n_plus0"))
        if self.n == 0:
            raise EmptySample("total count n must be at least 1")

    @property
    def n(self) -> int:
        return self.n11 + self.n01 + self.n_plus0


@dataclass(frozen=True)
class MatchedTable:
    """Observed margins (nx of n1, ny of n2) in the matched-data setting."""

    nx: int
    n1: int
    ny: int
    n2: int

    def __post_init__(self) -> None:
        _coerce_counts(self, ("nx", "n1", "ny", "n2"))
        if self.n1 == 0 or self.n2 == 0:
            raise EmptySample("sample sizes n1 and n2 must be at least 1")
        if self.nx > self.n1:
            raise InconsistentTotals(f"nx = {self.nx} exceeds n1 = {self.n1}")
        if self.ny > self.n2:
            raise InconsistentTotals(f"ny = {self.ny} exceeds n2 = {self.n2}")


ObservedTable = Union[MissingTable, MatchedTable]


def _check_probability(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValidationError(f"{name} = {value} is not in [0, 1]")


@dataclass(frozen=True)
class PsiMissing:
    """Identifiable parameter (l11, l01, l_plus0) of the missing-data law.

    The three components live on the probability simplex.
    """

    l11: float
    l01: float
    l_plus0: float

    def __post_init__(self) -> None:
        for name in ("l11", "l01", "l_plus0"):
            _check_probability(name, getattr(self, name))
        total = self.l11 + self.l01 + self.l_plus0
        if abs(total - 1.0) > SIMPLEX_TOL:
            raise ValidationError(f"components sum to {total}, not 1")


@dataclass(frozen=True)
class PsiMatched:
    """Identifiable margins (l1p, lp1) of the matched-data law.

    l1p = Pr(X = 1) and lp1 = Pr(Y = 1); each is a free probability.
    """

    l1p: float
    lp1: float

    def __post_init__(self) -> None:
        _check_probability("l1p", self.l1p)
        _check_probability("lp1", self.lp1)


Psi = Union[PsiMissing, PsiMatched]


def validate(raw_counts: Sequence[int], setting: str) -> ObservedTable:
    """Build a validated table from a raw count list.

    ``setting`` is "missing" (3 counts: n11, n01, n_plus0) or "matched"
    (4 counts: nx, n1, ny, n2).
    """
    counts = list(raw_counts)
    if setting == "missing":
        if len(counts) != 3:
            raise ValidationError(
                f"missing-data input needs 3 counts (n11, n01, n_plus0), got {len(counts)}"
            )
        return MissingTable(*counts)
    if setting == "matched":
        if len(counts) != 4:
            raise ValidationError(
                f"matched-data input needs 4 counts (nx, n1, ny, n2), got {len(counts)}"
            )
        return MatchedTable(*counts)
    raise ValidationError(f"unknown setting {setting!r}; expected 'missing' or 'matched'")


def mle_psi(data: ObservedTable) -> Psi:
    """Maximum likelihood estimate of the identifiable parameter.

    Missing: cell proportions (n11/n, n01/n, n_plus0/n). Matched: margin
    proportions (nx/n1, ny/n2). Boundary estimates (zero cells) are
    returned as-is.
    """
    if isinstance(data, MissingTable):
        n = data.n
        return PsiMissing(data.n11 / n, data.n01 / n, data.n_plus0 / n)
    return PsiMatched(data.nx / data.n1, data.ny / data.n2)
