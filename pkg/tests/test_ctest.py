import numpy as np
import pytest

import minfer as m


class TestRunningExample:
    def test_reject_below_region(self, trial):
        result = m.corroboration_test(trial, 0.2, method="normal")
        assert result.T == 0
        assert result.decision == "reject_HA"
        assert result.observed_power == pytest.approx(0.982, abs=2e-3)
        assert result.quadrant == "support H_B"

    def test_reject_above_region(self, trial):
        result = m.corroboration_test(trial, 0.6, method="normal")
        assert result.T == 0
        assert result.decision == "reject_HA"
        assert result.observed_power == pytest.approx(0.972, abs=2e-3)

    def test_interior_not_rejected(self, trial):
        result = m.corroboration_test(trial, 0.4, method="normal")
        assert result.T == 1
        assert result.decision == "not_reject"
        assert result.observed_power == pytest.approx(0.015, abs=5e-3)
        assert result.quadrant == "support H_A"

    def test_bootstrap_method(self, trial):
        result = m.corroboration_test(trial, 0.2, method="bootstrap", B=5000, master_seed=1)
        assert result.T == 0
        assert result.observed_power == pytest.approx(0.98, abs=0.02)

    def test_matched_defaults_to_bootstrap(self):
        data = m.MatchedTable(10, 100, 90, 100)
        result = m.corroboration_test(data, 0.5, B=1000, master_seed=2)
        assert result.T == 0
        assert result.observed_power > 0.9


class TestInvariants:
    def test_power_complements_corroboration(self, trial):
        for theta in (0.1, 0.3, 0.45, 0.62, 0.9):
            result = m.corroboration_test(trial, theta, method="normal")
            assert result.observed_power == 1.0 - result.observed_corroboration

    def test_monotone_power_away_from_maximizer(self, trial):
        grid = np.round(np.arange(0.05, 0.951, 0.05), 10)
        powers = np.array(
            [m.corroboration_test(trial, float(t), method="normal").observed_power for t in grid]
        )
        best = int(np.argmin(powers))
        assert np.all(np.diff(powers[: best + 1]) <= 1e-6)
        assert np.all(np.diff(powers[best:]) >= -1e-6)

    def test_boundary_is_indeterminate(self, trial):
        region = m.ml_region(trial)
        result = m.corroboration_test(trial, region.lower, method="normal")
        assert result.T == "boundary"
        assert result.decision == "indeterminate"
        assert result.quadrant == "indeterminate"

    def test_out_of_domain(self, trial):
        with pytest.raises(m.ThetaOutOfDomain):
            m.corroboration_test(trial, 1.2)

    def test_json_payload_shape(self, trial):
        payload = m.corroboration_test(trial, 0.2, method="normal").to_dict()
        assert set(payload) == {
            "theta_star", "T", "observed_corroboration", "observed_power",
            "decision", "quadrant",
        }


class TestChernoffConsistency:
    PSI0 = m.PsiMissing(0.3, 0.5, 0.2)

    def test_interior_rejection_vanishes(self):
        rates = m.chernoff_consistency_check(
            self.PSI0, 0.4, n_schedule=[100, 1000, 10_000, 100_000], reps=500, master_seed=3
        )
        values = [rate for _, rate in rates]
        assert all(a >= b for a, b in zip(values, values[1:]))
        assert values[-1] <= 0.01

    def test_exterior_rejection_saturates(self):
        rates = m.chernoff_consistency_check(
            self.PSI0, 0.9, n_schedule=[100, 1000, 10_000, 100_000], reps=500, master_seed=4
        )
        values = [rate for _, rate in rates]
        assert all(a <= b for a, b in zip(values, values[1:]))
        assert values[-1] >= 0.99

    def test_matched_setting(self):
        rates = m.chernoff_consistency_check(
            m.PsiMatched(0.3, 0.3), 0.15, n_schedule=[100, 10_000], reps=400, master_seed=5
        )
        assert rates[-1][1] <= 0.01

    def test_boundary_theta_rejected(self):
        with pytest.raises(m.BoundaryTheta):
            m.chernoff_consistency_check(self.PSI0, 0.3, n_schedule=[100], reps=10)
        with pytest.raises(m.BoundaryTheta):
            m.chernoff_consistency_check(self.PSI0, 0.5, n_schedule=[100], reps=10)

    def test_bad_inputs(self):
        with pytest.raises(m.ThetaOutOfDomain):
            m.chernoff_consistency_check(self.PSI0, 1.5, n_schedule=[10], reps=10)
        with pytest.raises(m.ValidationError):
            m.chernoff_consistency_check(self.PSI0, 0.4, n_schedule=[0], reps=10)
        with pytest.raises(m.ValidationError):
            m.chernoff_consistency_check(self.PSI0, 0.4, n_schedule=[10], reps=0)
