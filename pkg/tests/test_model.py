import pytest

import minfer as m


class TestValidate:
    def test_trial_counts(self):
        table = m.validate([32, 54, 24], "missing")
        assert table == m.MissingTable(32, 54, 24)
        assert table.n == 110

    def test_boundary_table_is_valid(self):
        table = m.validate([0, 0, 1], "missing")
        assert table == m.MissingTable(0, 0, 1)

    def test_matched_counts(self):
        table = m.validate([100, 1000, 450, 500], "matched")
        assert table == m.MatchedTable(nx=100, n1=1000, ny=450, n2=500)

    def test_margin_exceeding_size_rejected(self):
        with pytest.raises(m.InconsistentTotals):
            m.validate([5, 3, 2, 4], "matched")
        with pytest.raises(m.InconsistentTotals):
            m.validate([1, 3, 5, 4], "matched")

    def test_negative_count_rejected(self):
        with pytest.raises(m.NegativeCount):
            m.validate([-1, 5, 5], "missing")
        with pytest.raises(m.NegativeCount):
            m.validate([1, 5, -2, 5], "matched")

    def test_empty_sample_rejected(self):
        with pytest.raises(m.EmptySample):
            m.validate([0, 0, 0], "missing")
        with pytest.raises(m.EmptySample):
            m.validate([0, 0, 0, 5], "matched")

    def test_wrong_length_rejected(self):
        with pytest.raises(m.ValidationError):
            m.validate([1, 2], "missing")
        with pytest.raises(m.ValidationError):
            m.validate([1, 2, 3], "matched")

    def test_unknown_setting_rejected(self):
        with pytest.raises(m.ValidationError):
            m.validate([1, 2, 3], "stratified")

    def test_non_integer_rejected(self):
        with pytest.raises(m.ValidationError):
            m.validate([1.5, 2, 3], "missing")


class TestMlePsi:
    def test_trial(self):
        psi = m.mle_psi(m.MissingTable(32, 54, 24))
        assert psi == m.PsiMissing(32 / 110, 54 / 110, 24 / 110)

    def test_matched_proportions(self):
        psi = m.mle_psi(m.MatchedTable(nx=100, n1=1000, ny=450, n2=500))
        assert psi == m.PsiMatched(0.1, 0.9)

    def test_degenerate_corner(self):
        psi = m.mle_psi(m.MissingTable(0, 0, 10))
        assert psi == m.PsiMissing(0.0, 0.0, 1.0)

    def test_round_trip_on_integral_expected_counts(self, rng):
        # psi -> expected counts n*psi -> mle recovers psi exactly
        for _ in range(200):
            counts = rng.integers(1, 50, size=3)
            n = int(counts.sum())
            psi = m.PsiMissing(*(int(c) / n for c in counts))
            scale = int(rng.integers(1, 5))
            table = m.MissingTable(*(int(c) * scale for c in counts))
            assert m.mle_psi(table) == psi

    def test_output_respects_simplex(self, rng):
        for _ in range(200):
            counts = [int(c) for c in rng.integers(0, 30, size=3)]
            if sum(counts) == 0:
                continue
            psi = m.mle_psi(m.MissingTable(*counts))
            assert 0.0 <= min(psi.l11, psi.l01, psi.l_plus0)
            assert abs(psi.l11 + psi.l01 + psi.l_plus0 - 1.0) <= 1e-12


class TestPsiInvariants:
    def test_simplex_violation_rejected(self):
        with pytest.raises(m.ValidationError):
            m.PsiMissing(0.5, 0.5, 0.5)

    def test_component_out_of_range_rejected(self):
        with pytest.raises(m.ValidationError):
            m.PsiMissing(1.2, -0.2, 0.0)
        with pytest.raises(m.ValidationError):
            m.PsiMatched(1.01, 0.5)

    def test_matched_components_are_free(self):
        m.PsiMatched(1.0, 0.0)
        m.PsiMatched(0.3, 0.3)
