import numpy as np
import pytest

import minfer as m


@pytest.fixture
def trial() -> m.MissingTable:
    # the running missing-data example: 32 + 54 responders, 24 nonresponders
    return m.validate([32, 54, 24], "missing")


@pytest.fixture
def trial_psi(trial) -> m.PsiMissing:
    return m.mle_psi(trial)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260809)
