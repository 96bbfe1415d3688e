import os

import pytest

from quotavia import EconParams, Recruitment, ViabilityBounds

SCENARIO_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "scenarios")


@pytest.fixture(scope="session")
def symmetric_params():
    return EconParams(alpha_1=1.0, alpha_2=1.0, beta_1=1.0, beta_2=1.0,
                      kappa_1=1.0, kappa_2=1.0, price=2.0)


@pytest.fixture(scope="session")
def logistic():
    return Recruitment(growth=1.0, capacity=2.0)


@pytest.fixture(scope="session")
def floors():
    return ViabilityBounds(stock_floor=1.0, harvest_floor=0.4)


@pytest.fixture(scope="session")
def canonical_scenario_path():
    return os.path.join(SCENARIO_DIR, "canonical.ini")


@pytest.fixture(scope="session")
def crisis_scenario_path():
    return os.path.join(SCENARIO_DIR, "crisis.ini")
