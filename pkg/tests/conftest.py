import pytest

from wresidue.boundary import assemble_boundary
from wresidue.reference import build_model, load_suite
from wresidue.verifier import run


def _assembled(model, name):
    suite = load_suite(name, model)
    return assemble_boundary(suite.pside, suite.qside, suite.name, suite.labels,
                             model.pi, model.omega3)


@pytest.fixture(scope="session")
def model():
    return build_model()


@pytest.fixture(scope="session")
def d2d2(model):
    return _assembled(model, "boundary-d2d2")


@pytest.fixture(scope="session")
def d1d3(model):
    return _assembled(model, "boundary-d1d3")


@pytest.fixture(scope="session")
def cli_runs():
    """Two independent full runs, for determinism and report-content checks."""
    return run(("all",)), run(("all",))
