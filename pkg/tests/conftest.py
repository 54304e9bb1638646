import numpy as np
import pytest

from src.components.contour import make_grid
from src.components.models import build_model_nlpb, epsilon_sequence_from_model
from src.schemas.config import RunConfig
from src.schemas.models import KratzerParams

# Small, well-conditioned settings: c = 0.5 keeps the Gram matrices tame at N <= 8,
# and the uniform grid has h = 0.02 for the finite-difference checks.
TEST_EXTENT = 10.0
TEST_LEVELS = 6


@pytest.fixture(scope="session")
def gl_grid():
    return make_grid(TEST_EXTENT, 1024)


@pytest.fixture(scope="session")
def fd_grid():
    return make_grid(TEST_EXTENT, 1000, scheme="uniform")


@pytest.fixture(scope="session")
def params():
    return KratzerParams(alpha=1.3, c=0.5, q=1)


@pytest.fixture(scope="session")
def eps(params):
    return epsilon_sequence_from_model(params.gamma, TEST_LEVELS + 1)


@pytest.fixture(scope="session")
def span_system(params, gl_grid):
    return build_model_nlpb(params, TEST_LEVELS, gl_grid, dual="span")


@pytest.fixture(scope="session")
def adjoint_system(params, gl_grid):
    return build_model_nlpb(params, TEST_LEVELS, gl_grid, dual="adjoint")


@pytest.fixture
def small_config(tmp_path):
    return RunConfig(
        c=0.5,
        grid_extent=TEST_EXTENT,
        grid_points=1024,
        trunc_n=TEST_LEVELS,
        riesz_sizes=(3, 4, 5, 6),
        spectrum_levels=3,
        partner_levels=3,
        test_function_count=3,
        output_dir=tmp_path,
    )


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240611)
