# Model
DEFAULT_ALPHA = 1.3
DEFAULT_C = 1.0
DEFAULT_Q = 1
DEFAULT_CUBIC_EPSILON = 1.0

# Discretization
DEFAULT_GRID_EXTENT = 12.0
DEFAULT_GRID_POINTS = 1200
DEFAULT_TRUNC_N = 10
DEFAULT_DERIVATIVE_MODE = "analytic"
DEFAULT_EIGEN_BACKEND = "lapack"
DEFAULT_DUAL = "span"

# Suites
DEFAULT_RIESZ_SIZES = (4, 8, 12, 16)
DEFAULT_SPECTRUM_LEVELS = 5
DEFAULT_PARTNER_LEVELS = 4
DEFAULT_TEST_FUNCTION_COUNT = 5
HERMITIAN_LIMIT_ALPHA = 0.5
HERMITIAN_LIMIT_LEVELS = 10
C_INDEPENDENCE_VALUES = (0.5, 1.0, 2.0)

# Output
DEFAULT_OUTPUT_FORMAT = "json"
DEFAULT_OUTPUT_DIR = "reports"
REPORT_SIGNIFICANT_DIGITS = 15

SUITE_ORDER = ("spectrum", "biortho", "ladder", "metric", "susy", "algebra", "cubic")

EPSILON_INDEXING_NOTE = (
    "epsilon indexing corrected: eps_n = c5(n-1, gamma)^2 = 16 n (n + gamma) "
    "is used instead of the printed eps_n = c5(n+1, gamma)^2, which gives eps_0 != 0"
)
