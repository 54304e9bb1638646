GL_PANEL_POINTS = 8
MIN_FD_POINTS = 9
MIN_HAMILTONIAN_POINTS = 64
RESIDUAL_FLOOR = 1e-300
GRID_SYMMETRY_TOL = 1e-12
WEIGHT_SUM_TOL = 1e-12
HERMITIAN_INPUT_TOL = 1e-10

JACOBI_MAX_SWEEPS = 50
QR_ITERATIONS_PER_EIGENVALUE = 30
QR_EXCEPTIONAL_SHIFT_PERIOD = 11
NATIVE_EIGEN_DIM_CAP = 2048

# Residual checks skip this many top indices, where raising leaves the span.
TRUNCATION_GUARD = 2

ALPHA_INTEGER_DISTANCE = 1e-6
COLINEARITY_TOL = 1e-6
JET_ORDER = 6

# Closed-form duals must be biorthogonal to this level before span duals replace them.
QUADRATURE_RESOLUTION_TOL = 1e-6
