BIORTHOGONALITY_TOL = 1e-8
ORTHONORMALITY_TOL = 1e-8
OPERATOR_RESIDUAL_TOL = 1e-6
FD_RESIDUAL_TOL = 1e-4
SPECTRUM_TOL = 1e-3
REALITY_TOL = 1e-6
EIGEN_RELATION_TOL = 1e-5
IDENTITY_TOL = 1e-12

# One entry per check name a suite can emit; RunConfig overrides merge into this.
DEFAULT_TOLERANCES = {
    "spectrum.levels": SPECTRUM_TOL,
    "spectrum.reality": REALITY_TOL,
    "spectrum.hermitian_limit": SPECTRUM_TOL,
    "spectrum.eigenfunction": OPERATOR_RESIDUAL_TOL,
    "spectrum.dual_eigenfunction": OPERATOR_RESIDUAL_TOL,
    "spectrum.eigenfunction_fd": FD_RESIDUAL_TOL,
    "spectrum.c_independence": OPERATOR_RESIDUAL_TOL,
    "biortho.span_duals": BIORTHOGONALITY_TOL,
    "biortho.adjoint_duals": BIORTHOGONALITY_TOL,
    "biortho.projector_idempotent": BIORTHOGONALITY_TOL,
    "biortho.projector_completeness": BIORTHOGONALITY_TOL,
    "ladder.lowering": OPERATOR_RESIDUAL_TOL,
    "ladder.raising": OPERATOR_RESIDUAL_TOL,
    "ladder.adjoint_raising": OPERATOR_RESIDUAL_TOL,
    "ladder.adjoint_lowering": OPERATOR_RESIDUAL_TOL,
    "ladder.ground_annihilation": OPERATOR_RESIDUAL_TOL,
    "ladder.dual_ground_annihilation": OPERATOR_RESIDUAL_TOL,
    "ladder.eigen_relation": EIGEN_RELATION_TOL,
    "ladder.colinearity": OPERATOR_RESIDUAL_TOL,
    "ladder.energy_identity": IDENTITY_TOL,
    "ladder.coordinates": IDENTITY_TOL,
    "ladder.generation": OPERATOR_RESIDUAL_TOL,
    "ladder.grid_adjoint": OPERATOR_RESIDUAL_TOL,
    "metric.s_eta_maps_phi": OPERATOR_RESIDUAL_TOL,
    "metric.gram_inverse": OPERATOR_RESIDUAL_TOL,
    "metric.intertwining_m": OPERATOR_RESIDUAL_TOL,
    "metric.intertwining_n": OPERATOR_RESIDUAL_TOL,
    "metric.weighted_adjoint": OPERATOR_RESIDUAL_TOL,
    "metric.hermiticity": OPERATOR_RESIDUAL_TOL,
    "metric.orthonormality": ORTHONORMALITY_TOL,
    "metric.hermitized_spectrum": OPERATOR_RESIDUAL_TOL,
    "metric.theta_factorization": OPERATOR_RESIDUAL_TOL,
    "metric.riesz": 0.0,
    "susy.partner_shift": FD_RESIDUAL_TOL,
    "susy.partner_expansion": OPERATOR_RESIDUAL_TOL,
    "susy.ground_annihilation": OPERATOR_RESIDUAL_TOL,
    "algebra.sl2": OPERATOR_RESIDUAL_TOL,
    "algebra.sl2_fd": FD_RESIDUAL_TOL,
    "algebra.composition_order": OPERATOR_RESIDUAL_TOL,
    "cubic.refactorization": OPERATOR_RESIDUAL_TOL,
    "cubic.pt_antisymmetry": IDENTITY_TOL,
    "cubic.origin_zero": IDENTITY_TOL,
    "cubic.time_reversal": 0.0,
}
