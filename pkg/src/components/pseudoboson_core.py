"""
Nonlinear pseudo-boson machinery in finite truncation.

Two representations coexist. Coordinate matrices (N x N) carry the ladder
algebra; grid operators (m x m) carry adjoints and metrics. Every residual
check skips the top TRUNCATION_GUARD indices, where raising leaves the span.
"""
import sys
from typing import Callable, Literal, Sequence

import numpy as np

from src.logging import logging
from src.exception import CustomException, DegenerateGramError, InvalidArgumentError
from src.constants.numerics import QUADRATURE_RESOLUTION_TOL, TRUNCATION_GUARD
from src.constants.tolerances import OPERATOR_RESIDUAL_TOL
from src.components.contour import norm, relative_residual
from src.components.eigensolver import hermitian_eigen, inverse_sqrt_pd, sqrt_pd
from src.components.special import epsilon_factorial
from src.schemas.grids import ContourGrid
from src.schemas.pseudobosons import (
    BiorthogonalSystem,
    EpsilonSequence,
    GramPair,
    GridOperator,
    HermitizedSystem,
    RieszDiagnostic,
    TruncatedLadder,
)
from src.schemas.reports import VerificationReport

_EPS = np.finfo(float).eps


def _interior(size: int) -> int:
    return max(size - TRUNCATION_GUARD, 1)


def build_ladder_matrices(eps: EpsilonSequence, n: int) -> TruncatedLadder:
    """
    Coordinate lowering/raising matrices of size n.

    a[k-1, k] = sqrt(eps_k); b[k+1, k] = sqrt(eps_{k+1}); b's last column is
    zero because raising out of the span is dropped.
    """
    if int(n) != n or n < 2:
        raise InvalidArgumentError(f"ladder size must be an integer >= 2, got {n}")
    if len(eps) < n + 1:
        raise InvalidArgumentError(f"eps has {len(eps)} entries, a ladder of size {n} needs {n + 1}")
    roots = np.sqrt(eps.values[1:n])
    a = np.diag(roots, k=1).astype(np.complex128)
    b = np.diag(roots, k=-1).astype(np.complex128)
    return TruncatedLadder(a_matrix=a, b_matrix=b, eps=eps)


def number_operators(ladder: TruncatedLadder) -> tuple[np.ndarray, np.ndarray]:
    """
    (m0, n0) = (b a, a b).

    m0 = diag(eps_0..eps_{N-1}); n0 = diag(eps_1..eps_{N-1}, 0), the last entry
    being the truncation artifact callers must skip.
    """
    m0 = ladder.b_matrix @ ladder.a_matrix
    n0 = ladder.a_matrix @ ladder.b_matrix
    return m0, n0


def _gram(family: np.ndarray, grid: ContourGrid) -> np.ndarray:
    g = (np.conj(family) * grid.weights) @ family.T
    return 0.5 * (g + g.conj().T)


def _positive_spectrum(g: np.ndarray, label: str) -> np.ndarray:
    values, _ = hermitian_eigen(g)
    if values[0] <= g.shape[0] * _EPS * values[-1]:
        raise DegenerateGramError(
            f"Gram matrix of {label} is numerically singular (eigenvalues {values[0]:.3e} .. {values[-1]:.3e}); "
            f"refine the quadrature or reduce the truncation")
    return values


def gram_matrices(sys_: BiorthogonalSystem) -> GramPair:
    """Coordinate matrices of S_Phi and S_eta: (g_phi)_mn = <Phi_m, Phi_n>, same for eta."""
    g_phi = _gram(sys_.phi, sys_.grid)
    g_eta = _gram(sys_.eta, sys_.grid)
    return GramPair(
        g_phi=g_phi,
        g_eta=g_eta,
        eigenvalues_phi=_positive_spectrum(g_phi, "Phi"),
        eigenvalues_eta=_positive_spectrum(g_eta, "eta"),
    )


def biorthogonality_matrix(sys_: BiorthogonalSystem) -> np.ndarray:
    """B_nm = <Phi_n, eta_m>."""
    return (np.conj(sys_.phi) * sys_.grid.weights) @ sys_.eta.T


def dyadic_operator(coeffs: Sequence[complex], left: np.ndarray, right: np.ndarray, grid: ContourGrid) -> GridOperator:
    """sum_n coeffs_n |left_n><right_n| as a grid operator."""
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    left = np.asarray(left, dtype=np.complex128)
    right = np.asarray(right, dtype=np.complex128)
    if left.shape != right.shape or left.shape[0] != coeffs.size:
        raise InvalidArgumentError("dyadic families and coefficients are not aligned")
    matrix = (left.T * coeffs) @ (np.conj(right) * grid.weights)
    return GridOperator(matrix=matrix, grid=grid)


def oblique_projector(sys_: BiorthogonalSystem) -> GridOperator:
    """X = sum_n |Phi_n><eta_n|, idempotent but not self-adjoint."""
    return dyadic_operator(np.ones(sys_.size), sys_.phi, sys_.eta, sys_.grid)


def grid_ladder_operators(sys_: BiorthogonalSystem, eps: EpsilonSequence) -> tuple[GridOperator, GridOperator]:
    """
    a = sum_n sqrt(eps_n) |Phi_{n-1}><eta_n| and b = sum_n sqrt(eps_{n+1}) |Phi_{n+1}><eta_n|.
    """
    size = sys_.size
    if len(eps) < size + 1:
        raise InvalidArgumentError("eps is too short for the system size")
    roots = np.sqrt(eps.values[1:size])
    a = dyadic_operator(roots, sys_.phi[:-1], sys_.eta[1:], sys_.grid)
    b = dyadic_operator(roots, sys_.phi[1:], sys_.eta[:-1], sys_.grid)
    return a, b


def metric_operators(sys_: BiorthogonalSystem) -> tuple[GridOperator, GridOperator]:
    """(S_Phi, S_eta) = (sum |Phi_n><Phi_n|, sum |eta_n><eta_n|)."""
    ones = np.ones(sys_.size)
    return (dyadic_operator(ones, sys_.phi, sys_.phi, sys_.grid),
            dyadic_operator(ones, sys_.eta, sys_.eta, sys_.grid))


def intertwining_residual(
    sys_: BiorthogonalSystem,
    eps: EpsilonSequence,
    operator: Literal["M", "N"] = "M",
    tolerance: float = OPERATOR_RESIDUAL_TOL,
) -> VerificationReport:
    """
    Check S_eta M_0 S_Phi = Mfrak_0 and M_0 S_Phi = S_Phi Mfrak_0.

    M_0 is restricted to the truncated span by evaluating every operator
    product on the interior eta_k, the domain where the restricted operators
    are defined. operator="N" runs the same checks for N_0 = a b and its
    partner Nfrak_0.
    """
    size = sys_.size
    if len(eps) < size + 1:
        raise InvalidArgumentError("eps is too short for the system size")
    coeffs = eps.values[:size] if operator == "M" else np.append(eps.values[1:size], 0.0)

    s_phi, s_eta = metric_operators(sys_)
    number = dyadic_operator(coeffs, sys_.phi, sys_.eta, sys_.grid)
    partner = number.adjoint()

    samples = sys_.eta[:_interior(size)]
    mapped = number.apply(s_phi.apply(samples))
    sandwich = relative_residual(s_eta.apply(mapped), partner.apply(samples), sys_.grid)
    commuted = relative_residual(mapped, s_phi.apply(partner.apply(samples)), sys_.grid)

    logging.info(f"Intertwining for {operator}: sandwich {sandwich:.3e}, commuted {commuted:.3e}")
    return VerificationReport.evaluate(
        check=f"metric.intertwining_{operator.lower()}",
        residual=max(sandwich, commuted),
        tolerance=tolerance,
        params={"n_levels": size, "operator": operator, "dual": sys_.dual_kind},
        metadata={"sandwich_residual": sandwich, "commuted_residual": commuted,
                  "interior_levels": int(samples.shape[0])},
    )


def span_frame(sys_: BiorthogonalSystem) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Orthonormal frame of span{Phi} from a weighted Householder QR.

    Returns:
        (q, r, eta_coordinates): q is (m, N) with orthonormal columns in the
        plain inner product after scaling by sqrt(w); Phi_n has frame
        coordinates r[:, n]; eta_coordinates[:, n] are the coordinates of the
        orthogonal projection of eta_n onto the span.
    """
    root_w = np.sqrt(sys_.grid.weights)
    q, r = np.linalg.qr((sys_.phi * root_w).T)
    eta_coordinates = q.conj().T @ (sys_.eta * root_w).T
    return q, r, eta_coordinates


def quadrature_deviation(phi: np.ndarray, duals: np.ndarray, grid: ContourGrid) -> float:
    """max |<Phi_n, eta_m> - delta_nm| for duals known in closed form to be biorthogonal."""
    overlaps = (np.conj(phi) * grid.weights) @ np.asarray(duals).T
    return float(np.max(np.abs(overlaps - np.eye(overlaps.shape[0]))))


def require_resolved_quadrature(
    phi: np.ndarray,
    duals: np.ndarray,
    grid: ContourGrid,
    tolerance: float = QUADRATURE_RESOLUTION_TOL,
) -> float:
    """
    Gate for span duals: biorthogonal by construction on any grid, they hide
    an under-resolved quadrature. Exactly biorthogonal closed-form duals do not.
    """
    deviation = quadrature_deviation(phi, duals, grid)
    if not deviation <= tolerance:
        raise DegenerateGramError(
            f"quadrature is under-resolved: closed-form duals deviate from biorthogonality by {deviation:.3e} "
            f"on {grid.scheme} with {grid.count} points; refine the grid")
    return deviation


def span_duals(phi: np.ndarray, candidates: np.ndarray, grid: ContourGrid) -> np.ndarray:
    """
    The unique biorthogonal basis of span{Phi} obtained from approximate duals.

    candidates are projected onto span{Phi} and then biorthonormalized,
    giving eta with <Phi_n, eta_m> = delta_nm inside the span.
    """
    candidate_system = BiorthogonalSystem(
        phi=phi, eta=candidates, grid=grid,
        phi_normalizations=np.ones(phi.shape[0]), eta_normalizations=np.ones(phi.shape[0]))
    q, r, coordinates = span_frame(candidate_system)
    overlap = r.conj().T @ coordinates
    coordinates = np.linalg.solve(overlap.T, coordinates.T).T
    return (q @ coordinates).T / np.sqrt(grid.weights)


def hermitize(sys_: BiorthogonalSystem, eps: EpsilonSequence) -> HermitizedSystem:
    """
    h = Theta^(1/2) M_0 Theta^(-1/2) and e_n = Theta^(1/2) Phi_n with Theta = S_eta.

    Works in the orthonormal frame of span_frame, where Theta's matrix is
    C C^H (C = frame coordinates of eta), isospectral with g_eta, and
    Hermiticity and orthonormality are the plain matrix notions. Both roots
    come from the Jacobi eigendecomposition of C C^H.
    """
    size = sys_.size
    if len(eps) < size:
        raise InvalidArgumentError("eps is too short for the system size")
    try:
        _, r, eta_coordinates = span_frame(sys_)
        theta = eta_coordinates @ eta_coordinates.conj().T
        theta = 0.5 * (theta + theta.conj().T)
    except InvalidArgumentError:
        raise
    except Exception as e:
        raise CustomException(e, sys)
    values = _positive_spectrum(theta, "S_eta on the span")

    root = sqrt_pd(theta)
    inverse_root = inverse_sqrt_pd(theta)
    levels = eps.values[:size]
    number_in_frame = _frame_matrix(r, np.diag(levels))
    h = root @ number_in_frame @ inverse_root
    logging.info(f"Hermitized a {size}-level system; cond(Theta) = {values[-1] / values[0]:.3e}")
    return HermitizedSystem(
        h_matrix=h,
        e_vectors=root @ r,
        sqrt_s_eta=root,
        inv_sqrt_s_eta=inverse_root,
        frame_phi=r,
        eps=levels,
    )


def _frame_matrix(r: np.ndarray, coordinate_matrix: np.ndarray) -> np.ndarray:
    """r X r^-1: a Phi-coordinate matrix carried into the orthonormal frame."""
    return np.linalg.solve(r.T, (r @ coordinate_matrix).T).T


def theta_factorization_residual(
    sys_: BiorthogonalSystem,
    ladder: TruncatedLadder,
    tolerance: float = OPERATOR_RESIDUAL_TOL,
) -> VerificationReport:
    """
    ||h - b_Theta a_Theta|| / ||h|| with a_Theta = Theta^(1/2) a Theta^(-1/2),
    together with [a_Theta, b_Theta] = Theta^(1/2) [a, b] Theta^(-1/2).
    """
    if ladder.size != sys_.size:
        raise InvalidArgumentError("ladder and system sizes differ")
    hermitized = hermitize(sys_, ladder.eps)
    root, inverse_root, r = hermitized.sqrt_s_eta, hermitized.inv_sqrt_s_eta, hermitized.frame_phi

    a_theta = root @ _frame_matrix(r, ladder.a_matrix) @ inverse_root
    b_theta = root @ _frame_matrix(r, ladder.b_matrix) @ inverse_root
    h = hermitized.h_matrix
    factorization = np.linalg.norm(h - b_theta @ a_theta) / np.linalg.norm(h)

    commutator = a_theta @ b_theta - b_theta @ a_theta
    coordinate_commutator = ladder.a_matrix @ ladder.b_matrix - ladder.b_matrix @ ladder.a_matrix
    expected = root @ _frame_matrix(r, coordinate_commutator) @ inverse_root
    commutator_residual = np.linalg.norm(commutator - expected) / max(np.linalg.norm(expected), 1e-300)

    return VerificationReport.evaluate(
        check="metric.theta_factorization",
        residual=max(factorization, commutator_residual),
        tolerance=tolerance,
        params={"n_levels": sys_.size, "dual": sys_.dual_kind},
        metadata={"factorization_residual": float(factorization),
                  "commutator_residual": float(commutator_residual)},
    )


def adjoint_ladder_residual(
    sys_: BiorthogonalSystem,
    eps: EpsilonSequence,
    tolerance: float = OPERATOR_RESIDUAL_TOL,
) -> VerificationReport:
    """
    Grid-adjoint relations a^dagger eta_n = sqrt(eps_{n+1}) eta_{n+1},
    b^dagger eta_n = sqrt(eps_n) eta_{n-1} and b^dagger eta_0 = 0.
    """
    a, b = grid_ladder_operators(sys_, eps)
    a_dagger, b_dagger = a.adjoint(), b.adjoint()
    eta = sys_.eta
    inner = _interior(sys_.size)
    roots = np.sqrt(eps.values[:sys_.size])

    raising = relative_residual(a_dagger.apply(eta[:inner]), roots[1:inner + 1, None] * eta[1:inner + 1], sys_.grid)
    lowering = relative_residual(b_dagger.apply(eta[1:inner]), roots[1:inner, None] * eta[:inner - 1], sys_.grid)
    ground = norm(b_dagger.apply(eta[0]), sys_.grid) / norm(eta[0], sys_.grid)

    return VerificationReport.evaluate(
        check="ladder.grid_adjoint",
        residual=max(raising, lowering, ground),
        tolerance=tolerance,
        params={"n_levels": sys_.size, "dual": sys_.dual_kind},
        metadata={"raising_residual": raising, "lowering_residual": lowering, "ground_residual": ground},
    )


def ladder_generation_residual(
    sys_: BiorthogonalSystem,
    eps: EpsilonSequence,
    tolerance: float = OPERATOR_RESIDUAL_TOL,
) -> VerificationReport:
    """Phi_n = b^n Phi_0 / sqrt(eps_n!) and eta_n = (a^dagger)^n eta_0 / sqrt(eps_n!)."""
    a, b = grid_ladder_operators(sys_, eps)
    a_dagger = a.adjoint()
    phi_generated = [sys_.phi[0]]
    eta_generated = [sys_.eta[0]]
    for _ in range(1, sys_.size):
        phi_generated.append(b.apply(phi_generated[-1]))
        eta_generated.append(a_dagger.apply(eta_generated[-1]))
    scales = np.sqrt([epsilon_factorial(n, eps) for n in range(sys_.size)])

    phi_residual = relative_residual(np.array(phi_generated) / scales[:, None], sys_.phi, sys_.grid)
    eta_residual = relative_residual(np.array(eta_generated) / scales[:, None], sys_.eta, sys_.grid)
    return VerificationReport.evaluate(
        check="ladder.generation",
        residual=max(phi_residual, eta_residual),
        tolerance=tolerance,
        params={"n_levels": sys_.size, "dual": sys_.dual_kind},
        metadata={"phi_residual": phi_residual, "eta_residual": eta_residual},
    )


def riesz_diagnostic(sys_builder: Callable[[int], BiorthogonalSystem], sizes: Sequence[int]) -> RieszDiagnostic:
    """
    Gram condition numbers over growing truncations.

    NON-RIESZ when both sequences grow strictly at every step, the finite
    trace of unbounded S_Phi and S_eta.
    """
    sizes = [int(s) for s in sizes]
    if len(sizes) < 2:
        raise InvalidArgumentError("riesz_diagnostic needs at least two truncation sizes")
    if any(later <= earlier for earlier, later in zip(sizes, sizes[1:])):
        raise InvalidArgumentError(f"truncation sizes must be increasing, got {sizes}")

    condition_phi, condition_eta = [], []
    for size in sizes:
        grams = gram_matrices(sys_builder(size))
        condition_phi.append(grams.condition_phi)
        condition_eta.append(grams.condition_eta)
        logging.info(f"N = {size}: cond(g_phi) = {grams.condition_phi:.3e}, cond(g_eta) = {grams.condition_eta:.3e}")

    def increasing(values: list[float]) -> bool:
        return all(later > earlier for earlier, later in zip(values, values[1:]))

    verdict = "NON-RIESZ" if increasing(condition_phi) and increasing(condition_eta) else "RIESZ-LIKE"
    return RieszDiagnostic(sizes=sizes, condition_phi=condition_phi, condition_eta=condition_eta, verdict=verdict)
