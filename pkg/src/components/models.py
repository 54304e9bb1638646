"""
Concrete realizations: the PT-symmetric regularized (Kratzer) oscillator

    H = -d^2/dx^2 + G/(x - ic)^2 + (x - ic)^2,   G = alpha^2 - 1/4,

with its superpotentials, first-order factors, second-order ladders and
sl(2,R) algebra, and the cubic superpotential model with its antilinear
refactorization.

Functions are carried as FunctionJet samples. In "analytic" mode every
operator consumes exact derivative terms of the jet; in "fd" mode only the
values are used and derivatives come from the 4th-order stencils.
"""
import math
import sys
from typing import Literal, Sequence

import numpy as np
from numpy.polynomial import Polynomial

from src.logging import logging
from src.exception import (
    CustomException,
    DegenerateGramError,
    InvalidArgumentError,
    ModelInconsistencyError,
    NonNormalizableFamilyError,
)
from src.constants.numerics import COLINEARITY_TOL, JET_ORDER, RESIDUAL_FLOOR
from src.constants.tolerances import FD_RESIDUAL_TOL, OPERATOR_RESIDUAL_TOL
from src.components.contour import derivative, inner_product, norm, relative_residual
from src.components.pseudoboson_core import quadrature_deviation, require_resolved_quadrature, span_duals
from src.components.special import laguerre_derivatives
from src.schemas.grids import ContourGrid, SampledFunction
from src.schemas.models import FunctionJet, KratzerParams, LadderConstant
from src.schemas.pseudobosons import BiorthogonalSystem, EpsilonSequence
from src.schemas.reports import VerificationReport
from src.utils.jets import (
    DerivativeMode,
    combine,
    conjugate,
    differentiate,
    jet_from_values,
    multiply,
    scale,
)

FactorKind = Literal["A", "B"]


# ---------------------------------------------------------------------------
# Regularized oscillator: potential, energies, eigenfunctions
# ---------------------------------------------------------------------------

def _shifted(x, c: float) -> np.ndarray:
    return np.asarray(x, dtype=float) - 1j * c


def _scalar_or_array(values: np.ndarray):
    return complex(values) if np.ndim(values) == 0 else values


def kratzer_potential(x, p: KratzerParams):
    """G/(x - ic)^2 + x^2 - 2icx - c^2 at real x (scalar or array)."""
    z = _shifted(x, p.c)
    return _scalar_or_array(p.g_coupling / z ** 2 + z ** 2)


def kratzer_energy(q: int, n: int, alpha: float) -> float:
    """E_qn = 4n + 2 + 2 q alpha, independent of c."""
    if q not in (1, -1):
        raise InvalidArgumentError(f"quasi-parity must be +1 or -1, got {q}")
    if int(n) != n or n < 0:
        raise InvalidArgumentError(f"level index must be a nonnegative integer, got {n}")
    if alpha <= 0:
        raise InvalidArgumentError(f"alpha must be positive, got {alpha}")
    return 4.0 * n + 2.0 + 2.0 * q * alpha


def family_energy(n: int, gamma: float) -> float:
    """Level n of the order-gamma family as an eigenvalue of H^[|gamma|], quasi-parity sign(gamma)."""
    if gamma == 0.0:
        return 4.0 * n + 2.0
    return kratzer_energy(1 if gamma > 0 else -1, n, abs(gamma))


def _require_normalizable(gamma: float) -> None:
    if gamma <= -1.0:
        raise NonNormalizableFamilyError(
            f"Laguerre order gamma = {gamma} <= -1: the family is not normalizable; use the other quasi-parity")


def _envelope_jet(exponent: float, z: np.ndarray, order: int) -> list[np.ndarray]:
    """
    Derivatives of z^a exp(-z^2/2).

    The j-th derivative is z^a exp(-z^2/2) P_j(z) / z^j with
    P_{j+1} = z P_j' + (a - j - z^2) P_j and P_0 = 1.
    """
    base = np.power(z, exponent) * np.exp(-0.5 * z ** 2)
    z_poly = Polynomial([0.0, 1.0])
    p = Polynomial([1.0])
    terms = []
    for j in range(order + 1):
        terms.append(base * p(z) / z ** j)
        p = z_poly * p.deriv() + (exponent - j - z_poly ** 2) * p
    return terms


def _squared_argument_jet(values: list[np.ndarray], z: np.ndarray, order: int) -> list[np.ndarray]:
    """Derivatives of g(z^2) from the derivatives g^(j) evaluated at z^2."""
    terms = []
    for k in range(order + 1):
        total = np.zeros_like(z)
        for j in range((k + 1) // 2, k + 1):
            weight = math.factorial(k) / (math.factorial(k - j) * math.factorial(2 * j - k))
            total = total + weight * (2.0 * z) ** (2 * j - k) * values[j]
        terms.append(total)
    return terms


def laguerre_family_jet(n: int, gamma: float, c: float, grid: ContourGrid, order: int = JET_ORDER) -> FunctionJet:
    """
    Jet of the raw function F_n = z^(gamma+1/2) exp(-z^2/2) L_n^(gamma)(z^2), z = x - ic.

    The principal power is continuous along the contour because Im z = -c < 0.
    """
    if c <= 0:
        raise InvalidArgumentError(f"the regularization shift c must be positive, got {c}")
    if int(order) != order or order < 0:
        raise InvalidArgumentError(f"jet order must be a nonnegative integer, got {order}")
    _require_normalizable(gamma)
    z = _shifted(grid.nodes, c)
    envelope = _envelope_jet(gamma + 0.5, z, order)
    polynomial = _squared_argument_jet(laguerre_derivatives(n, gamma, z ** 2, order), z, order)
    terms = []
    for k in range(order + 1):
        terms.append(sum(math.comb(k, i) * envelope[i] * polynomial[k - i] for i in range(k + 1)))
    return FunctionJet(terms=tuple(terms))


def kratzer_eigenfunction(n: int, p: KratzerParams, grid: ContourGrid, normalization: complex = 1.0) -> SampledFunction:
    """normalization * (x-ic)^(gamma+1/2) exp(-(x-ic)^2/2) L_n^(gamma)((x-ic)^2) with gamma = q alpha."""
    return kratzer_eigenfunction_jet(n, p, grid, order=0, normalization=normalization).values


def kratzer_eigenfunction_jet(n: int, p: KratzerParams, grid: ContourGrid, order: int = JET_ORDER,
                              normalization: complex = 1.0) -> FunctionJet:
    return scale(normalization, laguerre_family_jet(n, p.gamma, p.c, grid, order))


def kratzer_dual_eigenfunction(n: int, p: KratzerParams, grid: ContourGrid, normalization: complex = 1.0) -> SampledFunction:
    """Eigenfunction of H^dagger: the pointwise conjugate of the raw Phi_n, scaled by normalization."""
    return kratzer_dual_eigenfunction_jet(n, p, grid, order=0, normalization=normalization).values


def kratzer_dual_eigenfunction_jet(n: int, p: KratzerParams, grid: ContourGrid, order: int = JET_ORDER,
                                   normalization: complex = 1.0) -> FunctionJet:
    return scale(normalization, conjugate(laguerre_family_jet(n, p.gamma, p.c, grid, order)))


def _potential_jet(alpha: float, c: float, grid: ContourGrid, order: int) -> FunctionJet:
    """V = z^2 + G/z^2 and its derivatives."""
    z = _shifted(grid.nodes, c)
    g = alpha ** 2 - 0.25
    terms = []
    for j in range(order + 1):
        singular = g * (-1.0) ** j * math.factorial(j + 1) / z ** (j + 2)
        regular = (z ** 2, 2.0 * z, 2.0 * np.ones_like(z))[j] if j <= 2 else 0.0
        terms.append(regular + singular)
    return FunctionJet(terms=tuple(terms))


def _as_jet(f) -> FunctionJet:
    return f if isinstance(f, FunctionJet) else jet_from_values(f)


def _second_derivative(f: FunctionJet, grid: ContourGrid, mode: DerivativeMode) -> FunctionJet:
    if mode == "analytic":
        if f.order < 2:
            raise InvalidArgumentError("analytic mode ran out of derivatives; supply a higher-order jet")
        return FunctionJet(terms=f.terms[2:])
    if mode == "fd":
        return jet_from_values(derivative(f.values, grid, order=2))
    raise InvalidArgumentError(f"unknown derivative mode {mode!r}")


def _schrodinger(potential: FunctionJet, f: FunctionJet, grid: ContourGrid, mode: DerivativeMode) -> FunctionJet:
    """-f'' + U f."""
    return combine((-1.0, _second_derivative(f, grid, mode)), (1.0, multiply(potential, f)))


def apply_hamiltonian(alpha: float, c: float, f, grid: ContourGrid, mode: DerivativeMode = "analytic",
                      adjoint: bool = False) -> FunctionJet:
    """H f = -f'' + V f, or H^dagger f with the conjugated potential."""
    f = _as_jet(f)
    potential = _potential_jet(alpha, c, grid, f.order if mode == "analytic" else 0)
    if adjoint:
        potential = conjugate(potential)
    return _schrodinger(potential, f, grid, mode)


# ---------------------------------------------------------------------------
# Superpotentials and factor operators
# ---------------------------------------------------------------------------

def superpotential_w(gamma: float, c: float, x):
    """W^(gamma)(x) = x - ic - (gamma + 1/2)/(x - ic)."""
    z = _shifted(x, c)
    return _scalar_or_array(z - (gamma + 0.5) / z)


def superpotential_jet(gamma: float, c: float, grid: ContourGrid, order: int = JET_ORDER) -> FunctionJet:
    z = _shifted(grid.nodes, c)
    a = gamma + 0.5
    terms = [z - a / z]
    if order >= 1:
        terms.append(1.0 + a / z ** 2)
    for j in range(2, order + 1):
        terms.append(-a * (-1.0) ** j * math.factorial(j) / z ** (j + 1))
    return FunctionJet(terms=tuple(terms))


def apply_factor(kind: FactorKind, w_values, f, grid: ContourGrid, derivative_mode: DerivativeMode = "analytic") -> FunctionJet:
    """
    A f = f' + W f or B f = -f' + W f.

    Args:
        kind: "A" or "B"
        w_values: superpotential jet (or plain samples)
        f: function jet; in analytic mode it must carry at least one derivative
        grid: grid the samples live on
        derivative_mode: "analytic" or "fd"

    Returns:
        FunctionJet one order lower than the inputs in analytic mode, of order 0 in fd mode
    """
    if kind not in ("A", "B"):
        raise InvalidArgumentError(f"factor kind must be 'A' or 'B', got {kind!r}")
    w, f = _as_jet(w_values), _as_jet(f)
    sign = 1.0 if kind == "A" else -1.0
    return combine((sign, differentiate(f, grid, derivative_mode)), (1.0, multiply(w, f)))


def _factor(kind: FactorKind, gamma: float, c: float, f: FunctionJet, grid: ContourGrid,
            mode: DerivativeMode) -> FunctionJet:
    w = superpotential_jet(gamma, c, grid, f.order if mode == "analytic" else 0)
    return apply_factor(kind, w, f, grid, mode)


def second_order_ladder(kind: FactorKind, alpha: float, c: float, f, grid: ContourGrid,
                        derivative_mode: DerivativeMode = "analytic", gamma_sign: int = 1) -> FunctionJet:
    """
    A(alpha) = A^(-g-1) A^(g) and B(alpha) = B^(-g) B^(g-1) with g = gamma_sign * alpha.

    Both signs give the same operator; the factor on the right acts first.
    """
    if gamma_sign not in (1, -1):
        raise InvalidArgumentError(f"gamma_sign must be +1 or -1, got {gamma_sign}")
    g = gamma_sign * alpha
    f = _as_jet(f)
    if kind == "A":
        inner, outer = g, -g - 1.0
    elif kind == "B":
        inner, outer = g - 1.0, -g
    else:
        raise InvalidArgumentError(f"ladder kind must be 'A' or 'B', got {kind!r}")
    first = _factor(kind, inner, c, f, grid, derivative_mode)
    return _factor(kind, outer, c, first, grid, derivative_mode)


def formal_adjoint_ladder(kind: Literal["a", "b"], alpha: float, c: float, f, grid: ContourGrid,
                          derivative_mode: DerivativeMode = "analytic") -> FunctionJet:
    """
    L2 adjoints of a = -A(alpha) and b = -B(alpha): a^dagger = T b T, b^dagger = T a T,
    T being pointwise complex conjugation.
    """
    partner = {"a": "B", "b": "A"}.get(kind)
    if partner is None:
        raise InvalidArgumentError(f"ladder must be 'a' or 'b', got {kind!r}")
    mirrored = second_order_ladder(partner, alpha, c, conjugate(_as_jet(f)), grid, derivative_mode)
    return scale(-1.0, conjugate(mirrored))


def operator_eigen_residual(applied: FunctionJet, eigenvalue: complex, f: FunctionJet, grid: ContourGrid) -> float:
    """||L f - lambda f|| / (max(|lambda|, 1) ||f||); stays meaningful at lambda = 0."""
    denominator = max(abs(eigenvalue), 1.0) * max(norm(f.values, grid), RESIDUAL_FLOOR)
    return norm(applied.values - eigenvalue * f.values, grid) / denominator


def eigen_residual(alpha: float, c: float, f, eigenvalue: complex, grid: ContourGrid,
                   mode: DerivativeMode = "analytic", adjoint: bool = False) -> float:
    f = _as_jet(f)
    return operator_eigen_residual(apply_hamiltonian(alpha, c, f, grid, mode, adjoint), eigenvalue, f, grid)


def partner_shift_residual(gamma: float, c: float, grid: ContourGrid, levels: int = 4,
                           derivative_mode: DerivativeMode = "fd",
                           tolerance: float = FD_RESIDUAL_TOL) -> VerificationReport:
    """
    H_L = B^(gamma) A^(gamma) equals H^[alpha] - 2 gamma - 2 on the order-gamma family,
    and H_R = A^(gamma) B^(gamma) equals H^[beta] - 2 gamma on the order-(gamma+1) family,
    with alpha = |gamma| and beta = |gamma + 1|.
    """
    if levels < 1:
        raise InvalidArgumentError(f"need at least one level, got {levels}")
    order = 2 if derivative_mode == "analytic" else 0
    left, right = [], []
    for n in range(levels):
        phi = laguerre_family_jet(n, gamma, c, grid, order)
        h_l = _factor("B", gamma, c, _factor("A", gamma, c, phi, grid, derivative_mode), grid, derivative_mode)
        left.append(operator_eigen_residual(h_l, family_energy(n, gamma) - 2.0 * gamma - 2.0, phi, grid))

        chi = laguerre_family_jet(n, gamma + 1.0, c, grid, order)
        h_r = _factor("A", gamma, c, _factor("B", gamma, c, chi, grid, derivative_mode), grid, derivative_mode)
        right.append(operator_eigen_residual(h_r, family_energy(n, gamma + 1.0) - 2.0 * gamma, chi, grid))

    logging.info(f"Partner shift for gamma = {gamma}: H_L {max(left):.3e}, H_R {max(right):.3e}")
    return VerificationReport.evaluate(
        check="susy.partner_shift",
        residual=max(left + right),
        tolerance=tolerance,
        params={"gamma": gamma, "c": c, "levels": levels, "derivative_mode": derivative_mode},
        metadata={"left_residuals": left, "right_residuals": right,
                  "left_ground_energy": family_energy(0, gamma) - 2.0 * gamma - 2.0,
                  "right_ground_energy": family_energy(0, gamma + 1.0) - 2.0 * gamma,
                  "alpha": abs(gamma), "beta": abs(gamma + 1.0)},
    )


def partner_hamiltonian_residual(gamma: float, c: float, test_functions: Sequence, grid: ContourGrid,
                                 derivative_mode: DerivativeMode = "analytic",
                                 tolerance: float = OPERATOR_RESIDUAL_TOL) -> VerificationReport:
    """Factored B A and A B against the expanded p^2 + W^2 - W' and p^2 + W^2 + W'."""
    residuals = []
    for f in _nonzero(test_functions, grid):
        order = f.order if derivative_mode == "analytic" else 0
        w = superpotential_jet(gamma, c, grid, max(order, 1))
        w_square = multiply(w, w)
        w_prime = FunctionJet(terms=w.terms[1:])
        for sign, outer, inner in ((-1.0, "B", "A"), (1.0, "A", "B")):
            potential = combine((1.0, w_square), (sign, w_prime))
            if derivative_mode != "analytic":
                potential = jet_from_values(potential.values)
            factored = _factor(outer, gamma, c, _factor(inner, gamma, c, f, grid, derivative_mode), grid, derivative_mode)
            expanded = _schrodinger(potential, f, grid, derivative_mode)
            residuals.append(relative_residual(factored.values, expanded.values, grid))
    return VerificationReport.evaluate(
        check="susy.partner_expansion",
        residual=max(residuals, default=0.0),
        tolerance=tolerance,
        params={"gamma": gamma, "c": c, "derivative_mode": derivative_mode},
        metadata={"residuals": residuals},
    )


# ---------------------------------------------------------------------------
# Ladder constants and the model epsilon sequence
# ---------------------------------------------------------------------------

def c5(n: int, gamma: float) -> float:
    """c5(n, gamma) = -4 sqrt((n+1)(n+gamma+1))."""
    radicand = (n + 1) * (n + gamma + 1)
    if radicand < 0:
        raise InvalidArgumentError(f"c5({n}, {gamma}) has a negative radicand {radicand}")
    return -4.0 * math.sqrt(radicand)


def ladder_constant(n: int, gamma: float) -> LadderConstant:
    return LadderConstant(n=n, gamma=gamma, value=c5(n, gamma))


def epsilon_sequence_from_model(gamma: float, length: int) -> EpsilonSequence:
    """
    eps_n = c5(n-1, gamma)^2 = 16 n (n + gamma).

    The shifted index keeps eps_0 = 0; (eps_{n+1} - eps_n)/8 = 4n + 2 + 2 gamma.
    """
    if gamma <= -1.0:
        raise InvalidArgumentError(f"gamma must exceed -1, got {gamma}")
    if int(length) != length or length < 1:
        raise InvalidArgumentError(f"length must be a positive integer, got {length}")
    return EpsilonSequence(values=[c5(n - 1, gamma) ** 2 for n in range(int(length))])


# ---------------------------------------------------------------------------
# Model pseudo-boson system
# ---------------------------------------------------------------------------

def _measure_raising(n: int, p: KratzerParams, grid: ContourGrid, raw: list[FunctionJet]) -> complex:
    """mu_n with B(alpha) F_n = mu_n F_{n+1}; raises when the image is not colinear."""
    image = second_order_ladder("B", p.alpha, p.c, raw[n], grid, "analytic").values
    target = raw[n + 1].values
    mu = inner_product(target, image, grid) / inner_product(target, target, grid)
    orthogonal = norm(image - mu * target, grid) / max(norm(image, grid), RESIDUAL_FLOOR)
    if orthogonal > COLINEARITY_TOL:
        logging.error(f"B(alpha) F_{n} leaves the ladder: orthogonal component {orthogonal:.3e}")
        raise ModelInconsistencyError(
            f"B(alpha) F_{n} is not colinear with F_{n + 1} (relative orthogonal component {orthogonal:.3e})")
    return complex(mu)


def build_model_nlpb(p: KratzerParams, n_levels: int, grid: ContourGrid,
                     dual: Literal["span", "adjoint"] = "span") -> BiorthogonalSystem:
    """
    Phi_n = k_n F_n with k_0 = 1/||F_0|| and k_{n+1} = k_n mu_n / c5(n, gamma).

    With these constants a = -A(alpha) and b = -B(alpha) act as sqrt(eps_n)
    lowering and sqrt(eps_{n+1}) raising. Duals start from the conjugate
    (H^dagger) family normalized so that <Phi_n, eta_n> = 1; dual="span"
    replaces them by the biorthogonal basis of span{Phi_0..Phi_{N-1}}, after
    require_resolved_quadrature has confirmed the grid resolves the closed-form pair.
    """
    if int(n_levels) != n_levels or n_levels < 3:
        raise InvalidArgumentError(f"n_levels must be an integer >= 3, got {n_levels}")
    if dual not in ("span", "adjoint"):
        raise InvalidArgumentError(f"dual must be 'span' or 'adjoint', got {dual!r}")
    _require_normalizable(p.gamma)
    try:
        raw = [laguerre_family_jet(n, p.gamma, p.c, grid, order=2) for n in range(n_levels)]
        mu = [_measure_raising(n, p, grid, raw) for n in range(n_levels - 1)]

        k = [1.0 / norm(raw[0].values, grid)]
        for n in range(n_levels - 1):
            k.append(k[-1] * mu[n] / c5(n, p.gamma))
        k = np.array(k, dtype=np.complex128)

        phi = np.array([k[n] * raw[n].values for n in range(n_levels)])
        conjugates = np.conj(np.array([f.values for f in raw]))
        s = 1.0 / inner_product(phi, conjugates, grid)
        eta = s[:, None] * conjugates
        if dual == "span":
            deviation = require_resolved_quadrature(phi, eta, grid)
            eta = span_duals(phi, eta, grid)
        else:
            deviation = quadrature_deviation(phi, eta, grid)
    except (DegenerateGramError, ModelInconsistencyError, NonNormalizableFamilyError, InvalidArgumentError):
        raise
    except Exception as e:
        raise CustomException(e, sys)

    logging.info(f"Built a {n_levels}-level model system (alpha = {p.alpha}, c = {p.c}, q = {p.q}, dual = {dual})")
    return BiorthogonalSystem(
        phi=phi,
        eta=eta,
        grid=grid,
        phi_normalizations=k,
        eta_normalizations=s,
        dual_kind=dual,
        metadata={
            "alpha": p.alpha,
            "c": p.c,
            "q": p.q,
            "gamma": p.gamma,
            "measured_raising": [m.real for m in mu],
            "measured_phase": [float(np.angle(m)) for m in mu],
            "c5": [c5(n, p.gamma) for n in range(n_levels - 1)],
            "quadrature_deviation": deviation,
        },
    )


def model_jets(sys_: BiorthogonalSystem, p: KratzerParams, order: int = JET_ORDER) -> tuple[list[FunctionJet], list[FunctionJet]]:
    """Analytic jets of Phi_n and of the raw normalized H^dagger duals of a model system."""
    phi, eta = [], []
    for n in range(sys_.size):
        raw = laguerre_family_jet(n, p.gamma, p.c, sys_.grid, order)
        phi.append(scale(sys_.phi_normalizations[n], raw))
        eta.append(scale(sys_.eta_normalizations[n], conjugate(raw)))
    return phi, eta


# ---------------------------------------------------------------------------
# sl(2, R)
# ---------------------------------------------------------------------------

def _nonzero(test_functions: Sequence, grid: ContourGrid) -> list[FunctionJet]:
    kept = []
    for index, f in enumerate(test_functions):
        f = _as_jet(f)
        if norm(f.values, grid) == 0.0:
            logging.warning(f"test function {index} is identically zero; skipped")
            continue
        kept.append(f)
    return kept


def sl2_commutator_residuals(alpha: float, c: float, test_functions: Sequence, grid: ContourGrid,
                             derivative_mode: DerivativeMode = "analytic",
                             tolerance: float | None = None) -> VerificationReport:
    """
    [A, B] = 8 H, [A, H] = 4 A and [H, B] = 4 B with A = A(alpha), B = B(alpha),
    H = H^[alpha], each applied to every nonzero test function.
    """
    if tolerance is None:
        tolerance = OPERATOR_RESIDUAL_TOL if derivative_mode == "analytic" else FD_RESIDUAL_TOL

    def lower(f):
        return second_order_ladder("A", alpha, c, f, grid, derivative_mode)

    def raise_(f):
        return second_order_ladder("B", alpha, c, f, grid, derivative_mode)

    def energy(f):
        return apply_hamiltonian(alpha, c, f, grid, derivative_mode)

    commutators = {"ab": [], "ah": [], "hb": []}
    for f in _nonzero(test_functions, grid):
        a_f, b_f, h_f = lower(f), raise_(f), energy(f)
        commutators["ab"].append(relative_residual(
            lower(b_f).values - raise_(a_f).values, 8.0 * h_f.values, grid))
        commutators["ah"].append(relative_residual(
            lower(h_f).values - energy(a_f).values, 4.0 * a_f.values, grid))
        commutators["hb"].append(relative_residual(
            energy(b_f).values - raise_(h_f).values, 4.0 * b_f.values, grid))

    maxima = {name: max(values, default=0.0) for name, values in commutators.items()}
    return VerificationReport.evaluate(
        check="algebra.sl2" if derivative_mode == "analytic" else "algebra.sl2_fd",
        residual=max(maxima.values()),
        tolerance=tolerance,
        params={"alpha": alpha, "c": c, "derivative_mode": derivative_mode,
                "test_functions": len(commutators["ab"])},
        metadata={f"{name}_residual": value for name, value in maxima.items()},
    )


def gaussian_test_functions(count: int, grid: ContourGrid, order: int = JET_ORDER) -> list[FunctionJet]:
    """Jets of x^k exp(-x^2/2), k = 0..count-1: the derivatives are P(x) exp(-x^2/2), P' - xP recursion."""
    if int(count) != count or count < 1:
        raise InvalidArgumentError(f"count must be a positive integer, got {count}")
    x = grid.nodes
    envelope = np.exp(-0.5 * x ** 2)
    x_poly = Polynomial([0.0, 1.0])
    jets = []
    for k in range(int(count)):
        p = x_poly ** k
        terms = []
        for _ in range(order + 1):
            terms.append(p(x) * envelope)
            p = p.deriv() - x_poly * p
        jets.append(FunctionJet(terms=tuple(terms)))
    return jets


# ---------------------------------------------------------------------------
# Cubic superpotential model
# ---------------------------------------------------------------------------

def cubic_superpotential(sign: int, eps_shift: float, x):
    """W^(+-)(x) = +-[1/(x +- i eps) - i (x +- i eps)^2]."""
    if sign not in (1, -1):
        raise InvalidArgumentError(f"sign must be +1 or -1, got {sign}")
    if eps_shift <= 0:
        raise InvalidArgumentError(f"epsilon shift must be positive, got {eps_shift}")
    w = np.asarray(x, dtype=float) + sign * 1j * eps_shift
    return _scalar_or_array(sign * (1.0 / w - 1j * w ** 2))


def cubic_superpotential_jet(sign: int, eps_shift: float, grid: ContourGrid, order: int = JET_ORDER) -> FunctionJet:
    w = grid.nodes + sign * 1j * eps_shift
    terms = [cubic_superpotential(sign, eps_shift, grid.nodes)]
    polynomial_part = {1: -2j * w, 2: -2j * np.ones_like(w)}
    for j in range(1, order + 1):
        pole = (-1.0) ** j * math.factorial(j) / w ** (j + 1)
        terms.append(sign * (pole + polynomial_part.get(j, 0.0)))
    return FunctionJet(terms=tuple(terms))


def _cubic_factor(kind: FactorKind, sign: int, eps_shift: float, f: FunctionJet, grid: ContourGrid,
                  mode: DerivativeMode) -> FunctionJet:
    w = cubic_superpotential_jet(sign, eps_shift, grid, f.order if mode == "analytic" else 0)
    return apply_factor(kind, w, f, grid, mode)


def refactorization_residual(eps_shift: float, test_functions: Sequence, grid: ContourGrid,
                             derivative_mode: DerivativeMode = "analytic",
                             tolerance: float = OPERATOR_RESIDUAL_TOL) -> VerificationReport:
    """M^(+) = B^(+) A^(+) against T A^(-) B^(-) T on each nonzero test function."""
    residuals = []
    for f in _nonzero(test_functions, grid):
        lhs = _cubic_factor("B", 1, eps_shift, _cubic_factor("A", 1, eps_shift, f, grid, derivative_mode),
                            grid, derivative_mode)
        mirrored = _cubic_factor("B", -1, eps_shift, conjugate(f), grid, derivative_mode)
        rhs = conjugate(_cubic_factor("A", -1, eps_shift, mirrored, grid, derivative_mode))
        residuals.append(relative_residual(lhs.values, rhs.values, grid))
    return VerificationReport.evaluate(
        check="cubic.refactorization",
        residual=max(residuals, default=0.0),
        tolerance=tolerance,
        params={"epsilon_shift": eps_shift, "derivative_mode": derivative_mode},
        metadata={"residuals": residuals},
    )


def time_reversal(f) -> FunctionJet:
    """T f = conj(f), antilinear with T^2 = 1."""
    return conjugate(_as_jet(f))
