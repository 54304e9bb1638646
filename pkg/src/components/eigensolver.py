"""
Dense eigen kernels.

hermitian_eigen: cyclic Jacobi for the small Gram and metric matrices.
general_complex_eigen: Householder Hessenberg reduction followed by
single-shift complex QR with Wilkinson shifts and deflation, with an optional
LAPACK backend for the large finite-difference Hamiltonians.
"""
import sys
from typing import Callable, Literal, Optional

import numpy as np
import scipy.linalg

from src.logging import logging
from src.exception import (
    ConvergenceError,
    CustomException,
    DegenerateGramError,
    InvalidArgumentError,
    UnsupportedGridError,
)
from src.constants.numerics import (
    HERMITIAN_INPUT_TOL,
    JACOBI_MAX_SWEEPS,
    MIN_HAMILTONIAN_POINTS,
    NATIVE_EIGEN_DIM_CAP,
    QR_EXCEPTIONAL_SHIFT_PERIOD,
    QR_ITERATIONS_PER_EIGENVALUE,
)
from src.schemas.grids import ContourGrid
from src.schemas.spectra import SpectrumResult

_EPS = np.finfo(float).eps


def _square(m) -> np.ndarray:
    m = np.array(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidArgumentError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidArgumentError("matrix has non-finite entries")
    return m


def _sort_order(values: np.ndarray) -> np.ndarray:
    return np.lexsort((values.imag, values.real))


# ---------------------------------------------------------------------------
# Hermitian
# ---------------------------------------------------------------------------

def hermitian_eigen(m, max_sweeps: int = JACOBI_MAX_SWEEPS) -> tuple[np.ndarray, np.ndarray]:
    """
    Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Args:
        m: Hermitian matrix, ||m - m^H|| / ||m|| < 1e-10
        max_sweeps: sweep budget before ConvergenceError

    Returns:
        (ascending real eigenvalues, unitary matrix of eigenvectors as columns)
    """
    a = _square(m)
    n = a.shape[0]
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n), np.eye(n, dtype=np.complex128)
    if np.linalg.norm(a - a.conj().T) > HERMITIAN_INPUT_TOL * scale:
        raise InvalidArgumentError("hermitian_eigen received a non-Hermitian matrix")

    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=np.complex128)

    def off_norm() -> float:
        return float(np.linalg.norm(a - np.diag(np.diag(a))))

    sweeps = 0
    while off_norm() > _EPS * scale:
        if sweeps == max_sweeps:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps", partial=np.sort(np.diag(a).real))
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                phase = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = 1.0 if tau == 0.0 else np.sign(tau) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                cos = 1.0 / np.sqrt(1.0 + t * t)
                sin = t * cos
                # diag(1, conj(phase)) makes the pair real, then a real rotation zeroes it
                rotation = np.array([[cos, sin], [-sin * np.conj(phase), cos * np.conj(phase)]])
                pair = [p, q]
                a[:, pair] = a[:, pair] @ rotation
                a[pair, :] = rotation.conj().T @ a[pair, :]
                v[:, pair] = v[:, pair] @ rotation
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

    values = np.diag(a).real
    order = np.argsort(values)
    logging.debug(f"Jacobi converged in {sweeps} sweeps for n = {n}")
    return values[order], v[:, order]


def sqrt_pd(m) -> np.ndarray:
    """Positive square root R = R^H of a positive definite matrix, R R = m."""
    values, vectors = hermitian_eigen(m)
    if values.size and values[0] <= 0.0:
        raise DegenerateGramError(f"matrix is not positive definite: smallest eigenvalue {values[0]:.3e}")
    return (vectors * np.sqrt(values)) @ vectors.conj().T


def inverse_sqrt_pd(m) -> np.ndarray:
    """m^(-1/2) for a positive definite m."""
    values, vectors = hermitian_eigen(m)
    if values.size and values[0] <= 0.0:
        raise DegenerateGramError(f"matrix is not positive definite: smallest eigenvalue {values[0]:.3e}")
    return (vectors / np.sqrt(values)) @ vectors.conj().T


# ---------------------------------------------------------------------------
# General complex
# ---------------------------------------------------------------------------

def _hessenberg(a: np.ndarray, want_q: bool) -> tuple[np.ndarray, Optional[np.ndarray]]:
    h = a.copy()
    n = h.shape[0]
    q = np.eye(n, dtype=np.complex128) if want_q else None
    for k in range(n - 2):
        x = h[k + 1:, k]
        norm_x = np.linalg.norm(x)
        if norm_x == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x.copy()
        v[0] += phase * norm_x
        v /= np.linalg.norm(v)
        h[k + 1:, k:] -= 2.0 * np.outer(v, v.conj() @ h[k + 1:, k:])
        h[:, k + 1:] -= 2.0 * np.outer(h[:, k + 1:] @ v, v.conj())
        if want_q:
            q[:, k + 1:] -= 2.0 * np.outer(q[:, k + 1:] @ v, v.conj())
        h[k + 2:, k] = 0.0
    return h, q


def _givens(a: complex, b: complex) -> np.ndarray:
    """Unitary G with G @ [a, b] = [r, 0]."""
    r = np.hypot(abs(a), abs(b))
    if r == 0.0:
        return np.eye(2, dtype=np.complex128)
    return np.array([[np.conj(a), np.conj(b)], [-b, a]], dtype=np.complex128) / r


def _wilkinson_shift(block: np.ndarray) -> complex:
    a, b, c, d = block[0, 0], block[0, 1], block[1, 0], block[1, 1]
    half_trace = 0.5 * (a + d)
    disc = np.sqrt(np.complex128(0.25 * (a - d) ** 2 + b * c))
    first, second = half_trace + disc, half_trace - disc
    return first if abs(first - d) <= abs(second - d) else second


def _shifted_qr(h: np.ndarray, z: Optional[np.ndarray], max_iterations: int) -> int:
    """Reduce h in place to upper triangular form; returns the QR step count."""
    n = h.shape[0]
    full = z is not None
    scale = np.linalg.norm(h)
    hi = n - 1
    iterations = 0
    since_deflation = 0

    while hi > 0:
        lo = hi
        while lo > 0:
            size = abs(h[lo, lo]) + abs(h[lo - 1, lo - 1])
            if size == 0.0:
                size = scale
            if abs(h[lo, lo - 1]) <= _EPS * size:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            hi -= 1
            since_deflation = 0
            continue

        if iterations >= max_iterations:
            raise ConvergenceError(
                f"complex QR did not converge in {max_iterations} iterations",
                partial=np.diag(h)[hi + 1:].copy())
        iterations += 1
        since_deflation += 1

        shift = _wilkinson_shift(h[hi - 1:hi + 1, hi - 1:hi + 1])
        if since_deflation % QR_EXCEPTIONAL_SHIFT_PERIOD == 0:
            shift = h[hi, hi] + 0.75 * abs(h[hi, hi - 1])

        col_end = n if full else hi + 1
        row_start = 0 if full else lo
        active = np.arange(lo, hi + 1)
        h[active, active] -= shift
        rotations = []
        for k in range(lo, hi):
            g = _givens(h[k, k], h[k + 1, k])
            h[k:k + 2, k:col_end] = g @ h[k:k + 2, k:col_end]
            h[k + 1, k] = 0.0
            rotations.append(g)
        for k, g in zip(range(lo, hi), rotations):
            g_h = g.conj().T
            h[row_start:min(k + 2, hi + 1), k:k + 2] = h[row_start:min(k + 2, hi + 1), k:k + 2] @ g_h
            if full:
                z[:, k:k + 2] = z[:, k:k + 2] @ g_h
        h[active, active] += shift

    return iterations


def _triangular_eigenvectors(t: np.ndarray) -> np.ndarray:
    n = t.shape[0]
    tiny = _EPS * max(np.linalg.norm(t), 1.0)
    y = np.zeros((n, n), dtype=np.complex128)
    for k in range(n):
        y[k, k] = 1.0
        if k == 0:
            continue
        shifted = t[:k, :k] - t[k, k] * np.eye(k)
        diagonal = np.diag(shifted).copy()
        small = np.abs(diagonal) < tiny
        diagonal[small] = tiny
        shifted[np.arange(k), np.arange(k)] = diagonal
        y[:k, k] = scipy.linalg.solve_triangular(shifted, -t[:k, k])
    return y


def general_complex_eigen(
    m,
    want_vectors: bool = False,
    backend: Literal["native", "lapack"] = "native",
    max_dim: int = NATIVE_EIGEN_DIM_CAP,
) -> SpectrumResult:
    """
    Eigenvalues (and optionally right eigenvectors) of a general complex matrix.

    Args:
        m: square complex matrix with finite entries
        want_vectors: also return eigenvectors and per-pair backward errors
        backend: "native" Hessenberg-QR or "lapack" via scipy.linalg
        max_dim: dimension cap for the native backend

    Returns:
        SpectrumResult sorted by real part, then imaginary part
    """
    a = _square(m)
    n = a.shape[0]
    if backend not in ("native", "lapack"):
        raise InvalidArgumentError(f"unknown eigen backend {backend!r}")
    if backend == "native" and n > max_dim:
        raise InvalidArgumentError(f"dimension {n} exceeds the native eigensolver cap {max_dim}")
    if n == 0:
        return SpectrumResult(eigenvalues=np.zeros(0, dtype=np.complex128), iterations=0, backend=backend)

    try:
        if backend == "lapack":
            iterations = 0
            if want_vectors:
                values, vectors = scipy.linalg.eig(a)
            else:
                values, vectors = scipy.linalg.eigvals(a), None
        else:
            h, z = _hessenberg(a, want_q=want_vectors)
            iterations = _shifted_qr(h, z, QR_ITERATIONS_PER_EIGENVALUE * n)
            values = np.diag(h).copy()
            vectors = z @ _triangular_eigenvectors(np.triu(h)) if want_vectors else None
    except (ConvergenceError, InvalidArgumentError):
        raise
    except Exception as e:
        raise CustomException(e, sys)

    order = _sort_order(values)
    values = values[order]
    residuals = None
    if vectors is not None:
        vectors = vectors[:, order]
        vectors = vectors / np.linalg.norm(vectors, axis=0)
        residuals = np.linalg.norm(a @ vectors - vectors * values, axis=0) / max(np.linalg.norm(a), 1e-300)

    logging.info(f"{backend} eigensolve of a {n}x{n} matrix finished after {iterations} QR steps")
    return SpectrumResult(eigenvalues=values, iterations=iterations, backend=backend,
                          residuals=residuals, vectors=vectors)


def discretize_schrodinger(potential: Callable[[np.ndarray], np.ndarray], grid: ContourGrid) -> np.ndarray:
    """
    Dense -D2 + diag(V) on a uniform grid.

    D2 is the 4th-order centered stencil with the wavefunction taken as zero
    outside [-L, L].
    """
    if not grid.is_uniform:
        raise UnsupportedGridError("discretize_schrodinger needs a uniform grid")
    m = grid.count
    if m < MIN_HAMILTONIAN_POINTS:
        raise InvalidArgumentError(f"Hamiltonian grid needs at least {MIN_HAMILTONIAN_POINTS} nodes, got {m}")

    scale = 1.0 / (12.0 * grid.spacing ** 2)
    laplacian = scale * (
        -30.0 * np.eye(m)
        + 16.0 * (np.eye(m, k=1) + np.eye(m, k=-1))
        - (np.eye(m, k=2) + np.eye(m, k=-2))
    )
    values = np.asarray(potential(grid.nodes), dtype=np.complex128)
    return -laplacian + np.diag(values)
