"""
Generalized Laguerre polynomials L_n^(gamma)(z) for complex z and real,
possibly negative, non-integer order, plus the generalized factorial eps_n!.

Ascending three-term recurrence; intended for n up to a few dozen.
"""
from typing import Union

import numpy as np
from scipy.special import binom

from src.exception import InvalidArgumentError
from src.schemas.pseudobosons import EpsilonSequence

ComplexLike = Union[complex, np.ndarray]


def _validate(n: int, gamma: float, z) -> np.ndarray:
    if int(n) != n or n < 0:
        raise InvalidArgumentError(f"Laguerre degree must be a nonnegative integer, got {n}")
    if not np.isfinite(gamma):
        raise InvalidArgumentError(f"Laguerre order must be finite, got {gamma}")
    z = np.asarray(z, dtype=np.complex128)
    if not np.all(np.isfinite(z)):
        raise InvalidArgumentError("Laguerre argument must be finite")
    return z


def _unwrap(values: np.ndarray) -> ComplexLike:
    return complex(values) if values.ndim == 0 else values


def laguerre(n: int, gamma: float, z: ComplexLike) -> ComplexLike:
    """
    Evaluate L_n^(gamma)(z).

    Args:
        n: degree, n >= 0
        gamma: order, any finite real
        z: complex scalar or array

    Returns:
        complex for scalar z, complex array otherwise
    """
    z = _validate(n, gamma, z)
    previous = np.ones_like(z)
    if n == 0:
        return _unwrap(previous)
    current = 1.0 + gamma - z
    for k in range(1, int(n)):
        previous, current = current, ((2 * k + 1 + gamma - z) * current - (k + gamma) * previous) / (k + 1)
    return _unwrap(current)


def laguerre_derivative(n: int, gamma: float, z: ComplexLike) -> ComplexLike:
    """d/dz L_n^(gamma)(z) = -L_{n-1}^(gamma+1)(z)."""
    z = _validate(n, gamma, z)
    if n == 0:
        return _unwrap(np.zeros_like(z))
    return _unwrap(-np.asarray(laguerre(n - 1, gamma + 1.0, z)))


def laguerre_derivatives(n: int, gamma: float, z: ComplexLike, order: int) -> list:
    """
    All derivatives d^k/dz^k L_n^(gamma)(z) for k = 0..order.

    Uses d^k L_n^(gamma) = (-1)^k L_{n-k}^(gamma+k); terms with k > n vanish.
    """
    z = _validate(n, gamma, z)
    derivatives = []
    for k in range(order + 1):
        if k > n:
            derivatives.append(np.zeros_like(z))
        else:
            derivatives.append((-1.0) ** k * np.asarray(laguerre(n - k, gamma + k, z)))
    return derivatives


def laguerre_coefficients(n: int, gamma: float) -> np.ndarray:
    """Monomial coefficients c_k of L_n^(gamma)(z) = sum_k c_k z^k (explicit sum)."""
    _validate(n, gamma, 0.0)
    k = np.arange(n + 1)
    factorials = np.cumprod(np.concatenate(([1.0], np.arange(1, n + 1, dtype=float))))
    return (-1.0) ** k * binom(n + gamma, n - k) / factorials


def epsilon_factorial(n: int, eps: EpsilonSequence) -> float:
    """eps_n! = eps_1 eps_2 ... eps_n, with eps_0! = 1."""
    if int(n) != n or n < 0 or n >= len(eps):
        raise InvalidArgumentError(f"index {n} outside the stored eps range 0..{len(eps) - 1}")
    return float(np.prod(eps.values[1:n + 1]))
