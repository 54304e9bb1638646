from math import comb
from typing import Literal

import numpy as np

from src.exception import InvalidArgumentError
from src.components.contour import derivative
from src.schemas.grids import ContourGrid
from src.schemas.models import FunctionJet

DerivativeMode = Literal["analytic", "fd"]


def jet_from_values(values: np.ndarray) -> FunctionJet:
    """Order-0 jet for fd mode."""
    return FunctionJet(terms=(np.asarray(values, dtype=np.complex128),))


def differentiate(f: FunctionJet, grid: ContourGrid, mode: DerivativeMode) -> FunctionJet:
    """
    d/dx of a jet.

    Args:
        f: jet to differentiate
        grid: grid the samples live on
        mode: "analytic" drops the leading term, "fd" applies the 4th-order stencil

    Returns:
        FunctionJet one order lower (analytic) or of order 0 (fd)
    """
    if mode == "analytic":
        if f.order == 0:
            raise InvalidArgumentError("analytic mode ran out of derivatives; supply a higher-order jet")
        return FunctionJet(terms=f.terms[1:])
    if mode == "fd":
        return jet_from_values(derivative(f.values, grid, order=1))
    raise InvalidArgumentError(f"unknown derivative mode {mode!r}")


def multiply(coefficient: FunctionJet, f: FunctionJet) -> FunctionJet:
    """Pointwise product with Leibniz-rule derivatives, up to the lower of the two orders."""
    order = min(coefficient.order, f.order)
    terms = []
    for j in range(order + 1):
        terms.append(sum(comb(j, i) * coefficient.terms[i] * f.terms[j - i] for i in range(j + 1)))
    return FunctionJet(terms=tuple(terms))


def combine(*pairs: tuple[complex, FunctionJet]) -> FunctionJet:
    """sum_k s_k f_k, truncated to the lowest order among the f_k."""
    order = min(f.order for _, f in pairs)
    terms = tuple(sum(s * f.terms[j] for s, f in pairs) for j in range(order + 1))
    return FunctionJet(terms=terms)


def scale(s: complex, f: FunctionJet) -> FunctionJet:
    return FunctionJet(terms=tuple(s * t for t in f.terms))


def conjugate(f: FunctionJet) -> FunctionJet:
    """Pointwise complex conjugation T; commutes with d/dx on the real line."""
    return FunctionJet(terms=tuple(np.conj(t) for t in f.terms))
