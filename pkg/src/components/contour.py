"""
Discretized L2(R): grids on [-L, L], the weighted inner product, 4th-order
finite differences and residual norms.

Families of functions are (N, m) arrays; the weighted sums run over the last
axis so every routine accepts a single function or a whole family.
"""
import numpy as np

from src.logging import logging
from src.exception import InvalidArgumentError, UnsupportedGridError
from src.constants.numerics import GL_PANEL_POINTS, MIN_FD_POINTS, RESIDUAL_FLOOR
from src.schemas.grids import ContourGrid, GridScheme

# Centered 4th-order stencils on offsets -2..2, scaled by 1/(12 h^k).
_FIRST_CENTERED = np.array([1.0, -8.0, 0.0, 8.0, -1.0])
_SECOND_CENTERED = np.array([-1.0, 16.0, -30.0, 16.0, -1.0])

# One-sided 4th-order stencils for the two nodes nearest the left edge.
# The right edge uses the mirror image (sign flip for odd order).
_FIRST_EDGE = (
    np.array([-25.0, 48.0, -36.0, 16.0, -3.0]),
    np.array([-3.0, -10.0, 18.0, -6.0, 1.0]),
)
_SECOND_EDGE = (
    np.array([45.0, -154.0, 214.0, -156.0, 61.0, -10.0]),
    np.array([10.0, -15.0, -4.0, 14.0, -6.0, 1.0]),
)


def make_grid(extent: float, count: int, scheme: GridScheme = "composite-gauss-legendre") -> ContourGrid:
    """
    Build a quadrature grid on [-extent, extent].

    Args:
        extent: half-width L > 0
        count: number of nodes; a multiple of 8 for composite Gauss-Legendre, >= 8 for uniform
        scheme: "composite-gauss-legendre" (default) or "uniform" (midpoint rule)

    Returns:
        ContourGrid
    """
    if not np.isfinite(extent) or extent <= 0.0:
        raise InvalidArgumentError(f"grid extent must be positive, got {extent}")
    if int(count) != count or count < GL_PANEL_POINTS:
        raise InvalidArgumentError(f"grid needs at least {GL_PANEL_POINTS} nodes, got {count}")
    count = int(count)

    if scheme == "composite-gauss-legendre":
        if count % GL_PANEL_POINTS:
            raise InvalidArgumentError(
                f"composite Gauss-Legendre uses {GL_PANEL_POINTS}-point panels; {count} is not a multiple")
        reference_nodes, reference_weights = np.polynomial.legendre.leggauss(GL_PANEL_POINTS)
        edges = np.linspace(-extent, extent, count // GL_PANEL_POINTS + 1)
        mids = 0.5 * (edges[1:] + edges[:-1])
        halves = 0.5 * (edges[1:] - edges[:-1])
        nodes = (mids[:, None] + halves[:, None] * reference_nodes[None, :]).ravel()
        weights = (halves[:, None] * reference_weights[None, :]).ravel()
    elif scheme == "uniform":
        spacing = 2.0 * extent / count
        nodes = -extent + (np.arange(count) + 0.5) * spacing
        weights = np.full(count, spacing)
    else:
        raise InvalidArgumentError(f"unknown grid scheme {scheme!r}")

    grid = ContourGrid(nodes=nodes, weights=weights, extent=float(extent), scheme=scheme)
    logging.info(f"Built {scheme} grid with {count} nodes on [-{extent}, {extent}]")
    return grid


def _aligned(f, grid: ContourGrid) -> np.ndarray:
    f = np.asarray(f, dtype=np.complex128)
    if f.shape[-1] != grid.count:
        raise InvalidArgumentError(f"samples of length {f.shape[-1]} do not match grid count {grid.count}")
    return f


def inner_product(f, g, grid: ContourGrid):
    """sum_i w_i conj(f_i) g_i, antilinear in f. Family inputs broadcast over leading axes."""
    f = _aligned(f, grid)
    g = _aligned(g, grid)
    value = np.sum(grid.weights * np.conj(f) * g, axis=-1)
    return complex(value) if np.ndim(value) == 0 else value


def norm(f, grid: ContourGrid) -> float:
    """Weighted L2 norm over all samples, a family counting as one stacked function."""
    f = _aligned(f, grid)
    return float(np.sqrt(np.sum(grid.weights * np.abs(f) ** 2)))


def derivative(f, grid: ContourGrid, order: int = 1) -> np.ndarray:
    """4th-order finite-difference derivative along the last axis of a uniform grid."""
    if not grid.is_uniform:
        raise UnsupportedGridError("finite differences need a uniform grid")
    if grid.count < MIN_FD_POINTS:
        raise UnsupportedGridError(f"finite differences need at least {MIN_FD_POINTS} nodes")
    if order not in (1, 2):
        raise InvalidArgumentError(f"derivative order must be 1 or 2, got {order}")
    f = _aligned(f, grid)
    h = grid.spacing
    m = grid.count
    out = np.empty_like(f)

    centered = _FIRST_CENTERED if order == 1 else _SECOND_CENTERED
    interior = sum(weight * f[..., offset:m - 4 + offset] for offset, weight in enumerate(centered))
    out[..., 2:m - 2] = interior

    edges = _FIRST_EDGE if order == 1 else _SECOND_EDGE
    mirror = -1.0 if order == 1 else 1.0
    for position, stencil in enumerate(edges):
        width = stencil.size
        out[..., position] = f[..., :width] @ stencil
        out[..., m - 1 - position] = mirror * (f[..., ::-1][..., :width] @ stencil)

    return out / (12.0 * h ** order)


def relative_residual(f, g, grid: ContourGrid) -> float:
    """||f - g|| / max(||f||, ||g||, 1e-300) in the weighted L2 norm."""
    f = _aligned(f, grid)
    g = _aligned(g, grid)
    scale = max(norm(f, grid), norm(g, grid), RESIDUAL_FLOOR)
    return norm(f - g, grid) / scale
