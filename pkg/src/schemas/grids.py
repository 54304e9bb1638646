from typing import Literal

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from src.constants.numerics import GRID_SYMMETRY_TOL, WEIGHT_SUM_TOL

# Complex samples f(x_i) aligned with a ContourGrid. A family of N functions
# is an (N, m) array with one function per row.
SampledFunction = npt.NDArray[np.complex128]

GridScheme = Literal["composite-gauss-legendre", "uniform"]


class ContourGrid(BaseModel):
    """Real nodes on [-L, L] with positive quadrature weights."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    nodes: np.ndarray
    weights: np.ndarray
    extent: float
    scheme: GridScheme

    @field_validator("nodes", "weights", mode="before")
    @classmethod
    def as_readonly_float(cls, values):
        values = np.array(values, dtype=float)
        values.flags.writeable = False
        return values

    @model_validator(mode="after")
    def check_quadrature(self):
        nodes, weights = self.nodes, self.weights
        if nodes.ndim != 1 or nodes.shape != weights.shape:
            raise ValueError("nodes and weights must be 1-d arrays of equal length")
        if np.any(np.diff(nodes) <= 0.0):
            raise ValueError("nodes must be strictly increasing")
        if np.max(np.abs(nodes + nodes[::-1])) > GRID_SYMMETRY_TOL * max(self.extent, 1.0):
            raise ValueError("nodes must be symmetric about 0")
        if np.any(weights <= 0.0):
            raise ValueError("weights must be positive")
        if abs(weights.sum() - 2.0 * self.extent) > WEIGHT_SUM_TOL * 2.0 * self.extent:
            raise ValueError(f"weights sum to {weights.sum()}, expected {2.0 * self.extent}")
        return self

    @property
    def count(self) -> int:
        return int(self.nodes.size)

    @property
    def is_uniform(self) -> bool:
        return self.scheme == "uniform"

    @property
    def spacing(self) -> float:
        """Node spacing of a uniform grid."""
        return 2.0 * self.extent / self.count
