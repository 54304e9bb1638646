from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.schemas.grids import ContourGrid


class EpsilonSequence(BaseModel):
    """eps_0 = 0 < eps_1 < ... : the eigenvalue ladder of M = b a."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    values: np.ndarray

    @field_validator("values", mode="before")
    @classmethod
    def strictly_increasing_from_zero(cls, values):
        values = np.array(values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise ValueError("eps must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(values)):
            raise ValueError("eps must be finite")
        if values[0] != 0.0:
            raise ValueError(f"eps_0 must be exactly 0, got {values[0]}")
        # Equal neighbours would be a degenerate level, which is not supported.
        if np.any(np.diff(values) <= 0.0):
            raise ValueError("eps must be strictly increasing")
        values.flags.writeable = False
        return values

    @classmethod
    def bosonic(cls, length: int) -> "EpsilonSequence":
        return cls(values=np.arange(length, dtype=float))

    def __len__(self) -> int:
        return int(self.values.size)


class TruncatedLadder(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    a_matrix: np.ndarray
    b_matrix: np.ndarray
    eps: EpsilonSequence

    @model_validator(mode="after")
    def square_and_aligned(self):
        n = self.a_matrix.shape[0]
        if self.a_matrix.shape != (n, n) or self.b_matrix.shape != (n, n):
            raise ValueError("ladder matrices must be square and of equal size")
        if len(self.eps) < n + 1:
            raise ValueError("eps is too short for the ladder size")
        return self

    @property
    def size(self) -> int:
        return int(self.a_matrix.shape[0])


class BiorthogonalSystem(BaseModel):
    """
    Truncated families Phi_0..Phi_{N-1} and eta_0..eta_{N-1} sampled on a grid.

    phi and eta are (N, m) arrays. dual_kind records how eta was obtained:
    "span" for the biorthogonal basis of span{Phi}, "adjoint" for the
    normalized eigenfunctions of H^dagger, "self" for orthonormal families.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    phi: np.ndarray
    eta: np.ndarray
    grid: ContourGrid
    phi_normalizations: np.ndarray
    eta_normalizations: np.ndarray
    dual_kind: Literal["span", "adjoint", "self"] = "adjoint"
    metadata: dict[str, Any] = Field(default_factory=dict)

    @field_validator("phi", "eta", "phi_normalizations", "eta_normalizations", mode="before")
    @classmethod
    def as_complex(cls, values):
        return np.array(values, dtype=np.complex128)

    @model_validator(mode="after")
    def families_aligned(self):
        phi, eta = self.phi, self.eta
        if phi.ndim != 2 or phi.shape != eta.shape:
            raise ValueError("phi and eta must be (N, m) arrays of equal shape")
        if phi.shape[1] != self.grid.count:
            raise ValueError("family samples are not aligned with the grid")
        if np.shape(self.phi_normalizations) != (phi.shape[0],) or np.shape(self.eta_normalizations) != (phi.shape[0],):
            raise ValueError("one normalization constant per index is required")
        return self

    @classmethod
    def self_dual(cls, family: np.ndarray, grid: ContourGrid) -> "BiorthogonalSystem":
        family = np.asarray(family, dtype=np.complex128)
        ones = np.ones(family.shape[0], dtype=np.complex128)
        return cls(phi=family, eta=family, grid=grid, phi_normalizations=ones,
                   eta_normalizations=ones, dual_kind="self")

    @property
    def size(self) -> int:
        return int(self.phi.shape[0])


class GramPair(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    g_phi: np.ndarray
    g_eta: np.ndarray
    eigenvalues_phi: np.ndarray
    eigenvalues_eta: np.ndarray

    @property
    def condition_phi(self) -> float:
        return float(self.eigenvalues_phi[-1] / self.eigenvalues_phi[0])

    @property
    def condition_eta(self) -> float:
        return float(self.eigenvalues_eta[-1] / self.eigenvalues_eta[0])


class GridOperator(BaseModel):
    """
    Dense m x m operator on grid samples.

    The L2 adjoint on a weighted grid is W^-1 A^H W; adjoint() is the only
    place a dagger is formed.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    matrix: np.ndarray
    grid: ContourGrid

    @model_validator(mode="after")
    def matches_grid(self):
        m = self.grid.count
        if self.matrix.shape != (m, m):
            raise ValueError(f"operator shape {self.matrix.shape} does not match grid count {m}")
        return self

    def apply(self, f: np.ndarray) -> np.ndarray:
        """Apply to one function (m,) or a family (N, m)."""
        return np.asarray(f) @ self.matrix.T

    def adjoint(self) -> "GridOperator":
        w = self.grid.weights
        return GridOperator(matrix=(self.matrix.conj().T * w[None, :]) / w[:, None], grid=self.grid)

    def compose(self, other: "GridOperator") -> "GridOperator":
        """self after other."""
        return GridOperator(matrix=self.matrix @ other.matrix, grid=self.grid)

    def __sub__(self, other: "GridOperator") -> "GridOperator":
        return GridOperator(matrix=self.matrix - other.matrix, grid=self.grid)


class HermitizedSystem(BaseModel):
    """
    h, e_n and Theta^(1/2) expressed in an orthonormal frame of span{Phi}.

    frame_phi holds the frame coordinates of Phi_n as columns, so the matrix
    of M there is frame_phi diag(eps) frame_phi^-1.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    h_matrix: np.ndarray
    e_vectors: np.ndarray
    sqrt_s_eta: np.ndarray
    inv_sqrt_s_eta: np.ndarray
    frame_phi: np.ndarray
    eps: np.ndarray


class RieszDiagnostic(BaseModel):
    model_config = ConfigDict(frozen=True)

    sizes: list[int]
    condition_phi: list[float]
    condition_eta: list[float]
    verdict: Literal["NON-RIESZ", "RIESZ-LIKE"]

    @property
    def rows(self) -> list[tuple[int, float, float]]:
        return list(zip(self.sizes, self.condition_phi, self.condition_eta))
