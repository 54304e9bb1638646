from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.constants.defaults import (
    DEFAULT_ALPHA,
    DEFAULT_C,
    DEFAULT_CUBIC_EPSILON,
    DEFAULT_DERIVATIVE_MODE,
    DEFAULT_DUAL,
    DEFAULT_EIGEN_BACKEND,
    DEFAULT_GRID_EXTENT,
    DEFAULT_GRID_POINTS,
    DEFAULT_OUTPUT_DIR,
    DEFAULT_OUTPUT_FORMAT,
    DEFAULT_PARTNER_LEVELS,
    DEFAULT_Q,
    DEFAULT_RIESZ_SIZES,
    DEFAULT_SPECTRUM_LEVELS,
    DEFAULT_TEST_FUNCTION_COUNT,
    DEFAULT_TRUNC_N,
)
from src.constants.numerics import GL_PANEL_POINTS, MIN_HAMILTONIAN_POINTS
from src.constants.tolerances import DEFAULT_TOLERANCES
from src.schemas.models import CubicParams, KratzerParams


class RunConfig(BaseModel):
    """
    Everything a verification run reads. Missing fields take the defaults in
    src.constants.defaults; tolerances only lists overrides.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    alpha: float = DEFAULT_ALPHA
    c: float = DEFAULT_C
    q: int = DEFAULT_Q
    gamma_override: Optional[float] = None
    cubic_epsilon: float = DEFAULT_CUBIC_EPSILON
    grid_extent: float = Field(default=DEFAULT_GRID_EXTENT, gt=0.0)
    grid_points: int = Field(default=DEFAULT_GRID_POINTS, ge=MIN_HAMILTONIAN_POINTS)
    trunc_n: int = Field(default=DEFAULT_TRUNC_N, ge=3)
    derivative_mode: Literal["analytic", "fd"] = DEFAULT_DERIVATIVE_MODE
    tolerances: dict[str, float] = Field(default_factory=dict)
    output_format: Literal["csv", "json"] = DEFAULT_OUTPUT_FORMAT
    output_dir: Path = Path(DEFAULT_OUTPUT_DIR)
    eigen_backend: Literal["native", "lapack"] = DEFAULT_EIGEN_BACKEND
    riesz_sizes: tuple[int, ...] = DEFAULT_RIESZ_SIZES
    spectrum_levels: int = Field(default=DEFAULT_SPECTRUM_LEVELS, ge=1)
    partner_levels: int = Field(default=DEFAULT_PARTNER_LEVELS, ge=1)
    test_function_count: int = Field(default=DEFAULT_TEST_FUNCTION_COUNT, ge=1)
    dual: Literal["span", "adjoint"] = DEFAULT_DUAL

    @field_validator("q")
    @classmethod
    def quasi_parity(cls, value: int) -> int:
        if value not in (1, -1):
            raise ValueError(f"q must be +1 or -1, got {value}")
        return value

    @field_validator("grid_points")
    @classmethod
    def whole_panels(cls, value: int) -> int:
        if value % GL_PANEL_POINTS:
            raise ValueError(f"grid_points must be a multiple of {GL_PANEL_POINTS}, got {value}")
        return value

    @field_validator("tolerances")
    @classmethod
    def known_checks(cls, value: dict[str, float]) -> dict[str, float]:
        unknown = sorted(set(value) - set(DEFAULT_TOLERANCES))
        if unknown:
            raise ValueError(f"unknown tolerance names: {', '.join(unknown)}")
        negative = [name for name, tol in value.items() if tol < 0]
        if negative:
            raise ValueError(f"tolerances must be nonnegative: {', '.join(negative)}")
        return value

    @field_validator("riesz_sizes")
    @classmethod
    def increasing_sizes(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        if len(value) < 2 or any(b <= a for a, b in zip(value, value[1:])) or value[0] < 3:
            raise ValueError(f"riesz_sizes must be at least two increasing sizes >= 3, got {value}")
        return value

    @model_validator(mode="after")
    def model_invariants(self):
        try:
            KratzerParams(alpha=self.alpha, c=self.c, q=self.q)
            CubicParams(epsilon_shift=self.cubic_epsilon)
        except ValidationError as e:
            raise ValueError("; ".join(error["msg"] for error in e.errors()))
        if self.gamma_override is not None and self.gamma_override <= -1.0:
            raise ValueError(f"gamma_override must exceed -1, got {self.gamma_override}")
        return self

    @property
    def kratzer(self) -> KratzerParams:
        return KratzerParams(alpha=self.alpha, c=self.c, q=self.q)

    @property
    def gamma(self) -> float:
        """Laguerre order of the configured family, gamma_override when set."""
        return self.kratzer.gamma if self.gamma_override is None else self.gamma_override

    def tolerance(self, check: str) -> float:
        return self.tolerances.get(check, DEFAULT_TOLERANCES[check])
