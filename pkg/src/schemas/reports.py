import math
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator


class VerificationReport(BaseModel):
    """One named check: residual against tolerance, pass iff residual <= tolerance."""

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    check: str
    params: dict[str, Any] = Field(default_factory=dict)
    residual: float
    tolerance: float = Field(ge=0.0)
    passed: bool = Field(alias="pass")
    metadata: dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def pass_matches_residual(self):
        expected = (not math.isnan(self.residual)) and self.residual <= self.tolerance
        if self.passed != expected:
            raise ValueError(f"pass={self.passed} contradicts residual {self.residual} and tolerance {self.tolerance}")
        return self

    @classmethod
    def evaluate(cls, check: str, residual: float, tolerance: float,
                 params: dict | None = None, metadata: dict | None = None) -> "VerificationReport":
        residual = float(residual)
        return cls(
            check=check,
            params=params or {},
            residual=residual,
            tolerance=float(tolerance),
            passed=(not math.isnan(residual)) and residual <= tolerance,
            metadata=metadata or {},
        )

    @classmethod
    def failure(cls, check: str, tolerance: float, error: BaseException,
                params: dict | None = None, metadata: dict | None = None) -> "VerificationReport":
        """Failing report for a check that raised instead of producing a residual."""
        notes = dict(metadata or {})
        notes["error"] = f"{type(error).__name__}: {error}"
        return cls.evaluate(check, math.inf, tolerance, params, notes)
