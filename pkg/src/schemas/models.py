from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator

from src.constants.numerics import ALPHA_INTEGER_DISTANCE


class KratzerParams(BaseModel):
    """
    Parameters of the regularized oscillator -d^2/dx^2 + G/(x-ic)^2 + (x-ic)^2.

    gamma = q * alpha is the Laguerre order of the q family; its bound-state
    energies are 4n + 2 + 2 q alpha.
    """

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(gt=0.0)
    c: float = Field(gt=0.0)
    q: Literal[1, -1] = 1

    @field_validator("alpha")
    @classmethod
    def alpha_not_integer(cls, value: float) -> float:
        if abs(value - round(value)) <= ALPHA_INTEGER_DISTANCE:
            raise ValueError(f"alpha = {value} is (numerically) an integer")
        return value

    @computed_field
    @property
    def gamma(self) -> float:
        return self.q * self.alpha

    @computed_field
    @property
    def g_coupling(self) -> float:
        return self.alpha ** 2 - 0.25

    @property
    def is_normalizable(self) -> bool:
        return self.gamma > -1.0


class CubicParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    epsilon_shift: float = Field(gt=0.0)


class LadderConstant(BaseModel):
    """c5(n, gamma) = -4 sqrt((n+1)(n+gamma+1))"""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=-1)
    gamma: float
    value: float = Field(le=0.0)


class FunctionJet(BaseModel):
    """
    Samples of a function and its first derivatives on the grid nodes.

    terms[k] holds f^(k). A jet of order 0 only carries values; derivatives
    are then taken by finite differences.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    terms: tuple[np.ndarray, ...]

    @field_validator("terms", mode="before")
    @classmethod
    def aligned_terms(cls, terms):
        if len(terms) == 0:
            raise ValueError("a jet needs at least the function values")
        arrays = tuple(np.asarray(t, dtype=np.complex128) for t in terms)
        shape = arrays[0].shape
        if any(a.shape != shape for a in arrays):
            raise ValueError("all jet terms must have the same shape")
        return arrays

    @property
    def values(self) -> np.ndarray:
        return self.terms[0]

    @property
    def order(self) -> int:
        return len(self.terms) - 1
