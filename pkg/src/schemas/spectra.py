from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict


class SpectrumResult(BaseModel):
    """Eigenvalues sorted by real part, then imaginary part."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    eigenvalues: np.ndarray
    iterations: int
    backend: Literal["native", "lapack"]
    residuals: Optional[np.ndarray] = None
    vectors: Optional[np.ndarray] = None
