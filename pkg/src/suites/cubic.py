import numpy as np

from src.components.models import (
    cubic_superpotential,
    gaussian_test_functions,
    refactorization_residual,
    time_reversal,
)
from src.schemas.models import CubicParams
from src.schemas.reports import VerificationReport
from src.suites.base import VerificationSuite


class CubicSuite(VerificationSuite):
    """W^(+-) = +-[1/(x +- i eps) - i (x +- i eps)^2] and M^(+) = T A^(-) B^(-) T."""

    name = "cubic"

    def checks(self):
        return [
            ("cubic.refactorization", self.check_refactorization),
            ("cubic.pt_antisymmetry", self.check_pt_antisymmetry),
            ("cubic.origin_zero", self.check_origin),
            ("cubic.time_reversal", self.check_time_reversal),
        ]

    @property
    def cubic(self) -> CubicParams:
        return CubicParams(epsilon_shift=self.config.cubic_epsilon)

    def _params(self) -> dict:
        return {"epsilon_shift": self.cubic.epsilon_shift}

    def check_refactorization(self) -> VerificationReport:
        mode = self.config.derivative_mode
        grid = self.quadrature_grid if mode == "analytic" else self.uniform_grid
        return refactorization_residual(
            self.cubic.epsilon_shift,
            gaussian_test_functions(self.config.test_function_count, grid),
            grid, mode, tolerance=self.config.tolerance("cubic.refactorization"),
        )

    def check_pt_antisymmetry(self) -> VerificationReport:
        """conj(W(-x)) = -W(x) for both branches on the symmetric grid nodes."""
        x = self.quadrature_grid.nodes
        residuals = {}
        for sign in (1, -1):
            w = cubic_superpotential(sign, self.cubic.epsilon_shift, x)
            mirrored = np.conj(cubic_superpotential(sign, self.cubic.epsilon_shift, -x))
            residuals[f"sign={sign:+d}"] = float(np.max(np.abs(mirrored + w)) / np.max(np.abs(w)))
        return VerificationReport.evaluate(
            check="cubic.pt_antisymmetry",
            residual=max(residuals.values()),
            tolerance=self.config.tolerance("cubic.pt_antisymmetry"),
            params=self._params(),
            metadata=residuals,
        )

    def check_origin(self) -> VerificationReport:
        """W^(+)(0) = +[1/i - i i^2] = 0 at unit shift."""
        return VerificationReport.evaluate(
            check="cubic.origin_zero",
            residual=abs(cubic_superpotential(1, 1.0, 0.0)),
            tolerance=self.config.tolerance("cubic.origin_zero"),
            params={"epsilon_shift": 1.0},
        )

    def check_time_reversal(self) -> VerificationReport:
        grid = self.quadrature_grid
        f = gaussian_test_functions(1, grid, order=0)[0].values * np.exp(1j * grid.nodes)
        twice = time_reversal(time_reversal(f)).values
        return VerificationReport.evaluate(
            check="cubic.time_reversal",
            residual=float(np.max(np.abs(twice - f))),
            tolerance=self.config.tolerance("cubic.time_reversal"),
            params=self._params(),
        )
