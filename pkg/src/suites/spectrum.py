from functools import cached_property

import numpy as np

from src.exception import InvalidArgumentError
from src.constants.defaults import C_INDEPENDENCE_VALUES, HERMITIAN_LIMIT_ALPHA, HERMITIAN_LIMIT_LEVELS
from src.components.eigensolver import discretize_schrodinger, general_complex_eigen
from src.components.models import eigen_residual, kratzer_energy, kratzer_potential, laguerre_family_jet
from src.schemas.models import KratzerParams
from src.schemas.reports import VerificationReport
from src.schemas.spectra import SpectrumResult
from src.utils.jets import conjugate
from src.suites.base import VerificationSuite


def lowest_eigenvalues(spectrum: SpectrumResult, count: int) -> np.ndarray:
    """The count eigenvalues of smallest real part, in ascending order."""
    if count > spectrum.eigenvalues.size:
        raise InvalidArgumentError(f"spectrum has {spectrum.eigenvalues.size} eigenvalues, {count} requested")
    order = np.argsort(spectrum.eigenvalues.real, kind="stable")
    return spectrum.eigenvalues[order[:count]]


class SpectrumSuite(VerificationSuite):
    """
    Bound-state energies 4n + 2 + 2 q alpha: FD eigensolves of the regularized
    Hamiltonian for both quasi-parities, the Hermitian limit alpha = 1/2,
    and eigen-relations of the closed-form families.
    """

    name = "spectrum"

    def checks(self):
        return [
            ("spectrum.levels", self.check_levels),
            ("spectrum.reality", self.check_reality),
            ("spectrum.hermitian_limit", self.check_hermitian_limit),
            ("spectrum.eigenfunction", lambda: self.check_eigenfunctions("spectrum.eigenfunction", adjoint=False)),
            ("spectrum.dual_eigenfunction", lambda: self.check_eigenfunctions("spectrum.dual_eigenfunction", adjoint=True)),
            ("spectrum.eigenfunction_fd", self.check_eigenfunctions_fd),
            ("spectrum.c_independence", self.check_c_independence),
        ]

    def _spectrum(self, params: KratzerParams) -> SpectrumResult:
        matrix = discretize_schrodinger(lambda x: kratzer_potential(x, params), self.uniform_grid)
        return general_complex_eigen(matrix, backend=self.config.eigen_backend)

    @cached_property
    def spectrum(self) -> SpectrumResult:
        return self._spectrum(self.params)

    def _targets(self) -> list[tuple[int, int, float]]:
        """Every level of either family up to the top requested level, in ascending energy."""
        alpha = self.config.alpha
        cutoff = max(kratzer_energy(q, self.config.spectrum_levels - 1, alpha) for q in (1, -1))
        targets = []
        for q in (1, -1):
            n = 0
            while (energy := kratzer_energy(q, n, alpha)) <= cutoff:
                targets.append((q, n, energy))
                n += 1
        return sorted(targets, key=lambda target: target[2])

    @cached_property
    def matched(self) -> np.ndarray:
        return lowest_eigenvalues(self.spectrum, len(self._targets()))

    def check_levels(self) -> list[VerificationReport]:
        tolerance = self.config.tolerance("spectrum.levels")
        reports = []
        for (q, n, target), found in zip(self._targets(), map(complex, self.matched)):
            reports.append(VerificationReport.evaluate(
                check="spectrum.levels",
                residual=abs(found - target),
                tolerance=tolerance,
                params={**self.base_params(), "q": q, "n": n, "grid_points": self.config.grid_points,
                        "backend": self.spectrum.backend},
                metadata={"target": target, "eigenvalue_real": found.real, "eigenvalue_imag": found.imag},
            ))
        return reports

    def check_reality(self) -> VerificationReport:
        imaginary = [float(abs(found.imag)) for found in self.matched]
        return VerificationReport.evaluate(
            check="spectrum.reality",
            residual=max(imaginary),
            tolerance=self.config.tolerance("spectrum.reality"),
            params=self.base_params(),
            metadata={"imaginary_parts": imaginary},
        )

    def check_hermitian_limit(self) -> VerificationReport:
        """alpha = 1/2: both families together give the odd integers 1, 3, 5, ..."""
        limit = KratzerParams(alpha=HERMITIAN_LIMIT_ALPHA, c=self.config.c, q=1)
        targets = 2.0 * np.arange(HERMITIAN_LIMIT_LEVELS) + 1.0
        lowest = lowest_eigenvalues(self._spectrum(limit), HERMITIAN_LIMIT_LEVELS)
        return VerificationReport.evaluate(
            check="spectrum.hermitian_limit",
            residual=float(np.max(np.abs(lowest - targets))),
            tolerance=self.config.tolerance("spectrum.hermitian_limit"),
            params={"alpha": HERMITIAN_LIMIT_ALPHA, "c": self.config.c, "levels": HERMITIAN_LIMIT_LEVELS},
            metadata={"eigenvalues_real": lowest.real, "max_imag": float(np.max(np.abs(lowest.imag)))},
        )

    def _normalizable_families(self, c: float) -> list[KratzerParams]:
        families = [KratzerParams(alpha=self.config.alpha, c=c, q=q) for q in (1, -1)]
        kept = [p for p in families if p.is_normalizable]
        for p in families:
            if not p.is_normalizable:
                self.logger.info(f"q = {p.q} family (gamma = {p.gamma}) is not normalizable; eigen-relations skipped")
        return kept

    def _max_residual(self, c: float, grid, mode: str, adjoint: bool) -> tuple[float, list]:
        residuals = []
        order = 2 if mode == "analytic" else 0
        for p in self._normalizable_families(c):
            for n in range(self.config.spectrum_levels):
                f = laguerre_family_jet(n, p.gamma, c, grid, order)
                if adjoint:
                    f = conjugate(f)
                energy = kratzer_energy(p.q, n, p.alpha)
                residuals.append(eigen_residual(p.alpha, c, f, energy, grid, mode, adjoint))
        return max(residuals), residuals

    def check_eigenfunctions(self, check: str, adjoint: bool) -> VerificationReport:
        worst, residuals = self._max_residual(self.config.c, self.quadrature_grid, "analytic", adjoint)
        return VerificationReport.evaluate(
            check=check,
            residual=worst,
            tolerance=self.config.tolerance(check),
            params={**self.base_params(), "levels": self.config.spectrum_levels, "derivative_mode": "analytic"},
            metadata={"residuals": residuals},
        )

    def check_eigenfunctions_fd(self) -> VerificationReport:
        worst, residuals = self._max_residual(self.config.c, self.uniform_grid, "fd", adjoint=False)
        return VerificationReport.evaluate(
            check="spectrum.eigenfunction_fd",
            residual=worst,
            tolerance=self.config.tolerance("spectrum.eigenfunction_fd"),
            params={**self.base_params(), "levels": self.config.spectrum_levels, "derivative_mode": "fd"},
            metadata={"residuals": residuals},
        )

    def check_c_independence(self) -> VerificationReport:
        """Same energy targets for every shift c; only the samples change."""
        worst = {c: self._max_residual(c, self.quadrature_grid, "analytic", adjoint=False)[0]
                 for c in C_INDEPENDENCE_VALUES}
        return VerificationReport.evaluate(
            check="spectrum.c_independence",
            residual=max(worst.values()),
            tolerance=self.config.tolerance("spectrum.c_independence"),
            params={"alpha": self.config.alpha, "c_values": list(C_INDEPENDENCE_VALUES)},
            metadata={f"c={c}": value for c, value in worst.items()},
        )
