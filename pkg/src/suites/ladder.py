from functools import cached_property

import numpy as np

from src.constants.numerics import RESIDUAL_FLOOR
from src.components.contour import inner_product, norm, relative_residual
from src.components.models import (
    build_model_nlpb,
    epsilon_sequence_from_model,
    formal_adjoint_ladder,
    kratzer_energy,
    laguerre_family_jet,
    model_jets,
    operator_eigen_residual,
    second_order_ladder,
)
from src.components.pseudoboson_core import (
    adjoint_ladder_residual,
    build_ladder_matrices,
    ladder_generation_residual,
    number_operators,
)
from src.schemas.pseudobosons import BiorthogonalSystem, EpsilonSequence
from src.schemas.reports import VerificationReport
from src.suites.base import VerificationSuite


class LadderSuite(VerificationSuite):
    """
    Lowering/raising on Phi and eta, normalization-free eigen-relations of
    A(alpha) and B(alpha), and the coordinate and grid realizations of a, b.
    """

    name = "ladder"

    def checks(self):
        return [
            ("ladder.lowering", self.check_lowering),
            ("ladder.raising", self.check_raising),
            ("ladder.ground_annihilation", self.check_ground),
            ("ladder.adjoint_raising", self.check_adjoint_raising),
            ("ladder.adjoint_lowering", self.check_adjoint_lowering),
            ("ladder.dual_ground_annihilation", self.check_dual_ground),
            ("ladder.eigen_relation", self.check_eigen_relation),
            ("ladder.colinearity", self.check_colinearity),
            ("ladder.energy_identity", self.check_energy_identity),
            ("ladder.coordinates", self.check_coordinates),
            ("ladder.generation", lambda: ladder_generation_residual(
                self.system, self.eps, self.config.tolerance("ladder.generation"))),
            ("ladder.grid_adjoint", lambda: adjoint_ladder_residual(
                self.system, self.eps, self.config.tolerance("ladder.grid_adjoint"))),
        ]

    @cached_property
    def system(self) -> BiorthogonalSystem:
        return build_model_nlpb(self.params, self.config.trunc_n, self.quadrature_grid, dual=self.config.dual)

    @cached_property
    def eps(self) -> EpsilonSequence:
        return epsilon_sequence_from_model(self.params.gamma, self.config.trunc_n + 1)

    @cached_property
    def jets(self):
        return model_jets(self.system, self.params, order=2)

    @property
    def roots(self) -> np.ndarray:
        return np.sqrt(self.eps.values)

    def _ladder(self, kind: str, f):
        """a = -A(alpha), b = -B(alpha) in analytic mode."""
        return -second_order_ladder(kind, self.config.alpha, self.config.c, f, self.quadrature_grid).values

    def _adjoint(self, kind: str, f):
        return formal_adjoint_ladder(kind, self.config.alpha, self.config.c, f, self.quadrature_grid).values

    def _report(self, check: str, residual: float, **metadata) -> VerificationReport:
        return VerificationReport.evaluate(
            check=check,
            residual=residual,
            tolerance=self.config.tolerance(check),
            params={**self.base_params(), "n_levels": self.config.trunc_n, "dual": self.config.dual},
            metadata=metadata,
        )

    def check_lowering(self) -> VerificationReport:
        phi, _ = self.jets
        size = self.system.size
        lhs = np.array([self._ladder("A", phi[n]) for n in range(1, size)])
        rhs = self.roots[1:size, None] * np.array([f.values for f in phi[:size - 1]])
        return self._report("ladder.lowering", relative_residual(lhs, rhs, self.quadrature_grid))

    def check_raising(self) -> VerificationReport:
        phi, _ = self.jets
        size = self.system.size
        lhs = np.array([self._ladder("B", phi[n]) for n in range(size - 1)])
        rhs = self.roots[1:size, None] * np.array([f.values for f in phi[1:size]])
        return self._report("ladder.raising", relative_residual(lhs, rhs, self.quadrature_grid))

    def check_ground(self) -> VerificationReport:
        phi, _ = self.jets
        grid = self.quadrature_grid
        return self._report("ladder.ground_annihilation", norm(self._ladder("A", phi[0]), grid) / norm(phi[0].values, grid))

    def check_adjoint_raising(self) -> VerificationReport:
        """a^dagger eta_n = sqrt(eps_{n+1}) eta_{n+1} with a^dagger = T b T on the H^dagger duals."""
        _, eta = self.jets
        size = self.system.size
        lhs = np.array([self._adjoint("a", eta[n]) for n in range(size - 1)])
        rhs = self.roots[1:size, None] * np.array([f.values for f in eta[1:size]])
        return self._report("ladder.adjoint_raising", relative_residual(lhs, rhs, self.quadrature_grid))

    def check_adjoint_lowering(self) -> VerificationReport:
        _, eta = self.jets
        size = self.system.size
        lhs = np.array([self._adjoint("b", eta[n]) for n in range(1, size)])
        rhs = self.roots[1:size, None] * np.array([f.values for f in eta[:size - 1]])
        return self._report("ladder.adjoint_lowering", relative_residual(lhs, rhs, self.quadrature_grid))

    def check_dual_ground(self) -> VerificationReport:
        _, eta = self.jets
        grid = self.quadrature_grid
        return self._report("ladder.dual_ground_annihilation",
                            norm(self._adjoint("b", eta[0]), grid) / norm(eta[0].values, grid))

    def check_eigen_relation(self) -> VerificationReport:
        """B(alpha)A(alpha) F_n = eps_n F_n and A(alpha)B(alpha) F_n = eps_{n+1} F_n on unnormalized F_n."""
        grid = self.quadrature_grid
        alpha, c, gamma = self.config.alpha, self.config.c, self.params.gamma
        residuals = []
        for n in range(self.system.size):
            f = laguerre_family_jet(n, gamma, c, grid, order=4)
            lowered = second_order_ladder("A", alpha, c, f, grid)
            raised = second_order_ladder("B", alpha, c, f, grid)
            residuals.append(operator_eigen_residual(second_order_ladder("B", alpha, c, lowered, grid),
                                                     self.eps.values[n], f, grid))
            residuals.append(operator_eigen_residual(second_order_ladder("A", alpha, c, raised, grid),
                                                     self.eps.values[n + 1], f, grid))
        return self._report("ladder.eigen_relation", max(residuals))

    def check_colinearity(self) -> VerificationReport:
        """A(alpha) F_{n+1} is parallel to F_n; the measured constant is -4 (n + 1 + gamma)."""
        grid = self.quadrature_grid
        alpha, c, gamma = self.config.alpha, self.config.c, self.params.gamma
        orthogonal, constants = [], []
        for n in range(self.system.size - 1):
            image = second_order_ladder("A", alpha, c, laguerre_family_jet(n + 1, gamma, c, grid, order=2), grid).values
            target = laguerre_family_jet(n, gamma, c, grid, order=0).values
            mu = inner_product(target, image, grid) / inner_product(target, target, grid)
            orthogonal.append(norm(image - mu * target, grid) / max(norm(image, grid), RESIDUAL_FLOOR))
            constants.append(mu)
        return self._report("ladder.colinearity", max(orthogonal),
                            measured_lowering=[m.real for m in constants],
                            measured_phase=[float(np.angle(m)) for m in constants],
                            c5=self.system.metadata.get("c5"))

    def check_energy_identity(self) -> VerificationReport:
        """(eps_{n+1} - eps_n)/8 = 4n + 2 + 2 q alpha."""
        eps = self.eps.values
        deviations = [abs((eps[n + 1] - eps[n]) / 8.0 - kratzer_energy(self.config.q, n, self.config.alpha))
                      for n in range(len(eps) - 1)]
        return self._report("ladder.energy_identity", max(deviations))

    def check_coordinates(self) -> VerificationReport:
        """m0 = b a = diag(eps_0..eps_{N-1}); n0 = a b = diag(eps_1..eps_{N-1}, 0)."""
        size = self.config.trunc_n
        ladder = build_ladder_matrices(self.eps, size)
        m0, n0 = number_operators(ladder)
        levels = self.eps.values
        expected_n0 = np.diag(np.append(levels[1:size], 0.0))
        scale = levels[size - 1]
        residual = max(np.abs(m0 - np.diag(levels[:size])).max(), np.abs(n0 - expected_n0).max()) / scale
        return self._report("ladder.coordinates", float(residual), truncation_artifact_index=size - 1)
