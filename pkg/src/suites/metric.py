from functools import cached_property

import numpy as np

from src.components.contour import relative_residual
from src.components.eigensolver import general_complex_eigen
from src.components.models import build_model_nlpb, epsilon_sequence_from_model
from src.components.pseudoboson_core import (
    build_ladder_matrices,
    dyadic_operator,
    gram_matrices,
    hermitize,
    intertwining_residual,
    metric_operators,
    riesz_diagnostic,
    theta_factorization_residual,
)
from src.schemas.pseudobosons import BiorthogonalSystem, EpsilonSequence, HermitizedSystem
from src.schemas.reports import VerificationReport
from src.suites.base import VerificationSuite


class MetricSuite(VerificationSuite):
    """
    S_Phi, S_eta and their Gram matrices, intertwining with M_0 and N_0,
    hermitization through Theta = S_eta, and the non-Riesz diagnostic.

    Gram identities only hold for the biorthogonal basis of the truncated
    span, so this suite always builds span duals.
    """

    name = "metric"

    def checks(self):
        return [
            ("metric.s_eta_maps_phi", self.check_s_eta),
            ("metric.gram_inverse", self.check_gram_inverse),
            ("metric.intertwining_m", lambda: intertwining_residual(
                self.system, self.eps, "M", self.config.tolerance("metric.intertwining_m"))),
            ("metric.intertwining_n", lambda: intertwining_residual(
                self.system, self.eps, "N", self.config.tolerance("metric.intertwining_n"))),
            ("metric.weighted_adjoint", self.check_weighted_adjoint),
            ("metric.hermiticity", self.check_hermiticity),
            ("metric.orthonormality", self.check_orthonormality),
            ("metric.hermitized_spectrum", self.check_hermitized_spectrum),
            ("metric.theta_factorization", lambda: theta_factorization_residual(
                self.system, build_ladder_matrices(self.eps, self.config.trunc_n),
                self.config.tolerance("metric.theta_factorization"))),
            ("metric.riesz", self.check_riesz),
        ]

    @cached_property
    def system(self) -> BiorthogonalSystem:
        return build_model_nlpb(self.params, self.config.trunc_n, self.quadrature_grid, dual="span")

    @cached_property
    def eps(self) -> EpsilonSequence:
        return epsilon_sequence_from_model(self.params.gamma, self.config.trunc_n + 1)

    @cached_property
    def hermitized(self) -> HermitizedSystem:
        return hermitize(self.system, self.eps)

    def _report(self, check: str, residual: float, **metadata) -> VerificationReport:
        return VerificationReport.evaluate(
            check=check,
            residual=residual,
            tolerance=self.config.tolerance(check),
            params={**self.base_params(), "n_levels": self.config.trunc_n, "dual": "span"},
            metadata=metadata,
        )

    def check_s_eta(self) -> VerificationReport:
        """S_eta Phi_n = eta_n and S_Phi eta_n = Phi_n."""
        s_phi, s_eta = metric_operators(self.system)
        grid = self.system.grid
        forward = relative_residual(s_eta.apply(self.system.phi), self.system.eta, grid)
        backward = relative_residual(s_phi.apply(self.system.eta), self.system.phi, grid)
        return self._report("metric.s_eta_maps_phi", max(forward, backward),
                            s_eta_residual=forward, s_phi_residual=backward)

    def check_gram_inverse(self) -> VerificationReport:
        grams = gram_matrices(self.system)
        product = grams.g_phi @ grams.g_eta
        residual = float(np.abs(product - np.eye(product.shape[0])).max())
        return self._report("metric.gram_inverse", residual,
                            condition_phi=grams.condition_phi, condition_eta=grams.condition_eta)

    def check_weighted_adjoint(self) -> VerificationReport:
        """The grid adjoint of M_0 = sum eps_n |Phi_n><eta_n| is Mfrak_0 = sum eps_n |eta_n><Phi_n|."""
        levels = self.eps.values[:self.system.size]
        number = dyadic_operator(levels, self.system.phi, self.system.eta, self.system.grid)
        partner = dyadic_operator(levels, self.system.eta, self.system.phi, self.system.grid)
        residual = np.linalg.norm(number.adjoint().matrix - partner.matrix) / np.linalg.norm(partner.matrix)
        return self._report("metric.weighted_adjoint", float(residual))

    def check_hermiticity(self) -> VerificationReport:
        h = self.hermitized.h_matrix
        return self._report("metric.hermiticity", float(np.linalg.norm(h - h.conj().T) / np.linalg.norm(h)))

    def check_orthonormality(self) -> VerificationReport:
        e = self.hermitized.e_vectors
        overlap = e.conj().T @ e
        return self._report("metric.orthonormality", float(np.abs(overlap - np.eye(overlap.shape[0])).max()))

    def check_hermitized_spectrum(self) -> VerificationReport:
        """The native eigensolver recovers eps_0..eps_{N-1} from h."""
        result = general_complex_eigen(self.hermitized.h_matrix, backend="native")
        expected = self.hermitized.eps
        residual = float(np.max(np.abs(result.eigenvalues - expected)) / np.max(expected))
        return self._report("metric.hermitized_spectrum", residual,
                            qr_iterations=result.iterations, max_imag=float(np.max(np.abs(result.eigenvalues.imag))))

    def check_riesz(self) -> VerificationReport:
        """Residual 0 when both Gram condition numbers grow at every step, 1 otherwise."""
        diagnostic = riesz_diagnostic(
            lambda size: build_model_nlpb(self.params, size, self.quadrature_grid, dual="span"),
            self.config.riesz_sizes,
        )
        return VerificationReport.evaluate(
            check="metric.riesz",
            residual=0.0 if diagnostic.verdict == "NON-RIESZ" else 1.0,
            tolerance=self.config.tolerance("metric.riesz"),
            params={**self.base_params(), "sizes": list(diagnostic.sizes)},
            metadata={"verdict": diagnostic.verdict, "condition_phi": diagnostic.condition_phi,
                      "condition_eta": diagnostic.condition_eta},
        )
