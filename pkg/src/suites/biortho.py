from functools import cached_property

import numpy as np

from src.components.contour import relative_residual
from src.components.models import build_model_nlpb
from src.components.pseudoboson_core import biorthogonality_matrix, oblique_projector
from src.schemas.pseudobosons import BiorthogonalSystem
from src.schemas.reports import VerificationReport
from src.suites.base import VerificationSuite


class BiorthoSuite(VerificationSuite):
    """<Phi_n, eta_m> = delta_nm for both dual constructions, and the oblique projector X."""

    name = "biortho"

    def checks(self):
        return [
            ("biortho.span_duals", lambda: self.check_biorthogonality("span")),
            ("biortho.adjoint_duals", lambda: self.check_biorthogonality("adjoint")),
            ("biortho.projector_idempotent", self.check_idempotent),
            ("biortho.projector_completeness", self.check_completeness),
        ]

    def system(self, dual: str) -> BiorthogonalSystem:
        return build_model_nlpb(self.params, self.config.trunc_n, self.quadrature_grid, dual=dual)

    @cached_property
    def configured_system(self) -> BiorthogonalSystem:
        return self.system(self.config.dual)

    def check_biorthogonality(self, dual: str) -> VerificationReport:
        check = f"biortho.{dual}_duals"
        system = self.configured_system if dual == self.config.dual else self.system(dual)
        deviation = np.abs(biorthogonality_matrix(system) - np.eye(system.size))
        worst = np.unravel_index(np.argmax(deviation), deviation.shape)
        return VerificationReport.evaluate(
            check=check,
            residual=float(deviation.max()),
            tolerance=self.config.tolerance(check),
            params={**self.base_params(), "n_levels": system.size, "dual": dual},
            metadata={"worst_entry": [int(i) for i in worst]},
        )

    def check_idempotent(self) -> VerificationReport:
        x = oblique_projector(self.configured_system)
        squared = x.compose(x)
        residual = np.linalg.norm(squared.matrix - x.matrix) / np.linalg.norm(x.matrix)
        hermitian_defect = np.linalg.norm(x.adjoint().matrix - x.matrix) / np.linalg.norm(x.matrix)
        return VerificationReport.evaluate(
            check="biortho.projector_idempotent",
            residual=residual,
            tolerance=self.config.tolerance("biortho.projector_idempotent"),
            params={**self.base_params(), "n_levels": self.config.trunc_n, "dual": self.config.dual},
            metadata={"self_adjointness_defect": float(hermitian_defect)},
        )

    def check_completeness(self) -> VerificationReport:
        system = self.configured_system
        x = oblique_projector(system)
        return VerificationReport.evaluate(
            check="biortho.projector_completeness",
            residual=relative_residual(x.apply(system.phi), system.phi, system.grid),
            tolerance=self.config.tolerance("biortho.projector_completeness"),
            params={**self.base_params(), "n_levels": system.size, "dual": system.dual_kind},
        )
