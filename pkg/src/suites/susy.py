from src.components.contour import norm
from src.components.models import (
    apply_factor,
    gaussian_test_functions,
    laguerre_family_jet,
    partner_hamiltonian_residual,
    partner_shift_residual,
    superpotential_jet,
)
from src.schemas.reports import VerificationReport
from src.suites.base import VerificationSuite


class SusySuite(VerificationSuite):
    """First-order factors A^(gamma), B^(gamma) and the partner Hamiltonians they build."""

    name = "susy"

    def checks(self):
        return [
            ("susy.partner_shift", self.check_partner_shift),
            ("susy.partner_expansion", self.check_partner_expansion),
            ("susy.ground_annihilation", self.check_ground),
        ]

    def check_partner_shift(self) -> VerificationReport:
        # Always on the uniform grid with finite differences: the factors are
        # then checked independently of the closed-form derivatives.
        return partner_shift_residual(
            self.config.gamma, self.config.c, self.uniform_grid,
            levels=self.config.partner_levels,
            derivative_mode="fd",
            tolerance=self.config.tolerance("susy.partner_shift"),
        )

    def check_partner_expansion(self) -> VerificationReport:
        mode = self.config.derivative_mode
        grid = self.quadrature_grid if mode == "analytic" else self.uniform_grid
        return partner_hamiltonian_residual(
            self.config.gamma, self.config.c,
            gaussian_test_functions(self.config.test_function_count, grid),
            grid, mode, tolerance=self.config.tolerance("susy.partner_expansion"),
        )

    def check_ground(self) -> VerificationReport:
        """A^(gamma) annihilates the lowest function of the order-gamma family."""
        grid = self.quadrature_grid
        gamma, c = self.config.gamma, self.config.c
        ground = laguerre_family_jet(0, gamma, c, grid, order=1)
        image = apply_factor("A", superpotential_jet(gamma, c, grid, order=1), ground, grid)
        return VerificationReport.evaluate(
            check="susy.ground_annihilation",
            residual=norm(image.values, grid) / norm(ground.values, grid),
            tolerance=self.config.tolerance("susy.ground_annihilation"),
            params={"gamma": gamma, "c": c},
        )
