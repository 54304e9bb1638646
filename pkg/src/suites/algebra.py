from functools import cached_property

from src.components.contour import relative_residual
from src.components.models import gaussian_test_functions, second_order_ladder, sl2_commutator_residuals
from src.schemas.reports import VerificationReport
from src.suites.base import VerificationSuite


class AlgebraSuite(VerificationSuite):
    """sl(2,R) commutators of A(alpha), B(alpha), H^[alpha] and the factor-order independence of A, B."""

    name = "algebra"

    def checks(self):
        return [
            ("algebra.sl2", lambda: sl2_commutator_residuals(
                self.config.alpha, self.config.c, self.analytic_tests, self.quadrature_grid, "analytic",
                self.config.tolerance("algebra.sl2"))),
            ("algebra.sl2_fd", lambda: sl2_commutator_residuals(
                self.config.alpha, self.config.c, self.fd_tests, self.uniform_grid, "fd",
                self.config.tolerance("algebra.sl2_fd"))),
            ("algebra.composition_order", self.check_composition_order),
        ]

    @cached_property
    def analytic_tests(self):
        return gaussian_test_functions(self.config.test_function_count, self.quadrature_grid)

    @cached_property
    def fd_tests(self):
        return gaussian_test_functions(self.config.test_function_count, self.uniform_grid, order=0)

    def check_composition_order(self) -> VerificationReport:
        """A^(-g-1)A^(g) with g = alpha and g = -alpha give the same A(alpha); likewise for B."""
        grid = self.quadrature_grid
        alpha, c = self.config.alpha, self.config.c
        residuals = {"A": [], "B": []}
        for f in self.analytic_tests:
            for kind in residuals:
                plus = second_order_ladder(kind, alpha, c, f, grid, gamma_sign=1).values
                minus = second_order_ladder(kind, alpha, c, f, grid, gamma_sign=-1).values
                residuals[kind].append(relative_residual(plus, minus, grid))
        return VerificationReport.evaluate(
            check="algebra.composition_order",
            residual=max(max(values) for values in residuals.values()),
            tolerance=self.config.tolerance("algebra.composition_order"),
            params={"alpha": alpha, "c": c, "test_functions": len(self.analytic_tests)},
            metadata={f"{kind}_residuals": values for kind, values in residuals.items()},
        )
