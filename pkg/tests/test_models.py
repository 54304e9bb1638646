import numpy as np
import pytest

from src.exception import (
    InvalidArgumentError,
    NonNormalizableFamilyError,
    UnsupportedGridError,
)
from src.components.contour import derivative, inner_product, norm, relative_residual
from src.components.models import (
    apply_factor,
    build_model_nlpb,
    c5,
    cubic_superpotential,
    cubic_superpotential_jet,
    eigen_residual,
    epsilon_sequence_from_model,
    family_energy,
    formal_adjoint_ladder,
    gaussian_test_functions,
    kratzer_dual_eigenfunction,
    kratzer_dual_eigenfunction_jet,
    kratzer_eigenfunction,
    kratzer_energy,
    kratzer_potential,
    laguerre_family_jet,
    ladder_constant,
    model_jets,
    operator_eigen_residual,
    partner_hamiltonian_residual,
    partner_shift_residual,
    refactorization_residual,
    second_order_ladder,
    sl2_commutator_residuals,
    superpotential_jet,
    superpotential_w,
    time_reversal,
)
from src.components.pseudoboson_core import biorthogonality_matrix
from src.schemas.models import FunctionJet, KratzerParams
from src.utils.jets import combine


class TestKratzerOscillator:
    def test_potential_at_origin(self):
        assert kratzer_potential(0.0, KratzerParams(alpha=1.3, c=1.0)) == pytest.approx(-2.44 + 0j)

    def test_potential_without_coupling_is_shifted_well(self):
        x = np.linspace(-3, 3, 13)
        assert np.allclose(kratzer_potential(x, KratzerParams(alpha=0.5, c=0.7)), (x - 0.7j) ** 2)

    def test_potential_is_pt_symmetric(self, rng):
        x = rng.uniform(-5, 5, 100)
        p = KratzerParams(alpha=1.3, c=1.0)
        assert np.allclose(np.conj(kratzer_potential(-x, p)), kratzer_potential(x, p))

    def test_energies(self):
        assert kratzer_energy(1, 0, 1.3) == pytest.approx(4.6)
        assert kratzer_energy(-1, 1, 0.5) == pytest.approx(5.0)

    def test_hermitian_limit_gives_odd_integers(self):
        levels = sorted(kratzer_energy(q, n, 0.5) for q in (1, -1) for n in range(5))
        assert levels == [1.0, 3.0, 5.0, 7.0, 9.0, 11.0, 13.0, 15.0, 17.0, 19.0]

    @pytest.mark.parametrize("q, n, alpha", [(2, 0, 1.3), (1, -1, 1.3), (1, 0, 0.0)])
    def test_energy_arguments(self, q, n, alpha):
        with pytest.raises(InvalidArgumentError):
            kratzer_energy(q, n, alpha)

    def test_non_normalizable_family(self, gl_grid):
        with pytest.raises(NonNormalizableFamilyError):
            kratzer_eigenfunction(0, KratzerParams(alpha=1.3, c=1.0, q=-1), gl_grid)

    def test_ground_state_closed_form(self, gl_grid, params):
        z = gl_grid.nodes - 1j * params.c
        expected = z ** (params.gamma + 0.5) * np.exp(-0.5 * z ** 2)
        assert np.allclose(kratzer_eigenfunction(0, params, gl_grid), expected)

    def test_jet_matches_finite_differences(self, fd_grid, params):
        jet = laguerre_family_jet(2, params.gamma, 1.0, fd_grid, order=2)
        assert relative_residual(derivative(jet.values, fd_grid, 1), jet.terms[1], fd_grid) < 1e-5
        assert relative_residual(derivative(jet.values, fd_grid, 2), jet.terms[2], fd_grid) < 1e-5

    @pytest.mark.parametrize("n", range(4))
    def test_analytic_eigen_residual(self, gl_grid, params, n):
        f = laguerre_family_jet(n, params.gamma, params.c, gl_grid, order=2)
        assert eigen_residual(params.alpha, params.c, f, kratzer_energy(1, n, params.alpha), gl_grid) < 1e-6

    def test_dual_is_scaled_conjugate(self, gl_grid, params):
        dual = kratzer_dual_eigenfunction(2, params, gl_grid, normalization=2.0 - 1j)
        assert np.allclose(dual, (2.0 - 1j) * np.conj(kratzer_eigenfunction(2, params, gl_grid)))

    @pytest.mark.parametrize("n", range(3))
    def test_dual_eigen_residual(self, gl_grid, params, n):
        f = kratzer_dual_eigenfunction_jet(n, params, gl_grid, order=2)
        energy = kratzer_energy(1, n, params.alpha)
        assert eigen_residual(params.alpha, params.c, f, energy, gl_grid, adjoint=True) < 1e-6
        # H itself does not have the conjugate family as eigenfunctions
        assert eigen_residual(params.alpha, params.c, f, energy, gl_grid, adjoint=False) > 1e-3

    def test_fd_eigen_residual(self, fd_grid):
        f = laguerre_family_jet(1, 1.3, 1.0, fd_grid, order=0)
        assert eigen_residual(1.3, 1.0, f, kratzer_energy(1, 1, 1.3), fd_grid, mode="fd") < 1e-4

    def test_analytic_mode_needs_derivatives(self, gl_grid, params):
        f = laguerre_family_jet(0, params.gamma, params.c, gl_grid, order=1)
        with pytest.raises(InvalidArgumentError):
            eigen_residual(params.alpha, params.c, f, 4.6, gl_grid)

    @pytest.mark.parametrize("c", [0.5, 1.0, 2.0])
    def test_energies_do_not_depend_on_c(self, gl_grid, c):
        for n in range(3):
            f = laguerre_family_jet(n, 1.3, c, gl_grid, order=2)
            assert eigen_residual(1.3, c, f, kratzer_energy(1, n, 1.3), gl_grid) < 1e-6

    @pytest.mark.parametrize("c", [0.5, 1.0])
    def test_principal_branch_is_continuous(self, gl_grid, c):
        f = kratzer_eigenfunction(0, KratzerParams(alpha=1.3, c=c), gl_grid)
        increments = np.abs(np.angle(f[1:] / f[:-1]))
        assert increments.max() < np.pi / 2


class TestSuperpotential:
    def test_examples(self):
        assert superpotential_w(0.0, 1.0, 0.0) == pytest.approx(-1.5j)
        x = np.linspace(-2, 2, 9)
        assert np.allclose(superpotential_w(-0.5, 0.3, x), x - 0.3j)

    def test_pt_antisymmetry(self, rng):
        x = rng.uniform(-5, 5, 100)
        assert np.allclose(np.conj(superpotential_w(1.3, 1.0, -x)), -superpotential_w(1.3, 1.0, x))

    def test_factor_annihilates_oscillator_ground_state(self, gl_grid):
        x = gl_grid.nodes
        w = FunctionJet(terms=(x, np.ones_like(x)))
        ground = gaussian_test_functions(1, gl_grid, order=1)[0]
        assert norm(apply_factor("A", w, ground, gl_grid).values, gl_grid) < 1e-14
        assert np.allclose(apply_factor("B", w, ground, gl_grid).values, 2.0 * x * ground.values)

    def test_factor_is_linear(self, gl_grid, params):
        f, g = gaussian_test_functions(2, gl_grid, order=2)
        w = superpotential_jet(params.gamma, params.c, gl_grid, 2)
        mixed = apply_factor("B", w, combine((2.0, f), (3.0 - 1j, g)), gl_grid).values
        separate = 2.0 * apply_factor("B", w, f, gl_grid).values + (3.0 - 1j) * apply_factor("B", w, g, gl_grid).values
        assert relative_residual(mixed, separate, gl_grid) < 1e-13

    def test_fd_factor_needs_uniform_grid(self, gl_grid):
        f = gaussian_test_functions(1, gl_grid, order=0)[0]
        with pytest.raises(UnsupportedGridError):
            apply_factor("A", gl_grid.nodes, f, gl_grid, derivative_mode="fd")

    def test_unknown_factor(self, gl_grid):
        f = gaussian_test_functions(1, gl_grid, order=1)[0]
        with pytest.raises(InvalidArgumentError):
            apply_factor("C", gl_grid.nodes, f, gl_grid)

    def test_partner_shift(self, fd_grid):
        report = partner_shift_residual(0.3, 1.0, fd_grid, levels=4)
        assert report.residual < 1e-4
        assert report.passed

    def test_partner_shift_analytic(self, gl_grid):
        report = partner_shift_residual(0.3, 1.0, gl_grid, levels=4, derivative_mode="analytic", tolerance=1e-6)
        assert report.passed, report.metadata

    @pytest.mark.parametrize("gamma", [0.3, -0.5, 1.3])
    def test_partner_ground_energies_come_from_the_shifted_spectrum(self, gl_grid, gamma):
        report = partner_shift_residual(gamma, 1.0, gl_grid, levels=2, derivative_mode="analytic")
        assert report.metadata["left_ground_energy"] == pytest.approx(0.0, abs=1e-12)
        assert report.metadata["right_ground_energy"] == pytest.approx(4.0, abs=1e-12)

    def test_family_energy_places_levels_in_the_right_hamiltonian(self):
        assert family_energy(2, 1.3) == pytest.approx(kratzer_energy(1, 2, 1.3))
        assert family_energy(2, -0.5) == pytest.approx(kratzer_energy(-1, 2, 0.5))
        assert family_energy(3, 0.0) == pytest.approx(14.0)

    def test_partner_expansion(self, gl_grid, params):
        tests = gaussian_test_functions(3, gl_grid, order=4)
        report = partner_hamiltonian_residual(params.gamma, params.c, tests, gl_grid)
        assert report.check == "susy.partner_expansion"
        assert report.residual < 1e-6


class TestLadderConstants:
    def test_c5_examples(self):
        assert c5(-1, 0.3) == 0.0
        assert c5(0, 0.3) == pytest.approx(-4.0 * np.sqrt(1.3))
        assert c5(0, 0.3) == pytest.approx(-4.5607, abs=1e-4)
        for n in range(5):
            assert c5(n, 1.3) ** 2 == pytest.approx(16 * (n + 1) * (n + 2.3))

    def test_c5_negative_radicand(self):
        with pytest.raises(InvalidArgumentError):
            c5(0, -2.0)

    def test_ladder_constant_record(self):
        constant = ladder_constant(2, 0.3)
        assert constant.value == pytest.approx(c5(2, 0.3))

    def test_epsilon_sequence(self):
        eps = epsilon_sequence_from_model(0.3, 3)
        assert eps.values == pytest.approx([0.0, 20.8, 73.6])

    @pytest.mark.parametrize("gamma", [0.3, 1.3, -0.7])
    def test_energy_identity(self, gamma):
        values = epsilon_sequence_from_model(gamma, 12).values
        for n in range(11):
            assert (values[n + 1] - values[n]) / 8.0 == pytest.approx(4 * n + 2 + 2 * gamma, abs=1e-12)

    def test_epsilon_sequence_arguments(self):
        with pytest.raises(InvalidArgumentError):
            epsilon_sequence_from_model(-1.0, 3)
        with pytest.raises(InvalidArgumentError):
            epsilon_sequence_from_model(0.3, 0)


class TestSecondOrderLadders:
    def test_composition_order(self, gl_grid, params):
        for f in gaussian_test_functions(3, gl_grid, order=4):
            for kind in ("A", "B"):
                first = second_order_ladder(kind, params.alpha, params.c, f, gl_grid, gamma_sign=1).values
                second = second_order_ladder(kind, params.alpha, params.c, f, gl_grid, gamma_sign=-1).values
                assert relative_residual(first, second, gl_grid) < 1e-10

    @pytest.mark.parametrize("n", range(4))
    def test_number_eigen_relations(self, gl_grid, params, eps, n):
        f = laguerre_family_jet(n, params.gamma, params.c, gl_grid, order=4)
        lowered = second_order_ladder("A", params.alpha, params.c, f, gl_grid)
        raised = second_order_ladder("B", params.alpha, params.c, f, gl_grid)
        ba = second_order_ladder("B", params.alpha, params.c, lowered, gl_grid)
        ab = second_order_ladder("A", params.alpha, params.c, raised, gl_grid)
        assert operator_eigen_residual(ba, eps.values[n], f, gl_grid) < 1e-5
        assert operator_eigen_residual(ab, eps.values[n + 1], f, gl_grid) < 1e-5

    def test_lowering_is_colinear(self, gl_grid, params):
        for n in range(3):
            image = second_order_ladder("A", params.alpha, params.c,
                                        laguerre_family_jet(n + 1, params.gamma, params.c, gl_grid, 2), gl_grid).values
            target = laguerre_family_jet(n, params.gamma, params.c, gl_grid, 0).values
            mu = inner_product(target, image, gl_grid) / inner_product(target, target, gl_grid)
            assert norm(image - mu * target, gl_grid) / norm(image, gl_grid) < 1e-6
            assert mu == pytest.approx(-4.0 * (n + 1 + params.gamma), rel=1e-6)

    def test_invalid_kind_and_sign(self, gl_grid, params):
        f = gaussian_test_functions(1, gl_grid, order=2)[0]
        with pytest.raises(InvalidArgumentError):
            second_order_ladder("C", params.alpha, params.c, f, gl_grid)
        with pytest.raises(InvalidArgumentError):
            second_order_ladder("A", params.alpha, params.c, f, gl_grid, gamma_sign=0)

    def test_formal_adjoint(self, gl_grid, params):
        f, g = gaussian_test_functions(2, gl_grid, order=4)
        for kind, operator in (("a", "A"), ("b", "B")):
            applied = -second_order_ladder(operator, params.alpha, params.c, f, gl_grid).values
            adjoint = formal_adjoint_ladder(kind, params.alpha, params.c, g, gl_grid).values
            lhs = inner_product(applied, g.values, gl_grid)
            rhs = inner_product(f.values, adjoint, gl_grid)
            assert abs(lhs - rhs) < 1e-10 * max(abs(lhs), 1.0)


class TestModelSystem:
    def test_ground_state_is_annihilated(self, span_system, params, gl_grid):
        phi, _ = model_jets(span_system, params, order=2)
        lowered = second_order_ladder("A", params.alpha, params.c, phi[0], gl_grid).values
        assert norm(lowered, gl_grid) / norm(phi[0].values, gl_grid) < 1e-6

    def test_adjoint_duals_are_biorthogonal(self, adjoint_system):
        deviation = biorthogonality_matrix(adjoint_system) - np.eye(adjoint_system.size)
        assert np.max(np.abs(deviation)) < 1e-8

    def test_normalization_and_raising_constants(self, adjoint_system, gl_grid):
        assert norm(adjoint_system.phi[0], gl_grid) == pytest.approx(1.0)
        measured = np.array(adjoint_system.metadata["measured_raising"])
        assert measured == pytest.approx(-4.0 * (np.arange(measured.size) + 1), rel=1e-6)
        assert len(adjoint_system.metadata["c5"]) == adjoint_system.size - 1

    def test_model_jets_match_samples(self, span_system, adjoint_system, params):
        phi, eta = model_jets(adjoint_system, params, order=0)
        assert np.allclose(np.array([f.values for f in phi]), adjoint_system.phi)
        assert np.allclose(np.array([f.values for f in eta]), adjoint_system.eta)
        assert np.allclose(span_system.phi, adjoint_system.phi)

    @pytest.mark.parametrize("levels, dual", [(2, "span"), (4, "raw")])
    def test_build_arguments(self, params, gl_grid, levels, dual):
        with pytest.raises(InvalidArgumentError):
            build_model_nlpb(params, levels, gl_grid, dual=dual)

    def test_non_normalizable_build(self, gl_grid):
        with pytest.raises(NonNormalizableFamilyError):
            build_model_nlpb(KratzerParams(alpha=1.3, c=0.5, q=-1), 4, gl_grid)


class TestSl2Algebra:
    def test_analytic_commutators(self, gl_grid):
        tests = gaussian_test_functions(5, gl_grid)
        report = sl2_commutator_residuals(1.3, 1.0, tests, gl_grid)
        assert report.check == "algebra.sl2"
        assert report.residual < 1e-6
        assert report.params["test_functions"] == 5

    def test_uncoupled_limit(self, gl_grid):
        report = sl2_commutator_residuals(0.5, 1.0, gaussian_test_functions(3, gl_grid), gl_grid)
        assert report.residual < 1e-6

    def test_fd_commutators(self, fd_grid):
        tests = gaussian_test_functions(3, fd_grid, order=0)
        report = sl2_commutator_residuals(1.3, 1.0, tests, fd_grid, derivative_mode="fd")
        assert report.check == "algebra.sl2_fd"
        assert report.residual < 1e-3

    def test_zero_test_function_is_skipped(self, gl_grid):
        zero = FunctionJet(terms=tuple(np.zeros(gl_grid.count) for _ in range(7)))
        tests = [zero] + gaussian_test_functions(1, gl_grid)
        report = sl2_commutator_residuals(1.3, 1.0, tests, gl_grid)
        assert report.params["test_functions"] == 1
        assert report.passed

    def test_gaussian_test_jets(self, gl_grid):
        x = gl_grid.nodes
        ground, linear = gaussian_test_functions(2, gl_grid, order=2)
        envelope = np.exp(-0.5 * x ** 2)
        assert np.allclose(ground.terms[1], -x * envelope)
        assert np.allclose(ground.terms[2], (x ** 2 - 1) * envelope)
        assert np.allclose(linear.terms[1], (1 - x ** 2) * envelope)
        with pytest.raises(InvalidArgumentError):
            gaussian_test_functions(0, gl_grid)


class TestCubicModel:
    def test_origin_zero(self):
        assert abs(cubic_superpotential(1, 1.0, 0.0)) < 1e-15
        assert abs(cubic_superpotential(1, 0.5, 0.0)) > 0.1

    @pytest.mark.parametrize("sign", [1, -1])
    def test_pt_antisymmetry(self, rng, sign):
        x = rng.uniform(-5, 5, 100)
        assert np.allclose(np.conj(cubic_superpotential(sign, 1.0, -x)), -cubic_superpotential(sign, 1.0, x))

    def test_partner_potentials_agree(self, gl_grid):
        plus = cubic_superpotential_jet(1, 1.0, gl_grid, order=1)
        minus = cubic_superpotential_jet(-1, 1.0, gl_grid, order=1)
        lhs = np.conj(minus.terms[0]) ** 2 + np.conj(minus.terms[1])
        rhs = plus.terms[0] ** 2 - plus.terms[1]
        assert relative_residual(lhs, rhs, gl_grid) < 1e-12

    def test_large_x_growth(self):
        x = 1e3
        assert cubic_superpotential(1, 1.0, x) / x ** 2 == pytest.approx(-1j, abs=1e-2)

    def test_refactorization(self, gl_grid):
        report = refactorization_residual(1.0, gaussian_test_functions(4, gl_grid, order=4), gl_grid)
        assert report.check == "cubic.refactorization"
        assert report.residual < 1e-6

    def test_time_reversal_is_an_involution(self, gl_grid, rng):
        f = rng.normal(size=gl_grid.count) + 1j * rng.normal(size=gl_grid.count)
        assert np.array_equal(time_reversal(time_reversal(f)).values, f)
        real = gaussian_test_functions(1, gl_grid, order=0)[0]
        assert np.array_equal(time_reversal(real).values, real.values)

    @pytest.mark.parametrize("sign, shift", [(0, 1.0), (1, 0.0), (-1, -1.0)])
    def test_cubic_arguments(self, sign, shift):
        with pytest.raises(InvalidArgumentError):
            cubic_superpotential(sign, shift, 0.0)
