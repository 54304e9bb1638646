import numpy as np
import pytest

from src.exception import DegenerateGramError, InvalidArgumentError, UnsupportedGridError
from src.components.eigensolver import (
    discretize_schrodinger,
    general_complex_eigen,
    hermitian_eigen,
    inverse_sqrt_pd,
    sqrt_pd,
)


def _random_complex(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def test_jacobi_matches_lapack(rng):
    a = _random_complex(rng, 12)
    h = a + a.conj().T
    values, vectors = hermitian_eigen(h)
    assert np.allclose(values, np.linalg.eigvalsh(h), atol=1e-10 * np.linalg.norm(h))
    assert np.allclose(vectors.conj().T @ vectors, np.eye(12), atol=1e-12)
    assert np.allclose(h @ vectors, vectors * values, atol=1e-10 * np.linalg.norm(h))


def test_jacobi_rejects_non_hermitian(rng):
    with pytest.raises(InvalidArgumentError):
        hermitian_eigen(_random_complex(rng, 4))


def test_jacobi_on_diagonal_and_zero_matrices():
    values, vectors = hermitian_eigen(np.diag([3.0, -1.0, 2.0]))
    assert np.allclose(values, [-1.0, 2.0, 3.0])
    values, _ = hermitian_eigen(np.zeros((3, 3)))
    assert np.allclose(values, 0.0)


def test_positive_square_roots(rng):
    a = _random_complex(rng, 6)
    pd = a @ a.conj().T + 6.0 * np.eye(6)
    root = sqrt_pd(pd)
    assert np.allclose(root @ root, pd, atol=1e-10)
    assert np.allclose(inverse_sqrt_pd(pd) @ root, np.eye(6), atol=1e-10)


def test_square_root_commutes_and_squares_back(rng):
    a = _random_complex(rng, 8)
    pd = a @ a.conj().T + np.eye(8)
    root = sqrt_pd(pd)
    scale = np.linalg.norm(pd)
    assert np.allclose(root, root.conj().T, atol=1e-12 * scale)
    assert np.linalg.norm(root @ pd - pd @ root) < 1e-10 * scale
    assert np.linalg.norm(root @ root - pd) < 1e-10 * scale
    assert np.all(np.linalg.eigvalsh(root) > 0.0)


def test_square_roots_of_simple_matrices():
    assert np.allclose(sqrt_pd(np.eye(4)), np.eye(4))
    assert np.allclose(sqrt_pd(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))
    assert np.allclose(inverse_sqrt_pd(np.diag([4.0, 9.0])), np.diag([0.5, 1.0 / 3.0]))


def test_square_root_rejects_indefinite_matrices():
    with pytest.raises(DegenerateGramError):
        sqrt_pd(np.diag([1.0, -1.0]))
    with pytest.raises(DegenerateGramError):
        inverse_sqrt_pd(np.diag([0.0, 1.0]))


@pytest.mark.parametrize("backend", ["native", "lapack"])
def test_rotation_generator_has_imaginary_pair(backend):
    result = general_complex_eigen(np.array([[0.0, 1.0], [-1.0, 0.0]]), backend=backend)
    values = sorted(result.eigenvalues, key=lambda value: value.imag)
    assert np.allclose(values, [-1j, 1j], atol=1e-12)


def test_spectrum_is_similarity_invariant(rng):
    a = _random_complex(rng, 10)
    t = np.eye(10) + 0.2 * _random_complex(rng, 10)
    similar = np.linalg.solve(t, a @ t)
    original = general_complex_eigen(a, backend="native").eigenvalues
    transformed = general_complex_eigen(similar, backend="native").eigenvalues
    tolerance = 1e-9 * np.linalg.norm(a) * np.linalg.cond(t)
    # sorted orders can differ where real parts nearly tie, so match each value to its nearest partner
    distances = np.abs(original[:, None] - transformed[None, :])
    assert np.max(distances.min(axis=1)) < tolerance
    assert np.max(distances.min(axis=0)) < tolerance


@pytest.mark.parametrize("trial", range(50))
def test_native_qr_on_random_matrices(rng, trial):
    a = _random_complex(rng, 20)
    scale = np.linalg.norm(a)
    result = general_complex_eigen(a, want_vectors=True, backend="native")
    assert result.backend == "native"
    assert abs(result.eigenvalues.sum() - np.trace(a)) < 1e-10 * scale
    assert np.max(result.residuals) < 1e-10


def test_backends_agree(rng):
    a = _random_complex(rng, 15)
    native = general_complex_eigen(a, backend="native").eigenvalues
    lapack = general_complex_eigen(a, backend="lapack").eigenvalues
    for value in native:
        assert np.min(np.abs(lapack - value)) < 1e-9 * np.linalg.norm(a)


def test_results_are_sorted_by_real_part(rng):
    values = general_complex_eigen(_random_complex(rng, 10)).eigenvalues
    assert np.all(np.diff(values.real) >= 0.0)


def test_triangular_and_trivial_inputs():
    t = np.triu(np.arange(1.0, 17.0).reshape(4, 4)).astype(complex)
    assert np.allclose(general_complex_eigen(t).eigenvalues, [1.0, 6.0, 11.0, 16.0])
    assert np.allclose(general_complex_eigen([[2.0 - 1.0j]]).eigenvalues, [2.0 - 1.0j])


def test_native_dimension_cap(rng):
    with pytest.raises(InvalidArgumentError):
        general_complex_eigen(_random_complex(rng, 5), backend="native", max_dim=4)


def test_unknown_backend(rng):
    with pytest.raises(InvalidArgumentError):
        general_complex_eigen(_random_complex(rng, 3), backend="arpack")


def test_non_square_input():
    with pytest.raises(InvalidArgumentError):
        general_complex_eigen(np.ones((2, 3)))


def test_harmonic_oscillator_levels(fd_grid):
    matrix = discretize_schrodinger(lambda x: x ** 2, fd_grid)
    values = general_complex_eigen(matrix, backend="lapack").eigenvalues
    assert np.allclose(values[:5].real, [1.0, 3.0, 5.0, 7.0, 9.0], atol=1e-4)


def test_schrodinger_matrix_needs_uniform_grid(gl_grid):
    with pytest.raises(UnsupportedGridError):
        discretize_schrodinger(lambda x: x ** 2, gl_grid)
