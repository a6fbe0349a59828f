import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coherence_tradeoff import linalg
from coherence_tradeoff.errors import NotHermitian, NotPSD
from coherence_tradeoff.states import sample_random

from oracles import bisection_eigenvalues, brute_rr_eigenvalues, charpoly_eigenvalues


def random_hermitian(rng, n=4, scale=1.0):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * (g + g.conj().T)


def test_kernel_registry_has_python_fallback():
    assert "python" in linalg.KERNELS
    assert linalg.BACKEND in linalg.KERNELS


def test_eigenvalues_match_bisection_oracle(kernel, rng):
    for _ in range(20):
        h = random_hermitian(rng)
        eig = linalg.herm_eigen(h, kernel)
        np.testing.assert_allclose(eig.eigenvalues, bisection_eigenvalues(h), atol=1e-10)


def test_eigenvectors_orthonormal_and_reconstruct(kernel, rng):
    h = random_hermitian(rng)
    eig = linalg.herm_eigen(h, kernel)
    v = eig.eigenvectors
    np.testing.assert_allclose(v.conj().T @ v, np.eye(4), atol=1e-12)
    np.testing.assert_allclose(eig.reconstruct(), h, atol=1e-12)
    assert np.all(np.diff(eig.eigenvalues) <= 0)


def test_kernels_agree(rng):
    if len(linalg.KERNELS) < 2:
        pytest.skip("compiled kernel not built")
    for _ in range(10):
        h = random_hermitian(rng, scale=5.0)
        a = linalg.herm_eigen(h, "python").eigenvalues
        b = linalg.herm_eigen(h, "compiled").eigenvalues
        np.testing.assert_allclose(a, b, atol=1e-12)


def test_large_norm_converges(kernel, rng):
    h = random_hermitian(rng, scale=50.0)
    eig = linalg.herm_eigen(h, kernel)
    np.testing.assert_allclose(eig.eigenvalues, np.linalg.eigvalsh(h)[::-1], rtol=0, atol=1e-10)


def test_dimension_generic(kernel, rng):
    h = random_hermitian(rng, n=8)
    eig = linalg.herm_eigen(h, kernel)
    np.testing.assert_allclose(eig.eigenvalues, charpoly_eigenvalues(h), atol=1e-8)


def test_degenerate_spectrum(kernel):
    eig = linalg.herm_eigen(np.eye(4) * 0.25, kernel)
    np.testing.assert_allclose(eig.eigenvalues, 0.25)
    np.testing.assert_allclose(eig.reconstruct(), np.eye(4) * 0.25, atol=1e-15)


def test_rejects_non_hermitian():
    m = np.zeros((4, 4), dtype=complex)
    m[0, 1] = 1.0
    with pytest.raises(NotHermitian):
        linalg.herm_eigen(m)


def test_as_matrix_rejects_nan_and_non_square():
    with pytest.raises(ValueError):
        linalg.as_matrix(np.full((4, 4), np.nan))
    with pytest.raises(ValueError):
        linalg.as_matrix(np.zeros((3, 4)))


def test_clamp_small_negative():
    out = linalg.clamp_small_negative(np.array([0.5, 1e-12, -5e-11]))
    assert out[2] == 0.0
    with pytest.raises(NotPSD):
        linalg.clamp_small_negative(np.array([0.5, -1e-6]))


def test_rank_cutoff_relative_and_absolute():
    assert linalg.rank_cutoff(np.array([0.1, 0.0])) == pytest.approx(1e-10)
    assert linalg.rank_cutoff(np.array([100.0])) == pytest.approx(1e-8)
    assert linalg.numerical_rank(np.array([0.3, 1e-11, 0.0, 0.0])) == 1


def test_herm_sqrt(kernel, rng):
    rho = sample_random("rank-3", rng).rho
    s = linalg.herm_sqrt(rho, kernel)
    np.testing.assert_allclose(s @ s, rho, atol=1e-12)
    np.testing.assert_allclose(s, s.conj().T, atol=1e-15)


def test_rho_rhotilde_eigenvalues_vs_oracles(rng):
    for rank in (1, 2, 3, 4):
        st_ = sample_random("rank", rng, rank=rank)
        lam = linalg.rho_rhotilde_eigenvalues(st_.rho, st_.rho_tilde)
        np.testing.assert_allclose(lam, brute_rr_eigenvalues(st_.rho), atol=1e-10)
        if rank == 4:
            # repeated zero roots are ill-conditioned for polynomial root finding
            prod = st_.rho @ st_.rho_tilde
            np.testing.assert_allclose(lam, charpoly_eigenvalues(prod), atol=1e-8)


def test_rho_rhotilde_eigen_residual(rng):
    for rank in (1, 2, 4):
        st_ = sample_random("rank", rng, rank=rank)
        lam, vecs = linalg.rho_rhotilde_eigen(st_.rho, st_.rho_tilde)
        prod = st_.rho @ st_.rho_tilde
        for k in range(4):
            v = vecs[:, k]
            assert np.linalg.norm(prod @ v - lam[k] * v) <= 1e-8 * max(1, np.linalg.norm(v))


def test_takagi(rng):
    g = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    a = g + g.T
    sigma, u = linalg.takagi(a)
    np.testing.assert_allclose(u @ np.diag(sigma) @ u.T, a, atol=1e-10)
    np.testing.assert_allclose(u.conj().T @ u, np.eye(3), atol=1e-10)
    np.testing.assert_allclose(np.sort(sigma), np.sort(np.linalg.svd(a, compute_uv=False)), atol=1e-10)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-10, 10), min_size=4, max_size=4), st.integers(0, 2**32 - 1))
def test_prescribed_spectrum_recovered(values, seed):
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
    h = q @ np.diag(values) @ q.conj().T
    h = 0.5 * (h + h.conj().T)
    eig = linalg.herm_eigen(h)
    np.testing.assert_allclose(eig.eigenvalues, sorted(values, reverse=True), atol=1e-10)


def test_fallback_selected_without_extension():
    code = (
        "import sys; sys.modules['coherence_tradeoff._jacobi'] = None\n"
        "from coherence_tradeoff import linalg, report\n"
        "from coherence_tradeoff.states import werner\n"
        "assert linalg.BACKEND == 'python' and set(linalg.KERNELS) == {'python'}\n"
        "print(report(werner(0.6)).c)\n"
    )
    proc = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert float(proc.stdout) == pytest.approx(0.4)
