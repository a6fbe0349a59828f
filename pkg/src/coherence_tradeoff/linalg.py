"""Small dense complex linear algebra for 2x2 and 4x4 matrices.

Matrices are plain ``complex128`` numpy arrays. Eigenproblems go through a
cyclic Jacobi kernel; the compiled one (``_jacobi``) is used when it was
built, otherwise the pure-Python ``_jacobi_py`` is used.
"""
from dataclasses import dataclass

import numpy as np

from . import _jacobi_py
from .errors import DefectiveSpectrum, NoConvergence, NotHermitian, NotPSD

try:
    from . import _jacobi as _compiled
except ImportError:  # extension not built
    _compiled = None

KERNELS = {"python": _jacobi_py.jacobi_eigh}
if _compiled is not None:
    KERNELS["compiled"] = _compiled.jacobi_eigh
BACKEND = "compiled" if _compiled is not None else "python"

HERMITIAN_TOL = 1e-12
NEGATIVE_CLAMP = 1e-10
RANK_TOL = 1e-10
JACOBI_TOL = 1e-14
MAX_SWEEPS = 100
RECONSTRUCTION_TOL = 1e-10
EIGVEC_RESIDUAL_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class HermEigen:
    """Eigen-decomposition of a Hermitian matrix.

    ``eigenvalues`` are real and descending; ``eigenvectors[:, k]`` is the
    unit eigenvector belonging to ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(m):
    """Return ``m`` as a finite square complex128 array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def dagger(m):
    return np.conj(m).T


def hermitian_defect(m):
    """Largest entrywise deviation ``|m - m^dagger|``."""
    return float(np.max(np.abs(m - dagger(m)))) if m.size else 0.0


def rank_cutoff(eigenvalues):
    """Eigenvalues strictly above this value count toward the rank."""
    top = max(float(np.max(eigenvalues)), 1.0) if len(eigenvalues) else 1.0
    return RANK_TOL * top


def numerical_rank(eigenvalues):
    lam = np.asarray(eigenvalues, dtype=float)
    return int(np.count_nonzero(lam > rank_cutoff(lam)))


def clamp_small_negative(eigenvalues):
    """Map values in ``[-1e-10, 0)`` to zero; raise if anything lies below."""
    lam = np.array(eigenvalues, dtype=float)
    if np.any(lam < -NEGATIVE_CLAMP):
        raise NotPSD(f"eigenvalue {lam.min():.3e} below -{NEGATIVE_CLAMP:g}")
    lam[lam < 0.0] = 0.0
    return lam


def herm_eigen(m, kernel=None):
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    m : array_like
        Square complex matrix, Hermitian to within 1e-12 entrywise.
    kernel : str, optional
        ``"compiled"`` or ``"python"``; defaults to the best available.

    Returns
    -------
    HermEigen
        Descending eigenvalues with orthonormal eigenvectors. Ties keep the
        order produced by the solver.
    """
    a = as_matrix(m)
    defect = hermitian_defect(a)
    if defect > HERMITIAN_TOL:
        raise NotHermitian(f"max |m - m^dagger| = {defect:.3e}")
    a = 0.5 * (a + dagger(a))
    solve = KERNELS[kernel or BACKEND]
    w, v, sweeps, converged = solve(a, JACOBI_TOL, MAX_SWEEPS)
    if not converged:
        raise NoConvergence(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
    order = sorted(range(len(w)), key=lambda k: -w[k])
    w = np.asarray(w, dtype=float)[order]
    v = np.asarray(v)[:, order]
    v = v / np.linalg.norm(v, axis=0)
    eig = HermEigen(w, v)
    scale = max(1.0, float(np.linalg.norm(a)))
    if np.linalg.norm(eig.reconstruct() - a) > RECONSTRUCTION_TOL * scale:
        raise NoConvergence("eigen-decomposition does not reconstruct the input")
    return eig


def herm_sqrt(m, kernel=None):
    """Positive square root of a Hermitian positive semidefinite matrix.

    Eigenvalues in ``[-1e-10, 0)`` are treated as zero; anything more negative
    raises :class:`NotPSD`.
    """
    eig = herm_eigen(m, kernel)
    lam = clamp_small_negative(eig.eigenvalues)
    v = eig.eigenvectors
    s = (v * np.sqrt(lam)) @ dagger(v)
    return 0.5 * (s + dagger(s))


def _hermitian_reduction(rho, rhotilde, kernel):
    s = herm_sqrt(rho, kernel)
    h = s @ rhotilde @ s
    return s, herm_eigen(0.5 * (h + dagger(h)), kernel)


def rho_rhotilde_eigenvalues(rho, rhotilde, kernel=None):
    """Descending eigenvalues of ``rho @ rhotilde``.

    Computed as the spectrum of the Hermitian matrix ``s rhotilde s`` with
    ``s = sqrt(rho)``, which is similar to ``rho rhotilde``.
    """
    _, eig = _hermitian_reduction(rho, rhotilde, kernel)
    return clamp_small_negative(eig.eigenvalues)


def rho_rhotilde_eigen(rho, rhotilde, kernel=None):
    """Eigenvalues and right eigenvectors of the non-Hermitian ``rho @ rhotilde``.

    Eigenvectors for eigenvalues above the rank cutoff are ``s w / |s w|``
    where ``w`` diagonalizes ``s rhotilde s``. The remaining columns are an
    orthonormal basis of the kernel of ``rho @ rhotilde``.

    Returns
    -------
    eigenvalues : ndarray, shape (4,)
        Real, non-negative, descending.
    eigenvectors : ndarray, shape (4, 4)
        Unit columns with ``rho rhotilde v = lambda v`` to within 1e-8.

    Raises
    ------
    DefectiveSpectrum
        If the zero eigenvalue has fewer independent eigenvectors than its
        multiplicity, so no full eigenbasis exists.
    """
    s, eig = _hermitian_reduction(rho, rhotilde, kernel)
    lam = clamp_small_negative(eig.eigenvalues)
    n = len(lam)
    n_pos = numerical_rank(lam)
    prod = rho @ rhotilde
    vecs = np.zeros((n, n), dtype=complex)
    for k in range(n_pos):
        x = s @ eig.eigenvectors[:, k]
        vecs[:, k] = x / np.linalg.norm(x)
    if n_pos < n:
        kernel_basis = herm_eigen(dagger(prod) @ prod, kernel).eigenvectors
        vecs[:, n_pos:] = kernel_basis[:, n_pos:]
    for k in range(n):
        resid = np.linalg.norm(prod @ vecs[:, k] - lam[k] * vecs[:, k])
        if resid > EIGVEC_RESIDUAL_TOL:
            if k < n_pos:
                raise NoConvergence(f"eigenpair {k} residual {resid:.3e}")
            raise DefectiveSpectrum(f"null-space vector {k} residual {resid:.3e}")
    return lam, vecs


def takagi(sym, kernel=None):
    """Takagi factorization ``sym = U diag(sigma) U^T`` of a complex symmetric matrix.

    Uses the real symmetric embedding ``[[Re A, Im A], [Im A, -Re A]]`` whose
    positive eigenpairs ``(x; y)`` give Takagi vectors ``x + i y``. Requires
    every singular value of ``sym`` to be strictly positive.
    """
    a = as_matrix(sym)
    k = a.shape[0]
    big = np.block([[a.real, a.imag], [a.imag, -a.real]])
    eig = herm_eigen(big.astype(complex), kernel)
    sigma = eig.eigenvalues[:k]
    if np.any(sigma <= 0.0):
        raise ValueError("takagi() needs a nonsingular symmetric matrix")
    top = eig.eigenvectors[:, :k].real
    u = top[:k] + 1j * top[k:]
    return sigma, u
