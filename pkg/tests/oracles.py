"""Reference computations that share no code path with the package."""
import numpy as np


def charpoly(m):
    """Characteristic polynomial coefficients by Faddeev-LeVerrier, highest degree first."""
    n = m.shape[0]
    coeffs = [1.0 + 0j]
    mk = np.zeros_like(m)
    ident = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        mk = m @ (mk + coeffs[-1] * ident)
        coeffs.append(-np.trace(mk) / k)
    return np.array(coeffs)


def charpoly_eigenvalues(m):
    """Roots of the characteristic polynomial, real parts sorted descending."""
    return np.sort(np.roots(charpoly(np.asarray(m, dtype=complex))).real)[::-1]


def bisection_eigenvalues(h, tol=1e-13):
    """Eigenvalues of a Hermitian matrix by bisection on det(h - x I).

    Sign changes of the real characteristic polynomial are bracketed on a
    fine grid over the Gershgorin interval, then refined by bisection.
    """
    coeffs = charpoly(np.asarray(h, dtype=complex)).real
    n = h.shape[0]
    radius = float(np.max(np.sum(np.abs(h), axis=1))) + 1.0
    grid = np.linspace(-radius, radius, 20001)
    vals = np.polyval(coeffs, grid)
    roots = []
    for i in range(len(grid) - 1):
        lo, hi = grid[i], grid[i + 1]
        flo, fhi = vals[i], vals[i + 1]
        if flo == 0.0:
            roots.append(lo)
            continue
        if flo * fhi < 0:
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                fm = np.polyval(coeffs, mid)
                if flo * fm <= 0:
                    hi = mid
                else:
                    lo, flo = mid, fm
            roots.append(0.5 * (lo + hi))
    assert len(roots) == n, "grid too coarse for this spectrum"
    return np.sort(roots)[::-1]


def brute_rr_eigenvalues(rho):
    """Eigenvalues of rho (sy x sy) rho* (sy x sy) by a general non-Hermitian solver."""
    sy = np.array([[0, -1j], [1j, 0]])
    yy = np.kron(sy, sy)
    prod = rho @ yy @ rho.conj() @ yy
    return np.sort(np.linalg.eigvals(prod).real)[::-1]


def werner_matrix(w):
    phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    return w * np.outer(phi, phi) + (1 - w) * np.eye(4) / 4
