# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled cyclic Jacobi kernel for small complex Hermitian matrices."""
import numpy as np

from libc.math cimport sqrt, fabs


cdef inline double _abs2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


def jacobi_eigh(a, double tol=1e-14, int max_sweeps=100):
    """Diagonalize the Hermitian matrix ``a`` by cyclic Jacobi rotations.

    Returns ``(w, v, sweeps, converged)``; see ``_jacobi_py.jacobi_eigh``.
    """
    mat = np.array(a, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = mat.shape[0]
    vec = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] m = mat
    cdef double complex[:, ::1] v = vec
    cdef Py_ssize_t i, j, k, p, q
    cdef double off, frob = 0.0, threshold, g, theta, t, c, s
    cdef double complex e, se, sec, x, y
    cdef int sweeps = 0
    cdef bint converged = False

    with nogil:
        for i in range(n):
            for j in range(n):
                frob += _abs2(m[i, j])
        frob = sqrt(frob)
        threshold = tol * (frob if frob > 1.0 else 1.0)
        while True:
            off = 0.0
            for i in range(n):
                for j in range(n):
                    if i != j:
                        off += _abs2(m[i, j])
            if sqrt(off) < threshold:
                converged = True
                break
            if sweeps == max_sweeps:
                break
            sweeps += 1
            for p in range(n - 1):
                for q in range(p + 1, n):
                    g = sqrt(_abs2(m[p, q]))
                    if g < 1e-300:
                        continue
                    e = m[p, q] / g
                    theta = (m[q, q].real - m[p, p].real) / (2.0 * g)
                    if fabs(theta) > 1e150:
                        t = 0.5 / theta
                    else:
                        t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                        if theta < 0.0:
                            t = -t
                    c = 1.0 / sqrt(t * t + 1.0)
                    s = t * c
                    se = s * e
                    sec = s * e.conjugate()
                    for k in range(n):
                        x = m[k, p]
                        y = m[k, q]
                        m[k, p] = c * x - sec * y
                        m[k, q] = se * x + c * y
                        x = v[k, p]
                        y = v[k, q]
                        v[k, p] = c * x - sec * y
                        v[k, q] = se * x + c * y
                    for k in range(n):
                        x = m[p, k]
                        y = m[q, k]
                        m[p, k] = c * x - se * y
                        m[q, k] = sec * x + c * y
                    m[p, q] = 0.0
                    m[q, p] = 0.0
                    m[p, p] = m[p, p].real
                    m[q, q] = m[q, q].real

    w = np.array([mat[i, i].real for i in range(n)])
    return w, vec, sweeps, bool(converged)
