"""Pure-Python cyclic Jacobi kernel for small complex Hermitian matrices.

Same contract as the compiled ``_jacobi`` module; selected automatically
when the extension is unavailable.
"""
from math import sqrt

import numpy as np


def jacobi_eigh(a, tol=1e-14, max_sweeps=100):
    """Diagonalize the Hermitian matrix ``a`` by cyclic Jacobi rotations.

    Returns ``(w, v, sweeps, converged)`` with unsorted real eigenvalues ``w``
    and eigenvectors in the columns of ``v``. Convergence is declared when
    the off-diagonal Frobenius norm drops below ``tol * max(1, ||a||_F)``.
    """
    n = a.shape[0]
    m = [[complex(a[i, j]) for j in range(n)] for i in range(n)]
    v = [[1.0 + 0j if i == j else 0j for j in range(n)] for i in range(n)]
    frob = sqrt(sum(abs(x) ** 2 for row in m for x in row))
    threshold = tol * max(1.0, frob)

    sweeps = 0
    converged = False
    while True:
        off = 0.0
        for i in range(n):
            row = m[i]
            for j in range(n):
                if i != j:
                    off += row[j].real ** 2 + row[j].imag ** 2
        if sqrt(off) < threshold:
            converged = True
            break
        if sweeps == max_sweeps:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = m[p][q]
                g = abs(apq)
                if g < 1e-300:
                    continue
                e = apq / g
                theta = (m[q][q].real - m[p][p].real) / (2.0 * g)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                se = s * e
                sec = se.conjugate()
                for k in range(n):
                    row = m[k]
                    akp = row[p]
                    akq = row[q]
                    row[p] = c * akp - sec * akq
                    row[q] = se * akp + c * akq
                    vrow = v[k]
                    vkp = vrow[p]
                    vkq = vrow[q]
                    vrow[p] = c * vkp - sec * vkq
                    vrow[q] = se * vkp + c * vkq
                mp = m[p]
                mq = m[q]
                for k in range(n):
                    apk = mp[k]
                    aqk = mq[k]
                    mp[k] = c * apk - se * aqk
                    mq[k] = sec * apk + c * aqk
                mp[q] = 0j
                mq[p] = 0j
                mp[p] = complex(mp[p].real, 0.0)
                mq[q] = complex(mq[q].real, 0.0)

    w = np.array([m[i][i].real for i in range(n)])
    return w, np.array(v, dtype=complex), sweeps, converged
