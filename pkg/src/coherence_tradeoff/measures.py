"""Concurrence, first-order coherence and intrinsic concurrence."""
from dataclasses import asdict, dataclass

import numpy as np

from .linalg import numerical_rank
from .states import bloch_vector, partial_trace, purity, spin_flip_vector

EQUALITY_TOL = 1e-8
# rounding leaves |lambda| ~ 1e-16 * lambda_1 on exact zeros; sqrt would turn that into ~1e-8
ZERO_LAMBDA = 1e-13


@dataclass(frozen=True)
class ResourceReport:
    d_a: float
    d_b: float
    d: float
    c: float
    c_i: float
    purity: float
    tradeoff_residual: float
    rank_rr: int
    lambdas: tuple

    def to_dict(self):
        out = asdict(self)
        out["lambdas"] = list(self.lambdas)
        return out


def _sqrt_clamped(x):
    return float(np.sqrt(max(x, 0.0)))


def concurrence_pure(p):
    """``|<psi|psi~>|`` for a normalized pure state."""
    amps = p.amplitudes
    return float(min(abs(np.vdot(amps, spin_flip_vector(amps))), 1.0))


def concurrence_pure_reduced(p):
    """Pure-state concurrence from the reduced state: ``sqrt(2 (1 - Tr rho_B^2))``."""
    rho_b = partial_trace(p.projector(), "B")
    return _sqrt_clamped(2.0 * (1.0 - np.trace(rho_b @ rho_b).real))


def concurrence_from_lambdas(lam):
    """Closed form ``max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4))``.

    Eigenvalues at or below ``1e-13 * max(lambda_1, 1)`` count as exact zeros,
    so rounding noise of order 1e-16 does not leak in as ~1e-8 square roots.
    """
    lam = np.asarray(lam, dtype=float)
    cut = ZERO_LAMBDA * max(float(np.max(lam)), 1.0)
    roots = np.sqrt(np.where(lam > cut, lam, 0.0))
    return float(min(max(0.0, roots[0] - roots[1:].sum()), 1.0))


def concurrence(state):
    """Concurrence of a two-qubit state.

    Returns
    -------
    c : float
    lambdas : ndarray
        Descending eigenvalues of ``rho rho~``.
    """
    lam = state.rr_eigenvalues
    return concurrence_from_lambdas(lam), lam


def first_order_coherence(state):
    """Return ``(D, D_A, D_B)``.

    ``D_K = sqrt(2 Tr rho_K^2 - 1)`` equals the length of the Bloch vector of
    ``rho_K``; the length is computed directly because the trace form loses
    half its digits near ``D_K = 0``.
    """
    d_a = float(np.linalg.norm(bloch_vector(partial_trace(state, "A"))))
    d_b = float(np.linalg.norm(bloch_vector(partial_trace(state, "B"))))
    return float(np.sqrt((d_a**2 + d_b**2) / 2.0)), d_a, d_b


def local_coherence_from_purity(rho_k):
    """``sqrt(2 Tr rho_K^2 - 1)`` evaluated literally, for cross-checks."""
    return _sqrt_clamped(2.0 * np.trace(rho_k @ rho_k).real - 1.0)


def intrinsic_concurrence(state):
    """``sqrt(Tr(rho rho~))``."""
    tr = np.einsum("ij,ji->", state.rho, state.rho_tilde).real
    return _sqrt_clamped(tr)


def report(state):
    c, lam = concurrence(state)
    d, d_a, d_b = first_order_coherence(state)
    c_i = intrinsic_concurrence(state)
    pur = purity(state)
    return ResourceReport(
        d_a=d_a,
        d_b=d_b,
        d=d,
        c=c,
        c_i=c_i,
        purity=pur,
        tradeoff_residual=c_i**2 + d**2 - pur,
        rank_rr=numerical_rank(lam),
        lambdas=tuple(float(x) for x in lam),
    )


def check_rank_condition(state):
    """``(C_I == C within 1e-8, rank of rho rho~)``.

    C_I equals C exactly when rho rho~ has rank 0 or 1.
    """
    c, lam = concurrence(state)
    equal = abs(intrinsic_concurrence(state) - c) <= EQUALITY_TOL
    return equal, numerical_rank(lam)


def tilde_overlaps(vectors):
    """Matrix of tilde inner products ``C_mn = <psi_m | psi~_n>`` for columns of ``vectors``."""
    v = np.asarray(vectors, dtype=complex)
    flipped = np.column_stack([spin_flip_vector(v[:, n]) for n in range(v.shape[1])])
    return v.conj().T @ flipped
