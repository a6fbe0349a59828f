"""Tilde-orthogonal pure-state decomposition and the extremal unitary transforms.

With ``s = sqrt(rho)`` and ``w_n`` the eigenvectors of ``s rho~ s``, the
vectors ``x_n = s w_n`` satisfy ``rho = sum_n x_n x_n^dagger`` and are right
eigenvectors of ``rho rho~``. Their tilde Gram matrix
``x_m^dagger (sigma_y x sigma_y) x_n*`` is diagonal once each degenerate
eigenspace is rotated by a Takagi factorization of its restricted form.
"""
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import nnls

from .errors import DegenerateDecomposition, NotTildeOrthogonal
from .linalg import (
    clamp_small_negative,
    dagger,
    herm_eigen,
    herm_sqrt,
    rank_cutoff,
    takagi,
)
from .measures import concurrence_pure, tilde_overlaps
from .states import SIGMA_YY, PureState, TwoQubitState

# |00> -> Phi+, |01> -> Phi-, |10> -> Psi+, |11> -> Psi-
BELL_TRANSFORM = np.array(
    [[1, 1, 0, 0], [0, 0, 1, 1], [0, 0, 1, -1], [1, -1, 0, 0]], dtype=complex
) / np.sqrt(2)

CLUSTER_TOL = 1e-6
DROP_TOL = 1e-14
TILDE_ORTHO_TOL = 1e-8
WEIGHT_SUM_TOL = 1e-8
FALLBACK_RESIDUAL_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class TildeMember:
    q: float
    phi: PureState
    c: float
    lam: float


@dataclass(frozen=True, eq=False)
class TildeEnsemble:
    """Special decomposition ``rho = sum q_n |phi_n><phi_n|``.

    ``degenerate`` records that a repeated eigenvalue of ``rho rho~`` forced a
    Takagi rotation; ``weights_solved`` that some weights came from
    nonnegative least squares rather than ``q = sqrt(lambda) / C(phi)``.
    """

    members: list
    reconstruction_residual: float
    tilde_gram_offdiag: float
    degenerate: bool = False
    weights_solved: bool = False

    @property
    def fallback(self):
        return self.degenerate or self.weights_solved

    @property
    def weights(self):
        return np.array([m.q for m in self.members])

    def phis(self):
        return np.column_stack([m.phi.amplitudes for m in self.members])

    def reconstruct(self):
        return sum(m.q * m.phi.projector() for m in self.members)

    def intrinsic_concurrence_sq(self):
        return float(sum(m.q**2 * m.c**2 for m in self.members))

    def to_dict(self):
        return {
            "members": [
                {
                    "q": m.q,
                    "phi_re": m.phi.amplitudes.real.tolist(),
                    "phi_im": m.phi.amplitudes.imag.tolist(),
                    "c": m.c,
                }
                for m in self.members
            ],
            "residual": self.reconstruction_residual,
            "tilde_gram_offdiag": self.tilde_gram_offdiag,
            "fallback": self.fallback,
            "degenerate": self.degenerate,
            "weights_solved": self.weights_solved,
        }


@dataclass(frozen=True, eq=False)
class ExtremalPair:
    """Bell-diagonal and eigenbasis-diagonal images of a state.

    ``lambda_state = u_to_lambda rho u_to_lambda^dagger`` is diagonal with the
    eigenvalues ``p`` of rho in descending order; ``bds_state`` applies
    :data:`BELL_TRANSFORM` on top of that.
    """

    bds_state: TwoQubitState
    lambda_state: TwoQubitState
    u_to_bds: np.ndarray = field(repr=False)
    u_to_lambda: np.ndarray = field(repr=False)
    p: np.ndarray = field(repr=False)


def _max_offdiag(g):
    if g.shape[0] < 2:
        return 0.0
    return float(np.max(np.abs(g - np.diag(np.diag(g)))))


def _clusters(lam, stop):
    i = 0
    while i < stop:
        j = i + 1
        while j < stop and lam[j - 1] - lam[j] <= CLUSTER_TOL:
            j += 1
        yield i, j
        i = j


def tilde_decompose(state):
    """Decompose ``state`` into mutually tilde-orthogonal pure states.

    Members with a nonzero eigenvalue of ``rho rho~`` get weights
    ``q = sqrt(lambda) / C(phi)``. Members from the null space carry no
    concurrence, so their weights are fitted by nonnegative least squares.

    Raises
    ------
    DegenerateDecomposition
        If the fitted reconstruction misses rho by more than 1e-6.
    """
    rho = state.rho
    s = herm_sqrt(rho)
    tau = s @ SIGMA_YY @ s.conj()
    h = s @ state.rho_tilde @ s
    eig = herm_eigen(0.5 * (h + dagger(h)))
    lam = clamp_small_negative(eig.eigenvalues)
    w = eig.eigenvectors.copy()
    n = len(lam)
    n_pos = int(np.count_nonzero(lam > rank_cutoff(lam)))

    degenerate = False
    for i, j in _clusters(lam, n_pos):
        if j - i < 2:
            continue
        block = w[:, i:j]
        form = dagger(block) @ tau @ block.conj()
        sigma, rot = takagi(0.5 * (form + form.T))
        w[:, i:j] = block @ rot
        lam[i:j] = sigma**2
        degenerate = True
    if n_pos < n:
        block = w[:, n_pos:]
        gram = herm_eigen(dagger(block) @ rho @ block)
        w[:, n_pos:] = block @ gram.eigenvectors

    members = []
    null_members = []
    for k in range(n):
        x = s @ w[:, k]
        norm2 = float(np.vdot(x, x).real)
        if norm2 <= DROP_TOL:
            continue
        phi = PureState(x / np.sqrt(norm2))
        c = concurrence_pure(phi)
        if k < n_pos:
            members.append(TildeMember(float(np.sqrt(lam[k]) / c), phi, c, float(lam[k])))
        else:
            null_members.append((phi, c, float(lam[k])))

    weights_solved = False
    if null_members:
        target = rho - sum((m.q * m.phi.projector() for m in members), np.zeros_like(rho))
        basis = np.column_stack([phi.projector().reshape(-1) for phi, _, _ in null_members])
        a = np.vstack([basis.real, basis.imag])
        b = np.concatenate([target.real.reshape(-1), target.imag.reshape(-1)])
        q_null, _ = nnls(a, b)
        for qn, (phi, c, lam_k) in zip(q_null, null_members):
            if qn > 0.0:
                members.append(TildeMember(float(qn), phi, c, lam_k))
        weights_solved = True

    ensemble = _assemble(rho, members, degenerate, weights_solved)
    if weights_solved and ensemble.reconstruction_residual > FALLBACK_RESIDUAL_TOL:
        raise DegenerateDecomposition(
            f"least-squares weights leave residual {ensemble.reconstruction_residual:.3e}"
        )
    return ensemble


def _assemble(rho, members, degenerate, weights_solved):
    phis = np.column_stack([m.phi.amplitudes for m in members])
    recon = sum(m.q * m.phi.projector() for m in members)
    return TildeEnsemble(
        members=members,
        reconstruction_residual=float(np.linalg.norm(rho - recon)),
        tilde_gram_offdiag=_max_offdiag(tilde_overlaps(phis)),
        degenerate=degenerate,
        weights_solved=weights_solved,
    )


def verify_theorem1(members):
    """Assemble ``rho = sum q |phi><phi|`` and predict the spectrum of ``rho rho~``.

    ``members`` is a sequence of ``(q, PureState)`` pairs or :class:`TildeMember`.
    The prediction is ``lambda_n = q_n^2 C^2(phi_n)``, sorted descending and
    padded with zeros to length 4.
    """
    pairs = [(m.q, m.phi) if isinstance(m, TildeMember) else tuple(m) for m in members]
    qs = np.array([q for q, _ in pairs], dtype=float)
    if abs(qs.sum() - 1.0) > WEIGHT_SUM_TOL:
        raise ValueError(f"weights sum to {qs.sum()!r}, not 1")
    phis = np.column_stack([phi.amplitudes for _, phi in pairs])
    offdiag = _max_offdiag(tilde_overlaps(phis))
    if offdiag > TILDE_ORTHO_TOL:
        raise NotTildeOrthogonal(f"max |<phi_m|phi~_n>| = {offdiag:.3e} for m != n")
    rho = sum(q * phi.projector() for q, phi in pairs)
    predicted = sorted((q**2 * concurrence_pure(phi) ** 2 for q, phi in pairs), reverse=True)
    predicted = np.array((predicted + [0.0] * 4)[:4])
    return TwoQubitState(rho), predicted


def extremal_transforms(state):
    """Rotate ``state`` to its eigenbasis-diagonal and Bell-diagonal forms.

    ``rho = V rho_Lambda V^dagger``; ``u_to_lambda = V^dagger`` and
    ``u_to_bds = M V^dagger`` with ``M`` the Bell transform.
    """
    v = state.spectrum.eigenvectors
    p = clamp_small_negative(state.spectrum.eigenvalues)
    u_lambda = dagger(v)
    u_bds = BELL_TRANSFORM @ u_lambda
    lambda_state = TwoQubitState(u_lambda @ state.rho @ v)
    bds_state = TwoQubitState(u_bds @ state.rho @ dagger(u_bds))
    return ExtremalPair(bds_state, lambda_state, u_bds, u_lambda, p)
