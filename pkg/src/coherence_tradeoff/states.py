"""Two-qubit density matrices, Fano form, spin flips and random states.

Basis order is |00>, |01>, |10>, |11> with qubit A the left tensor factor.
"""
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import InvalidState, NotHermitian, NotPSD
from .linalg import (
    as_matrix,
    dagger,
    herm_eigen,
    hermitian_defect,
    numerical_rank,
    rho_rhotilde_eigenvalues,
)

IDENTITY2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)
SIGMA_YY = np.kron(SIGMA_Y, SIGMA_Y)

STATE_TOL = 1e-10
NORM_TOL = 1e-12

KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)
BELL_PHI_PLUS = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
BELL_PHI_MINUS = np.array([1, 0, 0, -1], dtype=complex) / np.sqrt(2)
BELL_PSI_PLUS = np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2)
BELL_PSI_MINUS = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)


def _readonly(a):
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized two-qubit state vector."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (4,) or not np.all(np.isfinite(amps)):
            raise InvalidState("shape", "pure state needs 4 finite amplitudes")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidState("norm", f"|psi| = {norm!r}")
        object.__setattr__(self, "amplitudes", _readonly(amps))

    @classmethod
    def normalized(cls, amplitudes):
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        return cls(amps / np.linalg.norm(amps))

    def projector(self):
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def density(self):
        return TwoQubitState(self.projector())


@dataclass(frozen=True, eq=False)
class FanoForm:
    """Local Bloch vectors ``a``, ``b`` and correlation tensor ``t``.

    ``rho = 1/4 [I + (a.sigma) x I + I x (b.sigma) + sum t_mn sigma_m x sigma_n]``.
    """

    a: np.ndarray
    b: np.ndarray
    t: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float).reshape(-1)
        b = np.asarray(self.b, dtype=float).reshape(-1)
        t = np.asarray(self.t, dtype=float)
        if a.shape != (3,) or b.shape != (3,) or t.shape != (3, 3):
            raise InvalidState("shape", "Fano form needs a[3], b[3], t[3][3]")
        for name, arr in (("a", a), ("b", b), ("t", t)):
            if not np.all(np.isfinite(arr)):
                raise InvalidState("finite", f"{name} has non-finite entries")
            if np.any(np.abs(arr) > 1 + STATE_TOL):
                raise InvalidState("range", f"{name} has entries outside [-1, 1]")
        if np.linalg.norm(a) > 1 + STATE_TOL or np.linalg.norm(b) > 1 + STATE_TOL:
            raise InvalidState("range", "Bloch vector longer than 1")
        for name, arr in (("a", a), ("b", b), ("t", t)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def to_dict(self):
        return {"a": self.a.tolist(), "b": self.b.tolist(), "t": self.t.tolist()}

    @classmethod
    def from_dict(cls, obj):
        return cls(obj["a"], obj["b"], obj["t"])


@dataclass(frozen=True, eq=False)
class TwoQubitState:
    """Validated 4x4 density matrix.

    Raises :class:`InvalidState` (or the ``NotHermitian`` / ``NotPSD``
    subclasses) naming the violated invariant. The stored matrix is the
    Hermitian part of the input.
    """

    rho: np.ndarray = field(repr=False)

    def __post_init__(self):
        try:
            m = as_matrix(self.rho)
        except ValueError as exc:
            raise InvalidState("finite", str(exc)) from None
        if m.shape != (4, 4):
            raise InvalidState("shape", f"expected 4x4, got {m.shape}")
        defect = hermitian_defect(m)
        if defect > STATE_TOL:
            raise NotHermitian(f"max |rho - rho^dagger| = {defect:.3e}")
        m = 0.5 * (m + dagger(m))
        tr = np.trace(m).real
        if abs(tr - 1.0) > STATE_TOL:
            raise InvalidState("trace", f"Tr(rho) = {tr!r}")
        spectrum = herm_eigen(m)
        if spectrum.eigenvalues[-1] < -STATE_TOL:
            raise NotPSD(f"smallest eigenvalue {spectrum.eigenvalues[-1]:.3e}")
        object.__setattr__(self, "rho", _readonly(m))
        self.__dict__["spectrum"] = spectrum

    @cached_property
    def fano(self):
        return to_fano(self)

    @cached_property
    def rho_tilde(self):
        return spin_flip(self.rho)

    @cached_property
    def rr_eigenvalues(self):
        """Descending eigenvalues of ``rho @ rho_tilde``."""
        lam = rho_rhotilde_eigenvalues(self.rho, self.rho_tilde)
        lam.setflags(write=False)
        return lam

    @property
    def rank(self):
        return numerical_rank(self.spectrum.eigenvalues)

    def to_dict(self):
        return {
            "dim": 4,
            "re": self.rho.real.reshape(-1).tolist(),
            "im": self.rho.imag.reshape(-1).tolist(),
        }

    @classmethod
    def from_dict(cls, obj):
        """Parse the state JSON object ``{"dim": 4, "re": [16], "im": [16]}``."""
        if obj.get("dim") != 4:
            raise ValueError("state JSON must have dim == 4")
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", [0.0] * 16), dtype=float)
        if re.shape != (16,) or im.shape != (16,):
            raise ValueError("state JSON needs 16 real and 16 imaginary entries")
        if not (np.all(np.isfinite(re)) and np.all(np.isfinite(im))):
            raise ValueError("state JSON has non-finite entries")
        return cls((re + 1j * im).reshape(4, 4))


def from_fano(f):
    """Assemble the density matrix described by a :class:`FanoForm`."""
    m = np.kron(IDENTITY2, IDENTITY2).astype(complex)
    for i, s in enumerate(PAULIS):
        m += f.a[i] * np.kron(s, IDENTITY2)
        m += f.b[i] * np.kron(IDENTITY2, s)
        for j, s2 in enumerate(PAULIS):
            m += f.t[i, j] * np.kron(s, s2)
    return TwoQubitState(m / 4)


def to_fano(state):
    rho = state.rho
    a = [np.trace(rho @ np.kron(s, IDENTITY2)).real for s in PAULIS]
    b = [np.trace(rho @ np.kron(IDENTITY2, s)).real for s in PAULIS]
    t = [[np.trace(rho @ np.kron(s, s2)).real for s2 in PAULIS] for s in PAULIS]
    return FanoForm(a, b, t)


def partial_trace(state, keep="A"):
    """Reduced 2x2 density matrix of subsystem ``keep`` (``"A"`` or ``"B"``)."""
    rho = state.rho if isinstance(state, TwoQubitState) else as_matrix(state)
    r = rho.reshape(2, 2, 2, 2)
    if keep == "A":
        return np.einsum("ijkj->ik", r)
    if keep == "B":
        return np.einsum("ijil->jl", r)
    raise ValueError(f"keep must be 'A' or 'B', not {keep!r}")


def bloch_vector(rho2):
    """Bloch vector of a single-qubit density matrix."""
    return np.array([np.trace(rho2 @ s).real for s in PAULIS])


def single_qubit(bloch):
    """``(I + bloch . sigma) / 2``."""
    a = np.asarray(bloch, dtype=float)
    return 0.5 * (IDENTITY2 + sum(a[i] * PAULIS[i] for i in range(3)))


def spin_flip(m):
    """``sigma_y^{(x)n} m* sigma_y^{(x)n}`` for a 2x2 or 4x4 matrix."""
    a = as_matrix(m)
    if a.shape == (2, 2):
        y = SIGMA_Y
    elif a.shape == (4, 4):
        y = SIGMA_YY
    else:
        raise ValueError(f"spin_flip needs dim 2 or 4, got {a.shape}")
    return y @ a.conj() @ y


def spin_flip_vector(v):
    """``(sigma_y x sigma_y) v*`` for a raw 4-vector."""
    return SIGMA_YY @ np.conj(v)


def spin_flip_pure(p):
    return PureState(spin_flip_vector(p.amplitudes))


def purity(state):
    rho = state.rho
    return float(np.einsum("ij,ji->", rho, rho).real)


def werner(w):
    """``w |Phi+><Phi+| + (1 - w) I/4``."""
    bell = np.outer(BELL_PHI_PLUS, BELL_PHI_PLUS.conj())
    return TwoQubitState(w * bell + (1 - w) * np.eye(4) / 4)


def bell_diagonal(weights):
    """Mixture of the Bell states Phi+, Phi-, Psi+, Psi- with the given weights."""
    bells = (BELL_PHI_PLUS, BELL_PHI_MINUS, BELL_PSI_PLUS, BELL_PSI_MINUS)
    return TwoQubitState(sum(w * np.outer(b, b.conj()) for w, b in zip(weights, bells)))


def product_state(bloch_a, bloch_b):
    return TwoQubitState(np.kron(single_qubit(bloch_a), single_qubit(bloch_b)))


def _parse_kind(kind, rank):
    if kind == "pure":
        return 1
    if kind == "mixed-ginibre":
        return 4 if rank is None else rank
    if kind.startswith("rank-"):
        return int(kind[5:])
    if kind == "rank":
        return rank
    raise ValueError(f"unknown sampler kind {kind!r}")


def sample_random(kind="mixed-ginibre", seed=None, rank=None):
    """Random two-qubit state from the Ginibre ensemble.

    ``rho = G G^dagger / Tr(G G^dagger)`` with ``G`` a 4 x r matrix of complex
    standard normal entries. ``kind`` is ``"pure"`` (r = 1),
    ``"mixed-ginibre"`` (r = 4 unless ``rank`` is given) or ``"rank-r"``.
    ``seed`` may be an int, a ``SeedSequence`` or a ``Generator``.
    """
    r = _parse_kind(kind, rank)
    if r not in (1, 2, 3, 4):
        raise ValueError(f"rank must be 1..4, got {r}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    g = rng.standard_normal((4, r)) + 1j * rng.standard_normal((4, r))
    if r == 1:
        return PureState.normalized(g[:, 0]).density()
    m = g @ dagger(g)
    return TwoQubitState(m / np.trace(m).real)


def sample_pure(seed=None):
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return PureState.normalized(rng.standard_normal(4) + 1j * rng.standard_normal(4))


def sample_seeds(seed, n):
    """Independent per-sample seed sequences; sample ``i`` replays from ``(seed, i)``."""
    return np.random.SeedSequence(seed).spawn(n)


def random_bloch(rng, max_norm=1.0):
    """Uniform point in the ball of radius ``max_norm``."""
    v = rng.standard_normal(3)
    v /= np.linalg.norm(v)
    return v * max_norm * rng.random() ** (1 / 3)
