"""Single-qubit noise channels as two-qubit unitary dilations.

The system qubit A is the left tensor factor and the environment starts in
|0> on the right: ``rho_IT = rho_A (x) |0><0|``. Each channel is a 4x4 unitary
``U(p)`` and the evolved state is ``U rho_IT U^dagger``.
"""
import enum
import io
from dataclasses import dataclass, field

import numpy as np

from .errors import BadParameter, SingularRatio
from .measures import report
from .states import TwoQubitState, single_qubit

ZERO_CONCURRENCE = 1e-10
SINGULAR_DENOMINATOR = 1e-12
DEFAULT_STEPS = 101
# ranks can collapse near the endpoints; rank claims are checked inside this window
RANK_WINDOW = (0.05, 0.95)


class ChannelKind(enum.Enum):
    AD = "ad"
    BF = "bf"
    BPF = "bpf"
    PF = "pf"

    @property
    def axis(self):
        """Bloch component entering the closed-form ratio (None for AD)."""
        return {"ad": None, "bf": 0, "bpf": 1, "pf": 2}[self.value]

    @property
    def expected_rank(self):
        return 1 if self is ChannelKind.AD else 2

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        try:
            return cls(str(text).lower())
        except ValueError:
            raise BadParameter(f"unknown channel kind {text!r}") from None


def dilation_unitary(kind, p):
    """4x4 unitary on system (x) environment realizing channel ``kind`` at strength ``p``."""
    kind = ChannelKind.parse(kind)
    if not 0.0 <= p <= 1.0:
        raise BadParameter(f"p must lie in [0, 1], got {p!r}")
    c = np.sqrt(1.0 - p)
    s = np.sqrt(p)
    if kind is ChannelKind.AD:
        u = [[1, 0, 0, 0], [0, c, s, 0], [0, -s, c, 0], [0, 0, 0, 1]]
    elif kind is ChannelKind.BF:
        u = [[c, 0, 0, -s], [0, c, s, 0], [0, -s, c, 0], [s, 0, 0, c]]
    elif kind is ChannelKind.BPF:
        u = [[c, 0, 0, 1j * s], [0, c, -1j * s, 0], [0, -1j * s, c, 0], [1j * s, 0, 0, c]]
    else:
        u = [[c, -s, 0, 0], [s, c, 0, 0], [0, 0, c, s], [0, 0, -s, c]]
    return np.array(u, dtype=complex)


def _bloch(a):
    a = np.asarray(a, dtype=float).reshape(-1)
    if a.shape != (3,) or not np.all(np.isfinite(a)):
        raise BadParameter("Bloch vector needs three finite components")
    if np.linalg.norm(a) > 1.0 + 1e-10:
        raise BadParameter(f"|a| = {np.linalg.norm(a)!r} exceeds 1")
    return a


def initial_state(a):
    """``rho_A (x) |0><0|`` for the Bloch vector ``a``."""
    env = np.diag([1.0, 0.0]).astype(complex)
    return TwoQubitState(np.kron(single_qubit(_bloch(a)), env))


def evolve(kind, a, p):
    u = dilation_unitary(kind, p)
    rho = u @ initial_state(a).rho @ u.conj().T
    return TwoQubitState(rho)


def closed_form_ratio(kind, a):
    """Constant ratio ``C_I / C`` of the evolved state.

    1 for amplitude damping; otherwise
    ``sqrt((1 + |a|^2 - 2 a_i^2) / (2 (|a|^2 - a_i^2)))`` with ``i`` the channel axis.
    """
    kind = ChannelKind.parse(kind)
    a = _bloch(a)
    if kind.axis is None:
        return 1.0
    a2 = float(a @ a)
    ai2 = float(a[kind.axis] ** 2)
    denom = a2 - ai2
    if denom <= SINGULAR_DENOMINATOR:
        axis = "xyz"[kind.axis]
        raise SingularRatio(
            axis, f"Bloch vector lies on the {axis} axis of the {kind.name} channel; ratio undefined"
        )
    return float(np.sqrt((1.0 + a2 - 2.0 * ai2) / (2.0 * denom)))


@dataclass(frozen=True, eq=False)
class ChannelSweep:
    """Resource reports of one channel over a grid of noise strengths.

    ``ratio`` is the mean measured ``C_I / C`` over grid points with
    ``0 < p < 1`` and nonzero concurrence (the closed form when there are none);
    ``ratio_spread`` is the max-min spread of those per-point ratios.
    """

    kind: ChannelKind
    bloch_a: np.ndarray = field(repr=False)
    p_grid: np.ndarray = field(repr=False)
    reports: list = field(repr=False)
    ratio: float
    ratio_closed_form: float
    ratio_spread: float
    conserved: float
    zero_concurrence: list = field(default_factory=list, repr=False)
    pure_input: bool = False

    @property
    def eq42_residuals(self):
        s2 = self.ratio_closed_form**2
        return np.array([r.d**2 + s2 * r.c**2 - self.conserved for r in self.reports])

    @property
    def ranks(self):
        return [r.rank_rr for r in self.reports]

    def interior(self):
        lo, hi = RANK_WINDOW
        return [i for i, p in enumerate(self.p_grid) if lo < p < hi]

    def to_csv(self):
        return sweep_csv(self)

    def summary(self):
        return {
            "kind": self.kind.value,
            "bloch": self.bloch_a.tolist(),
            "steps": len(self.p_grid),
            "ratio": self.ratio,
            "ratio_closed_form": self.ratio_closed_form,
            "ratio_spread": self.ratio_spread,
            "conserved": self.conserved,
            "max_abs_residual_eq42": float(np.max(np.abs(self.eq42_residuals))),
            "ranks_interior": sorted({self.ranks[i] for i in self.interior()}),
            "zero_concurrence_p": [float(self.p_grid[i]) for i in self.zero_concurrence],
            "pure_input": self.pure_input,
        }


def sweep(kind, a, steps=DEFAULT_STEPS):
    """Evolve ``rho_A (x) |0><0|`` through channel ``kind`` on a uniform p grid.

    Raises
    ------
    SingularRatio
        When the Bloch vector is aligned with the channel axis.
    """
    kind = ChannelKind.parse(kind)
    if steps < 2:
        raise BadParameter("steps must be at least 2")
    a = _bloch(a)
    closed = closed_form_ratio(kind, a)
    grid = np.linspace(0.0, 1.0, steps)
    reports = [report(evolve(kind, a, float(p))) for p in grid]

    zero = [i for i, r in enumerate(reports) if r.c <= ZERO_CONCURRENCE]
    measured = [
        r.c_i / r.c
        for p, r in zip(grid, reports)
        if 0.0 < p < 1.0 and r.c > ZERO_CONCURRENCE
    ]
    if measured:
        ratio = float(np.mean(measured))
        spread = float(np.max(measured) - np.min(measured))
    else:
        ratio, spread = closed, 0.0
    return ChannelSweep(
        kind=kind,
        bloch_a=a,
        p_grid=grid,
        reports=reports,
        ratio=ratio,
        ratio_closed_form=closed,
        ratio_spread=spread,
        conserved=(1.0 + float(a @ a)) / 2.0,
        zero_concurrence=zero,
        pure_input=bool(abs(np.linalg.norm(a) - 1.0) <= 1e-10),
    )


CSV_COLUMNS = ("p", "D", "C", "C_I", "purity", "residual_eq42")


def fmt(x):
    """17 significant digits, enough for an exact round trip."""
    return format(float(x), ".17g")


def sweep_csv(sw):
    buf = io.StringIO()
    buf.write(",".join(CSV_COLUMNS) + "\n")
    for p, r, res in zip(sw.p_grid, sw.reports, sw.eq42_residuals):
        buf.write(",".join(fmt(x) for x in (p, r.d, r.c, r.c_i, r.purity, res)) + "\n")
    return buf.getvalue()

