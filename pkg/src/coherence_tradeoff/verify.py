"""Randomized property campaigns over sampled states.

Every sample is drawn from ``SeedSequence(seed, spawn_key=(suite, index))``
so any failure replays from ``(seed, suite, index)`` alone via :func:`replay`.
"""
import numpy as np

from . import channels
from .decomposition import extremal_transforms, tilde_decompose
from .errors import InvalidState, SingularRatio, TradeoffError
from .measures import (
    check_rank_condition,
    concurrence,
    first_order_coherence,
    intrinsic_concurrence,
    report,
)
from .states import TwoQubitState, purity, random_bloch, sample_random

TOLERANCES = {
    "tradeoff": 1e-9,
    "property1": 1e-10,
    "property2": 1e-12,
    "bound": 1e-12,
    "decomposition": 1e-8,
    "extremal": 1e-9,
    "oracle": 1e-8,
    "channels": 1e-8,
}

# stream ids; changing them changes every sample
STREAMS = {"mixed": 0, "pure": 1, "full_rank": 2, "oracle": 3, "bloch": 4}


def _rng(seed, stream, index):
    ss = np.random.SeedSequence(seed, spawn_key=(STREAMS[stream], index))
    return np.random.default_rng(ss)


def replay(stream, seed, index):
    """Regenerate the sample a campaign drew for ``(stream, seed, index)``."""
    rng = _rng(seed, stream, index)
    if stream in ("mixed", "oracle"):
        return sample_random("rank", rng, rank=index % 4 + 1)
    if stream == "pure":
        return sample_random("pure", rng)
    if stream == "full_rank":
        return sample_random("mixed-ginibre", rng)
    if stream == "bloch":
        while True:
            a = random_bloch(rng, max_norm=0.999)
            if all(a @ a - a[i] ** 2 >= 1e-3 for i in range(3)):
                return a
    raise ValueError(f"unknown stream {stream!r}")


class _Suite:
    def __init__(self, name, tol, stream):
        self.name = name
        self.tol = tol
        self.stream = stream
        self.samples = 0
        self.max_residual = 0.0
        self.failures = []

    def record(self, index, seed, residual, ok=None, detail=None):
        self.samples += 1
        if np.isfinite(residual):
            self.max_residual = max(self.max_residual, float(residual))
        if ok is None:
            ok = residual <= self.tol
        if not ok:
            fail = {"seed": seed, "stream": self.stream, "index": index}
            if detail:
                fail["detail"] = detail
            self.failures.append(fail)

    def to_dict(self):
        return {
            "samples": self.samples,
            "max_residual": self.max_residual,
            "tolerance": self.tol,
            "failures": self.failures,
        }


def run_verification(samples=10000, seed=42, extra_matrices=()):
    """Run every property suite and return ``{suite: summary}``.

    ``extra_matrices`` are fed to the invariant suite on top of the sampled
    states, as a negative control.
    """
    suites = {
        "invariants": _Suite("invariants", 0.0, "mixed"),
        "tradeoff": _Suite("tradeoff", TOLERANCES["tradeoff"], "mixed"),
        "property1": _Suite("property1", TOLERANCES["property1"], "pure"),
        "property2": _Suite("property2", TOLERANCES["property2"], "mixed"),
        "rank_iff": _Suite("rank_iff", 0.0, "mixed"),
        "bound": _Suite("bound", TOLERANCES["bound"], "mixed"),
        "decomposition": _Suite("decomposition", TOLERANCES["decomposition"], "full_rank"),
        "extremal": _Suite("extremal", TOLERANCES["extremal"], "full_rank"),
        "oracle": _Suite("oracle", TOLERANCES["oracle"], "oracle"),
        "channels": _Suite("channels", TOLERANCES["channels"], "bloch"),
    }

    for i in range(samples):
        try:
            state = replay("mixed", seed, i)
        except InvalidState as exc:
            suites["invariants"].record(i, seed, np.inf, ok=False, detail=str(exc))
            continue
        suites["invariants"].record(i, seed, 0.0, ok=True)
        rep = report(state)
        suites["tradeoff"].record(i, seed, abs(rep.tradeoff_residual))
        suites["property2"].record(i, seed, max(rep.c - rep.c_i, 0.0))
        suites["bound"].record(i, seed, max(rep.c_i - 1.0, 0.0))
        equal, rank = check_rank_condition(state)
        suites["rank_iff"].record(
            i, seed, 0.0, ok=(equal == (rank <= 1)), detail=f"equal={equal} rank={rank}"
        )

    for k, m in enumerate(extra_matrices):
        try:
            TwoQubitState(m)
        except InvalidState as exc:
            suites["invariants"].record(f"injected-{k}", seed, np.inf, ok=False, detail=str(exc))
        else:
            suites["invariants"].record(f"injected-{k}", seed, 0.0, ok=True)

    for i in range(samples):
        state = replay("pure", seed, i)
        suites["property1"].record(
            i, seed, abs(intrinsic_concurrence(state) - concurrence(state)[0])
        )

    for i in range(samples):
        state = replay("full_rank", seed, i)
        suites["decomposition"].record(i, seed, *_decomposition_residual(state))
        suites["extremal"].record(i, seed, *_extremal_residual(state))

    for i in range(samples):
        state = replay("oracle", seed, i)
        brute = np.sort(np.linalg.eigvals(state.rho @ state.rho_tilde).real)[::-1]
        suites["oracle"].record(i, seed, float(np.max(np.abs(state.rr_eigenvalues - brute))))

    for i in range(max(1, samples // 500)):
        a = replay("bloch", seed, i)
        suites["channels"].record(i, seed, *_channel_residual(a))

    return {name: suite.to_dict() for name, suite in suites.items()}


def _decomposition_residual(state):
    try:
        ens = tilde_decompose(state)
    except TradeoffError as exc:
        return np.inf, False, str(exc)
    eq41 = abs(ens.intrinsic_concurrence_sq() - intrinsic_concurrence(state) ** 2)
    return max(ens.tilde_gram_offdiag, ens.reconstruction_residual, eq41), None, None


def _extremal_residual(state):
    pair = extremal_transforms(state)
    p = pair.p
    d_bds = first_order_coherence(pair.bds_state)[0]
    ci_bds = abs(intrinsic_concurrence(pair.bds_state) - np.sqrt(purity(state)))
    ci_lam = abs(
        intrinsic_concurrence(pair.lambda_state) - np.sqrt(2 * (p[0] * p[3] + p[1] * p[2]))
    )
    d_lam = abs(
        first_order_coherence(pair.lambda_state)[0]
        - np.sqrt((p[0] - p[3]) ** 2 + (p[1] - p[2]) ** 2)
    )
    return max(d_bds, ci_bds, ci_lam, d_lam), None, None


def _channel_residual(a):
    worst = 0.0
    for kind in channels.ChannelKind:
        try:
            sw = channels.sweep(kind, a, steps=21)
        except SingularRatio as exc:
            return np.inf, False, str(exc)
        ranks = {sw.ranks[i] for i in sw.interior()}
        if ranks != {kind.expected_rank}:
            return np.inf, False, f"{kind.value}: ranks {sorted(ranks)}"
        worst = max(
            worst,
            abs(sw.ratio - sw.ratio_closed_form),
            sw.ratio_spread,
            float(np.max(np.abs(sw.eq42_residuals))),
        )
    return worst, None, None


def all_passed(summary):
    return all(not s["failures"] for s in summary.values())
