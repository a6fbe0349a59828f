import numpy as np
import pytest

from coherence_tradeoff.decomposition import (
    BELL_TRANSFORM,
    extremal_transforms,
    tilde_decompose,
    verify_theorem1,
)
from coherence_tradeoff.errors import NotTildeOrthogonal
from coherence_tradeoff.measures import (
    concurrence,
    first_order_coherence,
    intrinsic_concurrence,
    tilde_overlaps,
)
from coherence_tradeoff.states import (
    BELL_PHI_MINUS,
    BELL_PHI_PLUS,
    BELL_PSI_MINUS,
    BELL_PSI_PLUS,
    PureState,
    TwoQubitState,
    bell_diagonal,
    partial_trace,
    purity,
    sample_random,
    werner,
)

BELLS = (BELL_PHI_PLUS, BELL_PHI_MINUS, BELL_PSI_PLUS, BELL_PSI_MINUS)


def check_ensemble(state, ens, tol=1e-8):
    assert ens.reconstruction_residual <= tol
    np.testing.assert_allclose(ens.reconstruct(), state.rho, atol=tol)
    assert ens.tilde_gram_offdiag <= tol
    assert abs(ens.intrinsic_concurrence_sq() - intrinsic_concurrence(state) ** 2) <= tol
    assert np.all(ens.weights >= 0)
    assert ens.weights.sum() == pytest.approx(1.0, abs=tol)


@pytest.mark.parametrize("rank", [1, 2, 3, 4])
def test_random_round_trip(rank, rng):
    for _ in range(20):
        s = sample_random("rank", rng, rank=rank)
        check_ensemble(s, tilde_decompose(s))


def test_pure_state_single_member(rng):
    s = sample_random("pure", rng)
    ens = tilde_decompose(s)
    assert len(ens.members) == 1
    assert ens.members[0].q == pytest.approx(1.0)
    assert ens.members[0].c == pytest.approx(concurrence(s)[0], abs=1e-10)


def test_bell_diagonal_members():
    s = bell_diagonal([0.4, 0.3, 0.2, 0.1])
    ens = tilde_decompose(s)
    np.testing.assert_allclose(sorted(ens.weights, reverse=True), [0.4, 0.3, 0.2, 0.1], atol=1e-12)
    np.testing.assert_allclose([m.c for m in ens.members], 1.0, atol=1e-12)


def test_maximally_mixed_takes_takagi_path():
    s = werner(0.0)
    ens = tilde_decompose(s)
    assert ens.degenerate and ens.fallback
    np.testing.assert_allclose(ens.weights, 0.25, atol=1e-12)
    np.testing.assert_allclose([m.c for m in ens.members], 1.0, atol=1e-12)
    check_ensemble(s, ens)


def test_product_state_null_space():
    s = PureState([1, 0, 0, 0]).density()
    ens = tilde_decompose(s)
    assert ens.weights_solved
    assert len(ens.members) == 1
    assert ens.members[0].q == pytest.approx(1.0) and ens.members[0].c == pytest.approx(0.0)


def test_werner_degenerate_cluster():
    s = werner(0.5)
    check_ensemble(s, tilde_decompose(s))


def test_to_dict_shape(rng):
    d = tilde_decompose(sample_random("mixed-ginibre", rng)).to_dict()
    assert {"members", "residual", "tilde_gram_offdiag", "fallback"} <= set(d)
    assert {"q", "phi_re", "phi_im", "c"} == set(d["members"][0])


def test_theorem1_bell_states():
    members = [(q, PureState(b)) for q, b in zip((0.4, 0.3, 0.2, 0.1), BELLS)]
    state, predicted = verify_theorem1(members)
    np.testing.assert_allclose(predicted, [0.16, 0.09, 0.04, 0.01], atol=1e-15)
    np.testing.assert_allclose(state.rr_eigenvalues, predicted, atol=1e-12)


def test_theorem1_with_decomposed_members(rng):
    s = sample_random("mixed-ginibre", rng)
    state, predicted = verify_theorem1(tilde_decompose(s).members)
    np.testing.assert_allclose(state.rr_eigenvalues, predicted, atol=1e-10)


def test_theorem1_rejects_non_orthogonal():
    a = PureState.normalized([1, 0, 0, 1])
    b = PureState.normalized([1, 0, 0, 0.5])
    with pytest.raises(NotTildeOrthogonal):
        verify_theorem1([(0.5, a), (0.5, b)])
    with pytest.raises(ValueError):
        verify_theorem1([(0.5, a)])


def test_bell_transform_unitary_and_marginals(rng):
    np.testing.assert_allclose(BELL_TRANSFORM @ BELL_TRANSFORM.conj().T, np.eye(4), atol=1e-15)
    for _ in range(5):
        d = np.diag(rng.dirichlet(np.ones(4))).astype(complex)
        img = BELL_TRANSFORM @ d @ BELL_TRANSFORM.conj().T
        np.testing.assert_allclose(partial_trace(img, "A"), np.eye(2) / 2, atol=1e-15)
        np.testing.assert_allclose(partial_trace(img, "B"), np.eye(2) / 2, atol=1e-15)


def test_bell_transform_columns_are_bell_states():
    for k, b in enumerate(BELLS):
        e = np.zeros(4)
        e[k] = 1
        np.testing.assert_allclose(BELL_TRANSFORM @ e, b, atol=1e-15)


def test_extremal_transforms(rng):
    s = sample_random("mixed-ginibre", rng)
    pair = extremal_transforms(s)
    p = pair.p
    for u in (pair.u_to_bds, pair.u_to_lambda):
        np.testing.assert_allclose(u @ u.conj().T, np.eye(4), atol=1e-12)
    np.testing.assert_allclose(pair.lambda_state.rho, np.diag(p), atol=1e-12)
    assert first_order_coherence(pair.bds_state)[0] <= 1e-9
    assert intrinsic_concurrence(pair.bds_state) == pytest.approx(np.sqrt(purity(s)), abs=1e-9)
    assert intrinsic_concurrence(pair.lambda_state) == pytest.approx(
        np.sqrt(2 * (p[0] * p[3] + p[1] * p[2])), abs=1e-9
    )
    assert first_order_coherence(pair.lambda_state)[0] == pytest.approx(
        np.sqrt((p[0] - p[3]) ** 2 + (p[1] - p[2]) ** 2), abs=1e-9
    )
    # purity is invariant, so C_I^2 + D^2 is the same at both extremes
    assert purity(pair.bds_state) == pytest.approx(purity(s), abs=1e-14)


def test_tilde_gram_diagonal_is_member_concurrence(rng):
    ens = tilde_decompose(sample_random("mixed-ginibre", rng))
    g = tilde_overlaps(ens.phis())
    np.testing.assert_allclose(np.abs(np.diag(g)), [m.c for m in ens.members], atol=1e-10)
