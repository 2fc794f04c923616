import numpy as np
import pytest

from conftest import block_trace_e, block_trace_q, block_trace_r, random_pair
from qpair.channel_catalog import named_channel, random_channel, random_state
from qpair.information import matrix_entropy
from qpair.input_validator import DimMismatch, NotNormalized, ShapeMismatch, UnknownLabel, WrongLabels
from qpair.labeled_state import LabeledPureState
from qpair.matrix_core import max_deviation
from qpair.purification import (
    COMPOSED_LABELS,
    PAIR_LABELS,
    PRODUCT_LABELS,
    closed_form_output_env,
    closed_form_partial_states,
    closed_form_reference_env,
    closed_form_reference_env_composed,
    marginal,
    partial_states,
    purify_pair,
    purify_pair_composed,
    purify_pair_product,
    reference_output_via_channel,
)
from qpair.quantum_objects import (
    KrausChannel,
    apply,
    compose,
    density_from_vector,
    product_state,
    tensor,
)


def test_pure_input_through_identity():
    omega = purify_pair(density_from_vector([1, 0]), named_channel("identity"))
    assert omega.labels == PAIR_LABELS
    assert omega.dims == (1, 2, 1)
    # eigenvectors carry an arbitrary global phase
    np.testing.assert_allclose(np.abs(omega.amplitudes), [1, 0], atol=1e-12)


def test_maximally_mixed_through_identity(mixed_qubit, identity_qubit):
    omega = purify_pair(mixed_qubit, identity_qubit)
    assert omega.dims == (2, 2, 1)
    omega_r, omega_q, omega_e = partial_states(omega)
    np.testing.assert_allclose(omega_r.matrix, np.eye(2) / 2, atol=1e-12)
    np.testing.assert_allclose(omega_q.matrix, np.eye(2) / 2, atol=1e-12)
    np.testing.assert_allclose(omega_e.matrix, [[1]], atol=1e-12)


def test_full_depolarizing_environment(full_depolarizing):
    omega = purify_pair(density_from_vector([1, 0]), full_depolarizing)
    _, omega_q, omega_e = partial_states(omega)
    np.testing.assert_allclose(omega_q.matrix, np.eye(2) / 2, atol=1e-12)
    assert abs(matrix_entropy(omega_e.matrix) - 1.0) < 1e-9


@pytest.mark.parametrize("p", [0.0, 0.3, 0.5, 1.0])
def test_dephased_plus_state_environment(plus_state, p):
    omega = purify_pair(plus_state, named_channel("dephasing", [p]))
    np.testing.assert_allclose(omega.reduced_matrix(["E"]), np.diag([1 - p, p]), atol=1e-12)


def test_dim_mismatch(mixed_qubit):
    with pytest.raises(DimMismatch):
        purify_pair(mixed_qubit, random_channel(3, 2, 2, 0))
    with pytest.raises(DimMismatch):
        purify_pair_composed(mixed_qubit, random_channel(2, 3, 1, 0), random_channel(2, 2, 1, 0))
    with pytest.raises(DimMismatch):
        purify_pair_product(random_state(6, 1), random_channel(2, 2, 1, 0), random_channel(2, 2, 1, 0))


def test_non_trace_preserving_channel_breaks_norm(mixed_qubit):
    broken = KrausChannel(np.array([0.9 * np.eye(2)]))
    with pytest.raises(NotNormalized):
        purify_pair(mixed_qubit, broken)
    assert abs(purify_pair(mixed_qubit, broken, strict=False).norm - 0.9) < 1e-12


def test_partial_states_match_closed_forms():
    for seed in range(200):
        rho, phi = random_pair(seed)
        omega = purify_pair(rho, phi)
        assert abs(omega.norm - 1) < 1e-10
        got = [m.matrix for m in partial_states(omega)]
        for a, b in zip(got, closed_form_partial_states(rho, phi)):
            assert max_deviation(a, b) < 1e-10


def test_partial_states_match_block_oracles():
    for seed in range(20):
        rho, phi = random_pair(seed)
        omega = purify_pair(rho, phi)
        x = omega.projector()
        np.testing.assert_allclose(omega.reduced_matrix(["Q", "E"]), block_trace_r(x, omega.dims), atol=1e-12)
        np.testing.assert_allclose(omega.reduced_matrix(["R", "E"]), block_trace_q(x, omega.dims), atol=1e-12)
        np.testing.assert_allclose(omega.reduced_matrix(["R", "Q"]), block_trace_e(x, omega.dims), atol=1e-12)


def test_reference_spectrum_is_input_spectrum():
    rho, phi = random_pair(3)
    omega_r = marginal(purify_pair(rho, phi), ["R"])
    np.testing.assert_allclose(omega_r.state.spectral.eigenvalues, rho.spectral.eigenvalues, atol=1e-10)


def test_complementary_marginals_share_entropy():
    for seed in range(50):
        rho, phi = random_pair(seed)
        omega = purify_pair(rho, phi)
        for keep in (["R"], ["Q"], ["E"]):
            rest = omega.complement(keep)
            assert abs(matrix_entropy(omega.reduced_matrix(keep)) - matrix_entropy(omega.reduced_matrix(rest))) < 1e-9


def test_marginal_keeps_original_label_order():
    rho, phi = random_pair(4)
    omega = purify_pair(rho, phi)
    swapped = marginal(omega, ["E", "R"])
    assert swapped.labels == ("R", "E")
    np.testing.assert_allclose(swapped.matrix, omega.reduced_matrix(["R", "E"]), atol=1e-12)


def test_marginal_label_errors(mixed_qubit, identity_qubit):
    omega = purify_pair(mixed_qubit, identity_qubit)
    with pytest.raises(UnknownLabel):
        marginal(omega, [])
    with pytest.raises(UnknownLabel):
        marginal(omega, ["X"])
    composed = purify_pair_composed(mixed_qubit, identity_qubit, identity_qubit)
    with pytest.raises(WrongLabels):
        partial_states(composed)


def test_labeled_state_rejects_bad_layout():
    with pytest.raises(WrongLabels):
        LabeledPureState(("R", "R"), (1, 1), [1.0])
    with pytest.raises(ShapeMismatch):
        LabeledPureState(("R", "Q"), (2, 2), [1.0, 0.0])


# ── composed channel ─────────────────────────────────────────────────

def test_composed_purification_marginals():
    for seed in range(50):
        rng = np.random.default_rng(seed)
        rho = random_state(int(rng.integers(2, 5)), rng)
        phi1 = random_channel(rho.dim, 3, 2, rng)
        phi2 = random_channel(3, 2, 3, rng)
        omega = purify_pair_composed(rho, phi1, phi2)
        assert omega.labels == COMPOSED_LABELS
        assert omega.dims == (rho.rank, 2, 2, 3)
        assert max_deviation(omega.reduced_matrix(["Q2"]), apply(phi2, apply(phi1, rho)).matrix) < 1e-10
        assert max_deviation(omega.reduced_matrix(["R"]), np.diag(rho.spectral.eigenvalues)) < 1e-10


def test_composed_purification_equals_purification_of_composition():
    rho, phi1 = random_pair(7)
    phi2 = random_channel(phi1.dim_out, 2, 2, 8)
    omega = purify_pair_composed(rho, phi1, phi2)
    flat = purify_pair(rho, compose(phi2, phi1))
    np.testing.assert_allclose(omega.amplitudes, flat.amplitudes, atol=1e-12)


def test_reference_environment_unchanged_by_second_channel():
    for seed in range(200):
        rho, phi1 = random_pair(seed)
        phi2 = random_channel(phi1.dim_out, 2 + seed % 3, 3, seed + 1000)
        omega1 = purify_pair(rho, phi1).reduced_matrix(["R", "E"])
        omega12 = purify_pair_composed(rho, phi1, phi2).reduced_matrix(["R", "E1"])
        closed1 = closed_form_reference_env(rho, phi1)
        closed12 = closed_form_reference_env_composed(rho, phi1, phi2)
        assert max_deviation(omega1, omega12) < 1e-10
        assert max_deviation(omega1, closed1) < 1e-10
        assert max_deviation(omega12, closed12) < 1e-10


# ── product channel ──────────────────────────────────────────────────

def test_product_purification_marginals():
    for seed in range(50):
        rng = np.random.default_rng(seed)
        d1, d2 = int(rng.integers(2, 4)), int(rng.integers(2, 4))
        rho12 = random_state(d1 * d2, rng)
        phi1 = random_channel(d1, 2, 2, rng)
        phi2 = random_channel(d2, 3, 1, rng)
        omega = purify_pair_product(rho12, phi1, phi2)
        assert omega.labels == PRODUCT_LABELS
        assert omega.dims == (rho12.rank, 2, 3, 2, 1)
        out = apply(tensor(phi1, phi2), rho12).matrix
        assert max_deviation(omega.reduced_matrix(["Q1", "Q2"]), out) < 1e-10


def test_product_purification_equals_purification_of_tensor():
    rho12 = random_state(4, 9)
    phi1, phi2 = random_channel(2, 2, 2, 10), random_channel(2, 3, 2, 11)
    omega = purify_pair_product(rho12, phi1, phi2)
    flat = purify_pair(rho12, tensor(phi1, phi2))
    # (R, Q1, Q2, E1, E2) regrouped to (R, Q1Q2, E1E2)
    np.testing.assert_allclose(omega.amplitudes, flat.amplitudes, atol=1e-12)


def test_product_pair_marginals_on_product_input():
    rho1, rho2 = random_state(2, 12), random_state(3, 13)
    phi1, phi2 = random_channel(2, 3, 2, 14), random_channel(3, 2, 3, 15)
    omega = purify_pair_product(product_state(rho1, rho2), phi1, phi2)
    q1e1 = omega.reduced_matrix(["Q1", "E1"])
    assert max_deviation(q1e1, closed_form_output_env(rho1.matrix, phi1)) < 1e-10
    assert max_deviation(q1e1, purify_pair(rho1, phi1).reduced_matrix(["Q", "E"])) < 1e-10


# ── reference-output route ───────────────────────────────────────────

def test_reference_output_matches_purification():
    for seed in range(30):
        rho, phi = random_pair(seed)
        via_channel = reference_output_via_channel(rho, phi).matrix
        assert max_deviation(via_channel, purify_pair(rho, phi).reduced_matrix(["R", "Q"])) < 1e-10
