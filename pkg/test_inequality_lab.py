import numpy as np
import pytest
from pydantic import ValidationError as SchemaError

from conftest import random_pair
from qpair.channel_catalog import named_channel, random_channel, random_state
from qpair.inequality_lab import (
    CHECKS,
    CampaignConfig,
    CheckKind,
    check_dpi,
    check_exchange_identity,
    check_marginal_consistency,
    check_product_marginals,
    check_strong_subadditivity,
    check_subadditivity,
    ensure_feasible,
    marginal_entropy,
    run_campaign,
    run_trial,
    split_marginals,
    trial_seed,
)
from qpair.information import matrix_entropy
from qpair.input_validator import BadParam, DimMismatch, InfeasibleShape, ShapeMismatch
from qpair.purification import purify_pair_composed
from qpair.quantum_objects import KrausChannel, density_from_vector, product_state

TOL = 1e-9


def _bell():
    return density_from_vector([1, 0, 0, 1])


# ── data processing ──────────────────────────────────────────────────

def test_dpi_identity_then_depolarizing(mixed_qubit, identity_qubit, full_depolarizing):
    result = check_dpi(mixed_qubit, identity_qubit, full_depolarizing)
    assert result.passed
    assert result.kind is CheckKind.INEQUALITY
    assert abs(result.lhs + 1) < TOL
    assert abs(result.rhs - 1) < TOL
    assert abs(result.margin - 2) < TOL


def test_dpi_depolarizing_then_identity(mixed_qubit, identity_qubit, full_depolarizing):
    result = check_dpi(mixed_qubit, full_depolarizing, identity_qubit)
    assert result.passed
    assert abs(result.margin) < TOL


def test_dpi_random_pairs():
    for seed in range(500):
        rho, phi1 = random_pair(seed)
        phi2 = random_channel(phi1.dim_out, 2 + seed % 3, 2 + seed % 4, seed + 10_000)
        result = check_dpi(rho, phi1, phi2, seed=seed)
        assert result.passed, f"seed {seed}: margin {result.margin}"
        assert result.details["route_gap"] < 1e-8
        assert check_marginal_consistency(rho, phi1, phi2).margin < 1e-10


@pytest.mark.parametrize("dims", [(2, 3, 2), (3, 2, 4)])
def test_dpi_dimension_changing_chains(dims):
    d_in, d_mid, d_out = dims
    for seed in range(50):
        rng = np.random.default_rng(seed)
        rho = random_state(d_in, rng)
        phi1 = random_channel(d_in, d_mid, 2, rng)
        phi2 = random_channel(d_mid, d_out, 2, rng)
        assert check_dpi(rho, phi1, phi2, seed=seed).passed


def test_dpi_dim_mismatch(mixed_qubit):
    with pytest.raises(DimMismatch):
        check_dpi(mixed_qubit, random_channel(2, 3, 1, 0), random_channel(2, 2, 1, 0))


# ── reference-environment marginal ──────────────────────────────────

def test_marginal_consistency_random_pairs():
    for seed in range(200):
        rho, phi1 = random_pair(seed)
        phi2 = random_channel(phi1.dim_out, 3, 2, seed + 500)
        result = check_marginal_consistency(rho, phi1, phi2, seed=seed)
        assert result.passed
        assert result.kind is CheckKind.IDENTITY
        assert result.margin < 1e-10


def test_marginal_consistency_catches_lossy_second_channel(mixed_qubit, identity_qubit):
    lossy = KrausChannel(np.array([0.9 * np.eye(2)]))
    result = check_marginal_consistency(mixed_qubit, identity_qubit, lossy)
    assert not result.passed
    assert result.margin > 1e-3


# ── exchange identity ────────────────────────────────────────────────

def test_exchange_identity_random_pairs():
    for seed in range(100):
        rho, phi = random_pair(seed)
        result = check_exchange_identity(rho, phi, seed=seed)
        assert result.passed
        assert result.details["entropy_gap"] < TOL


def test_exchange_identity_full_depolarizing(mixed_qubit, full_depolarizing):
    result = check_exchange_identity(mixed_qubit, full_depolarizing)
    assert result.passed
    assert abs(result.lhs - 2) < TOL and abs(result.rhs - 2) < TOL


# ── subadditivity ────────────────────────────────────────────────────

def test_subadditivity_bell_pair_through_identities(identity_qubit):
    result = check_subadditivity(_bell(), identity_qubit, identity_qubit)
    assert result.passed
    assert abs(result.lhs) < TOL
    assert abs(result.rhs - 4) < TOL
    assert abs(result.margin - 4) < TOL


def test_subadditivity_product_input_is_equality():
    for seed in range(30):
        rng = np.random.default_rng(seed)
        rho1, rho2 = random_state(2, rng), random_state(3, rng)
        phi1, phi2 = random_channel(2, 3, 2, rng), random_channel(3, 2, 2, rng)
        result = check_subadditivity(product_state(rho1, rho2), phi1, phi2)
        assert result.passed
        assert abs(result.margin) < 1e-9


def test_subadditivity_random_pairs():
    for seed in range(300):
        rng = np.random.default_rng(seed)
        d1, d2 = int(rng.integers(2, 4)), int(rng.integers(2, 4))
        rho12 = random_state(d1 * d2, rng)
        phi1 = random_channel(d1, int(rng.integers(2, 4)), 2, rng)
        phi2 = random_channel(d2, int(rng.integers(2, 4)), 2, rng)
        result = check_subadditivity(rho12, phi1, phi2, seed=seed)
        assert result.passed, f"seed {seed}: margin {result.margin}"
        assert result.details["route_gap"] < 1e-8


def test_subadditivity_dim_mismatch(identity_qubit):
    with pytest.raises(DimMismatch):
        check_subadditivity(random_state(6, 0), identity_qubit, identity_qubit)


def test_product_marginals_random_pairs():
    for seed in range(100):
        rng = np.random.default_rng(seed)
        rho12 = random_state(6, rng)
        phi1, phi2 = random_channel(2, 2, 3, rng), random_channel(3, 2, 2, rng)
        result = check_product_marginals(rho12, phi1, phi2, seed=seed)
        assert result.passed
        assert set(result.details) == {"q1e1", "q2e2"}


def test_product_marginals_bell_pair(identity_qubit):
    result = check_product_marginals(_bell(), identity_qubit, identity_qubit)
    assert result.passed
    assert abs(result.lhs - 2) < TOL


def test_split_marginals_of_bell_pair():
    rho1, rho2 = split_marginals(_bell(), 2, 2)
    np.testing.assert_allclose(rho1.matrix, np.eye(2) / 2, atol=1e-12)
    np.testing.assert_allclose(rho2.matrix, np.eye(2) / 2, atol=1e-12)


# ── strong subadditivity ─────────────────────────────────────────────

@pytest.mark.parametrize("dims", [(2, 2, 2), (2, 3, 2)])
def test_strong_subadditivity_random_states(dims):
    for seed in range(300):
        rho = random_state(int(np.prod(dims)), seed)
        result = check_strong_subadditivity(rho, dims, seed=seed)
        assert result.passed, f"seed {seed}: margin {result.margin}"


def test_strong_subadditivity_product_is_equality():
    rho = product_state(random_state(2, 1), random_state(2, 2), random_state(3, 3))
    result = check_strong_subadditivity(rho, (2, 2, 3))
    assert abs(result.margin) < TOL


def test_strong_subadditivity_ghz_state():
    ghz = density_from_vector([1, 0, 0, 0, 0, 0, 0, 1])
    result = check_strong_subadditivity(ghz, (2, 2, 2))
    assert result.passed
    # S(AB) + S(BC) - S(ABC) - S(B) = 1 + 1 - 0 - 1
    assert result.margin == pytest.approx(1.0, abs=TOL)


def test_strong_subadditivity_shape_errors():
    with pytest.raises(ShapeMismatch):
        check_strong_subadditivity(random_state(8, 0), (2, 4))
    with pytest.raises(ShapeMismatch):
        check_strong_subadditivity(random_state(8, 0), (2, 2, 3))


# ── marginal entropy helper ──────────────────────────────────────────

def test_marginal_entropy_uses_either_side():
    rho, phi1 = random_pair(5)
    omega = purify_pair_composed(rho, phi1, named_channel("identity", dims=[phi1.dim_out]))
    for keep in (["R"], ["Q2"], ["R", "E1"], ["E1", "E2"], ["R", "Q2", "E1"]):
        assert abs(marginal_entropy(omega, keep) - matrix_entropy(omega.reduced_matrix(keep))) < TOL


# ── campaigns ────────────────────────────────────────────────────────

def test_trial_seed_is_deterministic():
    assert trial_seed(7, 3) == trial_seed(7, 3)
    assert trial_seed(7, 3) != trial_seed(7, 4)
    assert trial_seed(7, 3) != trial_seed(8, 3)


def test_run_trial_replays_exactly():
    config = CampaignConfig(trials=1, seed=0)
    for name in CHECKS:
        first = run_trial(name, trial_seed(0, 2), config)
        again = run_trial(name, trial_seed(0, 2), config)
        assert first == again
        assert first.seed == trial_seed(0, 2)


def test_run_trial_unknown_check():
    with pytest.raises(BadParam):
        run_trial("fermat", 0, CampaignConfig(trials=1))


def test_campaign_all_checks_pass():
    report = run_campaign(CampaignConfig(trials=25, seed=11), list(CHECKS))
    assert report.all_passed
    assert [c.name for c in report.checks] == list(CHECKS)
    for summary in report.checks:
        assert summary.trials == 25 and summary.passed == 25
        assert summary.failing_seeds == []


def test_campaign_dpi_default_trials():
    report = run_campaign(CampaignConfig(trials=500, seed=0), ["dpi"])
    (dpi,) = report.checks
    assert dpi.passed == 500
    assert dpi.worst_margin >= -TOL


def test_campaign_is_deterministic():
    config = CampaignConfig(trials=20, seed=42)
    first = run_campaign(config, ["dpi", "subadd"]).model_dump()
    assert run_campaign(config, ["dpi", "subadd"]).model_dump() == first


def test_campaign_workers_do_not_change_report():
    serial = run_campaign(CampaignConfig(trials=20, seed=5, workers=1), ["dpi", "exchange"])
    threaded = run_campaign(CampaignConfig(trials=20, seed=5, workers=4), ["dpi", "exchange"])
    assert serial.checks == threaded.checks


def test_campaign_duplicate_checks_run_once():
    report = run_campaign(CampaignConfig(trials=2), ["ssa", "ssa"])
    assert len(report.checks) == 1


def test_campaign_rejects_unknown_or_empty_checks():
    with pytest.raises(BadParam):
        run_campaign(CampaignConfig(trials=1), ["dpi", "bogus"])
    with pytest.raises(BadParam):
        run_campaign(CampaignConfig(trials=1), [])


def test_campaign_config_validation():
    with pytest.raises(SchemaError):
        CampaignConfig(trials=0)
    with pytest.raises(SchemaError):
        CampaignConfig(trials=1, din_min=5, din_max=4)


def test_infeasible_campaign_shape():
    config = CampaignConfig(trials=1, din_max=4, dout_min=1, dout_max=1, kraus_max=2)
    with pytest.raises(InfeasibleShape):
        ensure_feasible(config)
    with pytest.raises(InfeasibleShape):
        run_campaign(config, ["dpi"])


def test_feasibility_counts_only_selected_checks():
    config = CampaignConfig(trials=4, din_min=1, din_max=1, dout_min=1, dout_max=1, kraus_max=1)
    ensure_feasible(config, ["dpi", "marginal", "exchange"])
    with pytest.raises(InfeasibleShape):
        ensure_feasible(config, ["subadd"])
    report = run_campaign(config, ["dpi"])
    assert report.all_passed
    assert report.checks[0].passed == 4


def test_ssa_campaign_needs_no_channels():
    config = CampaignConfig(trials=3, din_max=2, dout_min=1, dout_max=1, kraus_max=1, factor_dim_max=2)
    ensure_feasible(config, ["ssa"])
    assert run_campaign(config, ["ssa"]).all_passed


def test_campaign_counts_errors_and_failures(mocker):
    failing = run_trial("dpi", 0, CampaignConfig(trials=1)).model_copy(update={"passed": False})

    def always_fails(rng, config, seed):
        return failing.model_copy(update={"seed": seed})

    def always_raises(rng, config, seed):
        raise DimMismatch("rho", "forced")

    mocker.patch.dict(CHECKS, {"dpi": always_fails, "ssa": always_raises})
    report = run_campaign(CampaignConfig(trials=3, seed=1), ["dpi", "ssa"])
    dpi, ssa = report.checks
    assert (dpi.passed, dpi.failed, dpi.errors) == (0, 3, 0)
    assert (ssa.passed, ssa.failed, ssa.errors) == (0, 0, 3)
    assert ssa.worst_margin is None
    assert ssa.failing_seeds == [trial_seed(1, i) for i in range(3)]
    assert not report.all_passed


def test_campaign_counts_numerical_errors(mocker):
    def singular(rng, config, seed):
        raise np.linalg.LinAlgError("eigenvalues did not converge")

    def bad_value(rng, config, seed):
        raise ValueError("array must not contain infs or NaNs")

    mocker.patch.dict(CHECKS, {"exchange": singular, "product": bad_value})
    report = run_campaign(CampaignConfig(trials=2, seed=3), ["exchange", "product", "dpi"])
    exchange, product, dpi = report.checks
    assert (exchange.errors, product.errors) == (2, 2)
    assert exchange.passed == product.passed == 0
    assert dpi.passed == 2
    assert not report.all_passed
