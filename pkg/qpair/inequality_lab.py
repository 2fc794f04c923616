"""
Inequality Lab Module
======================
Numerical checks of the two theorems proved with the pair purification
and of the identities behind them:
- data processing:   I_c(rho, Phi2 Phi1) <= I_c(rho, Phi1)
- subadditivity:     I(rho12, Phi1 ⊗ Phi2) <= I(rho1, Phi1) + I(rho2, Phi2)
- Omega^1_{RE1} = Omega^12_{RE1}, H(Omega_E) = H(Omega_RQ), the product
  marginal identities, and strong subadditivity as a supporting oracle.

Seeded campaigns run any subset of the checks over random trials.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from typing import Callable, Iterable

import numpy as np
from pydantic import BaseModel, Field, model_validator

from qpair.channel_catalog import random_channel, random_state
from qpair.config import (
    CAMPAIGN_WORKERS,
    DEFAULT_SEED,
    IDENTITY_TOL,
    INEQUALITY_TOL,
    ROUTE_TOL,
)
from qpair.information import info_report, matrix_entropy
from qpair.input_validator import (
    BadParam,
    InfeasibleShape,
    ShapeMismatch,
    ValidationError,
    require_dim,
)
from qpair.labeled_state import LabeledPureState
from qpair.matrix_core import FactorShape, max_deviation, partial_trace
from qpair.purification import (
    closed_form_output_env,
    closed_form_reference_env,
    closed_form_reference_env_composed,
    purify_pair,
    purify_pair_composed,
    purify_pair_product,
    reference_output_via_channel,
)
from qpair.quantum_objects import DensityMatrix, KrausChannel, compose, density_from_matrix, tensor

logger = logging.getLogger(__name__)


# ── Schemas ──────────────────────────────────────────────────────────

class CheckKind(str, Enum):
    INEQUALITY = "inequality"
    IDENTITY = "identity"


class CheckResult(BaseModel):
    """
    Outcome of one check.

    margin is rhs - lhs for inequalities (passes when >= -tolerance) and
    the max entrywise deviation for identities (passes when <= tolerance).
    """
    name: str
    kind: CheckKind
    passed: bool
    lhs: float
    rhs: float
    margin: float
    tolerance: float
    seed: int | None = None
    details: dict[str, float] = Field(default_factory=dict)


class CampaignConfig(BaseModel):
    trials: int = Field(..., ge=1)
    din_min: int = Field(2, ge=1)
    din_max: int = Field(4, ge=1)
    dout_min: int = Field(2, ge=1)
    dout_max: int = Field(4, ge=1)
    kraus_min: int = Field(1, ge=1)
    kraus_max: int = Field(5, ge=1)
    factor_dim_max: int = Field(3, ge=1)  # per factor, for bipartite/tripartite checks
    seed: int = Field(DEFAULT_SEED, ge=0)
    tolerance: float = Field(INEQUALITY_TOL, ge=0.0)
    identity_tolerance: float = Field(IDENTITY_TOL, ge=0.0)
    workers: int = Field(CAMPAIGN_WORKERS, ge=1)

    @model_validator(mode="after")
    def _ranges_nonempty(self):
        for lo, hi in (
            ("din_min", "din_max"),
            ("dout_min", "dout_max"),
            ("kraus_min", "kraus_max"),
            ("din_min", "factor_dim_max"),
        ):
            if getattr(self, lo) > getattr(self, hi):
                raise ValueError(f"{lo}={getattr(self, lo)} exceeds {hi}={getattr(self, hi)}")
        return self


class CheckSummary(BaseModel):
    name: str
    trials: int
    passed: int
    failed: int
    errors: int
    worst_margin: float | None = None
    failing_seeds: list[int] = Field(default_factory=list)


class CampaignReport(BaseModel):
    config: CampaignConfig
    checks: list[CheckSummary]

    @property
    def all_passed(self) -> bool:
        return all(c.failed == 0 and c.errors == 0 for c in self.checks)


# ── Helpers ──────────────────────────────────────────────────────────

def _decide(
    name: str,
    kind: CheckKind,
    lhs: float,
    rhs: float,
    margin: float,
    tol: float,
    seed: int | None,
    details: dict[str, float] | None = None,
    extra_ok: bool = True,
) -> CheckResult:
    if kind is CheckKind.INEQUALITY:
        ok = margin >= -tol
    else:
        ok = margin <= tol
    return CheckResult(
        name=name,
        kind=kind,
        passed=bool(ok and extra_ok),
        lhs=float(lhs),
        rhs=float(rhs),
        margin=float(margin),
        tolerance=float(tol),
        seed=seed,
        details=details or {},
    )


def marginal_entropy(omega: LabeledPureState, keep: Iterable[str]) -> float:
    """
    Entropy of a marginal of a pure state.

    Evaluated on whichever of keep / its complement is smaller; both have
    the same nonzero spectrum.
    """
    keep = list(keep)
    rest = omega.complement(keep)
    side = math.prod(omega.dim_of(l) for l in keep)
    rest_side = math.prod(omega.dim_of(l) for l in rest)
    if rest and rest_side < side:
        return matrix_entropy(omega.reduced_matrix(rest))
    return matrix_entropy(omega.reduced_matrix(keep))


def split_marginals(rho12: DensityMatrix, d1: int, d2: int) -> tuple[DensityMatrix, DensityMatrix]:
    """rho1 = Tr_2 rho12 and rho2 = Tr_1 rho12."""
    require_dim(rho12.dim, d1 * d2, "rho12")
    rho1 = density_from_matrix(partial_trace(rho12.matrix, (d1, d2), [0]))
    rho2 = density_from_matrix(partial_trace(rho12.matrix, (d1, d2), [1]))
    return rho1, rho2


# ── Checks ───────────────────────────────────────────────────────────

def check_dpi(
    rho: DensityMatrix,
    phi1: KrausChannel,
    phi2: KrausChannel,
    tol: float = INEQUALITY_TOL,
    route_tol: float = ROUTE_TOL,
    seed: int | None = None,
) -> CheckResult:
    """
    I_c(rho, Phi2 Phi1) <= I_c(rho, Phi1) for channels with arbitrary dims.

    Both sides are computed twice: from InfoReports (via compose), and from
    the purifications as H(RE1E2) - H(E1E2) and H(RE1) - H(E1). The routes
    must agree within route_tol.
    """
    require_dim(rho.dim, phi1.dim_in, "rho")
    require_dim(phi2.dim_in, phi1.dim_out, "phi2.dim_in")

    lhs = info_report(rho, compose(phi2, phi1)).coherent
    rhs = info_report(rho, phi1).coherent

    omega12 = purify_pair_composed(rho, phi1, phi2)
    omega1 = purify_pair(rho, phi1)
    lhs_route = marginal_entropy(omega12, ["R", "E1", "E2"]) - marginal_entropy(omega12, ["E1", "E2"])
    rhs_route = marginal_entropy(omega1, ["R", "E"]) - marginal_entropy(omega1, ["E"])
    route_gap = max(abs(lhs - lhs_route), abs(rhs - rhs_route))
    if route_gap > route_tol:
        logger.warning("⚠️ DPI routes disagree by %.3e (seed=%s)", route_gap, seed)

    return _decide(
        "dpi", CheckKind.INEQUALITY, lhs, rhs, rhs - lhs, tol, seed,
        details={"lhs_route": lhs_route, "rhs_route": rhs_route, "route_gap": route_gap},
        extra_ok=route_gap <= route_tol,
    )


def check_subadditivity(
    rho12: DensityMatrix,
    phi1: KrausChannel,
    phi2: KrausChannel,
    tol: float = INEQUALITY_TOL,
    route_tol: float = ROUTE_TOL,
    seed: int | None = None,
) -> CheckResult:
    """
    I(rho12, Phi1 ⊗ Phi2) <= I(rho1, Phi1) + I(rho2, Phi2), rho1 and rho2
    taken as partial traces of rho12.
    """
    require_dim(rho12.dim, phi1.dim_in * phi2.dim_in, "rho12")
    rho1, rho2 = split_marginals(rho12, phi1.dim_in, phi2.dim_in)

    lhs = info_report(rho12, tensor(phi1, phi2)).mutual
    rhs = info_report(rho1, phi1).mutual + info_report(rho2, phi2).mutual

    omega12 = purify_pair_product(rho12, phi1, phi2)
    lhs_route = (
        marginal_entropy(omega12, ["Q1", "Q2", "E1", "E2"])
        + marginal_entropy(omega12, ["Q1", "Q2"])
        - marginal_entropy(omega12, ["E1", "E2"])
    )
    rhs_route = 0.0
    for rho_i, phi_i in ((rho1, phi1), (rho2, phi2)):
        omega_i = purify_pair(rho_i, phi_i)
        rhs_route += (
            marginal_entropy(omega_i, ["Q", "E"])
            + marginal_entropy(omega_i, ["Q"])
            - marginal_entropy(omega_i, ["E"])
        )
    route_gap = max(abs(lhs - lhs_route), abs(rhs - rhs_route))

    return _decide(
        "subadd", CheckKind.INEQUALITY, lhs, rhs, rhs - lhs, tol, seed,
        details={"lhs_route": lhs_route, "rhs_route": rhs_route, "route_gap": route_gap},
        extra_ok=route_gap <= route_tol,
    )


def check_product_marginals(
    rho12: DensityMatrix,
    phi1: KrausChannel,
    phi2: KrausChannel,
    tol: float = IDENTITY_TOL,
    seed: int | None = None,
) -> CheckResult:
    """Omega^12_{Q1E1} = Omega^1_{Q1E1} and Omega^12_{Q2E2} = Omega^2_{Q2E2}."""
    require_dim(rho12.dim, phi1.dim_in * phi2.dim_in, "rho12")
    rho1, rho2 = split_marginals(rho12, phi1.dim_in, phi2.dim_in)
    omega12 = purify_pair_product(rho12, phi1, phi2)

    deviations: dict[str, float] = {}
    lhs = rhs = 0.0
    for idx, rho_i, phi_i in ((1, rho1, phi1), (2, rho2, phi2)):
        joint = omega12.reduced_matrix([f"Q{idx}", f"E{idx}"])
        single = purify_pair(rho_i, phi_i).reduced_matrix(["Q", "E"])
        closed = closed_form_output_env(rho_i.matrix, phi_i)
        deviations[f"q{idx}e{idx}"] = max(
            max_deviation(joint, single), max_deviation(joint, closed), max_deviation(single, closed)
        )
        lhs += matrix_entropy(joint)
        rhs += matrix_entropy(single)

    return _decide(
        "product", CheckKind.IDENTITY, lhs, rhs, max(deviations.values()), tol, seed,
        details=deviations,
    )


def check_marginal_consistency(
    rho: DensityMatrix,
    phi1: KrausChannel,
    phi2: KrausChannel,
    tol: float = IDENTITY_TOL,
    seed: int | None = None,
) -> CheckResult:
    """
    Omega^1_{RE1} = Omega^12_{RE1}, compared across the generic partial trace
    of each purification and both closed forms.

    phi2 is not required to be trace preserving here: a broken channel
    shows up as a deviation rather than as a construction error.
    """
    require_dim(rho.dim, phi1.dim_in, "rho")
    require_dim(phi2.dim_in, phi1.dim_out, "phi2.dim_in")

    generic_1 = purify_pair(rho, phi1, strict=False).reduced_matrix(["R", "E"])
    generic_12 = purify_pair_composed(rho, phi1, phi2, strict=False).reduced_matrix(["R", "E1"])
    closed_1 = closed_form_reference_env(rho, phi1)
    closed_12 = closed_form_reference_env_composed(rho, phi1, phi2)

    pairs = {
        "generic": max_deviation(generic_1, generic_12),
        "closed": max_deviation(closed_1, closed_12),
        "omega1": max_deviation(generic_1, closed_1),
        "omega12": max_deviation(generic_12, closed_12),
    }
    return _decide(
        "marginal", CheckKind.IDENTITY,
        matrix_entropy(generic_1), matrix_entropy(generic_12),
        max(pairs.values()), tol, seed, details=pairs,
    )


def check_exchange_identity(
    rho: DensityMatrix,
    phi: KrausChannel,
    tol: float = IDENTITY_TOL,
    entropy_tol: float = INEQUALITY_TOL,
    seed: int | None = None,
) -> CheckResult:
    """H(Omega_E) = H(Omega_RQ) and Omega_RQ = (Id ⊗ Phi)[|psi_rho><psi_rho|]."""
    require_dim(rho.dim, phi.dim_in, "rho")
    omega = purify_pair(rho, phi)
    omega_rq = omega.reduced_matrix(["R", "Q"])
    h_e = matrix_entropy(omega.reduced_matrix(["E"]))
    h_rq = matrix_entropy(omega_rq)
    deviation = max_deviation(omega_rq, reference_output_via_channel(rho, phi).matrix)
    entropy_gap = abs(h_e - h_rq)

    return _decide(
        "exchange", CheckKind.IDENTITY, h_e, h_rq, deviation, tol, seed,
        details={"entropy_gap": entropy_gap, "matrix_deviation": deviation},
        extra_ok=entropy_gap <= entropy_tol,
    )


def check_strong_subadditivity(
    rho_abc: DensityMatrix,
    shape: "FactorShape | tuple[int, ...]",
    tol: float = INEQUALITY_TOL,
    seed: int | None = None,
) -> CheckResult:
    """H(AB) + H(BC) >= H(ABC) + H(B)."""
    shape = shape if isinstance(shape, FactorShape) else FactorShape(tuple(shape))
    if len(shape) != 3 or shape.side != rho_abc.dim:
        raise ShapeMismatch("shape", f"need 3 factors multiplying to {rho_abc.dim}, got {shape.dims}")
    m = rho_abc.matrix
    h_ab = matrix_entropy(partial_trace(m, shape, [0, 1]))
    h_bc = matrix_entropy(partial_trace(m, shape, [1, 2]))
    h_b = matrix_entropy(partial_trace(m, shape, [1]))
    h_abc = matrix_entropy(m)
    lhs = h_abc + h_b
    rhs = h_ab + h_bc
    return _decide("ssa", CheckKind.INEQUALITY, lhs, rhs, rhs - lhs, tol, seed)


# ── Campaigns ────────────────────────────────────────────────────────

def trial_seed(campaign_seed: int, index: int) -> int:
    """Integer seed of trial `index`; replay it alone with run_trial."""
    return int(np.random.SeedSequence([campaign_seed, index]).generate_state(1)[0])


# Bounds on the input dims each check feeds to _sample_channel
_CHANNEL_INPUT_BOUNDS: dict[str, tuple[str, ...]] = {
    "dpi": ("din_max", "dout_max"),
    "marginal": ("din_max", "dout_max"),
    "exchange": ("din_max",),
    "subadd": ("factor_dim_max",),
    "product": ("factor_dim_max",),
    "ssa": (),
}


def ensure_feasible(config: CampaignConfig, checks: Iterable[str] | None = None) -> None:
    """
    Every channel input dim the selected checks can draw must admit a
    channel into dout_min dims with at most kraus_max operators. All
    checks are considered when `checks` is None.
    """
    names = _CHANNEL_INPUT_BOUNDS if checks is None else checks
    bounds = {b for name in names for b in _CHANNEL_INPUT_BOUNDS.get(name, ())}
    if not bounds:
        return
    widest = max(getattr(config, b) for b in bounds)
    need = math.ceil(widest / config.dout_min)
    if need > config.kraus_max:
        raise InfeasibleShape(
            "kraus_max",
            f"dims up to {widest} with dout_min={config.dout_min} need at least {need} "
            f"Kraus operators, kraus_max={config.kraus_max}",
        )


def _draw(rng: np.random.Generator, lo: int, hi: int) -> int:
    return int(rng.integers(lo, hi + 1))


def _sample_channel(rng: np.random.Generator, dim_in: int, config: CampaignConfig) -> KrausChannel:
    dim_out = _draw(rng, config.dout_min, config.dout_max)
    n_lo = max(config.kraus_min, math.ceil(dim_in / dim_out))
    n_kraus = _draw(rng, n_lo, config.kraus_max)
    return random_channel(dim_in, dim_out, n_kraus, rng)


def _trial_chain(rng, config):
    d = _draw(rng, config.din_min, config.din_max)
    rho = random_state(d, rng)
    phi1 = _sample_channel(rng, d, config)
    phi2 = _sample_channel(rng, phi1.dim_out, config)
    return rho, phi1, phi2


def _trial_product(rng, config):
    d1 = _draw(rng, config.din_min, config.factor_dim_max)
    d2 = _draw(rng, config.din_min, config.factor_dim_max)
    rho12 = random_state(d1 * d2, rng)
    return rho12, _sample_channel(rng, d1, config), _sample_channel(rng, d2, config)


def _run_dpi(rng, config, seed):
    return check_dpi(*_trial_chain(rng, config), tol=config.tolerance, seed=seed)


def _run_marginal(rng, config, seed):
    return check_marginal_consistency(*_trial_chain(rng, config), tol=config.identity_tolerance, seed=seed)


def _run_exchange(rng, config, seed):
    d = _draw(rng, config.din_min, config.din_max)
    rho = random_state(d, rng)
    return check_exchange_identity(
        rho, _sample_channel(rng, d, config),
        tol=config.identity_tolerance, entropy_tol=config.tolerance, seed=seed,
    )


def _run_subadd(rng, config, seed):
    return check_subadditivity(*_trial_product(rng, config), tol=config.tolerance, seed=seed)


def _run_product(rng, config, seed):
    return check_product_marginals(*_trial_product(rng, config), tol=config.identity_tolerance, seed=seed)


def _run_ssa(rng, config, seed):
    dims = tuple(_draw(rng, config.din_min, config.factor_dim_max) for _ in range(3))
    rho = random_state(math.prod(dims), rng)
    return check_strong_subadditivity(rho, dims, tol=config.tolerance, seed=seed)


CHECKS: dict[str, Callable[[np.random.Generator, CampaignConfig, int], CheckResult]] = {
    "dpi": _run_dpi,
    "subadd": _run_subadd,
    "marginal": _run_marginal,
    "exchange": _run_exchange,
    "ssa": _run_ssa,
    "product": _run_product,
}


def run_trial(check: str, seed: int, config: CampaignConfig) -> CheckResult:
    """Run one randomized trial of `check` from its integer seed."""
    if check not in CHECKS:
        raise BadParam("checks", f"unknown check '{check}', choose from {sorted(CHECKS)}")
    return CHECKS[check](np.random.default_rng(seed), config, seed)


def _summarize(name: str, outcomes: list[CheckResult | Exception], seeds: list[int]) -> CheckSummary:
    results = [o for o in outcomes if isinstance(o, CheckResult)]
    failing = [s for o, s in zip(outcomes, seeds) if not (isinstance(o, CheckResult) and o.passed)]
    worst = None
    if results:
        margins = [r.margin for r in results]
        worst = min(margins) if results[0].kind is CheckKind.INEQUALITY else max(margins)
    return CheckSummary(
        name=name,
        trials=len(outcomes),
        passed=sum(1 for r in results if r.passed),
        failed=sum(1 for r in results if not r.passed),
        errors=len(outcomes) - len(results),
        worst_margin=worst,
        failing_seeds=failing,
    )


def run_campaign(config: CampaignConfig, which: Iterable[str]) -> CampaignReport:
    """
    Run every requested check on config.trials seeded trials.

    Trial i uses trial_seed(config.seed, i), so serial and threaded runs
    give identical reports. Validation and numerical errors inside a trial
    are counted, not raised.
    """
    names = list(dict.fromkeys(which))
    unknown = [n for n in names if n not in CHECKS]
    if unknown or not names:
        raise BadParam("checks", f"unknown or empty checks {unknown}, choose from {sorted(CHECKS)}")
    ensure_feasible(config, names)

    seeds = [trial_seed(config.seed, i) for i in range(config.trials)]
    logger.info(
        "Campaign: %d trials x %s (seed=%d, workers=%d)",
        config.trials, ",".join(names), config.seed, config.workers,
    )

    summaries = []
    for name in names:
        def one(seed: int, name=name):
            try:
                return run_trial(name, seed, config)
            except ValidationError as e:
                logger.warning("⚠️ %s trial seed=%d raised %s: %s", name, seed, e.invariant, e.message)
                return e
            except (np.linalg.LinAlgError, ValueError) as e:
                logger.warning("⚠️ %s trial seed=%d raised %s: %s", name, seed, type(e).__name__, e)
                return e

        if config.workers > 1:
            with ThreadPoolExecutor(max_workers=config.workers) as pool:
                outcomes = list(pool.map(one, seeds))
        else:
            outcomes = [one(s) for s in seeds]

        summary = _summarize(name, outcomes, seeds)
        if summary.failed or summary.errors:
            logger.warning("❌ %s: %d failing trial(s), seeds %s", name, summary.failed + summary.errors, summary.failing_seeds)
        summaries.append(summary)

    return CampaignReport(config=config, checks=summaries)
