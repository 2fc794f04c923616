"""
Information Measures Module
============================
Von Neumann entropy (bits) and the quantities of a (state, channel) pair:
- input entropy H(rho), output entropy H(Phi[rho])
- entropy exchange H(rho, Phi) = H(Omega_E)
- mutual information I = H(rho) + H(Phi[rho]) - H(rho, Phi)
- coherent information I_c = H(Phi[rho]) - H(rho, Phi)
"""

import logging
from enum import Enum

import numpy as np
from pydantic import BaseModel, Field

from qpair.config import RANK_CUTOFF
from qpair.input_validator import BadParam, require_dim
from qpair.matrix_core import hermitian_eigvals
from qpair.purification import marginal, purify_pair, reference_output_via_channel
from qpair.quantum_objects import DensityMatrix, KrausChannel, apply

logger = logging.getLogger(__name__)


class ExchangeRoute(str, Enum):
    ENVIRONMENT = "environment"
    REFERENCE_OUTPUT = "reference_output"
    CHANNEL_ON_PURIFICATION = "channel_on_purification"


class InfoReport(BaseModel):
    """The five entropic scalars of one (rho, Phi) pair, in bits."""
    h_in: float
    h_out: float
    h_exchange: float
    mutual: float
    coherent: float
    d_in: int = Field(..., ge=1)
    d_out: int = Field(..., ge=1)
    n_kraus: int = Field(..., ge=1)
    seed: int | None = None

    def scalars(self) -> tuple[float, float, float, float, float]:
        return (self.h_in, self.h_out, self.h_exchange, self.mutual, self.coherent)


def _entropy_of_spectrum(values: np.ndarray, cutoff: float = RANK_CUTOFF) -> float:
    values = np.asarray(values, dtype=np.float64)
    values = values[values > cutoff]
    return float(-np.sum(values * np.log2(values))) + 0.0  # no -0.0


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """H(rho) = -sum lambda log2 lambda over eigenvalues above RANK_CUTOFF."""
    return _entropy_of_spectrum(rho.spectral.eigenvalues)


def matrix_entropy(m) -> float:
    """Entropy of a raw (numerically Hermitian) matrix, symmetrized first."""
    return _entropy_of_spectrum(hermitian_eigvals(m))


def entropy_exchange(
    rho: DensityMatrix,
    phi: KrausChannel,
    route: "ExchangeRoute | str" = ExchangeRoute.ENVIRONMENT,
) -> float:
    """
    Entropy exchange H(rho, Phi).

    Args:
        route: environment -> H(Omega_E); reference_output -> H(Omega_RQ);
            channel_on_purification -> H((Id ⊗ Phi)[|psi_rho><psi_rho|]).
            All three agree for a valid pair.

    Raises:
        DimMismatch
    """
    require_dim(rho.dim, phi.dim_in, "rho")
    try:
        route = ExchangeRoute(route)
    except ValueError:
        raise BadParam("route", f"unknown entropy exchange route '{route}'")

    if route is ExchangeRoute.CHANNEL_ON_PURIFICATION:
        return von_neumann_entropy(reference_output_via_channel(rho, phi))
    omega = purify_pair(rho, phi)
    keep = ["E"] if route is ExchangeRoute.ENVIRONMENT else ["R", "Q"]
    return von_neumann_entropy(marginal(omega, keep).state)


def info_report(rho: DensityMatrix, phi: KrausChannel, seed: int | None = None) -> InfoReport:
    """All five scalars, each entropy computed once."""
    require_dim(rho.dim, phi.dim_in, "rho")
    h_in = von_neumann_entropy(rho)
    h_out = von_neumann_entropy(apply(phi, rho))
    h_exchange = entropy_exchange(rho, phi)
    report = InfoReport(
        h_in=h_in,
        h_out=h_out,
        h_exchange=h_exchange,
        mutual=h_in + h_out - h_exchange,
        coherent=h_out - h_exchange,
        d_in=phi.dim_in,
        d_out=phi.dim_out,
        n_kraus=phi.n_kraus,
        seed=seed,
    )
    logger.debug("InfoReport %s", report)
    return report


def mutual_information(rho: DensityMatrix, phi: KrausChannel) -> float:
    return info_report(rho, phi).mutual


def coherent_information(rho: DensityMatrix, phi: KrausChannel) -> float:
    return info_report(rho, phi).coherent
