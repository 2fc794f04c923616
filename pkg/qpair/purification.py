"""
Pair Purification Module
=========================
Pure state Omega = |psi_(rho,Phi)><psi_(rho,Phi)| on H_R ⊗ H_Q ⊗ H_E with
amplitude sqrt(lambda_j) <q|A_alpha|e_j> at (j, q, alpha), plus:
- the composed-channel variant on (R, Q2, E1, E2)
- the product-channel variant on (R, Q1, Q2, E1, E2)
- marginals over any label subset
- closed-form partial states used as independent oracles
"""

import logging
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from qpair.config import NORM_TOL, STATE_TOL
from qpair.input_validator import UnknownLabel, WrongLabels, require_dim
from qpair.labeled_state import LabeledPureState
from qpair.quantum_objects import (
    DensityMatrix,
    KrausChannel,
    apply,
    apply_matrix,
    channel_from_kraus,
    density_from_matrix,
    purify_state,
    tensor,
)

logger = logging.getLogger(__name__)

PAIR_LABELS = ("R", "Q", "E")
COMPOSED_LABELS = ("R", "Q2", "E1", "E2")
PRODUCT_LABELS = ("R", "Q1", "Q2", "E1", "E2")


@dataclass(frozen=True)
class MarginalState:
    labels: tuple[str, ...]
    state: DensityMatrix

    @property
    def matrix(self) -> np.ndarray:
        return self.state.matrix


def _scaled_eigenvectors(rho: DensityMatrix) -> np.ndarray:
    """Columns sqrt(lambda_j) e_j."""
    sp = rho.spectral
    return sp.eigenvectors * np.sqrt(sp.eigenvalues)


# ------------------------------------------------------------------ #
#  Purifications
# ------------------------------------------------------------------ #

def purify_pair(rho: DensityMatrix, phi: KrausChannel, strict: bool = True) -> LabeledPureState:
    """
    Purification of the pair (rho, Phi) on factors (R, Q, E).

    Args:
        rho: Input state; dim R = rank(rho).
        phi: Channel with phi.dim_in == rho.dim.
        strict: Require unit norm (within NORM_TOL). Only a channel that
            bypassed validation can break it.

    Raises:
        DimMismatch, NotNormalized
    """
    require_dim(rho.dim, phi.dim_in, "rho")
    amps = np.einsum("aqi,ij->jqa", phi.kraus, _scaled_eigenvectors(rho))
    omega = LabeledPureState(
        labels=PAIR_LABELS,
        dims=(rho.rank, phi.dim_out, phi.n_kraus),
        amplitudes=amps,
    )
    return omega.require_unit_norm(NORM_TOL) if strict else omega


def purify_pair_composed(
    rho: DensityMatrix,
    phi1: KrausChannel,
    phi2: KrausChannel,
    strict: bool = True,
) -> LabeledPureState:
    """Purification of (rho, Phi2 Phi1) on (R, Q2, E1, E2): sqrt(lambda_j) <q|B_mu A_alpha|e_j>."""
    require_dim(rho.dim, phi1.dim_in, "rho")
    require_dim(phi2.dim_in, phi1.dim_out, "phi2.dim_in")
    amps = np.einsum("mqp,api,ij->jqam", phi2.kraus, phi1.kraus, _scaled_eigenvectors(rho))
    omega = LabeledPureState(
        labels=COMPOSED_LABELS,
        dims=(rho.rank, phi2.dim_out, phi1.n_kraus, phi2.n_kraus),
        amplitudes=amps,
    )
    return omega.require_unit_norm(NORM_TOL) if strict else omega


def purify_pair_product(
    rho12: DensityMatrix,
    phi1: KrausChannel,
    phi2: KrausChannel,
    strict: bool = True,
) -> LabeledPureState:
    """
    Purification of (rho12, Phi1 ⊗ Phi2) with Q split as Q1 ⊗ Q2 and E as E1 ⊗ E2.

    Amplitude at (j, q1, q2, alpha, mu) = sqrt(lambda_j) <q1 q2|(A_alpha ⊗ B_mu)|e_j>.
    """
    require_dim(rho12.dim, phi1.dim_in * phi2.dim_in, "rho12")
    vecs = _scaled_eigenvectors(rho12).T.reshape(rho12.rank, phi1.dim_in, phi2.dim_in)
    amps = np.einsum("apx,myz,jxz->jpyam", phi1.kraus, phi2.kraus, vecs)
    omega = LabeledPureState(
        labels=PRODUCT_LABELS,
        dims=(rho12.rank, phi1.dim_out, phi2.dim_out, phi1.n_kraus, phi2.n_kraus),
        amplitudes=amps,
    )
    return omega.require_unit_norm(NORM_TOL) if strict else omega


# ------------------------------------------------------------------ #
#  Marginals
# ------------------------------------------------------------------ #

def marginal(omega: LabeledPureState, keep: Iterable[str], tol: float = STATE_TOL) -> MarginalState:
    """
    Reduced state of omega on the kept labels, in their original order.

    Raises:
        UnknownLabel: If keep is empty or names a label omega does not have.
    """
    keep = list(keep)
    if not keep:
        raise UnknownLabel("keep", "at least one label must be kept")
    positions = omega.positions(keep)
    labels = tuple(omega.labels[i] for i in positions)
    return MarginalState(labels=labels, state=density_from_matrix(omega.reduced_matrix(labels), tol=tol))


def partial_states(omega: LabeledPureState) -> tuple[MarginalState, MarginalState, MarginalState]:
    """Omega_R, Omega_Q, Omega_E of a pair purification."""
    if omega.labels != PAIR_LABELS:
        raise WrongLabels("omega", f"expected labels {PAIR_LABELS}, got {omega.labels}")
    return marginal(omega, ["R"]), marginal(omega, ["Q"]), marginal(omega, ["E"])


# ------------------------------------------------------------------ #
#  Closed forms
# ------------------------------------------------------------------ #

def environment_matrix(rho_matrix, phi: KrausChannel) -> np.ndarray:
    """[Tr A_alpha rho A_beta*]_(alpha, beta)."""
    return np.einsum("aij,jk,bik->ab", phi.kraus, np.asarray(rho_matrix), phi.kraus.conj())


def closed_form_partial_states(rho: DensityMatrix, phi: KrausChannel) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(diag(lambda), Phi[rho], [Tr A_alpha rho A_beta*])."""
    require_dim(rho.dim, phi.dim_in, "rho")
    omega_r = np.diag(rho.spectral.eigenvalues).astype(np.complex128)
    omega_q = apply_matrix(phi, rho.matrix)
    omega_e = environment_matrix(rho.matrix, phi)
    return omega_r, omega_q, omega_e


def closed_form_reference_env(rho: DensityMatrix, phi1: KrausChannel) -> np.ndarray:
    """
    Omega^1_{RE1}: entry ((j, alpha), (k, beta)) = sqrt(lambda_j lambda_k) <e_k|A_beta* A_alpha|e_j>.
    """
    require_dim(rho.dim, phi1.dim_in, "rho")
    v = _scaled_eigenvectors(rho)
    # w[alpha, q, j] = sqrt(lambda_j) (A_alpha e_j)_q
    w = np.einsum("aqi,ij->aqj", phi1.kraus, v)
    m = np.einsum("aqj,bqk->jakb", w, w.conj())
    n = rho.rank * phi1.n_kraus
    return m.reshape(n, n)


def closed_form_reference_env_composed(
    rho: DensityMatrix, phi1: KrausChannel, phi2: KrausChannel
) -> np.ndarray:
    """
    Omega^12_{RE1}: entry ((j, alpha), (k, beta)) =
    sqrt(lambda_j lambda_k) sum_mu <e_k|A_beta* B_mu* B_mu A_alpha|e_j>.
    """
    require_dim(rho.dim, phi1.dim_in, "rho")
    require_dim(phi2.dim_in, phi1.dim_out, "phi2.dim_in")
    gram = np.einsum("mqp,mqr->pr", phi2.kraus.conj(), phi2.kraus)  # sum_mu B_mu* B_mu
    v = _scaled_eigenvectors(rho)
    w = np.einsum("aqi,ij->aqj", phi1.kraus, v)
    m = np.einsum("bpk,pr,arj->jakb", w.conj(), gram, w)
    n = rho.rank * phi1.n_kraus
    return m.reshape(n, n)


def closed_form_output_env(rho_matrix, phi: KrausChannel) -> np.ndarray:
    """Omega_{QE}: block matrix [A_alpha rho A_beta*] with Q slowest."""
    blocks = np.einsum("aij,jk,blk->ialb", phi.kraus, np.asarray(rho_matrix), phi.kraus.conj())
    n = phi.dim_out * phi.n_kraus
    return blocks.reshape(n, n)


def reference_output_via_channel(rho: DensityMatrix, phi: KrausChannel) -> DensityMatrix:
    """(Id ⊗ Phi)[|psi_rho><psi_rho|] on (R, Q), R first."""
    require_dim(rho.dim, phi.dim_in, "rho")
    psi = purify_state(rho)
    identity_r = channel_from_kraus([np.eye(rho.rank, dtype=np.complex128)])
    return apply(tensor(identity_r, phi), density_from_matrix(psi.projector()))
