"""
Quantum Objects Module
=======================
Validated density matrices and Kraus channels:
- density_from_matrix / channel_from_kraus (validation + spectral cache)
- apply, compose, tensor
- purify_state (reference purification |psi_rho> = [sqrt(lambda_j) e_j])
"""

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from qpair.config import KRAUS_TOL, NORM_TOL, RANK_CUTOFF, STATE_TOL
from qpair.input_validator import (
    EmptyKrausList,
    NotPositive,
    NotTracePreserving,
    ShapeMismatch,
    TraceNotOne,
    as_complex_matrix,
    require_dim,
    require_square,
)
from qpair.labeled_state import LabeledPureState
from qpair.matrix_core import hermitian_eig

logger = logging.getLogger(__name__)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128 if np.iscomplexobj(a) else np.float64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SpectralDecomposition:
    """Nonzero part of a density matrix spectrum, eigenvalues descending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def rank(self) -> int:
        return int(self.eigenvalues.size)


@dataclass(frozen=True)
class DensityMatrix:
    matrix: np.ndarray
    spectral: SpectralDecomposition

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def rank(self) -> int:
        return self.spectral.rank

    def __repr__(self):
        return f"<DensityMatrix(dim={self.dim}, rank={self.rank})>"


@dataclass(frozen=True)
class KrausChannel:
    """
    Channel given by Kraus operators stacked as (N, dim_out, dim_in).

    Construct through channel_from_kraus; direct construction skips the
    completeness check.
    """

    kraus: np.ndarray

    def __post_init__(self):
        ops = np.array(self.kraus, dtype=np.complex128)
        if ops.ndim != 3 or ops.shape[0] < 1:
            raise ShapeMismatch("kraus", f"expected (N, dim_out, dim_in) stack, got shape {ops.shape}")
        ops.setflags(write=False)
        object.__setattr__(self, "kraus", ops)

    @property
    def n_kraus(self) -> int:
        return int(self.kraus.shape[0])

    @property
    def dim_out(self) -> int:
        return int(self.kraus.shape[1])

    @property
    def dim_in(self) -> int:
        return int(self.kraus.shape[2])

    def __repr__(self):
        return f"<KrausChannel({self.dim_in}->{self.dim_out}, N={self.n_kraus})>"


# ------------------------------------------------------------------ #
#  Construction
# ------------------------------------------------------------------ #

def density_from_matrix(raw, tol: float = STATE_TOL) -> DensityMatrix:
    """
    Validate a raw matrix as a quantum state.

    Small negative eigenvalues (>= -tol) are clipped to zero and the
    spectrum renormalized; eigenvalues <= RANK_CUTOFF are left out of the
    cached spectral decomposition.

    Raises:
        NotSquare, NotHermitian, TraceNotOne, NotPositive
    """
    m = as_complex_matrix(raw, "rho")
    require_square(m, "rho")
    values, vectors = hermitian_eig(m, tol=tol)

    trace = float(np.real(np.trace(m)))
    if abs(trace - 1.0) > tol:
        raise TraceNotOne("rho", f"trace {trace:.12g} differs from 1 by more than {tol:.1e}")
    if values.size and values[-1] < -tol:
        raise NotPositive("rho", f"eigenvalue {values[-1]:.3e} below -{tol:.1e}")

    if values.size and values[-1] < 0:
        logger.debug("Clipping negative eigenvalue %.3e", values[-1])
        values = np.clip(values, 0.0, None)
        values = values / values.sum()
        matrix = (vectors * values) @ vectors.conj().T
    else:
        values = values / values.sum()
        matrix = (m + m.conj().T) / (2 * trace)

    keep = values > RANK_CUTOFF
    spectral = SpectralDecomposition(
        eigenvalues=_frozen(values[keep]),
        eigenvectors=_frozen(vectors[:, keep]),
    )
    return DensityMatrix(matrix=_frozen(matrix), spectral=spectral)


def density_from_vector(psi) -> DensityMatrix:
    """Pure state |psi><psi| of a (normalized on the fly) vector."""
    psi = np.asarray(psi, dtype=np.complex128).reshape(-1)
    psi = psi / np.linalg.norm(psi)
    return density_from_matrix(np.outer(psi, psi.conj()))


def maximally_mixed(d: int) -> DensityMatrix:
    return density_from_matrix(np.eye(d, dtype=np.complex128) / d)


def product_state(*states: DensityMatrix) -> DensityMatrix:
    """rho_1 ⊗ rho_2 ⊗ ... in the left-slowest convention."""
    m = np.ones((1, 1), dtype=np.complex128)
    for s in states:
        m = np.kron(m, s.matrix)
    return density_from_matrix(m)


def completeness_defect(ops) -> float:
    """Frobenius norm of sum_a A_a* A_a - I."""
    ops = np.asarray(ops, dtype=np.complex128)
    gram = np.einsum("aki,akj->ij", ops.conj(), ops)
    return float(np.linalg.norm(gram - np.eye(ops.shape[2])))


def channel_from_kraus(ops: Sequence, tol: float = KRAUS_TOL) -> KrausChannel:
    """
    Validate a Kraus operator list as a CPTP channel.

    Raises:
        EmptyKrausList, ShapeMismatch, NotTracePreserving
    """
    ops = list(ops)
    if not ops:
        raise EmptyKrausList("kraus", "at least one Kraus operator is required")
    mats = [as_complex_matrix(a, f"kraus[{i}]") for i, a in enumerate(ops)]
    first = mats[0].shape
    for i, a in enumerate(mats):
        if a.shape != first:
            raise ShapeMismatch(f"kraus[{i}]", f"shape {a.shape} differs from {first}")
    stack = np.stack(mats)
    defect = completeness_defect(stack)
    if defect > tol:
        raise NotTracePreserving(
            "kraus", f"completeness defect ||sum A*A - I||_F = {defect:.3e} exceeds {tol:.1e}"
        )
    channel = KrausChannel(stack)
    logger.debug("Built %r (defect %.2e)", channel, defect)
    return channel


# ------------------------------------------------------------------ #
#  Channel algebra
# ------------------------------------------------------------------ #

def apply_matrix(phi: KrausChannel, m) -> np.ndarray:
    """sum_a A_a m A_a* for any dim_in x dim_in matrix, no validation of the result."""
    m = np.asarray(m, dtype=np.complex128)
    require_dim(m.shape[0], phi.dim_in, "sigma")
    return np.einsum("aij,jk,alk->il", phi.kraus, m, phi.kraus.conj())


def apply(phi: KrausChannel, sigma: DensityMatrix, tol: float = STATE_TOL) -> DensityMatrix:
    """
    Phi[sigma] as a validated state of dimension phi.dim_out.

    The raw output trace must be 1 within NORM_TOL before it is
    renormalized; `tol` governs the remaining state checks.
    """
    require_dim(sigma.dim, phi.dim_in, "sigma")
    out = apply_matrix(phi, sigma.matrix)
    trace = float(np.real(np.trace(out)))
    if abs(trace - 1.0) > NORM_TOL:
        raise TraceNotOne("sigma", f"channel output trace {trace:.12g} differs from 1 by more than {NORM_TOL:.1e}")
    return density_from_matrix(out, tol=tol)


def compose(phi2: KrausChannel, phi1: KrausChannel) -> KrausChannel:
    """
    Phi2 ∘ Phi1 with Kraus family {B_mu A_alpha}.

    Flat Kraus index is alpha * N2 + mu, i.e. the E1 ⊗ E2 order of the
    composed purification.
    """
    require_dim(phi2.dim_in, phi1.dim_out, "phi2.dim_in")
    ops = np.einsum("mij,ajk->amik", phi2.kraus, phi1.kraus)
    return KrausChannel(ops.reshape(phi1.n_kraus * phi2.n_kraus, phi2.dim_out, phi1.dim_in))


def tensor(phi1: KrausChannel, phi2: KrausChannel) -> KrausChannel:
    """Phi1 ⊗ Phi2 with Kraus family {A_alpha ⊗ B_mu}, mu fastest."""
    ops = np.einsum("aij,mkl->amikjl", phi1.kraus, phi2.kraus)
    return KrausChannel(
        ops.reshape(
            phi1.n_kraus * phi2.n_kraus,
            phi1.dim_out * phi2.dim_out,
            phi1.dim_in * phi2.dim_in,
        )
    )


# ------------------------------------------------------------------ #
#  Purification of a state
# ------------------------------------------------------------------ #

def purify_state(rho: DensityMatrix) -> LabeledPureState:
    """
    Minimal purification on factors (R, S): amplitude (j, s) = sqrt(lambda_j) <s|e_j>.

    dim R is the rank of rho.
    """
    sp = rho.spectral
    amps = np.sqrt(sp.eigenvalues)[:, None] * sp.eigenvectors.T
    return LabeledPureState(labels=("R", "S"), dims=(sp.rank, rho.dim), amplitudes=amps)
