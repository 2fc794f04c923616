"""
Shared fixtures and independent oracles for the test suite.
"""

import numpy as np
import pytest

from qpair.channel_catalog import named_channel, random_channel, random_state
from qpair.quantum_objects import density_from_vector, maximally_mixed

# ── Oracles ──────────────────────────────────────────────────────────
# Block partial traces of an operator X on H_R ⊗ H_Q ⊗ H_E written as a
# matrix of blocks X^{j alpha}_{k beta}, each an operator on H_Q.
# Explicit loops, no einsum, so they stay independent of matrix_core.


def block(x, dims, j, a, k, b):
    d_r, d_q, n = dims
    out = np.zeros((d_q, d_q), dtype=np.complex128)
    for q in range(d_q):
        for p in range(d_q):
            out[q, p] = x[(j * d_q + q) * n + a, (k * d_q + p) * n + b]
    return out


def block_trace_r(x, dims):
    """Tr_R X = [sum_j X^{j alpha}_{j beta}] on (Q, E)."""
    d_r, d_q, n = dims
    out = np.zeros((d_q * n, d_q * n), dtype=np.complex128)
    for a in range(n):
        for b in range(n):
            blk = sum(block(x, dims, j, a, j, b) for j in range(d_r))
            for q in range(d_q):
                for p in range(d_q):
                    out[q * n + a, p * n + b] = blk[q, p]
    return out


def block_trace_q(x, dims):
    """Tr_Q X = [Tr X^{j alpha}_{k beta}] on (R, E)."""
    d_r, d_q, n = dims
    out = np.zeros((d_r * n, d_r * n), dtype=np.complex128)
    for j in range(d_r):
        for a in range(n):
            for k in range(d_r):
                for b in range(n):
                    out[j * n + a, k * n + b] = np.trace(block(x, dims, j, a, k, b))
    return out


def block_trace_e(x, dims):
    """Tr_E X = [sum_alpha X^{j alpha}_{k alpha}] on (R, Q)."""
    d_r, d_q, n = dims
    out = np.zeros((d_r * d_q, d_r * d_q), dtype=np.complex128)
    for j in range(d_r):
        for k in range(d_r):
            blk = sum(block(x, dims, j, a, k, a) for a in range(n))
            for q in range(d_q):
                for p in range(d_q):
                    out[j * d_q + q, k * d_q + p] = blk[q, p]
    return out


def random_pair(seed, d_in=None, d_out=None, n_kraus=None):
    """Seeded random (rho, Phi) with d_in, d_out in {2,3,4}, N in 1..5 unless given."""
    rng = np.random.default_rng(seed)
    d_in = d_in or int(rng.integers(2, 5))
    d_out = d_out or int(rng.integers(2, 5))
    lo = max(1, -(-d_in // d_out))
    n_kraus = n_kraus or int(rng.integers(lo, 6))
    return random_state(d_in, rng), random_channel(d_in, d_out, n_kraus, rng)


# ── Fixtures ─────────────────────────────────────────────────────────

@pytest.fixture
def mixed_qubit():
    return maximally_mixed(2)


@pytest.fixture
def plus_state():
    return density_from_vector([1, 1])


@pytest.fixture
def identity_qubit():
    return named_channel("identity")


@pytest.fixture
def full_depolarizing():
    return named_channel("depolarizing", [1.0])
