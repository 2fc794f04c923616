"""
Channel Catalog Module
=======================
Named Kraus families and seeded random generators.

Randomness: numpy's default Generator (PCG64). A seed may be an int or
an existing Generator; the same int always reproduces the same object.
"""

import logging
import math
import re
from enum import Enum
from typing import Sequence

import numpy as np
from scipy import linalg as sla

from qpair.input_validator import BadParam, InfeasibleShape, require_probability
from qpair.quantum_objects import DensityMatrix, KrausChannel, channel_from_kraus, density_from_matrix

logger = logging.getLogger(__name__)

Seed = int | np.random.Generator

PAULI_I = np.eye(2, dtype=np.complex128)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


class ChannelName(str, Enum):
    IDENTITY = "identity"
    DEPOLARIZING = "depolarizing"
    DEPHASING = "dephasing"
    AMPLITUDE_DAMPING = "amplitude_damping"
    ISOMETRY_EMBED = "isometry_embed"


def make_rng(seed: Seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def ginibre(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    """rows x cols matrix of independent standard complex Gaussian entries."""
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


# ------------------------------------------------------------------ #
#  Named channels
# ------------------------------------------------------------------ #

def _single_param(name: str, params: Sequence[float]) -> float:
    if len(params) != 1:
        raise BadParam("params", f"{name} takes exactly one parameter, got {len(params)}")
    return require_probability(float(params[0]), f"{name}.p")


def _qubit_only(name: str, dims: Sequence[int]) -> None:
    if dims and tuple(dims) != (2,):
        raise BadParam("dims", f"{name} is defined on a qubit, got dims {tuple(dims)}")


def named_channel(
    name: "ChannelName | str",
    params: Sequence[float] = (),
    dims: Sequence[int] = (),
) -> KrausChannel:
    """
    Standard Kraus families.

    - identity(dims=(d,)), default d = 2
    - depolarizing(p): {sqrt(1-3p/4) I, sqrt(p/4) X, sqrt(p/4) Y, sqrt(p/4) Z}
    - dephasing(p): {sqrt(1-p) I, sqrt(p) Z}
    - amplitude_damping(gamma): {diag(1, sqrt(1-gamma)), sqrt(gamma)|0><1|}
    - isometry_embed(dims=(d_in, d_out)): one isometric Kraus operator
      padding C^d_in into the first d_in basis vectors of C^d_out; default (2, 3)

    Raises:
        BadParam: Unknown name, wrong parameter count or out-of-range value.
    """
    try:
        kind = ChannelName(name)
    except ValueError:
        raise BadParam("name", f"unknown channel '{name}'")

    if kind is ChannelName.IDENTITY:
        if params:
            raise BadParam("params", "identity takes no parameters")
        d = int(dims[0]) if dims else 2
        if d < 1 or len(dims) > 1:
            raise BadParam("dims", f"identity needs one dimension >= 1, got {tuple(dims)}")
        return channel_from_kraus([np.eye(d, dtype=np.complex128)])

    if kind is ChannelName.DEPOLARIZING:
        _qubit_only(kind.value, dims)
        p = _single_param(kind.value, params)
        weights = [math.sqrt(1 - 3 * p / 4)] + [math.sqrt(p / 4)] * 3
        return channel_from_kraus(
            [w * op for w, op in zip(weights, (PAULI_I, PAULI_X, PAULI_Y, PAULI_Z))]
        )

    if kind is ChannelName.DEPHASING:
        _qubit_only(kind.value, dims)
        p = _single_param(kind.value, params)
        return channel_from_kraus([math.sqrt(1 - p) * PAULI_I, math.sqrt(p) * PAULI_Z])

    if kind is ChannelName.AMPLITUDE_DAMPING:
        _qubit_only(kind.value, dims)
        gamma = _single_param(kind.value, params)
        a0 = np.array([[1, 0], [0, math.sqrt(1 - gamma)]], dtype=np.complex128)
        a1 = np.array([[0, math.sqrt(gamma)], [0, 0]], dtype=np.complex128)
        return channel_from_kraus([a0, a1])

    # isometry_embed
    if params:
        raise BadParam("params", "isometry_embed takes no parameters")
    d_in, d_out = (int(dims[0]), int(dims[1])) if dims else (2, 3)
    if len(dims) not in (0, 2) or d_in < 1 or d_out < d_in:
        raise BadParam("dims", f"isometry_embed needs (d_in, d_out) with d_out >= d_in >= 1, got {tuple(dims)}")
    return channel_from_kraus([np.eye(d_out, d_in, dtype=np.complex128)])


_SHORTHAND = re.compile(
    r"^(?P<name>[a-z_]+)(?::(?P<params>[^@]*))?(?:@(?P<dims>\d+(?:x\d+)*))?$"
)


def is_channel_shorthand(text: str) -> bool:
    m = _SHORTHAND.match(text)
    return bool(m) and m.group("name") in {c.value for c in ChannelName}


def parse_channel_shorthand(text: str) -> KrausChannel:
    """
    Build a named channel from 'name[:p1,p2][@d1xd2]'.

    Examples: 'depolarizing:0.5', 'identity@3', 'isometry_embed@2x3'.
    """
    m = _SHORTHAND.match(text.strip())
    if not m:
        raise BadParam("channel", f"cannot read channel shorthand '{text}'")
    params: list[float] = []
    if m.group("params"):
        try:
            params = [float(p) for p in m.group("params").split(",") if p.strip()]
        except ValueError:
            raise BadParam("params", f"non-numeric parameter in '{text}'")
    dims = [int(d) for d in m.group("dims").split("x")] if m.group("dims") else []
    return named_channel(m.group("name"), params, dims)


# ------------------------------------------------------------------ #
#  Random objects
# ------------------------------------------------------------------ #

def random_state(d: int, seed: Seed) -> DensityMatrix:
    """rho = G G* / Tr(G G*) with G a d x d complex Ginibre matrix."""
    if d < 1:
        raise BadParam("d", f"dimension must be >= 1, got {d}")
    g = ginibre(d, d, make_rng(seed))
    w = g @ g.conj().T
    return density_from_matrix(w / np.trace(w).real)


def random_unitary(n: int, seed: Seed) -> np.ndarray:
    """Haar-random n x n unitary: QR of a Ginibre matrix with the R-diagonal phases removed."""
    q, r = sla.qr(ginibre(n, n, make_rng(seed)))
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases


def random_channel(dim_in: int, dim_out: int, n_kraus: int, seed: Seed) -> KrausChannel:
    """
    Random channel from a random isometry V: C^dim_in -> C^(n_kraus*dim_out).

    The N row blocks of V are the Kraus operators, so sum A*A = V*V = I.

    Raises:
        InfeasibleShape: If n_kraus * dim_out < dim_in.
    """
    if min(dim_in, dim_out, n_kraus) < 1:
        raise InfeasibleShape("dims", f"dimensions must be >= 1, got ({dim_in}, {dim_out}, {n_kraus})")
    if n_kraus * dim_out < dim_in:
        raise InfeasibleShape(
            "n_kraus",
            f"no isometry exists: n_kraus*dim_out = {n_kraus * dim_out} < dim_in = {dim_in}",
        )
    g = ginibre(n_kraus * dim_out, dim_in, make_rng(seed))
    q, r = sla.qr(g, mode="economic")
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    v = q * phases
    return channel_from_kraus(v.reshape(n_kraus, dim_out, dim_in), tol=1e-10)
