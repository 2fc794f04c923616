"""
Matrix Core Module
===================
Dense complex matrix kernels:
- Hermitian eigendecomposition (descending spectrum)
- Kronecker products
- Partial trace over an arbitrary factorized index space

Index convention: on a product space with factor dims (d_0, ..., d_{n-1})
the flat index is row-major with factor 0 varying slowest, the same
order np.kron produces for kron(f_0, kron(f_1, ...)).
"""

import logging
import string
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

import numpy as np
from scipy import linalg as sla

from qpair.config import HERMITIAN_TOL
from qpair.input_validator import (
    ShapeMismatch,
    as_complex_matrix,
    require_hermitian,
    require_square,
)

logger = logging.getLogger(__name__)

ComplexMatrix = np.ndarray  # 2-D, dtype complex128


@dataclass(frozen=True)
class FactorShape:
    """Ordered factor dimensions of a tensor-product space."""

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if any(d < 1 for d in dims):
            raise ShapeMismatch("shape", f"factor dimensions must be >= 1, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def side(self) -> int:
        return int(np.prod(self.dims, dtype=np.int64)) if self.dims else 1

    def __len__(self) -> int:
        return len(self.dims)

    def kept_side(self, keep: Iterable[int]) -> int:
        return int(np.prod([self.dims[k] for k in keep], dtype=np.int64))


def _as_shape(shape: "FactorShape | Sequence[int]") -> FactorShape:
    return shape if isinstance(shape, FactorShape) else FactorShape(tuple(shape))


def _normalize_keep(keep: Iterable[int], n: int) -> list[int]:
    kept = sorted(set(int(k) for k in keep))
    bad = [k for k in kept if k < 0 or k >= n]
    if bad:
        raise ShapeMismatch("keep", f"factor positions {bad} out of range for {n} factors")
    return kept


# ------------------------------------------------------------------ #
#  Spectral
# ------------------------------------------------------------------ #

def hermitian_eig(m, tol: float = HERMITIAN_TOL) -> tuple[np.ndarray, np.ndarray]:
    """
    Eigendecomposition of a Hermitian matrix.

    Args:
        m: Square complex matrix, Hermitian within tol (max-entry norm).
        tol: Allowed asymmetry before NotHermitian is raised.

    Returns:
        (eigenvalues, eigenvectors): real eigenvalues sorted descending and
        the matching orthonormal eigenvectors as columns. Inside degenerate
        eigenspaces any orthonormal basis may be returned.

    Raises:
        NotSquare, NotHermitian
    """
    m = as_complex_matrix(m)
    require_square(m)
    require_hermitian(m, tol)
    sym = (m + m.conj().T) / 2
    values, vectors = sla.eigh(sym)
    order = np.argsort(values)[::-1]
    return values[order], vectors[:, order]


def hermitian_eigvals(m) -> np.ndarray:
    """Descending eigenvalues of the Hermitian part (m + m*)/2, no validation."""
    m = np.asarray(m, dtype=np.complex128)
    return sla.eigvalsh((m + m.conj().T) / 2)[::-1]


# ------------------------------------------------------------------ #
#  Products
# ------------------------------------------------------------------ #

def kron(a, b) -> ComplexMatrix:
    """Kronecker product, left factor slowest: (a⊗b)[i*rb+k, j*cb+l] = a[i,j]·b[k,l]."""
    return np.kron(as_complex_matrix(a, "a"), as_complex_matrix(b, "b"))


def kron_all(*factors) -> ComplexMatrix:
    """Left-associated Kronecker product of one or more matrices."""
    if not factors:
        return np.ones((1, 1), dtype=np.complex128)
    return reduce(kron, factors)


# ------------------------------------------------------------------ #
#  Partial traces
# ------------------------------------------------------------------ #

def partial_trace(x, shape: "FactorShape | Sequence[int]", keep: Iterable[int]) -> ComplexMatrix:
    """
    Reduce an operator on a product space to the kept factors.

    Args:
        x: Square matrix of side product(shape.dims).
        shape: Factor dimensions.
        keep: Factor positions to keep; the result keeps their original
            relative order. An empty set returns the 1x1 matrix [Tr x].

    Raises:
        ShapeMismatch: If x does not match the shape or keep is out of range.
    """
    shape = _as_shape(shape)
    x = as_complex_matrix(x, "x")
    side = require_square(x, "x")
    if side != shape.side:
        raise ShapeMismatch("x", f"side {side} does not match factor dims {shape.dims}")
    n = len(shape)
    kept = _normalize_keep(keep, n)
    if len(kept) == n:
        return x.copy()

    letters = string.ascii_letters
    if 2 * n > len(letters):
        raise ShapeMismatch("shape", f"too many factors ({n}) for index bookkeeping")
    rows = list(letters[:n])
    cols = [letters[n + i] if i in kept else rows[i] for i in range(n)]
    out = "".join(rows[i] for i in kept) + "".join(cols[i] for i in kept)
    spec = "".join(rows) + "".join(cols) + "->" + out

    tensor = x.reshape(shape.dims + shape.dims)
    reduced = np.einsum(spec, tensor)
    k = shape.kept_side(kept)
    return np.asarray(reduced, dtype=np.complex128).reshape(k, k)


def partial_trace_pure(vec, shape: "FactorShape | Sequence[int]", keep: Iterable[int]) -> ComplexMatrix:
    """
    Reduced matrix of the projector |vec><vec| on the kept factors.

    Contracts the vector with its conjugate over the traced factors, so the
    full projector is never built. Agrees with partial_trace(outer(vec)).
    """
    shape = _as_shape(shape)
    vec = np.asarray(vec, dtype=np.complex128).reshape(-1)
    if vec.size != shape.side:
        raise ShapeMismatch("vec", f"length {vec.size} does not match factor dims {shape.dims}")
    kept = _normalize_keep(keep, len(shape))
    psi = vec.reshape(shape.dims) if shape.dims else vec.reshape(())
    psi = np.moveaxis(psi, kept, list(range(len(kept))))
    block = psi.reshape(shape.kept_side(kept), -1)
    return block @ block.conj().T


def max_deviation(a, b) -> float:
    """Largest entrywise modulus of a - b; inf when shapes differ."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        return float("inf")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))
