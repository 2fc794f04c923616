"""
Input Validator Module
=======================
Validation errors and shape/value checks shared by every numeric module.
Each violated invariant has its own exception class so callers (and the
CLI exit-code table) can tell them apart.
"""

import logging

import numpy as np

logger = logging.getLogger(__name__)


class ValidationError(Exception):
    """Raised when an input violates a documented invariant."""
    def __init__(self, field: str, message: str):
        self.field = field
        self.message = message
        super().__init__(f"Validation error on '{field}': {message}")

    @property
    def invariant(self) -> str:
        return type(self).__name__


# ── Matrix kernels ───────────────────────────────────────────────────

class NotSquare(ValidationError):
    pass


class NotHermitian(ValidationError):
    pass


class ShapeMismatch(ValidationError):
    pass


class NonFinite(ValidationError):
    pass


# ── States and channels ──────────────────────────────────────────────

class NotPositive(ValidationError):
    pass


class TraceNotOne(ValidationError):
    pass


class EmptyKrausList(ValidationError):
    pass


class NotTracePreserving(ValidationError):
    pass


class DimMismatch(ValidationError):
    pass


class BadParam(ValidationError):
    pass


# ── Labeled states ───────────────────────────────────────────────────

class WrongLabels(ValidationError):
    pass


class UnknownLabel(ValidationError):
    pass


class NotNormalized(ValidationError):
    pass


# ── Configuration ────────────────────────────────────────────────────

class ConfigError(ValidationError):
    """Campaign or command configuration cannot be satisfied."""


class InfeasibleShape(ConfigError):
    pass


class ParseError(Exception):
    """Raised when an input document cannot be parsed at all."""
    def __init__(self, path: str, location: str, message: str):
        self.path = path
        self.location = location
        self.message = message
        super().__init__(f"Parse error in '{path}' at {location}: {message}")


# ── Checks ───────────────────────────────────────────────────────────

def as_complex_matrix(data, label: str = "matrix") -> np.ndarray:
    """
    Coerce input to a 2-D complex128 array with finite entries.

    Raises:
        ShapeMismatch: If the input is not two-dimensional.
        NonFinite: If any entry is NaN or infinite.
    """
    m = np.asarray(data, dtype=np.complex128)
    if m.ndim != 2:
        raise ShapeMismatch(label, f"expected a 2-D matrix, got {m.ndim} dimension(s)")
    if not np.all(np.isfinite(m)):
        raise NonFinite(label, "matrix contains NaN or infinite entries")
    return m


def require_square(m: np.ndarray, label: str = "matrix") -> int:
    """Return the side length of a square matrix."""
    rows, cols = m.shape
    if rows != cols:
        raise NotSquare(label, f"matrix is {rows}x{cols}, expected square")
    return rows


def require_hermitian(m: np.ndarray, tol: float, label: str = "matrix") -> None:
    """Max-entry asymmetry |m - m*| must not exceed tol."""
    asym = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
    if asym > tol:
        raise NotHermitian(label, f"asymmetry {asym:.3e} exceeds tolerance {tol:.1e}")


def require_dim(actual: int, expected: int, label: str) -> None:
    if actual != expected:
        raise DimMismatch(label, f"dimension {actual} does not match expected {expected}")


def require_probability(p: float, label: str = "p") -> float:
    if not np.isfinite(p) or p < 0.0 or p > 1.0:
        raise BadParam(label, f"probability {p} outside [0, 1]")
    return float(p)
