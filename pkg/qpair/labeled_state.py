"""
Labeled Pure State
===================
Pure state on a tensor product of named factors (R, Q, E, ...).
Amplitudes are flat, first label slowest.
"""

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from qpair.config import NORM_TOL
from qpair.input_validator import NotNormalized, ShapeMismatch, UnknownLabel, WrongLabels
from qpair.matrix_core import FactorShape, partial_trace_pure


@dataclass(frozen=True)
class LabeledPureState:
    labels: tuple[str, ...]
    dims: tuple[int, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        labels = tuple(self.labels)
        dims = tuple(int(d) for d in self.dims)
        if len(set(labels)) != len(labels):
            raise WrongLabels("labels", f"labels must be distinct, got {labels}")
        if len(labels) != len(dims):
            raise ShapeMismatch("dims", f"{len(labels)} labels but {len(dims)} dims")
        shape = FactorShape(dims)
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != shape.side:
            raise ShapeMismatch(
                "amplitudes", f"length {amps.size} does not match dims {dims}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def shape(self) -> FactorShape:
        return FactorShape(self.dims)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def require_unit_norm(self, tol: float = NORM_TOL) -> "LabeledPureState":
        gap = abs(self.norm - 1.0)
        if gap > tol:
            raise NotNormalized("amplitudes", f"norm deviates from 1 by {gap:.3e}")
        return self

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per factor."""
        return self.amplitudes.reshape(self.dims)

    def dim_of(self, label: str) -> int:
        return self.dims[self.positions([label])[0]]

    def positions(self, keep: Iterable[str]) -> list[int]:
        keep = list(keep)
        unknown = [k for k in keep if k not in self.labels]
        if unknown:
            raise UnknownLabel("keep", f"labels {unknown} not in {self.labels}")
        return sorted(self.labels.index(k) for k in set(keep))

    def complement(self, keep: Iterable[str]) -> tuple[str, ...]:
        idx = set(self.positions(keep))
        return tuple(l for i, l in enumerate(self.labels) if i not in idx)

    def reduced_matrix(self, keep: Iterable[str]) -> np.ndarray:
        """Raw reduced matrix on the kept labels (original order), no validation."""
        return partial_trace_pure(self.amplitudes, self.shape, self.positions(keep))

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())
