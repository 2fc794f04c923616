"""
Serialization Module
=====================
State and channel documents:

    {"rho":   [[[re, im], ...], ...]}
    {"kraus": [ matrix, matrix, ... ]}

One JSON document per file, `-` meaning standard input/output. Floats
are written with Python's shortest round-trip repr (at most 17
significant digits), so a written matrix re-parses bit-identically.
"""

import json
import logging
import sys
from pathlib import Path

import numpy as np
from pydantic import BaseModel, ConfigDict, StrictFloat, StrictInt
from pydantic import ValidationError as SchemaError

from qpair.channel_catalog import is_channel_shorthand, parse_channel_shorthand
from qpair.input_validator import ParseError
from qpair.quantum_objects import DensityMatrix, KrausChannel, channel_from_kraus, density_from_matrix

logger = logging.getLogger(__name__)

Real = StrictFloat | StrictInt
Complex = tuple[Real, Real]
Matrix = list[list[Complex]]


# ── Schemas ──────────────────────────────────────────────────────────

class StateFile(BaseModel):
    model_config = ConfigDict(extra="forbid")
    rho: Matrix


class ChannelFile(BaseModel):
    model_config = ConfigDict(extra="forbid")
    kraus: list[Matrix]


# ── Reading ──────────────────────────────────────────────────────────

def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(path, "file", e.strerror or str(e))


def _load(path: str, schema: type[BaseModel]) -> BaseModel:
    text = read_text(path)
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(path, f"line {e.lineno} column {e.colno}", e.msg)
    try:
        return schema.model_validate(raw)
    except SchemaError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "document"
        raise ParseError(path, location, first["msg"])


def matrix_from_document(rows: Matrix, path: str, location: str) -> np.ndarray:
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise ParseError(path, location, f"ragged matrix, row lengths {sorted(widths)}")
    if not rows or not rows[0]:
        raise ParseError(path, location, "empty matrix")
    pairs = np.asarray(rows, dtype=np.float64)
    return pairs[..., 0] + 1j * pairs[..., 1]


def load_state(path: str) -> DensityMatrix:
    """Parse (ParseError) then validate (ValidationError subclasses) a state document."""
    doc = _load(path, StateFile)
    rho = density_from_matrix(matrix_from_document(doc.rho, path, "rho"))
    logger.debug("Loaded state %r from %s", rho, path)
    return rho


def load_channel(source: str) -> KrausChannel:
    """Load a channel document, or build a named channel from 'name[:params][@dims]'."""
    if source != "-" and not Path(source).exists() and is_channel_shorthand(source):
        return parse_channel_shorthand(source)
    doc = _load(source, ChannelFile)
    ops = [matrix_from_document(m, source, f"kraus.{i}") for i, m in enumerate(doc.kraus)]
    phi = channel_from_kraus(ops)
    logger.debug("Loaded channel %r from %s", phi, source)
    return phi


# ── Writing ──────────────────────────────────────────────────────────

def matrix_to_document(m) -> Matrix:
    m = np.asarray(m, dtype=np.complex128)
    return [[(float(z.real), float(z.imag)) for z in row] for row in m]


def state_document(rho: DensityMatrix) -> dict:
    return {"rho": matrix_to_document(rho.matrix)}


def channel_document(phi: KrausChannel) -> dict:
    return {"kraus": [matrix_to_document(a) for a in phi.kraus]}


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True) + "\n"


def write_text(text: str, path: str = "-") -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    Path(path).write_text(text, encoding="utf-8")
