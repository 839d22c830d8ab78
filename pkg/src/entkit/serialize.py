"""JSON and CSV wire formats.

Matrix JSON: {"rows": n, "cols": m, "re": [...], "im": [...]} with row-major
entry lists; vectors have cols == 1. Serialized floats use Python's shortest
round-trip repr (at most 17 significant digits), and objects are emitted with
sorted keys so identical inputs serialize byte-identically.
"""

from __future__ import annotations

import json
import os
import tempfile

import numpy as np

from .bipartite import BipartiteSpace, PureState, SchmidtDecomposition
from .errors import DimensionError
from .linalg import as_matrix, as_vector
from .measurement import MeasurementScheme, POVM


def matrix_to_json(m: np.ndarray) -> dict:
    m = as_matrix(m)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "re": [float(x) for x in m.real.ravel()],
        "im": [float(x) for x in m.imag.ravel()],
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    re = np.asarray(obj["re"], dtype=np.float64)
    im = np.asarray(obj["im"], dtype=np.float64)
    if rows < 1 or cols < 1:
        raise DimensionError(f"non-positive matrix shape ({rows}, {cols})")
    if re.size != rows * cols or im.size != rows * cols:
        raise DimensionError(
            f"entry count {re.size}/{im.size} != rows*cols = {rows * cols}"
        )
    return as_matrix((re + 1j * im).reshape(rows, cols))


def vector_to_json(v: np.ndarray) -> dict:
    return matrix_to_json(as_vector(v).reshape(-1, 1))


def vector_from_json(obj: dict) -> np.ndarray:
    m = matrix_from_json(obj)
    if m.shape[1] != 1:
        raise DimensionError(f"expected a column vector, got shape {m.shape}")
    return m[:, 0]


def state_to_json(psi: PureState) -> dict:
    return {
        "d1": psi.space.d1,
        "d2": psi.space.d2,
        "vec": vector_to_json(psi.vec),
    }


def state_from_json(obj: dict) -> PureState:
    space = BipartiteSpace(int(obj["d1"]), int(obj["d2"]))
    return PureState(space, vector_from_json(obj["vec"]))


def schmidt_to_json(dec: SchmidtDecomposition) -> dict:
    return {
        "coeffs": [float(c) for c in dec.coeffs],
        "left": [vector_to_json(v) for v in dec.left],
        "right": [vector_to_json(v) for v in dec.right],
    }


def povm_to_json(e: POVM) -> dict:
    return {
        "dim": e.dim,
        "outcomes": list(e.outcomes),
        "effects": [matrix_to_json(eff) for eff in e.effects],
    }


def povm_from_json(obj: dict) -> POVM:
    return POVM(
        int(obj["dim"]),
        tuple(obj["outcomes"]),
        tuple(matrix_from_json(eff) for eff in obj["effects"]),
    )


def scheme_to_json(s: MeasurementScheme) -> dict:
    return {
        "object_dim": s.object_dim,
        "probe_dim": s.probe_dim,
        "probe_init": vector_to_json(s.probe_init),
        "coupling": matrix_to_json(s.coupling),
        "pointer": povm_to_json(s.pointer),
    }


def scheme_from_json(obj: dict) -> MeasurementScheme:
    return MeasurementScheme(
        int(obj["object_dim"]),
        int(obj["probe_dim"]),
        vector_from_json(obj["probe_init"]),
        matrix_from_json(obj["coupling"]),
        povm_from_json(obj["pointer"]),
    )


def canonical_json(obj) -> str:
    """Deterministic rendering: sorted keys, newline-terminated."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def profile_csv(points) -> str:
    """CSV with one row per grid point of an entanglement profile."""
    lines = ["t,max_entropy_bits,op_schmidt_rank,verdict,maximizing_input_id"]
    for pt in points:
        lines.append(
            f"{pt.t!r},{pt.max_entropy_bits!r},{pt.op_schmidt_rank},"
            f"{pt.verdict},{pt.maximizing_input_id}"
        )
    return "\n".join(lines) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write via a temp file in the same directory; no partial files on error."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
