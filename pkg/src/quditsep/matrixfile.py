"""MatrixFile: JSON payload for dense complex matrices.

Each matrix is a mapping ``{"dim_list": [...], "hermitian": bool, "data": rows}``
where every entry of ``rows`` is an explicit ``[re, im]`` pair. Bare numbers
are rejected so a real-valued file can never be mistaken for a complex one.
"""

import json
from math import prod
from pathlib import Path

import numpy as np

from ._checks import INPUT_TOL
from .errors import DimensionMismatchError, InvalidStateError, QuditError


class MatrixFileError(QuditError):
    pass


def encode_matrix(mat, dim_list, hermitian=False):
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {mat.shape}")
    dim_list = [int(d) for d in dim_list]
    if prod(dim_list) != mat.shape[0]:
        raise DimensionMismatchError(f"dim_list {dim_list} does not multiply to side {mat.shape[0]}")
    return {
        "dim_list": dim_list,
        "hermitian": bool(hermitian),
        "data": [[[float(z.real), float(z.imag)] for z in row] for row in mat],
    }


def _entry(value, where):
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)
    ):
        raise MatrixFileError(f"entry {where} must be an [re, im] pair, got {value!r}")
    return complex(value[0], value[1])


def decode_matrix(obj):
    """Inverse of :func:`encode_matrix`; returns ``(matrix, dim_list)``."""
    try:
        dim_list = [int(d) for d in obj["dim_list"]]
        rows = obj["data"]
    except (KeyError, TypeError) as exc:
        raise MatrixFileError(f"malformed matrix record: {exc}") from None
    side = prod(dim_list)
    if len(rows) != side or any(len(r) != side for r in rows):
        raise MatrixFileError(f"data is not {side}x{side} as dim_list {dim_list} requires")
    mat = np.array([[_entry(v, (i, j)) for j, v in enumerate(r)] for i, r in enumerate(rows)])
    if obj.get("hermitian", False) and np.abs(mat - mat.conj().T).max() > INPUT_TOL:
        raise InvalidStateError("matrix declared Hermitian is not Hermitian")
    return mat, dim_list


def write_matrix_file(path, mat, dim_list, hermitian=False):
    path = Path(path)
    try:
        path.write_text(json.dumps(encode_matrix(mat, dim_list, hermitian)))
    except OSError as exc:
        raise OSError(f"cannot write matrix file {path}: {exc.strerror}") from exc


def read_matrix_file(path):
    path = Path(path)
    try:
        obj = json.loads(path.read_text())
    except OSError as exc:
        raise OSError(f"cannot read matrix file {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"{path}: not valid JSON ({exc})") from None
    return decode_matrix(obj)
