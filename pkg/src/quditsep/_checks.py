"""Input validation shared by the state-consuming routines."""

import numpy as np

from .errors import DimensionMismatchError, InvalidDimensionError, InvalidStateError, ParameterRangeError

# user-supplied operators get this much slack; internal identities are held to 1e-12
INPUT_TOL = 1e-10


def check_dim(D, minimum=2):
    if int(D) != D or D < minimum:
        raise InvalidDimensionError(f"dimension must be an integer >= {minimum}, got {D!r}")
    return int(D)


def as_square(mat, side=None, name="operator"):
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DimensionMismatchError(f"{name} must be a square matrix, got shape {mat.shape}")
    if side is not None and mat.shape[0] != side:
        raise DimensionMismatchError(f"{name} must be {side}x{side}, got {mat.shape[0]}x{mat.shape[1]}")
    return mat


def check_density(rho, side=None, name="rho", psd=False):
    """Validate a Hermitian, unit-trace matrix (and optionally PSD); return it as complex."""
    rho = as_square(rho, side, name)
    if np.abs(rho - rho.conj().T).max() > INPUT_TOL:
        raise InvalidStateError(f"{name} is not Hermitian")
    if abs(np.trace(rho) - 1) > INPUT_TOL:
        raise InvalidStateError(f"{name} does not have unit trace (trace={np.trace(rho).real:.3g})")
    if psd and np.linalg.eigvalsh(rho)[0] < -INPUT_TOL:
        raise InvalidStateError(f"{name} is not positive semidefinite")
    return rho


def check_pure(psi, dim=None, name="psi"):
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1:
        raise DimensionMismatchError(f"{name} must be a vector, got shape {psi.shape}")
    if dim is not None and psi.shape[0] != dim:
        raise DimensionMismatchError(f"{name} must have length {dim}, got {psi.shape[0]}")
    if abs(np.linalg.norm(psi) - 1) > INPUT_TOL:
        raise InvalidStateError(f"{name} is not normalized (norm={np.linalg.norm(psi):.3g})")
    return psi


def check_probability(eps, name="eps"):
    if not 0.0 <= eps <= 1.0:
        raise ParameterRangeError(f"{name} must lie in [0, 1], got {eps!r}")
    return float(eps)
