"""Named qudit states: maximally entangled and cat states, their white-noise
mixtures, the z-vector product ensemble, and two-qudit expansion coefficients.

Composite basis states flatten row-major: ``|a, b>`` (1-based levels) sits at
index ``(a-1)*D + (b-1)``, and likewise for more parties.
"""

from dataclasses import dataclass
from itertools import product
from typing import NamedTuple

import numpy as np

from ._checks import INPUT_TOL, as_square, check_density, check_dim, check_probability
from .errors import (
    DimensionMismatchError,
    InvalidStateError,
    NumericalDegeneracyError,
    NumericalError,
    ResourceCapError,
)

MAX_Z_DIM = 8
MAX_CAT_VECTOR = 2**20
MAX_DENSE_DIM = 2**11

# base-4 digit -> z component, and the matching power of i
Z_VALUES = np.array([1, -1, 1j, -1j])
_Z_POWERS = np.array([0, 2, 1, 3])


@dataclass(frozen=True)
class TwoQuditCoeffs:
    """``c[alpha, beta] = D**2 tr(rho lambda_alpha (x) lambda_beta)``; index 0 is ``lambda_0``,
    index ``j + 1`` is generator ``j`` of the basis."""

    dim: int
    c: np.ndarray


class ProductTerm(NamedTuple):
    weight: float
    a: np.ndarray
    b: np.ndarray


def maximally_mixed(n):
    return np.eye(n, dtype=complex) / n


def max_entangled(D):
    D = check_dim(D)
    psi = np.zeros(D * D, dtype=complex)
    psi[np.arange(D) * (D + 1)] = 1 / np.sqrt(D)
    return psi


def epsilon_mixture(D, eps):
    """``(1 - eps) I/D^2 + eps |Psi><Psi|`` for the maximally entangled ``|Psi>``."""
    psi = max_entangled(D)
    eps = check_probability(eps)
    return (1 - eps) * maximally_mixed(D * D) + eps * np.outer(psi, psi.conj())


def two_qudit_coeffs(rho, basis):
    D = basis.dim
    rho = check_density(rho, D * D)
    L = basis.full
    R = rho.reshape(D, D, D, D)
    # tr(rho A(x)B) = sum R[i,k,j,l] A[j,i] B[l,k]
    c = D * D * np.einsum("ikjl,aji,blk->ab", R, L, L, optimize=True)
    if np.abs(c.imag).max() > 1e-12 * D * D:
        raise InvalidStateError("expansion coefficients came out complex; rho is not Hermitian")
    return TwoQuditCoeffs(D, c.real.copy())


def _check_z_dim(D):
    D = check_dim(D)
    if D > MAX_Z_DIM:
        raise ResourceCapError(f"z-vector enumeration has 4^D terms; capped at D <= {MAX_Z_DIM}")
    return D


def z_digits(D):
    """All ``4**D`` z-vectors as base-4 digit rows, first component most significant."""
    D = _check_z_dim(D)
    return np.array(list(product(range(4), repeat=D)), dtype=np.int64).reshape(4**D, D)


def z_vectors(D):
    return Z_VALUES[z_digits(D)]


def phi_z(z):
    """``sum_a z_a |a> / sqrt(D)`` for a z-vector with entries in {1, -1, i, -i}."""
    z = np.asarray(z, dtype=complex)
    if z.ndim != 1 or z.shape[0] < 2:
        raise DimensionMismatchError("z must be a vector of length >= 2")
    if not np.all(np.min(np.abs(z[:, None] - Z_VALUES[None, :]), axis=1) < 1e-12):
        raise InvalidStateError("z components must be one of +1, -1, +i, -i")
    return z / np.sqrt(z.shape[0])


def z_moment_tensor(D):
    """``sum_z z_a conj(z_b) conj(z_c) z_d`` over all z, evaluated exactly.

    Each z component is ``i**k``, so every summand is ``i**r`` with
    ``r = k_a - k_b - k_c + k_d (mod 4)``; the sum is assembled from integer counts.
    Returns a complex array of shape ``(D, D, D, D)`` holding exact Gaussian integers.
    """
    powers = _Z_POWERS[z_digits(D)]
    counts = np.zeros((4,) + (D,) * 4, dtype=np.int64)
    for start in range(0, len(powers), 256):
        k = powers[start : start + 256]
        r = (
            k[:, :, None, None, None]
            - k[:, None, :, None, None]
            - k[:, None, None, :, None]
            + k[:, None, None, None, :]
        ) % 4
        for m in range(4):
            counts[m] += (r == m).sum(axis=0)
    return (counts[0] - counts[2]) + 1j * (counts[1] - counts[3])


def z_moment_closed_form(D):
    d = np.eye(D, dtype=np.int64)
    ab_cd = np.einsum("ab,cd->abcd", d, d)
    ac_bd = np.einsum("ac,bd->abcd", d, d)
    all_eq = np.einsum("ab,cd,ac->abcd", d, d, d)
    return 4**D * (ab_cd + ac_bd - all_eq)


def _z_product_vectors(D):
    phis = z_vectors(D) / np.sqrt(D)
    return phis, np.einsum("za,zb->zab", phis, phis.conj()).reshape(len(phis), D * D)


def z_ensemble_average(D):
    """Uniform mixture of ``|Phi_z><Phi_z| (x) |Phi_z*><Phi_z*|`` over all z-vectors."""
    _, v = _z_product_vectors(_check_z_dim(D))
    return v.T @ v.conj() / len(v)


def z_average_closed_form(D):
    psi = max_entangled(D)
    diag = np.zeros((D * D, D * D), dtype=complex)
    idx = np.arange(D) * (D + 1)
    diag[idx, idx] = 1.0
    return np.eye(D * D) / D**2 + np.outer(psi, psi.conj()) / D - diag / D**2


def boundary_product_ensemble(D):
    """Explicit product ensemble for the mixture at ``eps = 1/(1+D)``.

    Every z-state pair ``Phi_z (x) Phi_z*`` with weight ``D / ((1+D) 4^D)``, followed by
    the ``D`` computational pairs ``|a>(x)|a>`` with weight ``1 / ((1+D) D)``.
    """
    D = _check_z_dim(D)
    phis = z_vectors(D) / np.sqrt(D)
    w_z = D / ((1 + D) * 4**D)
    terms = [ProductTerm(w_z, p, p.conj()) for p in phis]
    w_a = 1 / ((1 + D) * D)
    eye = np.eye(D, dtype=complex)
    terms += [ProductTerm(w_a, eye[a], eye[a]) for a in range(D)]
    return terms


def computational_product_ensemble(D):
    """``|a>(x)|b>`` for all pairs, weight ``1/D^2`` each: a product ensemble for ``I/D^2``."""
    D = check_dim(D)
    eye = np.eye(D, dtype=complex)
    return [ProductTerm(1 / D**2, eye[a], eye[b]) for a in range(D) for b in range(D)]


def ensemble_density(terms):
    """Density operator ``sum_t w_t |a_t><a_t| (x) |b_t><b_t|`` of a two-party product ensemble."""
    w = np.array([t.weight for t in terms], dtype=float)
    A = np.array([t.a for t in terms], dtype=complex)
    B = np.array([t.b for t in terms], dtype=complex)
    v = np.einsum("ta,tb->tab", A, B).reshape(len(terms), -1)
    return (v.T * w) @ v.conj()


def _check_cat(D, N, cap):
    D = check_dim(D)
    N = check_dim(N)
    if D**N > cap:
        raise ResourceCapError(f"D^N = {D}^{N} exceeds the cap of {cap}")
    return D, N


def cat_state(D, N):
    D, N = _check_cat(D, N, MAX_CAT_VECTOR)
    psi = np.zeros(D**N, dtype=complex)
    # |a,a,...,a> sits at a * (1 + D + ... + D^{N-1})
    psi[np.arange(D) * ((D**N - 1) // (D - 1))] = 1 / np.sqrt(D)
    return psi


def epsilon_cat(D, N, eps):
    """``(1 - eps) I/D^N + eps |cat><cat|`` as a dense ``D^N x D^N`` matrix."""
    D, N = _check_cat(D, N, MAX_DENSE_DIM)
    eps = check_probability(eps)
    psi = cat_state(D, N)
    return (1 - eps) * maximally_mixed(D**N) + eps * np.outer(psi, psi.conj())


def eps_prime(eps, D, N):
    """Weight on the qubit cat state after projecting every qudit onto levels 1, 2."""
    eps = check_probability(eps)
    return (2 * eps / D) / ((2 / D) ** N * (1 - eps) + 2 * eps / D)


def qubit_subspace_indices(D, N):
    """Indices of the ``2^N`` composite basis states using only levels 1 and 2, in qubit order."""
    weights = D ** np.arange(N - 1, -1, -1)
    bits = np.array(list(product((0, 1), repeat=N)), dtype=np.int64)
    return bits @ weights


def project_to_qubits(rho, D, N):
    """Project an eps-cat state locally onto the ``{|1>, |2>}`` qubit of each qudit.

    Returns the normalized ``2^N x 2^N`` state and its cat-state weight ``eps'``.
    Only eps-cat inputs are accepted; ``eps`` is read off the ``|1..1><2..2|``
    coherence and the whole matrix is checked against :func:`epsilon_cat`.
    """
    D, N = _check_cat(D, N, MAX_DENSE_DIM)
    rho = as_square(rho, D**N)
    far = (D**N - 1) // (D - 1)
    eps = D * rho[0, far].real
    if not -INPUT_TOL <= eps <= 1 + INPUT_TOL:
        raise InvalidStateError("rho is not an eps-cat state")
    eps = min(max(eps, 0.0), 1.0)
    if np.abs(rho - epsilon_cat(D, N, eps)).max() > INPUT_TOL:
        raise InvalidStateError(f"rho is not an eps-cat state for D={D}, N={N}")

    idx = qubit_subspace_indices(D, N)
    block = rho[np.ix_(idx, idx)]
    norm = np.trace(block).real
    if norm <= np.finfo(float).tiny:
        raise NumericalDegeneracyError("projection onto the qubit subspace has zero weight")
    block = block / norm

    expected = eps_prime(eps, D, N)
    from_matrix = 2 * block[0, -1].real
    if abs(from_matrix - expected) > 1e-12:
        raise NumericalError(f"eps' disagrees: closed form {expected!r}, projected matrix {from_matrix!r}")
    return block, expected
