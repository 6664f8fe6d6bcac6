"""Quasi-probability densities of qudit states over product pure states.

Values keep the projective-volume normalization: the maximally mixed state
has the uniform density ``1 / V**N``.
"""

from dataclasses import dataclass
from functools import reduce

import numpy as np

from ._checks import as_square, check_density, check_dim, check_probability, check_pure
from .errors import DimensionMismatchError
from .superop import dual_operator, projective_volume
from .verdict import SeparabilityVerdict, Verdict


@dataclass(frozen=True)
class QuasiSample:
    states: tuple
    w: float


def w_single(rho, psi):
    """``tr(rho Q_psi) = (D/V)((D+1)<psi|rho|psi> - 1)``."""
    psi = check_pure(psi)
    D = psi.shape[0]
    rho = as_square(rho, D, "rho")
    vol = projective_volume(D)
    overlap = np.vdot(psi, rho @ psi).real
    return (D / vol) * ((D + 1) * overlap - 1)


def w_product(rho, psis):
    """``tr(rho Q_psi1 (x) ... (x) Q_psiN)`` at one point of the product space."""
    psis = [check_pure(p) for p in psis]
    if not psis:
        raise DimensionMismatchError("need at least one local state")
    D = psis[0].shape[0]
    if any(p.shape[0] != D for p in psis):
        raise DimensionMismatchError("all local states must share one dimension")
    N = len(psis)
    rho = as_square(rho, D**N, "rho")
    # contract one party at a time; the D^N x D^N product operator is never formed
    t = rho.reshape((D,) * (2 * N))
    for k, p in enumerate(psis):
        # leading axis is party k's row index, axis N-k its column index
        t = np.tensordot(t, dual_operator(p), axes=([0, N - k], [1, 0]))
    return float(np.real(t))


def w_floor(D, N):
    """Smallest possible value of the density: ``-D**(2N-1) / V**N``."""
    D = check_dim(D)
    N = check_dim(N, 1)
    return -float(D) ** (2 * N - 1) / projective_volume(D) ** N


def dual_product_operator(psis):
    """Explicit ``Q_psi1 (x) ... (x) Q_psiN`` (small sizes only)."""
    return reduce(np.kron, [dual_operator(p) for p in psis])


def sample_w(rho, psis):
    return QuasiSample(tuple(np.asarray(p) for p in psis), w_product(rho, psis))


def certify_separable_floor(rho1, D, N, eps):
    """Separability of ``(1-eps) I/D^N + eps rho1`` from the density floor alone.

    Below ``1/(1 + D^(2N-1))`` the density is nonnegative everywhere, whatever
    ``rho1`` is; above it the argument is silent, so the verdict is indeterminate.
    """
    D = check_dim(D)
    N = check_dim(N, 1)
    check_density(rho1, D**N, "rho1", psd=True)
    eps = check_probability(eps)
    return floor_verdict(D, N, eps)


def floor_verdict(D, N, eps):
    threshold = 1 / (1 + float(D) ** (2 * N - 1))
    vol_n = projective_volume(D) ** N
    certificate = {
        "kind": "quasi-floor",
        "eps": eps,
        "w_floor": w_floor(D, N),
        "density_lower_bound": (1 - eps * (1 + float(D) ** (2 * N - 1))) / vol_n,
    }
    if eps <= threshold:
        return SeparabilityVerdict(Verdict.SEPARABLE, certificate, threshold)
    return SeparabilityVerdict(Verdict.INDETERMINATE, certificate, threshold)


def w_single_batch(rho, psis):
    """:func:`w_single` for every row of ``psis`` (rows assumed normalized)."""
    psis = np.asarray(psis, dtype=complex)
    D = psis.shape[1]
    rho = as_square(rho, D, "rho")
    overlap = np.einsum("na,ab,nb->n", psis.conj(), rho, psis).real
    return (D / projective_volume(D)) * ((D + 1) * overlap - 1)
