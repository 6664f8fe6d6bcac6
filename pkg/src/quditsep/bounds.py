"""Separability boundaries for the eps-mixture and eps-cat families, with
independent cross-checks (partial transpose, correlation witness, qubit projection).
"""

import numpy as np
from scipy.optimize import bisect

from ._checks import as_square, check_dim, check_probability
from .errors import DimensionMismatchError
from .quasi import floor_verdict
from .states import (
    MAX_DENSE_DIM,
    MAX_Z_DIM,
    boundary_product_ensemble,
    computational_product_ensemble,
    ensemble_density,
    eps_prime,
    epsilon_cat,
    epsilon_mixture,
    project_to_qubits,
    two_qudit_coeffs,
)
from .su_basis import build_basis
from .verdict import SeparabilityVerdict, Verdict

PPT_TOL = 1e-12


def two_qudit_boundary(D):
    """Largest eps for which the two-qudit eps-mixture is separable, ``1/(1+D)``."""
    D = check_dim(D)
    return 1 / (1 + D)


def neighborhood_bounds(D, N):
    """``(lower, upper)`` on the radius of the separable ball around ``I/D^N``.

    Every ``(1-eps) I/D^N + eps rho1`` is separable for ``eps <= lower``; some are
    entangled for ``eps > upper``.
    """
    D = check_dim(D)
    N = check_dim(N)
    return 1 / (1 + float(D) ** (2 * N - 1)), 1 / (1 + float(D) ** (N - 1))


def partial_transpose(rho, dimA, dimB):
    """Transpose on the second factor. Either choice gives the same spectrum."""
    rho = as_square(rho, dimA * dimB)
    return rho.reshape(dimA, dimB, dimA, dimB).transpose(0, 3, 2, 1).reshape(dimA * dimB, dimA * dimB)


def ppt_test(rho, dimA, dimB):
    """Minimum eigenvalue of the partial transpose and whether it is nonnegative.

    A negative value proves entanglement. A nonnegative one settles
    separability only when ``dimA * dimB <= 6``.
    """
    if dimA < 1 or dimB < 1:
        raise DimensionMismatchError("subsystem dimensions must be positive")
    pt = partial_transpose(rho, dimA, dimB)
    lo = float(np.linalg.eigvalsh((pt + pt.conj().T) / 2)[0])
    return lo, lo >= -PPT_TOL


def necessity_check(coeffs, D):
    """``sum_j |c_jj| / (D(D-1))``; separable states give at most 1."""
    c = coeffs.c if hasattr(coeffs, "c") else np.asarray(coeffs)
    if c.shape != (D * D, D * D):
        raise DimensionMismatchError(f"coefficient table for D={D} must be {D * D}x{D * D}")
    return float(np.abs(np.diag(c)[1:]).sum() / (D * (D - 1)))


def ppt_crossing(D, xtol=1e-13):
    """Bisect for the eps at which the eps-mixture's partial transpose loses positivity."""
    D = check_dim(D)
    return bisect(lambda e: ppt_test(epsilon_mixture(D, e), D, D)[0], 0.0, 1.0, xtol=xtol)


def mixture_ensemble(D, eps):
    """Product ensemble for the eps-mixture, valid for ``eps <= 1/(1+D)``.

    Below the boundary the boundary ensemble gets weight ``eps (1+D)`` and the
    remainder goes to the computational-basis ensemble of ``I/D^2``.
    """
    s = eps * (1 + D)
    terms = []
    if s > 0:
        terms += [t._replace(weight=s * t.weight) for t in boundary_product_ensemble(D)]
    if s < 1:
        terms += [t._replace(weight=(1 - s) * t.weight) for t in computational_product_ensemble(D)]
    return terms


def classify_epsilon_mixture(D, eps):
    """Exact verdict for ``(1-eps) I/D^2 + eps |Psi><Psi|``: separable iff ``eps <= 1/(1+D)``."""
    D = check_dim(D)
    eps = check_probability(eps)
    boundary = two_qudit_boundary(D)
    rho = epsilon_mixture(D, eps)
    if eps <= boundary:
        terms = mixture_ensemble(D, eps)
        residual = float(np.linalg.norm(ensemble_density(terms) - rho))
        cert = {"kind": "product-ensemble", "eps": eps, "ensemble": terms, "residual": residual}
        return SeparabilityVerdict(Verdict.SEPARABLE, cert, boundary)

    min_eig, is_ppt = ppt_test(rho, D, D)
    cert = {
        "kind": "boundary",
        "condition": "eps > 1/(1+D)",
        "eps": eps,
        "boundary": boundary,
        "ppt_min_eigenvalue": min_eig,
        "ppt_agrees": not is_ppt,
    }
    if D <= MAX_Z_DIM:
        cert["necessity_ratio"] = necessity_check(two_qudit_coeffs(rho, build_basis(D)), D)
    return SeparabilityVerdict(Verdict.ENTANGLED, cert, boundary)


def classify_epsilon_cat(D, N, eps):
    """Verdict for ``(1-eps) I/D^N + eps |cat><cat|``.

    ``N == 2`` is the eps-mixture and is decided exactly. For ``N >= 3`` the
    state is separable up to the density-floor bound, entangled strictly above
    ``1/(1+D^(N-1))``, and undecided in between (including the upper point itself).
    """
    D = check_dim(D)
    N = check_dim(N)
    eps = check_probability(eps)
    if N == 2:
        return classify_epsilon_mixture(D, eps)

    lower, upper = neighborhood_bounds(D, N)
    if eps <= lower:
        return floor_verdict(D, N, eps)
    if eps <= upper:
        cert = {"kind": "boundary", "eps": eps, "lower": lower, "upper": upper}
        return SeparabilityVerdict(Verdict.INDETERMINATE, cert, upper)

    qubit_boundary = 1 / (1 + 2.0 ** (N - 1))
    cert = {
        "kind": "boundary",
        "condition": "eps > 1/(1+D^(N-1))",
        "eps": eps,
        "boundary": upper,
        "eps_prime": eps_prime(eps, D, N),
        "qubit_boundary": qubit_boundary,
    }
    if D**N <= MAX_DENSE_DIM:
        rho = epsilon_cat(D, N, eps)
        _, projected = project_to_qubits(rho, D, N)
        cert["eps_prime_projected"] = projected
        # one qudit against the rest: the partial transpose goes negative exactly above `upper`
        cert["ppt_min_eigenvalue"] = ppt_test(rho, D, D ** (N - 1))[0]
    return SeparabilityVerdict(Verdict.ENTANGLED, cert, upper)
