"""Named self-check suites, run from ``quditsep verify``.

Each suite returns a list of :class:`Check`; ``residual`` is measured in the
same units as ``tolerance``. Monte Carlo checks report the worst per-entry
z-score (deviation over standard error) against a tolerance of 6.
"""

import math
from typing import NamedTuple

import numpy as np

from .bounds import classify_epsilon_mixture, ppt_crossing, ppt_test, two_qudit_boundary
from .quasi import w_single_batch
from .states import (
    boundary_product_ensemble,
    ensemble_density,
    epsilon_mixture,
    z_average_closed_form,
    z_ensemble_average,
    z_moment_closed_form,
    z_moment_tensor,
)
from .su_basis import bloch_expand, bloch_reconstruct, build_basis, outer_from_generators, structure_constants
from .superop import g_superoperator, haar_states, monte_carlo_g_stats, projective_volume, sharp
from .verdict import Verdict

SIGMA_BAND = 6.0
# additive slack on Monte Carlo bands for entries whose sample variance is exactly zero
_MC_FLOOR = 1e-12


class Check(NamedTuple):
    name: str
    passed: bool
    residual: float
    tolerance: float


def _check(name, residual, tolerance):
    residual = float(residual)
    return Check(name, residual < tolerance, residual, tolerance)


def _exact(name, residual):
    return Check(name, residual == 0, float(residual), 0.0)


def _zscore(estimate, exact, stderr):
    return float(np.max(np.abs(estimate - exact) / (stderr + _MC_FLOOR)))


def algebra_suite(D):
    basis = build_basis(D)
    full = basis.full
    gram = np.einsum("aij,bji->ab", full, full)
    L = basis.generators
    herm = max(np.abs(L - L.conj().transpose(0, 2, 1)).max(), np.abs(np.trace(L, axis1=1, axis2=2)).max())

    sc = structure_constants(basis)
    lhs = np.einsum("jab,kbc->jkac", L, L)
    rhs = (
        np.eye(len(L))[:, :, None, None] * np.eye(D)[None, None] / D
        + np.einsum("jkl,lab->jkab", sc.d + 1j * sc.f, L)
    )
    product_res = np.sqrt((np.abs(lhs - rhs) ** 2).sum(axis=(2, 3))).max()
    sym_res = max(
        np.abs(sc.d - sc.d.transpose(p)).max() for p in [(1, 0, 2), (0, 2, 1), (2, 1, 0)]
    )
    anti_res = max(
        np.abs(sc.f + sc.f.transpose(p)).max() for p in [(1, 0, 2), (0, 2, 1), (2, 1, 0)]
    )

    eye = np.eye(D)
    inversion = max(
        np.linalg.norm(outer_from_generators(basis, a, b) - np.outer(eye[a - 1], eye[b - 1]))
        for a in range(1, D + 1)
        for b in range(1, D + 1)
    )

    rng = np.random.default_rng(D)
    psi = haar_states(D, 1, rng)[0]
    rho = np.outer(psi, psi.conj())
    c = bloch_expand(rho, basis).c
    roundtrip = np.linalg.norm(bloch_reconstruct(c, basis) - rho)
    return [
        _check("orthonormality", np.abs(gram - np.eye(D * D)).max(), 1e-12),
        _check("hermitian_traceless", herm, 1e-12),
        _check("product_identity", product_res, 1e-12),
        _check("d_symmetric", sym_res, 1e-12),
        _check("f_antisymmetric", anti_res, 1e-12),
        _check("basis_inversion", inversion, 1e-12),
        _check("pure_state_norm", abs(c @ c - D * (D - 1)), 1e-10),
        _check("expand_reconstruct", roundtrip, 1e-12),
    ]


def ensemble_suite(D):
    terms = boundary_product_ensemble(D)
    weights = math.fsum(t.weight for t in terms)
    checks = [
        _check("z_average_closed_form", np.linalg.norm(z_ensemble_average(D) - z_average_closed_form(D)), 1e-12),
        _check(
            "boundary_ensemble_reconstruction",
            np.linalg.norm(ensemble_density(terms) - epsilon_mixture(D, two_qudit_boundary(D))),
            1e-12,
        ),
        _check("ensemble_weights_sum", abs(weights - 1), 1e-12),
    ]
    if D <= 6:
        checks.append(_exact("z_moment_identity", np.abs(z_moment_tensor(D) - z_moment_closed_form(D)).max()))
    return checks


def haar_suite(D, samples, seed, workers=1):
    vol = projective_volume(D)
    est, err_re, err_im = monte_carlo_g_stats(D, samples, seed, workers)
    exact = g_superoperator(D).mat
    z_re = _zscore(est.mat.real, exact.real, err_re)
    z_im = _zscore(est.mat.imag, exact.imag, err_im)

    fourth = est.mat[0, 0].real / vol
    fourth_z = abs(fourth - 2 / (D * (D + 1))) / (err_re[0, 0] / vol)

    rng = np.random.default_rng(np.random.SeedSequence(seed).spawn(workers + 1)[-1])
    target = haar_states(D, 1, rng)[0]
    rho = 0.5 * np.outer(target, target.conj()) + 0.5 * np.eye(D) / D
    w = vol * w_single_batch(rho, haar_states(D, samples, rng))
    w_z = abs(w.mean() - 1) / (w.std() / np.sqrt(samples))

    return [
        Check("g_entries_re_within_6sigma", z_re <= SIGMA_BAND, z_re, SIGMA_BAND),
        Check("g_entries_im_within_6sigma", z_im <= SIGMA_BAND, z_im, SIGMA_BAND),
        Check("fourth_moment_within_6sigma", fourth_z <= SIGMA_BAND, float(fourth_z), SIGMA_BAND),
        Check("quasi_normalization_within_6sigma", w_z <= SIGMA_BAND, float(w_z), SIGMA_BAND),
        _exact("estimate_sharp_invariant", np.abs(sharp(est).mat - est.mat).max()),
        _exact("estimate_lr_hermitian", np.abs(est.mat - est.mat.conj().T).max()),
    ]


def ppt_suite(D, grid_points=51):
    crossing = abs(ppt_crossing(D) - two_qudit_boundary(D))
    mismatches = 0
    for k in range(grid_points):
        eps = k / (grid_points - 1)
        verdict = classify_epsilon_mixture(D, eps).verdict
        _, is_ppt = ppt_test(epsilon_mixture(D, eps), D, D)
        mismatches += (verdict is Verdict.SEPARABLE) != is_ppt
    return [
        _check("ppt_zero_crossing", crossing, 1e-10),
        _exact("classifier_matches_ppt_on_grid", mismatches),
    ]


SUITES = {
    "algebra": algebra_suite,
    "ensemble": ensemble_suite,
    "haar": haar_suite,
    "ppt": ppt_suite,
}
