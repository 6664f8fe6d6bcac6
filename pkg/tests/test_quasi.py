import math
from functools import reduce

import numpy as np
import pytest

from quditsep.errors import InvalidStateError
from quditsep.quasi import (
    certify_separable_floor,
    dual_product_operator,
    w_floor,
    w_product,
    w_single,
    w_single_batch,
)
from quditsep.states import epsilon_cat, maximally_mixed
from quditsep.superop import dual_operator, haar_states, projective_volume
from quditsep.verdict import Verdict

from conftest import random_density, random_pure


def orthogonal_to(psi, rng):
    v = random_pure(len(psi), rng)
    v = v - np.vdot(psi, v) * psi
    return v / np.linalg.norm(v)


@pytest.mark.parametrize("D", [2, 3, 5])
def test_w_single_values(D, rng):
    vol = projective_volume(D)
    psi = random_pure(D, rng)
    assert w_single(np.eye(D) / D, psi) == pytest.approx(1 / vol, rel=1e-12)
    assert w_single(np.outer(psi, psi.conj()), psi) == pytest.approx(D * D / vol, rel=1e-12)
    phi = orthogonal_to(psi, rng)
    assert w_single(np.outer(phi, phi.conj()), psi) == pytest.approx(-D / vol, rel=1e-12)
    rho = random_density(D, rng)
    assert w_single(rho, psi) == pytest.approx(np.trace(rho @ dual_operator(psi)).real, rel=1e-12)


def test_w_product_against_explicit_tensor(rng):
    for D, N in [(2, 1), (2, 2), (3, 2), (2, 3)]:
        psis = [random_pure(D, rng) for _ in range(N)]
        rho = random_density(D**N, rng)
        explicit = np.trace(rho @ dual_product_operator(psis)).real
        assert w_product(rho, psis) == pytest.approx(explicit, rel=1e-11, abs=1e-12)
        vol = projective_volume(D)
        assert w_product(maximally_mixed(D**N), psis) == pytest.approx(vol**-N, rel=1e-12)
    psi = random_pure(3, rng)
    rho = random_density(3, rng)
    assert w_product(rho, [psi]) == pytest.approx(w_single(rho, psi), rel=1e-12)


def test_w_product_at_matching_product_state(rng):
    D = 3
    p1, p2 = random_pure(D, rng), random_pure(D, rng)
    rho = np.kron(np.outer(p1, p1.conj()), np.outer(p2, p2.conj()))
    assert w_product(rho, [p1, p2]) == pytest.approx(D**4 / projective_volume(D) ** 2, rel=1e-12)


def test_w_floor_values():
    assert w_floor(2, 1) == pytest.approx(-2 / math.pi, rel=1e-15)
    assert w_floor(2, 2) == pytest.approx(-8 / math.pi**2, rel=1e-15)
    for D in range(2, 6):
        for N in range(1, 5):
            assert w_floor(D, N) < 0


@pytest.mark.parametrize("D,N", [(2, 2), (2, 3), (3, 2)])
def test_w_floor_is_min_eigenvalue_of_dual_product(D, N, rng):
    psis = [random_pure(D, rng) for _ in range(N)]
    lo = np.linalg.eigvalsh(dual_product_operator(psis))[0]
    assert abs(lo - w_floor(D, N)) < 1e-12 * max(1, abs(w_floor(D, N)))


def test_floor_bounds_random_points_for_pure_product(rng):
    D, N = 2, 2
    p = [random_pure(D, rng) for _ in range(N)]
    rho = reduce(np.kron, [np.outer(x, x.conj()) for x in p])
    worst = min(w_product(rho, [random_pure(D, rng) for _ in range(N)]) for _ in range(2000))
    assert worst >= w_floor(D, N)


def test_floor_consistency_at_threshold(rng):
    # eps at the lower bound, rho1 = product of states orthogonal / parallel to the sample point
    for D, N in [(2, 2), (3, 2), (2, 3)]:
        psis = [random_pure(D, rng) for _ in range(N)]
        first = orthogonal_to(psis[0], rng)
        parts = [np.outer(first, first.conj())] + [np.outer(p, p.conj()) for p in psis[1:]]
        rho1 = reduce(np.kron, parts)
        assert w_product(rho1, psis) == pytest.approx(w_floor(D, N), rel=1e-10)
        eps = 1 / (1 + D ** (2 * N - 1))
        rho = (1 - eps) * maximally_mixed(D**N) + eps * rho1
        assert w_product(rho, psis) >= -1e-12


@pytest.mark.parametrize("D", [2, 3])
def test_quasi_normalization_and_reconstruction(D):
    rng = np.random.default_rng(D)
    n = 200_000
    vol = projective_volume(D)
    rho = random_density(D, rng)
    psis = haar_states(D, n, rng)
    w = vol * w_single_batch(rho, psis)
    assert abs(w.mean() - 1) <= 6 * w.std() / math.sqrt(n)
    # vol * E[w P] -> rho
    terms = w[:, None, None] * np.einsum("na,nb->nab", psis, psis.conj())
    est = terms.mean(axis=0)
    se = (terms.real.std(axis=0) + 1j * terms.imag.std(axis=0)) / math.sqrt(n)
    assert np.all(np.abs(est.real - rho.real) <= 6 * se.real + 1e-12)
    assert np.all(np.abs(est.imag - rho.imag) <= 6 * se.imag + 1e-12)


def test_certify_separable_floor(rng):
    rho1 = random_density(4, rng)
    v = certify_separable_floor(rho1, 2, 2, 1 / 9)
    assert v.verdict is Verdict.SEPARABLE
    assert v.certificate_kind == "quasi-floor"
    assert v.certificate["density_lower_bound"] >= -1e-15
    assert v.boundary_used == pytest.approx(1 / 9)
    assert certify_separable_floor(random_density(9, rng), 3, 2, 1 / 28).verdict is Verdict.SEPARABLE
    assert certify_separable_floor(rho1, 2, 2, 0).verdict is Verdict.SEPARABLE
    # above the floor threshold the argument says nothing, never "entangled"
    above = certify_separable_floor(epsilon_cat(2, 2, 1), 2, 2, 0.5)
    assert above.verdict is Verdict.INDETERMINATE
    with pytest.raises(InvalidStateError):
        certify_separable_floor(np.eye(4), 2, 2, 0.1)
