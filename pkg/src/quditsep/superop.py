"""Superoperators on a single qudit and the Haar-averaged projector superoperator.

A superoperator is stored as a ``D^2 x D^2`` matrix whose entry at
``(flat(c, a), flat(d, b))`` is ``<c| S(|a><b|) |d>``, with
``flat(c, a) = c*D + a`` for 0-based levels. In this layout the left-right
action (operators as vectors under ``(A|B) = tr(A^dag B)``) is plain matrix
algebra on row-major ``vec(A)``, and the ordinary action is

    S(A) = sum S[ca, db] |c><a| A |b><d|.

``sharp`` swaps the two actions by the index permutation ``S[ca,db] -> S[cd,ab]``.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.stats import unitary_group

from ._checks import as_square, check_dim, check_pure
from .errors import DimensionMismatchError, ParameterRangeError

_MC_BATCH = 20_000


@dataclass(frozen=True)
class Superoperator:
    dim: int
    mat: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.mat, dtype=complex)
        n = self.dim * self.dim
        if mat.shape != (n, n):
            raise DimensionMismatchError(f"superoperator on D={self.dim} needs shape {(n, n)}, got {mat.shape}")
        object.__setattr__(self, "mat", mat)

    @property
    def tensor(self):
        """The matrix elements as a rank-4 array indexed ``[c, a, d, b]``."""
        D = self.dim
        return self.mat.reshape(D, D, D, D)


@dataclass(frozen=True)
class HaarMoments:
    """Projective-space volume ``V`` and the second-moment constants ``K = V/D(D+1)``, ``gamma = 2K``."""

    dim: int
    volume: float
    K: float
    gamma: float


def flat_index(c, a, D):
    return c * D + a


def projective_volume(D):
    """Unitarily invariant volume ``pi^(D-1) / (D-1)!`` of D-dimensional projective Hilbert space."""
    D = check_dim(D)
    return math.exp((D - 1) * math.log(math.pi) - math.lgamma(D))


def haar_moments(D):
    vol = projective_volume(D)
    K = vol / (D * (D + 1))
    return HaarMoments(D, vol, K, 2 * K)


def _same_dim(*ops):
    dims = {op.dim for op in ops}
    if len(dims) != 1:
        raise DimensionMismatchError(f"superoperators act on different dimensions: {sorted(dims)}")


def _operand(S, A):
    return as_square(A, S.dim, "operand")


def superop_outer(X, Y):
    """``|X)(Y|``, i.e. ``B -> X tr(Y^dag B)`` under the left-right action."""
    X, Y = np.asarray(X, dtype=complex), np.asarray(Y, dtype=complex)
    return Superoperator(X.shape[0], np.outer(X.ravel(), Y.ravel().conj()))


def lr_identity(D):
    """Identity for the left-right action; its ordinary action is ``A -> tr(A) I``."""
    D = check_dim(D, 1)
    return Superoperator(D, np.eye(D * D, dtype=complex))


def ordinary_identity(D):
    """Identity for the ordinary action, ``|I)(I|`` in left-right terms."""
    D = check_dim(D, 1)
    return superop_outer(np.eye(D), np.eye(D))


def conjugation(U):
    """The superoperator ``A -> U A U^dag``."""
    U = as_square(U, name="U")
    return superop_outer(U, U)


def ordinary_action(S, A):
    A = _operand(S, A)
    return np.einsum("cadb,ab->cd", S.tensor, A)


def left_right_action(S, A):
    A = _operand(S, A)
    return (S.mat @ A.ravel()).reshape(S.dim, S.dim)


def sharp(S):
    D = S.dim
    return Superoperator(D, S.tensor.transpose(0, 2, 1, 3).reshape(D * D, D * D))


def lr_adjoint(S):
    return Superoperator(S.dim, S.mat.conj().T)


def ordinary_adjoint(S):
    """Adjoint for the ordinary action: ``tr(S^x(B)^dag A) = tr(B^dag S(A))``."""
    D = S.dim
    return Superoperator(D, S.tensor.transpose(1, 0, 3, 2).conj().reshape(D * D, D * D))


def lr_multiply(R, S):
    _same_dim(R, S)
    return Superoperator(R.dim, R.mat @ S.mat)


def ordinary_compose(R, S):
    """``R o S`` with ``(R o S)(A) = R(S(A))``."""
    _same_dim(R, S)
    return sharp(lr_multiply(sharp(R), sharp(S)))


def lr_trace(S):
    """``sum_alpha (tau_alpha|S|tau_alpha)``; equals ``tr(S(I))`` only for sharp-symmetric S."""
    return np.trace(S.mat)


def traceless_projector(basis):
    """``sum_j |lambda_j)(lambda_j|``, the projector onto traceless operators."""
    v = basis.generators.reshape(len(basis.generators), -1)
    return Superoperator(basis.dim, v.T @ v.conj())


def g_superoperator(D):
    """Haar integral of ``|P_psi)(P_psi|`` in closed form, ``K (I_lr + I_ord)``."""
    m = haar_moments(D)
    return Superoperator(D, m.K * (lr_identity(D).mat + ordinary_identity(D).mat))


def g_diagonal_form(basis):
    """The same operator assembled from its eigen-decomposition: ``K((D+1)|I)(I|/D + T)``."""
    D = basis.dim
    m = haar_moments(D)
    return Superoperator(D, m.K * ((D + 1) * ordinary_identity(D).mat / D + traceless_projector(basis).mat))


def g_inverse(D):
    """Left-right inverse ``(I_lr - I_ord / (D+1)) / K``."""
    m = haar_moments(D)
    return Superoperator(D, (lr_identity(D).mat - ordinary_identity(D).mat / (D + 1)) / m.K)


def dual_operator(psi):
    """``Q_psi = G^-1 |P_psi) = (D/V)((D+1) P_psi - I)``."""
    psi = check_pure(psi)
    D = psi.shape[0]
    vol = projective_volume(D)
    return (D / vol) * ((D + 1) * np.outer(psi, psi.conj()) - np.eye(D))


def frame_superoperator(ops):
    """``sum_alpha |N_alpha)(N_alpha|`` for a finite spanning set of operators."""
    v = np.asarray(ops, dtype=complex)
    D = v.shape[1]
    v = v.reshape(len(v), -1)
    return Superoperator(D, v.T @ v.conj())


def dual_frame(ops):
    """Dual operators ``Q_alpha = G^-1 |N_alpha)`` of a finite spanning set."""
    ops = np.asarray(ops, dtype=complex)
    D = ops.shape[1]
    G = frame_superoperator(ops).mat
    q = np.linalg.solve(G, ops.reshape(len(ops), -1).T).T
    return q.reshape(len(ops), D, D)


def haar_states(D, n, rng):
    """``n`` Haar-random pure states as rows, from normalized complex Gaussian vectors."""
    z = rng.standard_normal((n, D)) + 1j * rng.standard_normal((n, D))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def haar_sample(D, seed):
    D = check_dim(D)
    return haar_states(D, 1, np.random.default_rng(seed))[0]


def haar_unitary(D, rng):
    return unitary_group.rvs(D, random_state=rng)


def _mc_chunk(D, n, seed_seq):
    rng = np.random.default_rng(seed_seq)
    n2 = D * D
    total = np.zeros((n2, n2), dtype=complex)
    sq_re = np.zeros((n2, n2))
    sq_im = np.zeros((n2, n2))
    done = 0
    while done < n:
        m = min(_MC_BATCH, n - done)
        psi = haar_states(D, m, rng)
        # entry [ca, db] = (psi_c psi_b) * conj(psi_a psi_d), in explicit real arithmetic:
        # each sample is then exactly invariant under sharp (a <-> d) and conjugate
        # transpose, independent of how numpy vectorizes complex products
        r, i = psi.real, psi.imag
        pr = r[:, :, None] * r[:, None, :] - i[:, :, None] * i[:, None, :]
        pi = r[:, :, None] * i[:, None, :] + i[:, :, None] * r[:, None, :]
        P_r, P_i = pr[:, :, None, None, :], pi[:, :, None, None, :]
        Q_r, Q_i = pr[:, None, :, :, None], pi[:, None, :, :, None]
        x_re = (P_r * Q_r + P_i * Q_i).reshape(m, n2, n2)
        x_im = (P_i * Q_r - P_r * Q_i).reshape(m, n2, n2)
        total += x_re.sum(axis=0) + 1j * x_im.sum(axis=0)
        sq_re += (x_re**2).sum(axis=0)
        sq_im += (x_im**2).sum(axis=0)
        done += m
    return total, sq_re, sq_im


def monte_carlo_g_stats(D, samples, seed, workers=1):
    """Monte Carlo estimate of G with per-entry standard errors.

    Returns ``(estimate, stderr_re, stderr_im)``; the error arrays share the
    scale of ``estimate.mat``. Output is bitwise reproducible for a fixed
    ``(seed, samples, workers)``: each worker draws from its own child of
    ``SeedSequence(seed)`` and partial sums are combined in worker order.
    """
    D = check_dim(D)
    if samples < 1 or workers < 1:
        raise ParameterRangeError("samples and workers must be positive")
    children = np.random.SeedSequence(seed).spawn(workers)
    share, extra = divmod(samples, workers)
    counts = [share + (i < extra) for i in range(workers)]
    jobs = [(D, c, s) for c, s in zip(counts, children) if c > 0]
    if len(jobs) == 1:
        parts = [_mc_chunk(*jobs[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(jobs)) as pool:
            parts = list(pool.map(lambda job: _mc_chunk(*job), jobs))
    total = sum(p[0] for p in parts)
    sq_re = sum(p[1] for p in parts)
    sq_im = sum(p[2] for p in parts)

    vol = projective_volume(D)
    mean = total / samples
    var_re = np.maximum(sq_re / samples - mean.real**2, 0.0)
    var_im = np.maximum(sq_im / samples - mean.imag**2, 0.0)
    scale = vol / math.sqrt(samples)
    return Superoperator(D, vol * mean), scale * np.sqrt(var_re), scale * np.sqrt(var_im)


def monte_carlo_g(D, samples, seed, workers=1):
    """``V`` times the sample mean of ``|P_psi)(P_psi|`` over Haar-random ``psi``."""
    return monte_carlo_g_stats(D, samples, seed, workers)[0]


def random_unitary_batch(D, count, seed):
    rng = np.random.default_rng(seed)
    return [haar_unitary(D, rng) for _ in range(count)]
