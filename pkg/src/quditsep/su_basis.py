"""Hermitian generator basis of SU(D) and Bloch-vector expansions.

Generators are ordered diagonal first (a = 2..D), then the symmetric
off-diagonal pairs (a, b) with a < b in lexicographic order, then the
antisymmetric pairs in the same order. Basis labels are 1-based to match
the usual |1>, ..., |D> level naming; flat generator indices are 0-based.
Use :meth:`GeneratorBasis.index` rather than hard-coding positions.
"""

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from ._checks import check_density, check_dim
from .errors import DimensionMismatchError, ResourceCapError

MAX_STRUCTURE_DIM = 16


@dataclass(frozen=True)
class GeneratorBasis:
    """Orthonormal Hermitian operator basis ``lambda_0, lambda_1, ..., lambda_{D^2-1}``.

    ``generators`` holds the ``D**2 - 1`` traceless members with shape
    ``(D**2 - 1, D, D)``; ``lambda0`` is ``I / sqrt(D)``. ``labels[j]`` is one of
    ``("diag", a)``, ``("sym", a, b)`` or ``("antisym", a, b)``.
    """

    dim: int
    generators: np.ndarray
    lambda0: np.ndarray
    labels: tuple
    _lookup: dict = field(repr=False, compare=False)

    def index(self, label):
        """Flat generator index for a label such as ``("sym", 1, 3)``."""
        return self._lookup[tuple(label)]

    def sector(self, kind):
        """Flat indices of one sector: ``"diag"``, ``"sym"`` or ``"antisym"``."""
        return [j for j, lab in enumerate(self.labels) if lab[0] == kind]

    @property
    def full(self):
        """All ``D**2`` basis operators with ``lambda0`` in slot 0."""
        return np.concatenate([self.lambda0[None], self.generators])


@dataclass(frozen=True)
class BlochVector:
    dim: int
    c: np.ndarray


@dataclass(frozen=True)
class StructureConstants:
    dim: int
    d: np.ndarray
    f: np.ndarray


def build_basis(D):
    """Build the generalized Gell-Mann generators for SU(D).

    >>> b = build_basis(2)
    >>> [lab for lab in b.labels]
    [('diag', 2), ('sym', 1, 2), ('antisym', 1, 2)]
    """
    D = check_dim(D)
    mats, labels = [], []
    for a in range(2, D + 1):
        g = np.zeros((D, D), dtype=complex)
        g[np.arange(a - 1), np.arange(a - 1)] = 1.0
        g[a - 1, a - 1] = -(a - 1)
        mats.append(g / np.sqrt(a * (a - 1)))
        labels.append(("diag", a))
    pairs = list(combinations(range(1, D + 1), 2))
    for a, b in pairs:
        g = np.zeros((D, D), dtype=complex)
        g[a - 1, b - 1] = g[b - 1, a - 1] = 1 / np.sqrt(2)
        mats.append(g)
        labels.append(("sym", a, b))
    for a, b in pairs:
        g = np.zeros((D, D), dtype=complex)
        g[a - 1, b - 1] = -1j / np.sqrt(2)
        g[b - 1, a - 1] = 1j / np.sqrt(2)
        mats.append(g)
        labels.append(("antisym", a, b))
    labels = tuple(labels)
    return GeneratorBasis(
        dim=D,
        generators=np.array(mats),
        lambda0=np.eye(D, dtype=complex) / np.sqrt(D),
        labels=labels,
        _lookup={lab: j for j, lab in enumerate(labels)},
    )


def structure_constants(basis):
    """Symmetric ``d`` and antisymmetric ``f`` tensors of the generator algebra.

    ``d[j,k,l] = tr({l_j, l_k} l_l) / 2`` and ``f[j,k,l] = tr([l_j, l_k] l_l) / 2i``,
    so that ``l_j l_k = delta_jk I / D + (d_jkl + i f_jkl) l_l``.
    """
    if basis.dim > MAX_STRUCTURE_DIM:
        raise ResourceCapError(f"dense structure constants are capped at D <= {MAX_STRUCTURE_DIM}")
    L = basis.generators
    # t[j,k,l] = tr(l_j l_k l_l)
    t = np.einsum("jab,kbc,lca->jkl", L, L, L)
    d = (t + t.transpose(1, 0, 2)) / 2
    f = (t - t.transpose(1, 0, 2)) / 2j
    return StructureConstants(basis.dim, d.real.copy(), f.real.copy())


def bloch_expand(rho, basis):
    """Coefficients ``c_j = D tr(rho lambda_j)`` of a qudit density operator."""
    D = basis.dim
    rho = check_density(rho, D)
    c = D * np.einsum("ab,jba->j", rho, basis.generators)
    return BlochVector(D, c.real.copy())


def bloch_reconstruct(c, basis):
    """``(I + sum_j c_j lambda_j) / D``; accepts a :class:`BlochVector` or a plain array."""
    D = basis.dim
    vec = np.asarray(c.c if isinstance(c, BlochVector) else c, dtype=float)
    if vec.shape != (D * D - 1,):
        raise DimensionMismatchError(f"Bloch vector for D={D} needs {D * D - 1} entries, got {vec.shape}")
    return (np.eye(D) + np.tensordot(vec, basis.generators, axes=1)) / D


def outer_from_generators(basis, a, b):
    """Rebuild ``|a><b|`` (1-based levels) as a combination of generators.

    The diagonal case uses the per-generator weight ``1/sqrt(k(k-1))`` on each
    ``Gamma_k`` with ``k > a``, and no ``Gamma_a`` term when ``a == 1``.
    """
    D = basis.dim
    if not (1 <= a <= D and 1 <= b <= D):
        raise DimensionMismatchError(f"levels must lie in 1..{D}")
    G = basis.generators
    if a == b:
        out = np.eye(D, dtype=complex) / D
        if a > 1:
            out = out - (a - 1) / np.sqrt(a * (a - 1)) * G[basis.index(("diag", a))]
        for k in range(a + 1, D + 1):
            out = out + G[basis.index(("diag", k))] / np.sqrt(k * (k - 1))
        return out
    lo, hi = min(a, b), max(a, b)
    plus = G[basis.index(("sym", lo, hi))]
    minus = G[basis.index(("antisym", lo, hi))]
    sign = 1j if a < b else -1j
    return (plus + sign * minus) / np.sqrt(2)
