"""Subspaces of C^n stored by orthonormal bases.

The trivial subspace is an ordinary value with a zero-column basis.
"""

from dataclasses import dataclass

import numpy as np

from .numerics import (
    DEFAULT_TOL,
    InputError,
    adjoint,
    as_matrix,
    full_svd,
    operator_norm,
    rank_from_singular_values,
    svd,
)


@dataclass(frozen=True, eq=False)
class Subspace:
    """Linear subspace of ``C^ambient_dim`` with orthonormal ``basis`` columns."""

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        basis = np.asarray(self.basis, dtype=complex)
        if basis.ndim != 2 or basis.shape[0] != self.ambient_dim:
            raise InputError(
                f"basis shape {basis.shape} incompatible with ambient dimension {self.ambient_dim}"
            )
        basis.setflags(write=False)
        object.__setattr__(self, "basis", basis)

    @property
    def dim(self):
        return self.basis.shape[1]

    @classmethod
    def trivial(cls, n):
        return cls(n, np.zeros((n, 0), dtype=complex))

    @classmethod
    def full(cls, n):
        return cls(n, np.eye(n, dtype=complex))

    @classmethod
    def span(cls, vectors, tol=DEFAULT_TOL):
        """Subspace spanned by the columns of ``vectors`` (need not be independent)."""
        return column_space(vectors, tol)

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"


def _check_ambient(S1, S2):
    if S1.ambient_dim != S2.ambient_dim:
        raise InputError(
            f"ambient dimension mismatch: {S1.ambient_dim} vs {S2.ambient_dim}"
        )


def column_space(M, tol=DEFAULT_TOL, scale=None):
    """Orthonormal basis of R(M) from the leading left singular vectors.

    ``scale`` overrides sigma_max as the reference for the rank cutoff.
    """
    M = as_matrix(M)
    U, S, _ = svd(M)
    r = rank_from_singular_values(S, tol, scale)
    return Subspace(M.shape[0], U[:, :r])


def null_space(M, tol=DEFAULT_TOL, scale=None):
    """Orthonormal basis of N(M), dimension ``cols - numerical_rank(M)``."""
    M = as_matrix(M)
    _, S, V = full_svd(M)
    r = rank_from_singular_values(S, tol, scale)
    return Subspace(M.shape[1], V[:, r:])


def orthogonal_complement(S):
    if S.dim == 0:
        return Subspace.full(S.ambient_dim)
    U, _, _ = full_svd(S.basis)
    return Subspace(S.ambient_dim, U[:, S.dim:])


def projector(S):
    """Orthogonal projector ``basis @ basis^*`` onto ``S``."""
    return S.basis @ adjoint(S.basis)


def principal_cosines(S1, S2):
    """Cosines of the principal angles between ``S1`` and ``S2``, non-increasing."""
    _check_ambient(S1, S2)
    if S1.dim == 0 or S2.dim == 0:
        return np.zeros(0)
    _, cos, _ = svd(adjoint(S1.basis) @ S2.basis)
    return np.clip(cos, 0.0, 1.0)


def intersect(S1, S2, tol=DEFAULT_TOL):
    """Intersection via principal angles.

    Directions whose principal-angle cosine is at least ``1 - angle_tol``
    are kept and mapped back through the basis of ``S1``.
    """
    _check_ambient(S1, S2)
    n = S1.ambient_dim
    if S1.dim == 0 or S2.dim == 0:
        return Subspace.trivial(n)
    Y, cos, _ = svd(adjoint(S1.basis) @ S2.basis)
    k = int(np.count_nonzero(cos >= 1.0 - tol.angle_tol))
    if k == 0:
        return Subspace.trivial(n)
    # re-orthonormalize; S1.basis @ Y is orthonormal up to roundoff only
    Q, _ = np.linalg.qr(S1.basis @ Y[:, :k])
    return Subspace(n, Q)


def subspace_sum(S1, S2, tol=DEFAULT_TOL):
    """S1 + S2 as the column space of the stacked bases."""
    _check_ambient(S1, S2)
    return column_space(np.hstack([S1.basis, S2.basis]), tol)


def ominus(S1, S2, tol=DEFAULT_TOL):
    """S1 ⊖ S2, i.e. S1 intersected with the orthogonal complement of S2."""
    _check_ambient(S1, S2)
    return intersect(S1, orthogonal_complement(S2), tol)


def subspace_equals(S1, S2, tol=DEFAULT_TOL):
    _check_ambient(S1, S2)
    if S1.dim != S2.dim:
        return False
    return operator_norm(projector(S1) - projector(S2)) <= tol.angle_tol


def subspace_contains(S1, S2, tol=DEFAULT_TOL):
    """True when ``S2`` is a subspace of ``S1``."""
    _check_ambient(S1, S2)
    if S2.dim == 0:
        return True
    residual = S2.basis - S1.basis @ (adjoint(S1.basis) @ S2.basis)
    return operator_norm(residual) <= tol.angle_tol


def distance_to(S, x):
    """Euclidean distance from vector ``x`` to ``S``."""
    x = np.asarray(x, dtype=complex)
    return float(np.linalg.norm(x - S.basis @ (adjoint(S.basis) @ x)))
