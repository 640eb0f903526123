"""Block form of a square operator relative to R(T) ⊕ N(T*).

With ``W = [U V]`` unitary, ``U`` spanning R(T) and ``V`` spanning N(T*),

    W^* T W = [[A, B],
               [0, 0]]

and the projector onto R(T) ∩ R(T*) compresses to ``P`` in the ``U`` frame.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .numerics import (
    DEFAULT_TOL,
    adjoint,
    as_square,
    full_svd,
    rank_from_singular_values,
)
from .subspaces import Subspace, intersect


@dataclass(frozen=True, eq=False)
class BlockDecomposition:
    U: np.ndarray
    V: np.ndarray
    A: np.ndarray
    B: np.ndarray
    P: np.ndarray
    Delta: Optional[np.ndarray]
    singular_values: np.ndarray
    cap: Subspace

    @property
    def n(self):
        return self.U.shape[0]

    @property
    def rank(self):
        return self.U.shape[1]

    @property
    def frame(self):
        """The unitary ``[U V]``."""
        return np.hstack([self.U, self.V])

    def range_space(self):
        return Subspace(self.n, self.U)


def decompose(T, tol=DEFAULT_TOL):
    """Compute the block decomposition of ``T``.

    ``U`` is taken from the left singular vectors of ``T`` with nonzero
    singular values and ``V`` from the remaining ones, so only
    basis-independent quantities such as ``U A U^*`` are meaningful to compare.
    """
    T = as_square(T, "T")
    n = T.shape[0]
    W, S, Vr = full_svd(T)
    r = rank_from_singular_values(S, tol)
    U, V = W[:, :r], W[:, r:]
    A = adjoint(U) @ T @ U
    B = adjoint(U) @ T @ V
    if r == 0:
        return BlockDecomposition(
            U, V, A, B, np.zeros((0, 0), complex), None, S[:0].copy(),
            Subspace.trivial(n),
        )
    range_T = Subspace(n, U)
    range_Tadj = Subspace(n, Vr[:, :r])
    cap = intersect(range_T, range_Tadj, tol)
    Uc = adjoint(U) @ cap.basis
    P = Uc @ adjoint(Uc)
    # U holds left singular vectors, so U^*(AA^* + BB^*)U = U^* T T^* U = diag(s^2)
    Delta = np.diag(1.0 / S[:r] ** 2).astype(complex)
    return BlockDecomposition(U, V, A, B, P, Delta, S[:r].copy(), cap)


def intersection_projector(T, tol=DEFAULT_TOL):
    """n x n orthogonal projector onto R(T) ∩ R(T*)."""
    D = decompose(T, tol)
    if D.rank == 0:
        return np.zeros((D.n, D.n), dtype=complex)
    return D.U @ D.P @ adjoint(D.U)


def reconstruct(D):
    """Reassemble ``T`` from its blocks."""
    n, r = D.n, D.rank
    top = np.hstack([D.A, D.B])
    block = np.vstack([top, np.zeros((n - r, n), dtype=complex)])
    W = D.frame
    return W @ block @ adjoint(W)


def adjoint_blocks(D, T):
    """Blocks of ``T^*`` in the same frame: ``(V^*T^*U, V^*T^*V)``.

    Both should equal ``(B^*, 0)``.
    """
    Th = adjoint(np.asarray(T, dtype=complex))
    return adjoint(D.V) @ Th @ D.U, adjoint(D.V) @ Th @ D.V


def cap_subspace(T, tol=DEFAULT_TOL):
    """R(T) ∩ R(T*) as a :class:`Subspace`."""
    return decompose(T, tol).cap
