"""Closed forms available for CoR operators.

All functions reject non-CoR input with :class:`~corange.classes.NotCoRError`.
"""

from dataclasses import dataclass

import numpy as np

from .classes import classify, require_cor
from .decomposition import decompose
from .numerics import DEFAULT_TOL, adjoint, as_square, operator_norm, pinv, truncate
from .subspaces import (
    column_space,
    orthogonal_complement,
    projector,
    subspace_equals,
    subspace_sum,
)


def sum_pinv_blocks(D, tol=DEFAULT_TOL):
    """Assemble ``(T + T^*)^+`` in the ``[U V]`` frame.

    ::

        [[ A^* Δ P / 2,  (B^*)^+               ],
         [ B^+,         -B^+ (A + A^*) (B^*)^+ ]]
    """
    n, r = D.n, D.rank
    if r == 0:
        return np.zeros((n, n), dtype=complex)
    A, B = D.A, D.B
    Bp = pinv(B, tol, scale=D.singular_values[0]) if B.size else np.zeros((n - r, r), dtype=complex)
    Bhp = adjoint(Bp)
    top = np.hstack([0.5 * adjoint(A) @ D.Delta @ D.P, Bhp])
    bottom = np.hstack([Bp, -Bp @ (A + adjoint(A)) @ Bhp])
    return np.vstack([top, bottom])


def sum_pinv_cor(T, tol=DEFAULT_TOL):
    """Pseudoinverse of ``T + T^*`` for a CoR operator, from its blocks.

    The block matrix is conjugated back to the standard basis, so the result
    can be compared directly with ``pinv(T + T^*)``.
    """
    T = as_square(T, "T")
    require_cor(T, tol)
    D = decompose(T, tol)
    W = D.frame
    return W @ sum_pinv_blocks(D, tol) @ adjoint(W)


def range_additivity(T, tol=DEFAULT_TOL):
    """Whether R(T + T^*) equals R(T) + R(T^*)."""
    T = as_square(T, "T")
    require_cor(T, tol)
    lhs = column_space(T + adjoint(T), tol)
    rhs = subspace_sum(column_space(T, tol), column_space(adjoint(T), tol), tol)
    return subspace_equals(lhs, rhs, tol)


@dataclass
class StarOrderQuantities:
    ptp: np.ndarray
    t_pinv_t: np.ndarray
    twice_cross: np.ndarray
    twice_cross_adj: np.ndarray
    residuals: tuple
    threshold: float

    @property
    def identities_hold(self):
        return all(res <= self.threshold for res in self.residuals)


def star_order_quantities(T, tol=DEFAULT_TOL, threshold=None):
    """Products of ``T``, ``T^*`` and ``(T + T^*)^+`` tied to the cap projector.

    Returns ``P T P``, ``T S T`` and ``2 T S T^*`` (``S = (T + T^*)^+``,
    ``P`` the projector onto R(T) ∩ R(T^*)) with residuals of

    * ``T S T = T - P T P / 2``
    * ``2 T S T^* = P T P``
    * ``2 T^* S T = P T P``

    ``threshold`` defaults to ``op_rel_tol * max(1, ||T||)``.
    """
    T = as_square(T, "T")
    require_cor(T, tol)
    Th = adjoint(T)
    D = decompose(T, tol)
    Pc = projector(D.cap)
    S = pinv(T + Th, tol)
    ptp = Pc @ T @ Pc
    t_pinv_t = T @ S @ T
    twice_cross = 2.0 * T @ S @ Th
    twice_cross_adj = 2.0 * Th @ S @ T
    residuals = (
        operator_norm(t_pinv_t - (T - 0.5 * ptp)),
        operator_norm(twice_cross - ptp),
        operator_norm(twice_cross_adj - ptp),
    )
    if threshold is None:
        threshold = tol.residual_scale(operator_norm(T))
    return StarOrderQuantities(
        ptp, t_pinv_t, twice_cross, twice_cross_adj, residuals, threshold
    )


@dataclass
class QuotientResult:
    """Compression of a CoR operator along R(T) ∩ R(T^*).

    ``Pi`` is a coisometry ((n-d) x n) with kernel the intersection and
    ``T1 = Pi T Pi^*`` is a DR operator.
    """

    Pi: np.ndarray
    T1: np.ndarray
    d: int

    def commutation_residuals(self, T):
        T = np.asarray(T, dtype=complex)
        return (
            operator_norm(self.Pi @ T - self.T1 @ self.Pi),
            operator_norm(self.Pi @ adjoint(T) - adjoint(self.T1) @ self.Pi),
        )


def quotient(T, tol=DEFAULT_TOL):
    T = as_square(T, "T")
    require_cor(T, tol)
    D = decompose(T, tol)
    Pi = adjoint(orthogonal_complement(D.cap).basis)
    # roundoff-level singular values of the compression are not part of T1
    T1 = truncate(Pi @ T @ adjoint(Pi), tol, scale=operator_norm(T))
    return QuotientResult(Pi, T1, D.cap.dim)


def quotient_is_dr(result, tol=DEFAULT_TOL):
    if result.T1.shape[0] == 0:
        return True
    return classify(result.T1, tol).dr
