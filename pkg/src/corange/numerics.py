"""Dense complex matrix kernels and the tolerance policy.

Every matrix handled by the package is a ``numpy.ndarray`` of dtype
``complex128``; real input is embedded with zero imaginary parts by
:func:`as_matrix`.
"""

from dataclasses import dataclass

import numpy as np


class InputError(ValueError):
    """Malformed matrix or argument supplied by the caller."""


class KernelError(RuntimeError):
    """A numerical kernel (SVD) failed to converge."""


@dataclass(frozen=True)
class ToleranceConfig:
    """Thresholds that realize exact equalities in floating point.

    Parameters
    ----------
    rank_rel_tol : float
        Singular values at or below ``rank_rel_tol * sigma_max`` count as zero.
    op_rel_tol : float
        Relative residual allowed in operator identities.
    angle_tol : float
        Slack on principal-angle cosines and projector distances.
    """

    rank_rel_tol: float = 1e-10
    op_rel_tol: float = 1e-9
    angle_tol: float = 1e-8

    def __post_init__(self):
        for name in ("rank_rel_tol", "op_rel_tol", "angle_tol"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and 0.0 < value < 1.0):
                raise InputError(f"{name} must lie in (0, 1), got {value!r}")

    def residual_scale(self, norm):
        """Absolute residual threshold for an identity on an operator of size ``norm``."""
        return self.op_rel_tol * max(1.0, norm)


DEFAULT_TOL = ToleranceConfig()


def as_matrix(M, name="matrix"):
    """Return ``M`` as a finite 2-D ``complex128`` array.

    Raises
    ------
    InputError
        If ``M`` is not two-dimensional or has a NaN/Inf entry.
    """
    try:
        arr = np.asarray(M, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name}: not a numeric array ({exc})") from None
    if arr.ndim != 2:
        raise InputError(f"{name}: expected a 2-D array, got ndim={arr.ndim}")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name}: entries must be finite")
    return arr


def as_square(M, name="matrix"):
    arr = as_matrix(M, name)
    if arr.shape[0] != arr.shape[1]:
        raise InputError(f"{name}: matrix not square (shape {arr.shape[0]}x{arr.shape[1]})")
    return arr


def adjoint(M):
    return np.conj(M).T


def svd(M):
    """Thin singular value decomposition ``M = U @ diag(S) @ V^*``.

    Returns
    -------
    U : (m, k) ndarray
    S : (k,) ndarray, non-increasing, ``k = min(m, n)``
    V : (n, k) ndarray
    """
    M = as_matrix(M)
    m, n = M.shape
    if m == 0 or n == 0:
        k = 0
        return (np.zeros((m, k), complex), np.zeros(k), np.zeros((n, k), complex))
    try:
        U, S, Vh = np.linalg.svd(M, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise KernelError(f"SVD did not converge for {m}x{n} matrix: {exc}") from None
    return U, S, adjoint(Vh)


def full_svd(M):
    """SVD with square unitary factors; ``U`` is (m, m), ``V`` is (n, n)."""
    M = as_matrix(M)
    m, n = M.shape
    if m == 0 or n == 0:
        return np.eye(m, dtype=complex), np.zeros(0), np.eye(n, dtype=complex)
    try:
        U, S, Vh = np.linalg.svd(M, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise KernelError(f"SVD did not converge for {m}x{n} matrix: {exc}") from None
    return U, S, adjoint(Vh)


def rank_from_singular_values(S, tol=DEFAULT_TOL, scale=None):
    """Count of ``S`` above ``rank_rel_tol * scale``; ``scale`` defaults to ``S[0]``.

    Pass the norm of the parent operator as ``scale`` when ``S`` belongs to
    a block or compression of it, so that pure roundoff is not counted.
    """
    if len(S) == 0:
        return 0
    ref = S[0] if scale is None else max(scale, S[0])
    if ref == 0.0:
        return 0
    return int(np.count_nonzero(S > tol.rank_rel_tol * ref))


def numerical_rank(M, tol=DEFAULT_TOL, scale=None):
    """Number of singular values above ``tol.rank_rel_tol * sigma_max``."""
    _, S, _ = svd(M)
    return rank_from_singular_values(S, tol, scale)


def truncate(M, tol=DEFAULT_TOL, scale=None):
    """``M`` with singular values at or below the rank cutoff set to zero."""
    M = as_matrix(M)
    U, S, V = svd(M)
    r = rank_from_singular_values(S, tol, scale)
    return (U[:, :r] * S[:r]) @ adjoint(V[:, :r])


def pinv(M, tol=DEFAULT_TOL, scale=None):
    """Moore-Penrose pseudoinverse via truncated SVD.

    Examples
    --------
    >>> import numpy as np
    >>> np.allclose(pinv(np.diag([2.0, 0.0])), np.diag([0.5, 0.0]))
    True
    """
    M = as_matrix(M)
    U, S, V = svd(M)
    r = rank_from_singular_values(S, tol, scale)
    if r == 0:
        return np.zeros((M.shape[1], M.shape[0]), dtype=complex)
    return (V[:, :r] / S[:r]) @ adjoint(U[:, :r])


def operator_norm(M):
    """Spectral norm (largest singular value); 0 for empty or zero matrices."""
    _, S, _ = svd(M)
    return float(S[0]) if len(S) else 0.0


def penrose_residuals(M, X):
    """The four Penrose residual norms of a candidate inverse ``X`` of ``M``."""
    MX = M @ X
    XM = X @ M
    return (
        operator_norm(M @ X @ M - M),
        operator_norm(X @ M @ X - X),
        operator_norm(adjoint(MX) - MX),
        operator_norm(adjoint(XM) - XM),
    )
