"""Membership of a square matrix in the range-geometry operator families.

Two routes are provided: :func:`classify` works from the subspace
definitions, :func:`classify_via_blocks` from the blocks ``A``, ``B`` and
``P`` of :func:`~corange.decomposition.decompose`.
"""

from dataclasses import asdict, dataclass, field
from typing import Optional

from .decomposition import decompose
from .numerics import (
    DEFAULT_TOL,
    InputError,
    adjoint,
    as_square,
    numerical_rank,
    operator_norm,
)
from .subspaces import (
    Subspace,
    column_space,
    intersect,
    null_space,
    ominus,
    projector,
    subspace_equals,
    subspace_sum,
)

BORDERLINE_FACTOR = 10.0


class NotCoRError(InputError):
    """An operation defined only for CoR operators received another matrix."""

    def __init__(self, message, coincidence_residual=None):
        super().__init__(message)
        self.coincidence_residual = coincidence_residual


@dataclass
class Diagnostics:
    n: int
    dim_range: int
    dim_range_adj: int
    dim_cap: int
    dim_sum: int
    coincidence_residual: float
    coincidence_threshold: float
    commutator_residual: Optional[float] = None
    commutator_threshold: Optional[float] = None
    rank_B: Optional[int] = None
    borderline: list = field(default_factory=list)


@dataclass
class ClassificationReport:
    """Family flags plus the quantities they were decided from.

    Flags not computed by a route are ``None``.
    """

    ep: Optional[bool]
    dr: Optional[bool]
    sr: Optional[bool]
    co_ep: Optional[bool]
    weak_ep: Optional[bool]
    cor: Optional[bool]
    group_invertible: Optional[bool]
    diagnostics: Diagnostics

    FLAGS = ("ep", "dr", "sr", "co_ep", "weak_ep", "cor", "group_invertible")

    def flags(self):
        return {name: getattr(self, name) for name in self.FLAGS}

    def to_dict(self):
        out = self.flags()
        out["diagnostics"] = asdict(self.diagnostics)
        return out


def _borderline(name, residual, threshold):
    if threshold / BORDERLINE_FACTOR < residual <= threshold * BORDERLINE_FACTOR:
        return [name]
    return []


def classify(T, tol=DEFAULT_TOL):
    """Classify ``T`` directly from the definitions of each family.

    Parameters
    ----------
    T : (n, n) array_like
    tol : ToleranceConfig

    Returns
    -------
    ClassificationReport
    """
    T = as_square(T, "T")
    n = T.shape[0]
    Th = adjoint(T)
    rng = column_space(T, tol)
    rng_adj = column_space(Th, tol)
    cap = intersect(rng, rng_adj, tol)
    total = subspace_sum(rng, rng_adj, tol)

    P_rng, P_adj, P_cap = projector(rng), projector(rng_adj), projector(cap)
    commutator = operator_norm(P_rng @ P_adj - P_adj @ P_rng)
    coincidence = operator_norm((T - Th) @ P_cap)
    cor_threshold = tol.residual_scale(operator_norm(T))

    ker = null_space(T, tol)
    group_invertible = (
        intersect(rng, ker, tol).dim == 0 and rng.dim + ker.dim == n
    )

    dr = cap.dim == 0
    sr = total.dim == n
    diagnostics = Diagnostics(
        n=n,
        dim_range=rng.dim,
        dim_range_adj=rng_adj.dim,
        dim_cap=cap.dim,
        dim_sum=total.dim,
        coincidence_residual=coincidence,
        coincidence_threshold=cor_threshold,
        commutator_residual=commutator,
        commutator_threshold=tol.op_rel_tol,
        borderline=_borderline("cor", coincidence, cor_threshold)
        + _borderline("weak_ep", commutator, tol.op_rel_tol),
    )
    return ClassificationReport(
        ep=subspace_equals(rng, rng_adj, tol),
        dr=dr,
        sr=sr,
        co_ep=dr and sr,
        weak_ep=commutator <= tol.op_rel_tol,
        cor=coincidence <= cor_threshold,
        group_invertible=group_invertible,
        diagnostics=diagnostics,
    )


def classify_via_blocks(T, tol=DEFAULT_TOL):
    """Decide DR, SR, co-EP and CoR from the blocks of the decomposition.

    DR iff rank(B) = r, SR iff rank(B) = n - r, co-EP iff B is square and
    invertible, CoR iff ``(A - A^*) P = 0`` and ``B^* P = 0``.
    """
    T = as_square(T, "T")
    n = T.shape[0]
    D = decompose(T, tol)
    r = D.rank
    norm_T = operator_norm(T)
    rank_B = numerical_rank(D.B, tol, scale=norm_T) if D.B.size else 0
    threshold = tol.residual_scale(norm_T)
    if r:
        residual = max(
            operator_norm((D.A - adjoint(D.A)) @ D.P),
            operator_norm(adjoint(D.B) @ D.P) if D.B.size else 0.0,
        )
    else:
        residual = 0.0
    diagnostics = Diagnostics(
        n=n,
        dim_range=r,
        dim_range_adj=r,
        dim_cap=D.cap.dim,
        dim_sum=r + rank_B,
        coincidence_residual=residual,
        coincidence_threshold=threshold,
        rank_B=rank_B,
        borderline=_borderline("cor", residual, threshold),
    )
    return ClassificationReport(
        ep=None,
        dr=rank_B == r,
        sr=rank_B == n - r,
        co_ep=r == n - r == rank_B,
        weak_ep=None,
        cor=residual <= threshold,
        group_invertible=None,
        diagnostics=diagnostics,
    )


def require_cor(T, tol=DEFAULT_TOL):
    """Raise :class:`NotCoRError` unless ``T`` classifies CoR; return the report."""
    report = classify(T, tol)
    if not report.cor:
        res = report.diagnostics.coincidence_residual
        raise NotCoRError(
            f"operator is not CoR: coincidence residual {res:.3e} exceeds "
            f"{report.diagnostics.coincidence_threshold:.3e}",
            coincidence_residual=res,
        )
    return report


@dataclass
class CorStructure:
    maps_intersection_onto: bool
    maps_ominus_onto: bool
    nullB_equals_intersection: bool
    PDeltaP_equals_DeltaP: bool

    def all(self):
        return all(asdict(self).values())


def cor_structure(T, tol=DEFAULT_TOL):
    """Check the structural consequences of CoR membership.

    * T maps R(T) ∩ R(T*) onto itself;
    * T maps R(T*) ⊖ cap onto R(T) ⊖ cap;
    * N(B^*) equals the range of ``P`` in the ``U`` frame;
    * ``P Δ P = Δ P``.

    Raises
    ------
    NotCoRError
        If ``T`` is not CoR.
    """
    T = as_square(T, "T")
    require_cor(T, tol)
    D = decompose(T, tol)
    cap = D.cap
    rng = Subspace(D.n, D.U)
    rng_adj = column_space(adjoint(T), tol)
    norm_T = operator_norm(T)

    image_cap = column_space(T @ cap.basis, tol, scale=norm_T)
    onto_cap = subspace_equals(image_cap, cap, tol)
    om_adj = ominus(rng_adj, cap, tol)
    image_om = column_space(T @ om_adj.basis, tol, scale=norm_T)
    onto_om = subspace_equals(image_om, ominus(rng, cap, tol), tol)

    null_Bh = null_space(adjoint(D.B), tol, scale=norm_T)
    nullB_ok = subspace_equals(null_Bh, column_space(D.P, tol), tol)

    if D.rank:
        Delta, P = D.Delta, D.P
        pdp = operator_norm(P @ Delta @ P - Delta @ P)
        pdp_ok = pdp <= tol.residual_scale(operator_norm(Delta))
    else:
        pdp_ok = True
    return CorStructure(onto_cap, onto_om, nullB_ok, pdp_ok)


def implication_violations(report):
    """Names of implications between the flags of ``report`` that fail."""
    bad = []
    if report.co_ep and not (report.dr and report.sr):
        bad.append("co_ep => dr and sr")
    if report.ep is not None and report.ep and not report.weak_ep:
        bad.append("ep => weak_ep")
    if report.dr and not report.cor:
        bad.append("dr => cor")
    return bad


DUAL_ROUTE_FLAGS = ("dr", "sr", "co_ep", "cor")


def dual_route_disagreements(T, tol=DEFAULT_TOL):
    """Flags on which the definition and block routes disagree."""
    a, b = classify(T, tol), classify_via_blocks(T, tol)
    return [f for f in DUAL_ROUTE_FLAGS if getattr(a, f) != getattr(b, f)]

