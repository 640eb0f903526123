"""Per-matrix invariant checks shared by the CLI commands and the fuzzer.

Each check returns a :class:`CheckResult`; ``command`` names the CLI
subcommand that re-runs the same check on a single matrix file.
"""

from dataclasses import dataclass, field

import numpy as np

from .classes import classify, cor_structure, dual_route_disagreements, implication_violations
from .formulas import quotient, quotient_is_dr, range_additivity, star_order_quantities, sum_pinv_cor
from .numerics import DEFAULT_TOL, adjoint, operator_norm, pinv

# pseudoinverse-level identities are checked against this relative bound
ORACLE_REL_TOL = 1e-8

COMMAND_FOR_CHECK = {
    "dual_route": "classify",
    "implications": "classify",
    "closed_form_oracle": "pinv-sum",
    "range_additivity": "pinv-sum",
    "star_order": "pinv-sum",
    "cor_structure": "decompose",
    "quotient": "quotient",
}


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)

    @property
    def command(self):
        return COMMAND_FOR_CHECK[self.name]


def check_dual_route(T, tol=DEFAULT_TOL):
    bad = dual_route_disagreements(T, tol)
    return CheckResult("dual_route", not bad, {"disagreements": bad})


def check_implications(T, tol=DEFAULT_TOL, report=None):
    bad = implication_violations(report or classify(T, tol))
    return CheckResult("implications", not bad, {"violated": bad})


def check_closed_form(T, tol=DEFAULT_TOL):
    S = T + adjoint(T)
    X = sum_pinv_cor(T, tol)
    residual = operator_norm(X - pinv(S, tol))
    threshold = ORACLE_REL_TOL * max(1.0, operator_norm(S))
    return CheckResult(
        "closed_form_oracle", residual <= threshold, {"residual": residual, "threshold": threshold}
    ), X


def check_range_additivity(T, tol=DEFAULT_TOL):
    return CheckResult("range_additivity", bool(range_additivity(T, tol)))


def check_star_order(T, tol=DEFAULT_TOL):
    threshold = ORACLE_REL_TOL * max(1.0, operator_norm(T))
    q = star_order_quantities(T, tol, threshold=threshold)
    return CheckResult(
        "star_order",
        q.identities_hold,
        {"residuals": list(q.residuals), "threshold": threshold},
    )


def check_cor_structure(T, tol=DEFAULT_TOL):
    s = cor_structure(T, tol)
    return CheckResult("cor_structure", s.all(), dict(vars(s)))


def check_quotient(T, tol=DEFAULT_TOL):
    q = quotient(T, tol)
    residuals = q.commutation_residuals(T)
    threshold = tol.residual_scale(operator_norm(T))
    dr = quotient_is_dr(q, tol)
    ok = max(residuals) <= threshold and dr
    return CheckResult(
        "quotient",
        ok,
        {"d": q.d, "residuals": list(residuals), "threshold": threshold, "dr": dr},
    ), q


def run_all(T, tol=DEFAULT_TOL):
    """Every applicable check; the CoR-only ones run when ``T`` classifies CoR."""
    T = np.asarray(T, dtype=complex)
    report = classify(T, tol)
    results = [check_dual_route(T, tol), check_implications(T, tol, report)]
    if report.cor:
        results.append(check_closed_form(T, tol)[0])
        results.append(check_range_additivity(T, tol))
        results.append(check_star_order(T, tol))
        results.append(check_cor_structure(T, tol))
        results.append(check_quotient(T, tol)[0])
    return report, results
