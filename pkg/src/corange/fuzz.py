"""Randomized invariant sweep over generated family members."""

from collections import Counter
from dataclasses import asdict, dataclass, field

import numpy as np

from .checks import run_all
from .generators import FAMILIES, make_rng, random_class_instance
from .numerics import DEFAULT_TOL, InputError


def instance_rng(seed, index):
    """Generator for instance ``index``; independent of evaluation order."""
    return make_rng(np.random.SeedSequence([seed, index]))


@dataclass
class Violation:
    index: int
    n: int
    check: str
    command: str
    detail: dict
    matrix: np.ndarray = field(repr=False)


@dataclass
class FuzzSummary:
    family: str
    count: int
    seed: int
    dim_min: int
    dim_max: int
    checks_run: dict
    cor_true: int
    cor_false: int
    violations: list

    @property
    def ok(self):
        return not self.violations

    def to_dict(self):
        out = asdict(self)
        out["violations"] = [
            {k: v for k, v in asdict(viol).items() if k != "matrix"} for viol in self.violations
        ]
        out["ok"] = self.ok
        return out


def run_fuzz(family, count, seed=0, dim_min=2, dim_max=12, tol=DEFAULT_TOL):
    if family not in FAMILIES:
        raise InputError(f"family: unknown {family!r}; expected one of {', '.join(FAMILIES)}")
    if count < 1:
        raise InputError(f"count: must be positive, got {count}")
    if not 2 <= dim_min <= dim_max:
        raise InputError(f"dim range: need 2 <= dim-min <= dim-max, got {dim_min}..{dim_max}")
    dims = list(range(dim_min, dim_max + 1))
    if family == "co-EP":
        dims = [d for d in dims if d % 2 == 0]
        if not dims:
            raise InputError("dim range: co-EP needs an even dimension")

    checks_run = Counter()
    cor = Counter()
    violations = []
    for index in range(count):
        rng = instance_rng(seed, index)
        n = int(rng.choice(dims))
        T = random_class_instance(family, n, rng, tol)
        report, results = run_all(T, tol)
        cor[bool(report.cor)] += 1
        for res in results:
            checks_run[res.name] += 1
            if not res.ok:
                violations.append(Violation(index, n, res.name, res.command, res.detail, T))
    return FuzzSummary(
        family, count, seed, dim_min, dim_max, dict(sorted(checks_run.items())),
        cor[True], cor[False], violations,
    )
