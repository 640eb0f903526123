"""Command-line interface.

Exit codes: 0 ok, 1 kernel failure, 2 input error, 3 operator not CoR,
4 invariant violation.
"""

import argparse
import json
import sys
from dataclasses import asdict

import numpy as np

from . import checks
from .classes import NotCoRError, classify, cor_structure
from .decomposition import decompose, reconstruct
from .fuzz import run_fuzz
from .generators import FAMILIES, GenerationError
from .matrix_io import digest, encode_matrix, read_matrix, write_matrix
from .numerics import InputError, KernelError, ToleranceConfig, operator_norm

EXIT_OK, EXIT_KERNEL, EXIT_INPUT, EXIT_NOT_COR, EXIT_VIOLATION = 0, 1, 2, 3, 4


def _tolerances(args):
    return ToleranceConfig(
        rank_rel_tol=args.tol_rank, op_rel_tol=args.tol_op, angle_tol=args.tol_angle
    )


def _header(args, T, tol):
    return {
        "input": str(args.input),
        "digest": digest(T),
        "tolerances": asdict(tol),
    }


def _flatten(obj, prefix=""):
    if isinstance(obj, dict) and "data" in obj and ("n" in obj or "rows" in obj):
        M = np.array([[complex(*z) for z in row] for row in obj["data"]])
        yield prefix, f"{M.shape[0]}x{M.shape[1]} matrix"
        for row in M:
            yield "", "  ".join(f"{z.real:+.6g}{z.imag:+.6g}j" for z in row)
        return
    if isinstance(obj, dict):
        for key, value in obj.items():
            yield from _flatten(value, f"{prefix}.{key}" if prefix else key)
    else:
        yield prefix, obj


def render(payload, fmt):
    if fmt == "json":
        return json.dumps(payload, indent=2)
    items = list(_flatten(payload))
    width = max((len(k) for k, _ in items), default=0)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in items)


def _emit(args, payload):
    text = render(payload, args.format)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_classify(args, tol):
    T = read_matrix(args.input)
    report = classify(T, tol)
    dual = checks.check_dual_route(T, tol)
    impl = checks.check_implications(T, tol, report)
    payload = _header(args, T, tol)
    payload.update(report.flags())
    payload["diagnostics"] = asdict(report.diagnostics)
    payload["dual_route_agreement"] = dual.ok
    payload["dual_route_disagreements"] = dual.detail["disagreements"]
    payload["implications_ok"] = impl.ok
    _emit(args, payload)
    return EXIT_OK if dual.ok and impl.ok else EXIT_VIOLATION


def cmd_decompose(args, tol):
    T = read_matrix(args.input)
    D = decompose(T, tol)
    recon = operator_norm(reconstruct(D) - T)
    recon_ok = recon <= tol.residual_scale(operator_norm(T))
    payload = _header(args, T, tol)
    payload.update({
        "rank": D.rank,
        "U": encode_matrix(D.U) if D.U.size else None,
        "V": encode_matrix(D.V) if D.V.size else None,
        "A": encode_matrix(D.A) if D.A.size else None,
        "B": encode_matrix(D.B) if D.B.size else None,
        "P": encode_matrix(D.P) if D.P.size else None,
        "Delta": encode_matrix(D.Delta) if D.Delta is not None else None,
        "reconstruction_residual": recon,
    })
    ok = recon_ok
    report = classify(T, tol)
    payload["cor"] = report.cor
    if report.cor:
        structure = cor_structure(T, tol)
        payload["cor_structure"] = asdict(structure)
        ok = ok and structure.all()
    _emit(args, payload)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_pinv_sum(args, tol):
    T = read_matrix(args.input)
    closed_form, X = checks.check_closed_form(T, tol)
    additivity = checks.check_range_additivity(T, tol)
    star = checks.check_star_order(T, tol)
    payload = _header(args, T, tol)
    payload["pinv"] = encode_matrix(X)
    payload["oracle_residual"] = closed_form.detail["residual"]
    payload["oracle_threshold"] = closed_form.detail["threshold"]
    payload["matches_oracle"] = closed_form.ok
    payload["range_additivity"] = additivity.ok
    payload["star_order"] = {**star.detail, "holds": star.ok}
    _emit(args, payload)
    return EXIT_OK if closed_form.ok and additivity.ok and star.ok else EXIT_VIOLATION


def cmd_quotient(args, tol):
    T = read_matrix(args.input)
    res, q = checks.check_quotient(T, tol)
    payload = _header(args, T, tol)
    payload["d"] = q.d
    payload["Pi"] = encode_matrix(q.Pi) if q.Pi.size else None
    payload["T1"] = encode_matrix(q.T1) if q.T1.size else None
    payload["commutation_residuals"] = res.detail["residuals"]
    payload["commutation_threshold"] = res.detail["threshold"]
    payload["report"] = classify(q.T1, tol).to_dict() if q.T1.size else None
    payload["dr"] = res.detail["dr"]
    _emit(args, payload)
    return EXIT_OK if res.ok else EXIT_VIOLATION


def cmd_fuzz(args, tol):
    summary = run_fuzz(
        args.family, args.count, seed=args.seed,
        dim_min=args.dim_min, dim_max=args.dim_max, tol=tol,
    )
    payload = summary.to_dict()
    payload["tolerances"] = asdict(tol)
    if summary.violations:
        first = summary.violations[0]
        write_matrix(
            args.out, first.matrix,
            violation={"check": first.check, "index": first.index, "detail": first.detail},
            command=first.command,
            family=args.family,
            seed=args.seed,
            tolerances=asdict(tol),
        )
        payload["reproducer"] = str(args.out)
    print(render(payload, args.format))
    return EXIT_OK if summary.ok else EXIT_VIOLATION


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-rank", type=float, default=1e-10, metavar="X",
                        help="relative singular-value cutoff (default 1e-10)")
    common.add_argument("--tol-op", type=float, default=1e-9, metavar="X",
                        help="relative residual for operator identities (default 1e-9)")
    common.add_argument("--tol-angle", type=float, default=1e-8, metavar="X",
                        help="principal-angle cosine slack (default 1e-8)")
    common.add_argument("--format", choices=("json", "text"), default="json")

    single = argparse.ArgumentParser(add_help=False, parents=[common])
    single.add_argument("--input", required=True, metavar="PATH",
                        help="MatrixFile JSON ({\"n\": .., \"data\": [[[re, im], ..], ..]}) or real CSV")
    single.add_argument("--out", metavar="PATH", help="write the output here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="corange",
        description="Classify square complex matrices by the geometry of R(T) and R(T*).",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[single], help="family flags and diagnostics")
    sub.add_parser("decompose", parents=[single], help="blocks A, B, P, Delta")
    sub.add_parser("pinv-sum", parents=[single], help="(T + T*)^+ from the block formula")
    sub.add_parser("quotient", parents=[single], help="compression to a DR operator")

    fz = sub.add_parser("fuzz", parents=[common], help="randomized invariant sweep")
    fz.add_argument("--family", choices=FAMILIES, default="CoR")
    fz.add_argument("--count", type=int, default=100, metavar="N")
    fz.add_argument("--seed", type=int, default=0, metavar="N")
    fz.add_argument("--dim-min", type=int, default=2, metavar="N")
    fz.add_argument("--dim-max", type=int, default=12, metavar="N")
    fz.add_argument("--out", default="fuzz-reproducer.json", metavar="PATH",
                    help="reproducer file written on the first violation")
    return parser


COMMANDS = {
    "classify": cmd_classify,
    "decompose": cmd_decompose,
    "pinv-sum": cmd_pinv_sum,
    "quotient": cmd_quotient,
    "fuzz": cmd_fuzz,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        tol = _tolerances(args)
        return COMMANDS[args.command](args, tol)
    except NotCoRError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.coincidence_residual is not None:
            print(f"coincidence_residual: {exc.coincidence_residual:.6e}", file=sys.stderr)
        return EXIT_NOT_COR
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (KernelError, GenerationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_KERNEL


if __name__ == "__main__":
    sys.exit(main())
