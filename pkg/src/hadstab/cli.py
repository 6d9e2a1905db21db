"""Command-line front end.

Subcommands: analyze, power, product, threshold, sweep, reproduce.  JSON goes
to stdout; sweep and reproduce write CSV/SVG artifacts into --out.  Exit
codes: 0 success, 1 theorem hypotheses unmet, 2 input error, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import report
from .criteria import (
    necessary_condition,
    satisfies_stability_condition,
)
from .errors import (
    InvalidInputError,
    NotApplicableError,
    NumericalError,
)
from .poly import (
    FractionalPolynomial,
    MonicPolynomial,
    RationalExponent,
    hadamard_power,
    hadamard_product,
    principal_power,
    szego_product,
    to_integer_order,
)
from .roots import branch_set_stable, find_roots, classify, fujiwara_bound
from .thresholds import auto_onset, pstar_exact, pstar_grid
from .criteria import theorem3_check


def _load_poly(path: str) -> tuple[MonicPolynomial, float | None]:
    """Read a polynomial file; fractional inputs are reduced to integer order.

    Returns (polynomial, alpha) with alpha the commensurate base when the
    file held a fractional polynomial, else None.
    """
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path}: malformed JSON ({exc})") from exc
    if isinstance(obj, dict) and "terms" in obj:
        alpha, poly = to_integer_order(FractionalPolynomial.from_json(obj))
        return poly, float(alpha)
    return MonicPolynomial.from_json(obj), None


def _emit(payload: dict) -> None:
    sys.stdout.write(report.dumps(payload))


def _verdict_payload(f: MonicPolynomial) -> tuple[dict, object]:
    rs = find_roots(f)
    status = classify(rs.max_modulus)
    payload = {
        "status": status.value,
        "stable": status.value == "Stable",
        "max_modulus": rs.max_modulus,
        "margin": rs.max_modulus - 1.0,
        "roots": [[z.real, z.imag] for z in rs.roots],
    }
    return payload, status


def cmd_analyze(args) -> int:
    f, alpha = _load_poly(args.poly)
    payload, _ = _verdict_payload(f)
    fuj = satisfies_stability_condition(f)
    nec = necessary_condition(f)
    criteria = [fuj.to_json(), nec.to_json()]
    if not args.witness:
        for entry in criteria:
            entry.pop("witness", None)
    bound = None
    if fuj.satisfied and fuj.witness is not None:
        bound = fujiwara_bound(f, fuj.witness)
    out = {
        "input": f.to_json(),
        "commensurate_base": alpha,
        **payload,
        "criteria": criteria,
        "fujiwara_bound": bound,
    }
    _emit(out)
    return 0


def cmd_power(args) -> int:
    f, _ = _load_poly(args.poly)
    p = RationalExponent.parse(args.p)
    branch_count = p.den ** len(f.support)
    principal = principal_power(f, p.value)
    principal_payload, _ = _verdict_payload(principal)
    out = {
        "exponent": str(p),
        "branch_count": branch_count,
        "principal": {"poly": principal.to_json(), **principal_payload},
    }
    if args.all_branches:
        bset = hadamard_power(f, p)
        combined = branch_set_stable(bset)
        members = []
        for idx, member in zip(bset.branch_index, bset.members):
            payload, _ = _verdict_payload(member)
            members.append({"branch": list(idx), **payload})
        out["combined"] = combined.to_json()
        out["branches"] = members
    _emit(out)
    return 0


def cmd_product(args) -> int:
    f, _ = _load_poly(args.f)
    g, _ = _load_poly(args.g)
    prod = szego_product(f, g) if args.szego else hadamard_product(f, g)
    payload, _ = _verdict_payload(prod)
    out = {
        "szego": bool(args.szego),
        "product": prod.to_json(),
        **payload,
        "stability_condition": satisfies_stability_condition(prod).to_json(),
    }
    if args.criterion:
        out["criterion"] = theorem3_check(f, g, args.criterion).to_json()
    _emit(out)
    return 0


def cmd_threshold(args) -> int:
    f, _ = _load_poly(args.poly)
    if args.method == "grid":
        result = pstar_grid(f, args.mode, args.grid_n)
    elif args.method == "exact":
        result = pstar_exact(f, args.mode, args.tol)
    else:
        result = auto_onset(f, args.mode, args.tol)
    _emit(result.to_json())
    return 0


def cmd_sweep(args) -> int:
    f, _ = _load_poly(args.poly)
    if args.step <= 0:
        raise InvalidInputError("--step must be positive")
    powers = []
    count = int((args.to - getattr(args, "from")) / args.step + 1e-9) + 1
    for i in range(max(0, count)):
        powers.append(getattr(args, "from") + i * args.step)
    records = report.sweep(f, powers)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "sweep.csv"
    csv_path.write_text(report.sweep_csv(records, f.degree))
    svg_path = None
    if records:
        svg_path = out_dir / "sweep.svg"
        svg_path.write_text(report.sweep_svg(records))
    _emit(
        {
            "records": len(records),
            "unstable_powers": [r.p for r in records if not r.stable],
            "csv": str(csv_path),
            "svg": None if svg_path is None else str(svg_path),
        }
    )
    return 0


def cmd_reproduce(args) -> int:
    out_dir = Path(args.out)
    payload = report.reproduce_example(args.example, out_dir)
    _emit({"out": str(out_dir), "comparison": payload["comparison"]})
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hadstab",
        description=(
            "Schur stability of coefficient-wise products and powers of "
            "complex monic polynomials"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="stability verdict and coefficient criteria")
    p.add_argument("--poly", required=True, help="polynomial JSON file")
    p.add_argument("--witness", action="store_true", help="include weight witnesses")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("power", help="rational coefficient-wise power")
    p.add_argument("--poly", required=True)
    p.add_argument("--p", required=True, help="exponent K/M (integer shorthand ok)")
    p.add_argument("--all-branches", action="store_true", dest="all_branches")
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("product", help="coefficient-wise product of two polynomials")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--szego", action="store_true", help="apply binomial weights")
    p.add_argument("--criterion", choices=["a", "b", "c"])
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("threshold", help="power thresholds")
    p.add_argument("--poly", required=True)
    p.add_argument("--mode", required=True, choices=["max", "min"])
    p.add_argument("--method", choices=["grid", "exact", "onset"], default="grid")
    p.add_argument("--grid-n", type=int, default=1000, dest="grid_n")
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("sweep", help="stability sweep over a power range")
    p.add_argument("--poly", required=True)
    p.add_argument("--from", type=float, required=True)
    p.add_argument("--to", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("reproduce", help="rerun a built-in experiment")
    p.add_argument("--example", type=int, required=True, choices=[1, 2])
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NotApplicableError as exc:
        print(f"not applicable: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
