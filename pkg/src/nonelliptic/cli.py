"""Command-line frontend.

Exit protocol (the methods are sound but not complete, so "could not decide"
is a first-class outcome):

    0   everything requested was proved / expectations met
    2   at least one requested verdict is Inconclusive
    1   error (bad input, inert prime, bad-reduction prime, schema violation)
"""

from __future__ import annotations

import argparse
import sys

from . import certify, data_io, ecoracle
from .arith import is_prime, primes_in_range
from .quadfield import NotSplitError, RamifiedError, embedding_choices
from .repmodel import BadReductionError, InsufficientDataError

EXIT_PROVED = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nonelliptic",
        description=(
            "Certificates that a mod-ell representation given by newform "
            "eigenvalue data is irreducible and not the ell-torsion of any "
            "elliptic curve over Q."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser(
        "verify-paper",
        help="run the bundled end-to-end verification against the expectations table",
    )
    p_verify.add_argument("--ell-max", type=int, default=1000,
                          help="upper bound of the per-ell sample (default 1000)")
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    p_verify.add_argument("--workers", type=int, default=1)

    p_certify = sub.add_parser(
        "certify", help="certify irreducibility + non-ellipticity for user data"
    )
    p_certify.add_argument("-i", "--input", required=True, help="FormRecord JSON file")
    p_certify.add_argument("--ell", type=int, help="single ell to certify")
    p_certify.add_argument("--ell-min", type=int, help="lower bound of an ell range")
    p_certify.add_argument("--ell-max", type=int, help="upper bound of an ell range")
    p_certify.add_argument("--witness-prime", type=int,
                           help="use only this witness prime for the tests")
    p_certify.add_argument("--root", type=int,
                           help="embedding root override (quadratic fields; default: both roots)")
    p_certify.add_argument("--format", choices=("text", "json"), default="text")
    p_certify.add_argument("--workers", type=int, default=1)

    p_scan = sub.add_parser(
        "scan", help="closed-form scan: 2^(ell-3) in {1,4,9} mod ell over a prime range"
    )
    p_scan.add_argument("ell_min", type=int)
    p_scan.add_argument("ell_max", type=int)
    p_scan.add_argument("--format", choices=("text", "json"), default="text")

    p_oracle = sub.add_parser(
        "oracle", help="exhaustive Frobenius trace set over all curves over F_p"
    )
    p_oracle.add_argument("p", type=int)
    p_oracle.add_argument("--cap", type=int, default=None,
                          help="coefficient bound (default: the whole field)")
    p_oracle.add_argument("--workers", type=int, default=1)
    p_oracle.add_argument("--format", choices=("text", "json"), default="text")

    p_falsify = sub.add_parser(
        "falsify", help="pit a concrete curve over Q against a certified representation"
    )
    p_falsify.add_argument("--curve", required=True,
                           help="integer coefficients a1,a2,a3,a4,a6")
    p_falsify.add_argument("-i", "--input", required=True, help="FormRecord JSON file")
    p_falsify.add_argument("--ell", type=int, required=True)
    p_falsify.add_argument("--root", type=int, help="embedding root override")
    p_falsify.add_argument("--format", choices=("text", "json"), default="text")

    return parser


def _check_workers(args) -> None:
    if getattr(args, "workers", 1) < 1:
        raise ValueError("--workers must be >= 1")


def _requested_ells(args) -> list[int]:
    if args.ell is not None:
        ells = [args.ell]
    elif args.ell_min is not None and args.ell_max is not None:
        ells = primes_in_range(args.ell_min, args.ell_max)
        if not ells:
            raise ValueError(f"no primes in [{args.ell_min}, {args.ell_max}]")
    else:
        raise ValueError("give either --ell or both --ell-min and --ell-max")
    for ell in ells:
        if ell <= 5 or not is_prime(ell):
            raise ValueError(f"ell={ell} must be a prime > 5")
    return ells


def _cmd_verify_paper(args) -> int:
    _check_workers(args)
    report = certify.full_paper_verification(ell_max=args.ell_max, workers=args.workers)
    sys.stdout.write(data_io.dump_report(report, args.format))
    return EXIT_PROVED if report.passed else EXIT_ERROR


def _cmd_certify(args) -> int:
    _check_workers(args)
    form = data_io.load_form(args.input)
    ells = _requested_ells(args)
    report = certify.certify_form(
        form,
        ells,
        root=args.root,
        witness_prime=args.witness_prime,
        workers=args.workers,
    )
    sys.stdout.write(data_io.dump_report(report, args.format))
    return EXIT_PROVED if report.all_proved else EXIT_INCONCLUSIVE


def _cmd_scan(args) -> int:
    report = certify.closed_form_scan(args.ell_min, args.ell_max)
    sys.stdout.write(data_io.dump_report(report, args.format))
    ok = set(report.holds) <= {7} and report.fermat_ok
    return EXIT_PROVED if ok else EXIT_ERROR


def _cmd_oracle(args) -> int:
    _check_workers(args)
    traces = ecoracle.trace_set(args.p, cap=args.cap, workers=args.workers)
    if args.format == "json":
        payload = {"p": args.p, "cap": args.cap or args.p, "traces": sorted(traces)}
        sys.stdout.write(data_io.canonical_json(payload))
    else:
        listing = ", ".join(str(t) for t in sorted(traces))
        sys.stdout.write(
            f"trace set over F_{args.p} (all nonsingular Weierstrass curves): "
            f"{{{listing}}}\n"
        )
    return EXIT_PROVED


def _cmd_falsify(args) -> int:
    try:
        coeffs = [int(c) for c in args.curve.split(",")]
    except ValueError:
        raise ValueError("--curve must be five comma-separated integers a1,a2,a3,a4,a6")
    if len(coeffs) != 5:
        raise ValueError("--curve must be five comma-separated integers a1,a2,a3,a4,a6")
    curve = ecoracle.CurveQ(*coeffs)

    form = data_io.load_form(args.input)
    ell = args.ell
    if ell <= 5 or not is_prime(ell):
        raise ValueError(f"ell={ell} must be a prime > 5")
    embedding = None
    if form.d is not None and args.root is not None:
        matches = [e for e in embedding_choices(form.d, ell) if e.root == args.root]
        if not matches:
            raise ValueError(f"--root {args.root} is not a square root of {form.d} mod {ell}")
        embedding = matches[0]
    from .repmodel import residual_rep, twist_to_det_chi

    rep = residual_rep(form, ell, embedding)
    twisted = twist_to_det_chi(rep)
    result = ecoracle.falsify_curve(curve, twisted)
    if args.format == "json":
        payload = {
            "curve": coeffs,
            "ell": ell,
            "compared": list(result.compared),
            "witness": (
                None
                if result.witness is None
                else {
                    "p": result.witness.p,
                    "curve_trace": result.witness.curve_trace,
                    "rep_trace": result.witness.rep_trace,
                }
            ),
        }
        sys.stdout.write(data_io.canonical_json(payload))
    else:
        sys.stdout.write(result.describe() + "\n")
    return EXIT_PROVED if result.found else EXIT_INCONCLUSIVE


_COMMANDS = {
    "verify-paper": _cmd_verify_paper,
    "certify": _cmd_certify,
    "scan": _cmd_scan,
    "oracle": _cmd_oracle,
    "falsify": _cmd_falsify,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except data_io.SchemaError as exc:
        print(f"error: invalid form record: {exc}", file=sys.stderr)
    except NotSplitError as exc:
        print(f"error: inert prime: {exc}", file=sys.stderr)
    except RamifiedError as exc:
        print(f"error: ramified prime: {exc}", file=sys.stderr)
    except BadReductionError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except InsufficientDataError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
