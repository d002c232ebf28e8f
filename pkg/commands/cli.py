"""
Command-line dispatcher for dtors.

    dtors order        torsion order of one point
    dtors sweep        exceptional-lambda counts over generators tau
    dtors certificate  specialization certificate for a polynomial system
    dtors lemma-audit  quantitative laws of the generic construction

Exit codes: 0 success, 1 usage or parse error, 2 math-domain error,
3 failed verification, cross-check or audit.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from commands.certificate_command import build_system, run_certificate
from commands.lemma_audit_command import DEFAULT_POINTS, run_lemma_audit
from commands.order_command import run_order
from commands.output import emit, to_json, write_audit, write_sweep
from commands.sweep_command import run_sweep
from config.settings import RuntimeSettings, load_settings
from deps.dependencies import AlgebraDependencies
from models.models import SweepConfig
from tools.errors import AlgebraError, ParseError
from tools.parsing import parse_range

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MATH = 2
EXIT_CHECK_FAILED = 3


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--p", type=int, default=2, help="characteristic")
    parser.add_argument("--e", type=int, default=1, help="degree of F_q over F_p")
    parser.add_argument("--r", default="2", help="rank (a range for lemma-audit)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--out", default=None, help="output path (default: stdout)")
    parser.add_argument("--threads", type=int, default=None)
    parser.add_argument("--cap", type=int, default=None, help="size cap on the z-degree of g~")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dtors", description="Torsion orders of Drinfeld modules over finite fields")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    order = sub.add_parser("order", help="torsion order of a point")
    _add_common(order)
    order.add_argument("--ell", type=int, required=True, help="degree of the field over F_q")
    order.add_argument("--tau", required=True, help="coordinates of tau, e.g. [0,1]")
    order.add_argument("--lambda", dest="lam", required=True, help="coordinates of lambda")
    order.add_argument("--point", required=True, help="coordinates of the point")

    sweep = sub.add_parser("sweep", help="sweep lambda over generators tau")
    _add_common(sweep)
    sweep.add_argument("--a", required=True, help="first point, e.g. 1 or t/(t+1)")
    sweep.add_argument("--b", required=True, help="second point")
    sweep.add_argument("--ell", required=True, help="field degrees of tau, e.g. 2-8")
    sweep.add_argument("--M", dest="m", default="1", help="order-degree thresholds, e.g. 1-2")
    sweep.add_argument("--lambda-deg", type=int, default=None, help="degree of the lambda field")
    sweep.add_argument("--tau", default="all", help="all or sample:k")
    sweep.add_argument("--timing", action="store_true")
    sweep.add_argument("--cross-check", action="store_true")

    cert = sub.add_parser("certificate", help="specialization certificate")
    _add_common(cert)
    source = cert.add_mutually_exclusive_group(required=True)
    source.add_argument("--system", help="polynomials separated by ';' or a JSON list")
    source.add_argument("--input", help="file holding the system")
    source.add_argument("--from-drinfeld", action="store_true", help="use (g~_a,M, g~_b,M)")
    cert.add_argument("--a", default=None)
    cert.add_argument("--b", default=None)
    cert.add_argument("--M", dest="m", type=int, default=1)
    cert.add_argument("--verify", "--ell-max", dest="verify", type=int, nargs="?", const=0, default=None,
                      help="scan every tau in F_{q^ell}, ell <= L (default from DTORS_ELL_MAX)")
    cert.add_argument("--paper-strict", action="store_true")
    cert.add_argument("--check-identity", action="store_true")

    audit = sub.add_parser("lemma-audit", help="check degree and height laws")
    _add_common(audit)
    audit.add_argument("--a", action="append", default=None, help="point to audit (repeatable)")
    audit.add_argument("--n-max", type=int, default=2)
    audit.add_argument("--M", dest="m", default="1-2")
    return parser


def _dependencies(settings: RuntimeSettings, args) -> AlgebraDependencies:
    return AlgebraDependencies(
        settings=settings,
        seed=args.seed,
        run_context={"command": args.command, "out": args.out},
        threads=args.threads,
    )


def _cmd_order(deps: AlgebraDependencies, args) -> int:
    result = run_order(deps, args.p, args.e, int(args.r), args.ell, args.tau, args.lam, args.point)
    emit(to_json(result), args.out)
    return EXIT_OK


def _cmd_sweep(deps: AlgebraDependencies, args) -> int:
    config = SweepConfig(
        p=args.p,
        e=args.e,
        r=int(args.r),
        a=args.a,
        b=args.b,
        ells=parse_range(args.ell),
        m_values=parse_range(args.m),
        lambda_deg=args.lambda_deg,
        tau_selection=args.tau,
        seed=args.seed,
        out=args.out,
        format=args.format,
        threads=deps.worker_count,
        timing=args.timing,
        cross_check=args.cross_check,
        cap=args.cap or deps.settings.size_cap,
    )
    records, summary = run_sweep(deps, config)
    write_sweep(records, summary, config.format, config.out)
    if summary.statistics.get("cross_check_failures"):
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _cmd_certificate(deps: AlgebraDependencies, args) -> int:
    cap = args.cap or deps.settings.size_cap
    if args.from_drinfeld:
        system = build_system(args.p, args.e, a=args.a, b=args.b, r=int(args.r), m=args.m, cap=cap)
    else:
        text = args.system if args.system is not None else Path(args.input).read_text()
        system = build_system(args.p, args.e, system=text)
    verify = args.verify if args.verify else (deps.settings.ell_max if args.verify == 0 else None)
    report = run_certificate(
        deps, system, verify=verify, paper_strict=args.paper_strict, check_identity=args.check_identity,
    )
    emit(to_json(report), args.out)
    failed = report.verification is not None and report.verification.failed > 0
    if failed or report.certificate.identity_checked is False:
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _cmd_lemma_audit(deps: AlgebraDependencies, args) -> int:
    report = run_lemma_audit(
        deps,
        p=args.p,
        e=args.e,
        r_values=parse_range(args.r),
        points=args.a or DEFAULT_POINTS,
        n_max=args.n_max,
        m_values=parse_range(args.m),
        cap=args.cap,
    )
    write_audit(report, args.format, args.out)
    return EXIT_CHECK_FAILED if report.failed else EXIT_OK


_COMMANDS = {
    "order": _cmd_order,
    "sweep": _cmd_sweep,
    "certificate": _cmd_certificate,
    "lemma-audit": _cmd_lemma_audit,
}


def _report_error(exc: Exception):
    sys.stderr.write(json.dumps({"error": str(exc), "kind": type(exc).__name__}) + "\n")


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = load_settings()
    except ValueError as exc:
        _report_error(exc)
        return EXIT_USAGE
    logging.basicConfig(
        level=settings.log_level_value,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    deps = _dependencies(settings, args)
    try:
        return _COMMANDS[args.command](deps, args)
    except AlgebraError as exc:
        logger.error("%s failed: %s", args.command, exc)
        _report_error(exc)
        return EXIT_MATH
    except (ParseError, ValidationError, ValueError, OSError) as exc:
        _report_error(exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
