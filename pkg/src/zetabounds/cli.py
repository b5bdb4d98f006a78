"""Command-line entry point.

Subcommands map one-to-one onto the library modules:

* ``bounds eval|mertens|kfree``   -- evaluate envelope functions / constants
* ``tables reproduce``            -- regenerate the published parameter tables
* ``verify recip-lemma|sup-lemma|logzeta-identity`` -- numeric lemma checks
* ``sieve``                       -- exact M(x), m(x), Q_k(x) checkpoints
* ``perron``                      -- truncated-Perron residual at one x

Exit codes: 0 success, 2 a verified bound failed, 3 domain error on the
inputs, 64 usage error.  Identical invocations produce byte-identical
output.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import re
import sys

import numpy as np

from . import bound_engine as be
from . import perron_check, sieve_lab, table_optimizer, zeta_numerics
from .errors import (
    BoundViolation,
    DomainError,
    InsufficientDataError,
    PrecisionError,
    RangeError,
    ZerosParseError,
)

EXIT_OK = 0
EXIT_BOUND_FAILURE = 2
EXIT_DOMAIN = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("error: %s\n" % message)
        raise SystemExit(EXIT_USAGE)


def parse_checkpoints(text: str) -> list[int]:
    """Comma-separated integers, or the shorthand '10^a..10^b step *10'."""
    m = re.fullmatch(r"10\^(\d+)\.\.10\^(\d+)\s+step\s+\*10", text.strip())
    if m:
        a, b = int(m.group(1)), int(m.group(2))
        if b < a:
            raise DomainError("violated: a <= b in 10^a..10^b")
        return [10**e for e in range(a, b + 1)]
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise DomainError("violated: checkpoints are integers or '10^a..10^b step *10'") from None


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_table(path: str | None) -> zeta_numerics.ZeroTable:
    if path is None:
        return zeta_numerics.default_zero_table()
    return zeta_numerics.load_zeros(path)


def _cmd_bounds(args) -> int:
    if args.action == "eval":
        payload = {
            "t0": args.t0,
            "sigma": args.sigma,
            "u": args.u,
            "omega": be.omega_small(args.t0, args.u),
            "omega1": be.omega1(args.sigma, args.t0, args.u),
            "omega2": be.omega2(args.t0, args.u),
        }
    elif args.action == "mertens":
        log_x0 = 2.0 * (math.exp(args.u0) - be.LOG_3E_HALF)
        w01, alpha, n1 = be.mertens_params(args.sigma0, args.t0, log_x0)
        payload = {
            "sigma0": args.sigma0,
            "t0": args.t0,
            "u0": args.u0,
            "omega01": w01,
            "alpha": alpha,
            "n1": n1,
            "exponent10": table_optimizer.x_exponent_from_u0(args.u0, "mertens"),
        }
    else:  # kfree
        log_x0 = math.exp(args.u0) - be.LOG_3E_HALF
        w02, n2, exponent = be.kfree_params(args.sigma0, args.t1, args.t2, log_x0, args.k)
        payload = {
            "sigma0": args.sigma0,
            "t1": args.t1,
            "t2": args.t2,
            "u0": args.u0,
            "k": args.k,
            "omega02": w02,
            "n2": n2,
            "exponent": exponent,
            "exponent10": table_optimizer.x_exponent_from_u0(args.u0, "kfree"),
        }
    if args.format == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        keys = sorted(payload)
        text = ",".join(keys) + "\n" + ",".join("%.12g" % payload[k] for k in keys) + "\n"
    _emit(text, args.output)
    return EXIT_OK


def _cmd_tables(args) -> int:
    targets = [float(t) for t in args.targets.split(",")] if args.targets else None
    rows = table_optimizer.reproduce_table(args.which, targets)
    if args.publish:
        pub = table_optimizer.publish_rows(rows)
        if args.format == "json":
            text = json.dumps(pub, sort_keys=True, indent=2) + "\n"
        else:
            buf = io.StringIO()
            buf.write("target,coeff,exponent10\n")
            for p in pub:
                buf.write("%g,%g,%g\n" % (p["target"], p["coeff"], p["exponent10"]))
            text = buf.getvalue()
    elif args.format == "json":
        text = table_optimizer.rows_to_json(rows) + "\n"
    else:
        buf = io.StringIO()
        table_optimizer.rows_to_csv(rows, buf)
        text = buf.getvalue()
    _emit(text, args.output)
    return EXIT_OK


def _parse_strips(spec: str) -> list[int]:
    out: list[int] = []
    for part in spec.split(","):
        part = part.strip()
        if ".." in part:
            a, b = part.split("..")
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    return out


def _cmd_verify(args) -> int:
    table = _load_table(args.zeros)
    failures: list[str] = []
    buf = io.StringIO()
    if args.action == "recip-lemma":
        strips = _parse_strips(args.strips) if args.strips else None
        reports = zeta_numerics.scan_recip_lemma(
            table,
            points_per_edge=args.points,
            refine_threshold=args.threshold,
            strips=strips,
            processes=args.threads,
        )
        zeta_numerics.scan_reports_to_csv(reports, buf)
        base = [r for r in reports if r.segment == 0]
        strip_reports = [r for r in reports if r.segment != 0]
        if base and base[0].max_abs > 2.0:
            failures.append("base-rectangle max %.6f > 2" % base[0].max_abs)
        if strip_reports:
            worst = max(strip_reports, key=lambda r: r.max_abs)
            if worst.max_abs > 3.3:
                failures.append("strip %s max %.6f > 3.3" % (worst.segment, worst.max_abs))
    elif args.action == "sup-lemma":
        reports = zeta_numerics.scan_sup_lemma(
            table, points_per_edge=args.points, processes=args.threads
        )
        zeta_numerics.scan_reports_to_csv(reports, buf)
        caps = {"critical_line": 13.5, "sigma_3_4": 6.91, "rest": 3.5}
        for r in reports:
            if r.max_abs > caps[r.segment]:
                failures.append("%s max %.6f > %g" % (r.segment, r.max_abs, caps[r.segment]))
    else:  # logzeta-identity
        rng = np.random.default_rng(args.seed)
        buf.write("re_s,im_s,lhs,rhs,gap,budget\n")
        for _ in range(args.samples):
            sigma = rng.uniform(0.51, 1.49)
            t = rng.uniform(20.0, args.u_max / 2.0)
            lhs, rhs, cap = zeta_numerics.logzeta_via_zero_counts(
                complex(sigma, t), table, args.u_max
            )
            budget = be.r1(min(t, 50.0)) + cap
            gap = abs(lhs - rhs)
            buf.write(
                "%.9f,%.9f,%.9f,%.9f,%.9f,%.9f\n" % (sigma, t, lhs, rhs, gap, budget)
            )
            if gap > budget:
                failures.append("identity gap %.6f > budget %.6f at t=%.3f" % (gap, budget, t))
    _emit(buf.getvalue(), args.output)
    if failures:
        sys.stderr.write("\n".join(failures) + "\n")
        return EXIT_BOUND_FAILURE
    return EXIT_OK


def _cmd_sieve(args) -> int:
    checkpoints = parse_checkpoints(args.checkpoints)
    qk = tuple(int(k) for k in args.qk.split(",")) if args.qk else ()
    records = sieve_lab.mertens_checkpoints(args.limit, checkpoints, qk=qk)
    buf = io.StringIO()
    sieve_lab.checkpoints_to_csv(records, buf, qk=qk)
    _emit(buf.getvalue(), args.output)
    return EXIT_OK


def _cmd_perron(args) -> int:
    report = perron_check.numeric_perron_mertens(args.x, args.quad_tol)
    buf = io.StringIO()
    perron_check.report_to_csv(report, buf)
    _emit(buf.getvalue(), args.output)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="zetabounds", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    bounds = sub.add_parser("bounds", help="evaluate bound functions")
    bsub = bounds.add_subparsers(dest="action", required=True)
    b_eval = bsub.add_parser("eval", help="omega / omega1 / omega2 at (sigma, t0, u)")
    b_eval.add_argument("--t0", type=float, required=True)
    b_eval.add_argument("--sigma", type=float, required=True)
    b_eval.add_argument("--u", type=float, required=True)
    b_mert = bsub.add_parser("mertens", help="N1/alpha at (sigma0, t0, u0)")
    b_mert.add_argument("--sigma0", type=float, required=True)
    b_mert.add_argument("--t0", type=float, required=True)
    b_mert.add_argument("--u0", type=float, required=True)
    b_kfree = bsub.add_parser("kfree", help="N2/exponent at (sigma0, t1, t2, u0, k)")
    b_kfree.add_argument("--sigma0", type=float, required=True)
    b_kfree.add_argument("--t1", type=float, required=True)
    b_kfree.add_argument("--t2", type=float, default=2 * be.GAMMA1)
    b_kfree.add_argument("--u0", type=float, required=True)
    b_kfree.add_argument("--k", type=int, default=2)
    for p in (b_eval, b_mert, b_kfree):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--output", "-o", default=None)
        p.set_defaults(func=_cmd_bounds)

    tables = sub.add_parser("tables", help="regenerate parameter tables")
    tsub = tables.add_subparsers(dest="action", required=True)
    t_rep = tsub.add_parser("reproduce", help="rerun the table optimisation")
    t_rep.add_argument("--which", choices=("mertens", "kfree"), required=True)
    t_rep.add_argument("--targets", default=None, help="comma-separated exponent targets")
    t_rep.add_argument("--publish", action="store_true", help="apply publication rounding")
    t_rep.add_argument("--format", choices=("csv", "json"), default="csv")
    t_rep.add_argument("--output", "-o", default=None)
    t_rep.set_defaults(func=_cmd_tables)

    verify = sub.add_parser("verify", help="numeric lemma verification")
    vsub = verify.add_subparsers(dest="action", required=True)
    v_recip = vsub.add_parser("recip-lemma", help="scan |1/zeta| strip maxima")
    v_recip.add_argument("--points", type=int, default=101)
    v_recip.add_argument("--threshold", type=float, default=2.0)
    v_recip.add_argument("--strips", default=None, help="e.g. '0,1..50,900..950'")
    v_sup = vsub.add_parser("sup-lemma", help="scan |zeta| rectangle maxima")
    v_sup.add_argument("--points", type=int, default=101)
    v_log = vsub.add_parser("logzeta-identity", help="zero-count integral containment")
    v_log.add_argument("--samples", type=int, default=10)
    v_log.add_argument("--seed", type=int, default=1)
    v_log.add_argument("--u-max", type=float, default=3000.0)
    for p in (v_recip, v_sup, v_log):
        p.add_argument("--zeros", default=None, help="ordinates file (default: bundled)")
        p.add_argument("--threads", type=int, default=os.cpu_count())
        p.add_argument("--output", "-o", default=None)
        p.set_defaults(func=_cmd_verify)

    sieve = sub.add_parser("sieve", help="exact M/m/Q_k checkpoints")
    sieve.add_argument("--limit", type=int, required=True)
    sieve.add_argument("--checkpoints", required=True)
    sieve.add_argument("--qk", default=None, help="comma-separated k values")
    sieve.add_argument("--output", "-o", default=None)
    sieve.set_defaults(func=_cmd_sieve)

    perron = sub.add_parser("perron", help="truncated-Perron residual at x")
    perron.add_argument("--x", type=float, required=True)
    perron.add_argument("--quad-tol", type=float, default=1e-6)
    perron.add_argument("--output", "-o", default=None)
    perron.set_defaults(func=_cmd_perron)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BoundViolation,) as exc:
        sys.stderr.write("bound violated: %s\n" % exc)
        return EXIT_BOUND_FAILURE
    except (DomainError, RangeError, ZerosParseError, InsufficientDataError, PrecisionError) as exc:
        sys.stderr.write("domain error: %s\n" % exc)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
