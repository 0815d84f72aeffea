"""``tlcheck`` command line.

Exit codes: 0 success, 1 counterexample or failed property, 2 usage error,
3 insufficient precision.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from .. import __version__
from ..contfrac import cf_expand
from ..core import (CoverageError, DomainError, PrecisionError, UndefinedInputError,
                    parse_domain, parse_expression)
from ..core.poly import Polynomial
from ..hankel import deficiency, grid_compute, grid_rows_to_csv
from ..series import MahlerSpec, expand_product, shift
from ..tlc import (CERTIFIED_UP_TO_BOUND, SYMBOLIC_CERTIFICATE, bad_evidence, certify_numeric,
                   certify_symbolic, elc_threshold, finite_field_search)
from .cache import ResultCache, make_key
from .suites import SUITES

log = logging.getLogger("tlcheck")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# -- parameter helpers ----------------------------------------------------
def _domain_and_u(args, need_u: bool = True):
    domain = parse_domain(args.domain)
    if domain.is_symbolic:
        return domain, domain.gen
    if args.u is None:
        if need_u:
            raise UsageError(f"--u is required for domain {domain.name}")
        return domain, None
    return domain, domain.parse(args.u)


def _spec(args, domain, u) -> MahlerSpec:
    t = Polynomial.gen(domain, "t")
    env = {"t": t}
    if u is not None:
        env["u"] = u
    try:
        P = parse_expression(args.P, env, domain)
    except KeyError as exc:
        raise UsageError(f"unknown name {exc} in --P (numeric domains need --u)") from None
    if not isinstance(P, Polynomial) or P.var != "t":
        P = Polynomial([domain.coerce(P)], domain, "t")
    if args.d == 2 and u is not None and P == t + u:
        return MahlerSpec.linear(domain, u)
    return MahlerSpec(P, args.d)


def _render_table(headers, rows) -> str:
    cells = [[str(h) for h in headers]] + [["" if v is None else str(v) for v in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines) + "\n"


def _kv_csv(data: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])
    for k, v in _flatten(data):
        w.writerow([k, v])
    return buf.getvalue()


def _flatten(data, prefix=""):
    if isinstance(data, dict):
        for k in sorted(data):
            yield from _flatten(data[k], f"{prefix}{k}.")
    elif isinstance(data, list):
        for i, v in enumerate(data):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        yield prefix.rstrip("."), json.dumps(data) if not isinstance(data, str) else data


# -- output ---------------------------------------------------------------
class Output:
    def __init__(self, args, argv):
        self.args = args
        self.argv = list(argv)
        self.started = time.perf_counter()

    def manifest(self, table_hash: Optional[str]) -> dict:
        params = {k: v for k, v in sorted(vars(self.args).items())
                  if k not in ("func", "format", "out") and v is not None}
        return {
            "command": ["tlcheck"] + self.argv,
            "parameters": params,
            "version": __version__,
            "coefficientTableHash": table_hash,
            "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "runtimeMs": int((time.perf_counter() - self.started) * 1000),
            "outputs": [self.args.out] if self.args.out else [],
        }

    def emit(self, data, table: str, csv_text: str, table_hash: Optional[str] = None):
        fmt = self.args.format
        if fmt == "json":
            text = json.dumps({"manifest": self.manifest(table_hash), "data": data},
                              indent=2, sort_keys=True) + "\n"
        elif fmt == "csv":
            text = csv_text
        else:
            text = table
        if self.args.out:
            try:
                Path(self.args.out).write_text(text)
            except OSError as exc:
                raise OSError(f"cannot write {self.args.out}: {exc}") from exc
        else:
            sys.stdout.write(text)


def _cache(args) -> Optional[ResultCache]:
    if args.no_cache:
        return None
    return ResultCache(Path(args.cache_dir) if args.cache_dir else None)


# -- subcommands ----------------------------------------------------------
def cmd_series(args, out: Output) -> int:
    domain, u = _domain_and_u(args, need_u=False)
    spec = _spec(args, domain, u)
    g = expand_product(spec, args.N)
    rows = g.rows(1, args.N)
    data = {"spec": spec.key(), "N": args.N,
            "coefficients": [{"n": k, "a": c} for k, c in rows]}
    out.emit(data, _render_table(["n", "a_n"], rows), g.to_csv(1, args.N), g.table_hash(1, args.N))
    return EXIT_OK


def cmd_cf(args, out: Output) -> int:
    domain, u = _domain_and_u(args)
    spec = _spec(args, domain, u)
    g = shift(expand_product(spec, args.N), args.shift).promote()

    def compute():
        return cf_expand(g, args.terms).to_json()

    cache = _cache(args)
    key = make_key("cf", spec.key(), domain.name, args.u, args.N, f"shift={args.shift};terms={args.terms}")
    data = cache.get_or_compute(key, compute) if cache else compute()
    rows = [(k, t["beta"], t["bstar"], t["alphaLin"]) for k, t in enumerate(data["terms"], start=1)]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "beta", "bstar", "alphaLin"])
    w.writerows([(k, b, s, "" if a is None else a) for k, b, s, a in rows])
    table = f"b0 = {data['b0']}\n" + _render_table(["k", "beta", "bstar", "alpha"], rows)
    out.emit(data, table, buf.getvalue(), g.table_hash())
    if args.terms is not None and data["certifiedCount"] < args.terms and not data["terminating"]:
        print(f"only {data['certifiedCount']} terms certified at N={args.N}", file=sys.stderr)
        return EXIT_PRECISION
    return EXIT_OK


def cmd_hankel(args, out: Output) -> int:
    domain, u = _domain_and_u(args)
    spec = _spec(args, domain, u)
    g = expand_product(spec, args.N)

    def compute():
        grid = grid_compute(g, args.N, strategy=args.strategy, u=u, threads=args.threads)
        return {"cells": grid.export_rows(), "deficiency": deficiency(grid).to_json()}

    cache = _cache(args)
    # the strategy only changes how values are obtained, not the values
    key = make_key("grid", spec.key(), domain.name, args.u, args.N)
    t0 = time.perf_counter()
    data = cache.get_or_compute(key, compute) if cache else compute()
    log.info("grid ready in %.3f s", time.perf_counter() - t0)
    rows = [(r["n"], r["l"], r["degree"], r["singular"], r["doublyMonic"], r["det"]) for r in data["cells"]]
    table = _render_table(["n", "l", "degree", "singular", "doublyMonic", "det"], rows)
    d = data["deficiency"]
    table += (f"deficiency >= {d['deficiencyLowerBound']} "
              f"(longest singular run {d['maxSingularRun']}, N={d['bound']})\n")
    out.emit(data, table, grid_rows_to_csv(data["cells"]), g.table_hash(1, args.N))
    return EXIT_OK


def cmd_verify(args, out: Output) -> int:
    kwargs = {k: getattr(args, k) for k in ("N", "M", "D", "terms") if getattr(args, k) is not None}
    if args.u:
        kwargs["us"] = tuple(args.u)
        kwargs["u"] = args.u[0]
    result = SUITES[args.suite](**kwargs)
    data = result.to_json()
    table = (f"{result.name}: {'pass' if result.passed else 'FAIL'} "
             f"({result.checked} checks)\n")
    if result.first_failure:
        table += f"first failure: {result.first_failure}\n"
    for line in result.details:
        table += f"  {line}\n"
    out.emit(data, table, _kv_csv(data))
    return EXIT_OK if result.passed else EXIT_FAIL


def _report_out(report, out: Output) -> int:
    data = report.to_json(include_runtime=False)
    lines = [f"verdict: {report.verdict}", f"scope: {report.scope}",
             "counts: " + ", ".join(f"{k}={v}" for k, v in report.counts.items())]
    lines += [f"witness: H({n},{l}) det = {d}" for n, l, d in report.witnesses[:10]]
    out.emit(data, "\n".join(lines) + "\n", _kv_csv(data), report.table_hash)
    log.info("certification runtime %d ms", report.runtime_ms)
    if report.verdict in (SYMBOLIC_CERTIFICATE, CERTIFIED_UP_TO_BOUND) and \
            (report.mode == "numeric" or report.verdict == SYMBOLIC_CERTIFICATE):
        return EXIT_OK
    return EXIT_FAIL


def cmd_tlc(args, out: Output) -> int:
    mode = args.mode
    if mode == "symbolic":
        return _report_out(certify_symbolic(args.N, threads=args.threads), out)
    if mode == "numeric":
        if args.u is None:
            raise UsageError("--u is required")
        domain = parse_domain(args.domain or "Q")
        if domain.is_symbolic:
            raise UsageError("numeric runs need Q or Fp:<p>")
        return _report_out(certify_numeric(domain.parse(args.u), args.N, domain, args.threads), out)
    if mode == "field":
        if args.p is None or args.u is None:
            raise UsageError("--p and --u are required")
        w = finite_field_search(args.p, int(args.u), exhaustive=args.exhaustive)
        data = w.to_json()
        table = f"F_{w.p}, u={w.u}: det H({w.n},{w.l}) = {w.det}\n"
        if w.least:
            table += f"least singular cell: H({w.least[0]},{w.least[1]})\n"
        out.emit(data, table, _kv_csv(data))
        return EXIT_FAIL
    if mode == "bad":
        if args.u is None:
            raise UsageError("--u is required")
        domain = parse_domain(args.domain or "Q")
        ev = bad_evidence(domain.parse(args.u), args.K, domain)
        data = ev.to_json()
        out.emit(data, f"{ev.note}\n", _kv_csv(data))
        return EXIT_OK if ev.abort_index is None else EXIT_FAIL
    if mode == "threshold":
        domain = parse_domain(args.domain or "Zu")
        u = domain.gen if domain.is_symbolic else (domain.parse(args.u) if args.u else None)
        t = Polynomial.gen(domain, "t")
        env = {"t": t} | ({"u": u} if u is not None else {})
        P = parse_expression(args.P, env, domain)
        th = elc_threshold(P, args.d)
        data = {"P": str(P), "d": args.d, "threshold": str(th)}
        out.emit(data, f"deficiency threshold {th}\n", _kv_csv(data))
        return EXIT_OK
    raise UsageError(f"unknown mode {mode}")


# -- parser ---------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["table", "json", "csv"], default="table")
    common.add_argument("--out", metavar="PATH", help="write output to PATH")
    common.add_argument("--threads", type=int, default=1, help="worker processes for grids")
    common.add_argument("--cache-dir", help="cache directory (default $TLCHECK_CACHE_DIR)")
    common.add_argument("--no-cache", action="store_true", help="bypass the result cache")
    common.add_argument("-v", "--verbose", action="store_true", help="log to stderr")

    def series_args(domain):
        # a fresh parent per subcommand: argparse shares action objects
        sa = _Parser(add_help=False)
        sa.add_argument("--P", default="t+u", help="monic polynomial in t (and u)")
        sa.add_argument("--d", type=int, default=2)
        sa.add_argument("--domain", default=domain, help=f"Q, Fp:<p>, Zu or Qu (default {domain})")
        sa.add_argument("--u", help="integer, fraction a/b or residue; ignored for Zu/Qu")
        return sa

    parser = _Parser(prog="tlcheck", description="Exact computations for Mahler-type Laurent "
                     "series: coefficients, continued fractions, Hankel determinants.")
    parser.add_argument("--version", action="version", version=f"tlcheck {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("series", parents=[common, series_args("Zu")], help="emit coefficients a_1..a_N")
    p.add_argument("--N", type=int, default=16)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("cf", parents=[common, series_args("Q")], help="continued fraction expansion")
    p.add_argument("--N", type=int, default=64)
    p.add_argument("--terms", type=int, help="stop after this many certified terms")
    p.add_argument("--shift", type=int, default=0, help="expand t^shift * g")
    p.set_defaults(func=cmd_cf)

    p = sub.add_parser("hankel", parents=[common, series_args("Zu")], help="Hankel determinant grid")
    p.add_argument("--N", type=int, default=12)
    p.add_argument("--strategy", choices=["direct", "block"], default="direct")
    p.set_defaults(func=cmd_hankel)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--N", type=int)
    p.add_argument("--M", type=int)
    p.add_argument("--D", type=int)
    p.add_argument("--terms", type=int)
    p.add_argument("--u", action="append", help="parameter value (repeatable)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tlc", parents=[common], help="certification runs")
    p.add_argument("mode", choices=["symbolic", "numeric", "field", "bad", "threshold"])
    p.add_argument("--N", type=int, default=24)
    p.add_argument("--u")
    p.add_argument("--domain")
    p.add_argument("--p", type=int)
    p.add_argument("--K", type=int, default=200)
    p.add_argument("--P", default="t+u")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--exhaustive", action="store_true")
    p.set_defaults(func=cmd_tlc)
    return parser


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"tlcheck: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:          # --help / --version
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    if args.threads < 1:
        print("tlcheck: error: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, Output(args, argv))
    except UsageError as exc:
        print(f"tlcheck: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PrecisionError, CoverageError) as exc:
        print(f"tlcheck: insufficient precision: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (UndefinedInputError, DomainError, ValueError, ZeroDivisionError) as exc:
        print(f"tlcheck: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"tlcheck: I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
