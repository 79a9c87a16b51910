"""Command-line front end: ``eval``, ``table``, ``validate`` and ``oracle``.

Exit codes: 0 success, 1 usage or domain error, 2 numerical failure
(truncation cap, oracle envelope, oracle disagreement).  Worker threads for
``table``, ``validate`` and the Monte Carlo oracle come from the
``EBMDENSITY_WORKERS`` environment variable (default: logical core count).
"""

from __future__ import annotations

import argparse
import math
import sys
import time

from .density import (
    LAMBDA_MIN,
    EvalPoint,
    ToleranceSpec,
    density,
    tabulate,
    worker_count,
)
from .errors import ConvergenceError, DomainError, TruncationCapError
from .table1 import TABLE

__all__ = ["CSV_HEADER", "format_row", "lambda_grid", "main"]

CSV_HEADER = "lambda,t,f,abs_err,n_used,m_used"

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2

# validation bands: (label, lo, hi, tolerance flag or None when informational)
_BANDS = (
    ("[0.25, 2.00]", 0.25, 2.0 + 1e-12, "tol_a"),
    ("[0.10, 0.25)", 0.10, 0.25 - 1e-12, "tol_b"),
    ("[0.01, 0.10)", 0.0, 0.10 - 1e-12, None),
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _num(x) -> str:
    return format(x, ".12g")


def format_row(lam, t, result) -> str:
    return ",".join(
        [
            _num(lam),
            _num(t),
            format(result.value, ".10g"),
            format(result.err_estimate, ".3e"),
            str(result.n_used),
            str(result.m_used),
        ]
    )


def lambda_grid(lo: float, hi: float, step: float) -> list:
    """``lo, lo + step, ...`` up to ``hi``; values rounded to 12 decimals."""
    if not (lo > 0 and step > 0 and hi >= lo):
        raise DomainError("need 0 < lambda-min <= lambda-max and step > 0")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + i * step, 12) for i in range(count)]


def _tolerance(args) -> ToleranceSpec:
    if not 1e-12 <= args.tol <= 1e-2:
        raise DomainError(f"--tol must lie in [1e-12, 1e-2], got {args.tol}")
    return ToleranceSpec(abs_tol=args.tol)


def cmd_eval(args) -> int:
    tol = _tolerance(args)
    pt = EvalPoint(args.lam, args.t)
    try:
        result = density(pt, tol)
    except TruncationCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.partial is not None:
            print(CSV_HEADER + ",flag")
            print(format_row(pt.lam, pt.t, exc.partial) + ",truncated")
        return EXIT_NUMERIC
    print(CSV_HEADER)
    print(format_row(pt.lam, pt.t, result))
    return EXIT_OK


def cmd_table(args) -> int:
    tol = _tolerance(args)
    grid = lambda_grid(args.lambda_min, args.lambda_max, args.step)
    rows = tabulate(grid, args.t, tol, workers=worker_count())
    lines = [CSV_HEADER]
    failed = 0
    for row in rows:
        if not row.ok:
            failed += 1
            print(f"error: {row.error}", file=sys.stderr)
        if row.result is None:
            lines.append(f"{_num(row.point.lam)},{_num(row.point.t)},nan,inf,0,0")
        else:
            lines.append(format_row(row.point.lam, row.point.t, row.result))
    text = "\n".join(lines) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        try:
            with open(args.out, "w", encoding="ascii", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    if failed:
        print(f"{failed} of {len(rows)} points did not converge", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_validate(args) -> int:
    start = time.perf_counter()
    lams = [lam for lam, _ in TABLE]
    rows = tabulate(lams, 1.0, ToleranceSpec(), workers=worker_count())
    elapsed = time.perf_counter() - start
    reference = dict(TABLE)
    status = EXIT_OK
    for label, lo, hi, flag in _BANDS:
        worst, worst_lam, skipped, count = 0.0, None, 0, 0
        for row in rows:
            lam = row.point.lam
            if not lo <= lam <= hi:
                continue
            count += 1
            if not row.ok:
                skipped += 1
                continue
            dev = abs(row.result.value - reference[lam])
            if dev >= worst:
                worst, worst_lam = dev, lam
        gate = getattr(args, flag) if flag else None
        if gate is None:
            verdict = "INFO"
        elif skipped or worst > gate:
            verdict = "FAIL"
            status = EXIT_NUMERIC
        else:
            verdict = "PASS"
        where = f" at lambda={worst_lam:.2f}" if worst_lam is not None else ""
        limit = f" (limit {gate:.1e})" if gate is not None else ""
        print(
            f"{verdict} band {label}: {count} entries, max |dev| = {worst:.3e}"
            f"{where}{limit}, {skipped} not computed"
        )
    print(f"validated {len(rows)} entries in {elapsed:.2f} s")
    if any(r.point.lam < LAMBDA_MIN for r in rows):
        print(f"entries below lambda = {LAMBDA_MIN} are outside the supported domain")
    return status


def _oracle_talbot(args) -> int:
    from .oracles.laplace import TalbotConfig, talbot_density

    cfg = TalbotConfig(node_count=args.nodes)
    try:
        ref = talbot_density(args.lam, args.t, cfg)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    series = density(EvalPoint(args.lam, args.t))
    delta = abs(series.value - ref)
    ok = delta <= args.tolerance
    print(f"series  f({args.lam}, {args.t}) = {series.value:.12g} (err {series.err_estimate:.2e})")
    print(f"talbot  f({args.lam}, {args.t}) = {ref:.12g} ({cfg.node_count} nodes)")
    print(f"{'PASS' if ok else 'FAIL'} |delta| = {delta:.3e} (limit {args.tolerance:.1e})")
    return EXIT_OK if ok else EXIT_NUMERIC


def _oracle_mc(args) -> int:
    from .oracles.montecarlo import McConfig, exact_mean, mc_cdf_check, mc_functional
    from .quadrature import series_cdf

    cfg = McConfig(paths=args.paths, steps_per_unit_time=args.steps, seed=args.seed, t=args.t)
    workers = worker_count()
    est = mc_functional(cfg, workers)
    exact = exact_mean(cfg.t)
    z = (est.mean - exact) / est.stderr if est.stderr > 0 else math.inf
    ok = abs(z) <= 3.0
    print(f"mc mean {est.mean:.8g} +- {est.stderr:.3g} ({est.samples} paths, seed {est.seed})")
    print(f"{'PASS' if ok else 'FAIL'} mean vs (exp(2t)-1)/2 = {exact:.8g}: {z:+.2f} stderr")
    if args.lam is not None:
        point = mc_cdf_check(cfg, [args.lam], workers)[0]
        ref = series_cdf(args.lam, cfg.t)
        sigma = math.hypot(point.stderr, ref.err_bound)
        zc = (point.cdf - ref.value) / sigma if sigma > 0 else math.inf
        cdf_ok = abs(zc) <= 3.0
        ok = ok and cdf_ok
        print(
            f"{'PASS' if cdf_ok else 'FAIL'} CDF at lambda={args.lam}: mc {point.cdf:.5f} "
            f"+- {point.stderr:.2g}, series {ref.value:.5f}: {zc:+.2f} stderr"
        )
    return EXIT_OK if ok else EXIT_NUMERIC


def cmd_oracle(args) -> int:
    if args.mode == "talbot":
        if args.lam is None:
            raise DomainError("--mode talbot needs --lambda")
        return _oracle_talbot(args)
    return _oracle_mc(args)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ebmdensity", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="density at one point, as a CSV row")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("table", help="density on a lambda grid, as CSV")
    p.add_argument("--lambda-min", type=float, required=True)
    p.add_argument("--lambda-max", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out", default="-", help="output file, '-' for stdout")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("validate", help="compare against the embedded t = 1 table")
    p.add_argument("--tol-a", type=float, default=5e-9, help="limit on [0.25, 2.00]")
    p.add_argument("--tol-b", type=float, default=1e-6, help="limit on [0.10, 0.25)")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("oracle", help="cross-check against an independent method")
    p.add_argument("--mode", choices=("talbot", "mc"), required=True)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--nodes", type=int, default=32, help="Talbot contour nodes")
    p.add_argument("--tolerance", type=float, default=2e-6, help="Talbot agreement limit")
    p.add_argument("--paths", type=int, default=100_000)
    p.add_argument("--steps", type=int, default=256, help="MC steps per unit time")
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TruncationCapError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
