"""Command-line front end.

    dyckweyl pi --n 3 --method all
    dyckweyl weyl roots --d 3
    dyckweyl sim moments --n-max 4 --size 400 --trials 10 --d -1 --seed 7 --format csv
    dyckweyl jacobi --d 1 --z 3,0 --depth 400

Exit codes: 0 success, 2 bad parameters, 1 numeric failure. Complex numbers
are passed as ``re,im``; use ``--z=-3,0`` when the real part is negative.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import statistics
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from dyckweyl import combinatorics as comb
from dyckweyl import randmat, weyl

log = logging.getLogger("dyckweyl")


class UsageError(Exception):
    pass


def fmt(x) -> str:
    """17 significant digits, enough to round-trip a double."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".17g")


def parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected re,im but got {text!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def parse_real(text: str) -> float:
    try:
        x = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return x


@dataclass
class RunRecord:
    command: str
    params: dict[str, Any]
    columns: list[str]
    rows: list[list[Any]] = field(default_factory=list)
    wall_time: float = 0.0

    def emit(self, out, fmt_name: str) -> None:
        if fmt_name == "json":
            out.write(json.dumps({"record": "params", "command": self.command, **self.params}) + "\n")
            for row in self.rows:
                out.write(json.dumps(dict(zip(self.columns, (_jsonable(v) for v in row)))) + "\n")
            return
        echo = " ".join(f"{k}={v}" for k, v in self.params.items())
        out.write(f"# {self.command} {echo}\n")
        w = csv.writer(out, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([fmt(v) if not isinstance(v, str) else v for v in row])


def _jsonable(v):
    if v is None or isinstance(v, (bool, int, str)):
        return v
    # float('%.17g') round-trips exactly
    return float(fmt(v))


# -- pi ---------------------------------------------------------------------

def cmd_pi(args, out) -> int:
    n = args.n
    if n < 0:
        raise UsageError("--n must be nonnegative")
    method = args.method
    if method == "enum":
        polys = {"enum": comb.pi_enumerate(n)}
    elif method == "conv":
        polys = {"conv": comb.pi_convolution(n)[n]}
    elif method == "linear":
        polys = {"linear": comb.pi_linear(n)}
    elif method == "closed":
        polys = {"closed": comb.pi_closed_form(n)}
    else:
        polys = comb.pi_all_methods(n)
    first = next(iter(polys.values()))
    for name, p in polys.items():
        out.write(f"{name}: coefficients {list(p.padded(n + 1))}\n")
    if method == "all":
        agree = all(p == first for p in polys.values())
        out.write("AGREE\n" if agree else "DISAGREE\n")
    if args.d is not None:
        value = first(Fraction(args.d))
        out.write(f"value at d={fmt(args.d)}: {_exact_str(value)}\n")
    return 0


def _exact_str(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else fmt(float(v))


# -- weyl -------------------------------------------------------------------

def _cstr(z: complex) -> str:
    return f"{fmt(z.real)},{fmt(z.imag)}"


def cmd_weyl(args, out) -> int:
    d = args.d
    if d == 0:
        raise UsageError("--d must be nonzero")
    if args.sub == "eval":
        if args.z is None:
            raise UsageError("weyl eval needs --z re,im")
        q = weyl.q_limit(d, args.z)
        out.write(f"Q = {_cstr(q)}\n")
        out.write(f"-1/Q = {_cstr(-1 / q) if q != 0 else 'inf'}\n")
    elif args.sub == "series":
        if args.K < 1:
            raise UsageError("--K must be >= 1")
        out.write("power,coefficient\n")
        for k, c in enumerate(weyl.neg_inv_q_series(d, args.K)):
            out.write(f"{-(2 * k + 1)},{fmt(c)}\n")
    else:
        res = weyl.limit_outliers(d)
        out.write(f"kind: {res.kind}\n")
        for v in res.values:
            out.write(f"root: {_cstr(v)}\n")
    return 0


# -- sim --------------------------------------------------------------------

def _config(args) -> randmat.EnsembleConfig:
    try:
        return randmat.EnsembleConfig(N=args.size, d=args.d, dist=args.dist, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _params(args, *names) -> dict[str, Any]:
    base = {"size": args.size, "d": args.d, "dist": args.dist, "seed": args.seed}
    base.update({n.replace("_", "-"): getattr(args, n) for n in names})
    return base


def sim_moments(args, cfg) -> RunRecord:
    if args.n_max < 1 or args.trials < 2:
        raise UsageError("sim moments needs --n-max >= 1 and --trials >= 2")
    rows = randmat.monte_carlo_moments(cfg, args.n_max, args.trials, workers=args.workers)
    rec = RunRecord("sim moments", _params(args, "trials", "n_max"),
                    ["n", "mean", "stderr", "limit"])
    for r in rows:
        limit = float(comb.pi_closed_form(r.n // 2)(Fraction(cfg.d))) if r.n % 2 == 0 else 0.0
        rec.rows.append([r.n, r.mean, r.stderr, limit])
    return rec


def sim_outliers(args, cfg) -> RunRecord:
    d = cfg.d
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")

    def one(t):
        return randmat.build_secular(randmat.sample_wigner(cfg, t), d)

    models = randmat.map_trials(one, range(args.trials), args.workers)
    lim = weyl.limit_outliers(d)
    if d > 0:
        rec = RunRecord("sim outliers", _params(args, "trials"),
                        ["trial", "root_minus", "root_plus", "residual"])
        for t, m in enumerate(models):
            lo, hi = randmat.real_outliers(m, d)
            res = [abs(randmat.eval_weyl_N(m, d, r)) for r in (lo, hi) if r is not None]
            rec.rows.append([t, lo, hi, max(res) if res else None])
        _summary(rec, [r[1] for r in rec.rows], [r[2] for r in rec.rows])
        if lim.values:
            rec.rows.append(["limit", lim.values[1].real, lim.values[0].real, None])
        else:
            rec.rows.append(["limit", None, None, None])
    else:
        rec = RunRecord("sim outliers", _params(args, "trials"),
                        ["trial", "root_re", "root_im", "residual"])
        for t, m in enumerate(models):
            z = randmat.complex_outlier(m, d)
            if z is None:
                rec.rows.append([t, None, None, None])
            else:
                rec.rows.append([t, z.real, z.imag, abs(randmat.eval_weyl_N(m, d, z))])
        _summary(rec, [r[1] for r in rec.rows], [r[2] for r in rec.rows])
        rec.rows.append(["limit", lim.values[0].real, lim.values[0].imag, None])
    return rec


def _summary(rec: RunRecord, col1, col2) -> None:
    def med(xs):
        xs = [x for x in xs if x is not None]
        return statistics.median(xs) if xs else None
    rec.rows.append(["median", med(col1), med(col2), None])


def sim_measure(args, cfg) -> RunRecord:
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    nm = max(args.n_max, 0)

    def one(t):
        m = randmat.build_secular(randmat.sample_wigner(cfg, t), cfg.d)
        return [m.a] + [randmat.measure_moments(m, k) for k in range(nm + 1)]

    data = randmat.map_trials(one, range(args.trials), args.workers)
    cols = ["trial", "a"] + [f"m{k}" for k in range(nm + 1)]
    rec = RunRecord("sim measure", _params(args, "trials", "n_max"), cols)
    for t, row in enumerate(data):
        rec.rows.append([t] + row)
    means = [math.fsum(col) / len(data) for col in zip(*data)]
    rec.rows.append(["mean"] + means)
    rec.rows.append(["limit", 0.0] + [float(comb.catalan(k // 2)) if k % 2 == 0 else 0.0
                                      for k in range(nm + 1)])
    return rec


def sim_permsim(args, cfg, out) -> int:
    if not 0 <= args.k <= cfg.N:
        raise UsageError(f"--k must lie in [0, {cfg.N}]")
    W = randmat.sample_wigner(cfg, 0)
    zs = [3, 2j, -4, 1 + 2j, -2 - 3j]
    ok = randmat.permutation_similarity_check(W, cfg.d, args.k, zs)
    params = _params(args, "k")
    if args.format == "json":
        out.write(json.dumps({"record": "params", "command": "sim permsim", **params}) + "\n")
        out.write(json.dumps({"result": ok}) + "\n")
    else:
        out.write("# sim permsim " + " ".join(f"{k}={v}" for k, v in params.items()) + "\n")
        out.write(fmt(ok) + "\n")
    return 0


def cmd_sim(args, out) -> int:
    cfg = _config(args)
    if args.workers < 1:
        raise UsageError("--workers must be >= 1")
    if args.sub == "permsim":
        return sim_permsim(args, cfg, out)
    if args.sub == "outliers" and cfg.d == 0:
        raise UsageError("--d must be nonzero")
    start = time.perf_counter()
    rec = {"moments": sim_moments, "outliers": sim_outliers, "measure": sim_measure}[args.sub](args, cfg)
    rec.wall_time = time.perf_counter() - start
    rec.emit(out, args.format)
    log.info("wall time %.3f s", rec.wall_time)
    return 0


# -- jacobi -----------------------------------------------------------------

def cmd_jacobi(args, out) -> int:
    if args.d <= 0:
        raise UsageError("jacobi needs --d > 0")
    if args.depth < 2:
        raise UsageError("--depth must be >= 2")
    z = args.z
    if z.imag == 0 and -2 <= z.real <= 2:
        raise UsageError("--z must lie off [-2, 2]")
    g = randmat.jacobi_resolvent(args.d, z, args.depth)
    target = -1 / weyl.q_limit(args.d, z)
    out.write("quantity,re,im\n")
    out.write(f"g,{_cstr(g)}\n")
    out.write(f"neg_inv_q,{_cstr(target)}\n")
    out.write(f"d_times_g,{_cstr(args.d * g)}\n")
    out.write(f"abs_diff,{fmt(abs(g - target))},0\n")
    out.write(f"abs_diff_scaled,{fmt(abs(args.d * g - target))},0\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dyckweyl", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    pp = sub.add_parser("pi", help="generalized Catalan polynomial pi_n(d)")
    pp.add_argument("--n", type=int, required=True)
    pp.add_argument("--method", choices=["enum", "conv", "linear", "closed", "all"], default="closed")
    pp.add_argument("--d", type=parse_real)
    pp.set_defaults(func=cmd_pi)

    pw = sub.add_parser("weyl", help="limit Weyl function")
    pw.add_argument("sub", choices=["eval", "series", "roots"])
    pw.add_argument("--d", type=parse_real, required=True)
    pw.add_argument("--z", type=parse_complex)
    pw.add_argument("--K", type=int, default=10)
    pw.set_defaults(func=cmd_weyl)

    ps = sub.add_parser("sim", help="Monte Carlo experiments")
    ps.add_argument("sub", choices=["moments", "outliers", "measure", "permsim"])
    ps.add_argument("--size", type=int, default=1000, help="bulk size N; matrices are (N+1)x(N+1)")
    ps.add_argument("--d", type=parse_real, required=True)
    ps.add_argument("--dist", choices=list(randmat.DISTRIBUTIONS), default="gaussian")
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--trials", type=int, default=10)
    ps.add_argument("--n-max", type=int, default=6)
    ps.add_argument("--k", type=int, default=1)
    ps.add_argument("--workers", type=int, default=1)
    ps.add_argument("--format", choices=["json", "csv"], default="csv")
    ps.set_defaults(func=cmd_sim)

    pj = sub.add_parser("jacobi", help="truncated Jacobi continued fraction")
    pj.add_argument("--d", type=parse_real, required=True)
    pj.add_argument("--z", type=parse_complex, required=True)
    pj.add_argument("--depth", type=int, default=400)
    pj.set_defaults(func=cmd_jacobi)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out)
    except (UsageError, comb.EnumerationCapError, weyl.CutError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, randmat.NumericError, ValueError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 1


def run(argv: Sequence[str]) -> tuple[int, str]:
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()
