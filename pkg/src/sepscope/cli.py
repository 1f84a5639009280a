"""Command-line front end.

    sepscope analyze --state werner --param x=0.5
    sepscope analyze --file state.json --format text
    sepscope sweep   --state werner --range 0:1:0.01 > werner.csv
    sepscope compare --dims 2x2 --samples 1000 --seed 7
    sepscope dilute  --inner singlet --outer maximally_mixed

Exit codes: 0 no criterion fails, 2 certified inseparable, 1 usage or
validation error. ``SEPSCOPE_TOL`` overrides the default decision tolerance.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .conditional import conditional_amplitude, conditional_entropy
from .exceptions import SepscopeError
from .linalg import RANK_TOL
from .maps import criterion_report
from .report import AnalysisReport, analyze_state, load_matrix_file
from .states import PRIMARY_PARAMETER, NamedStateSpec, dilute, random_density, random_separable
from .verdict import DEFAULT_TOL, Criterion

EXIT_PASS, EXIT_ERROR, EXIT_INSEPARABLE = 0, 1, 2
MAX_COMPARE_DIM = 64

CSV_EXTRA_COLUMNS = ("conditional_entropy_bits", "conditional_max_eigenvalue", "certified_inseparable")


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _parse_params(items) -> dict:
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise SepscopeError(f"--param expects key=value, got {item!r}")
        try:
            out[key.strip()] = float(value)
        except ValueError:
            raise SepscopeError(f"--param {key}: {value!r} is not a number") from None
    return out


def parse_range(text: str) -> np.ndarray:
    """``lo:hi:step`` -> inclusive grid of parameter values."""
    try:
        lo, hi, step = (float(p) for p in text.split(":"))
    except ValueError:
        raise SepscopeError(f"--range expects lo:hi:step, got {text!r}") from None
    if step <= 0 or hi < lo:
        raise SepscopeError(f"empty range {text!r}")
    n = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(n)


def _parse_dims(text: str) -> tuple[int, int]:
    try:
        da, db = (int(p) for p in text.lower().split("x"))
    except ValueError:
        raise SepscopeError(f"--dims expects dAxdB, e.g. 2x3, got {text!r}") from None
    if da < 1 or db < 1 or da * db > MAX_COMPARE_DIM:
        raise SepscopeError(f"--dims {text}: need positive dimensions with d_A*d_B <= {MAX_COMPARE_DIM}")
    return da, db


def _default_tol() -> float:
    env = os.environ.get("SEPSCOPE_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            raise SepscopeError(f"SEPSCOPE_TOL={env!r} is not a number") from None
    return DEFAULT_TOL


def _exit_code(report: AnalysisReport) -> int:
    return EXIT_INSEPARABLE if report.certified_inseparable else EXIT_PASS


# analyze


def cmd_analyze(args, out) -> int:
    if bool(args.state) == bool(args.file):
        raise SepscopeError("analyze needs exactly one of --state or --file")
    if args.file:
        rho = load_matrix_file(args.file)
        source = {"file": args.file}
    else:
        spec = NamedStateSpec(args.state, _parse_params(args.param))
        rho = spec.build()
        source = {"state": spec.to_dict()}
    report = analyze_state(rho, source, tol=args.tol, rank_tol=args.rank_tol)
    if args.format == "json":
        out.write(report.to_json(indent=2) + "\n")
    elif args.format == "csv":
        w = csv.writer(out)
        w.writerow(["criterion", "statistic", "passes"])
        for v in report.verdicts:
            w.writerow([v.criterion.value, _fmt(v.statistic), int(v.passes)])
    else:
        out.write(report.to_text() + "\n")
    return _exit_code(report)


# sweep


def sweep_rows(spec: NamedStateSpec, vary: str, values, criteria, tol: float, rank_tol: float):
    """One dict per parameter value, criteria keyed by name."""
    criteria = sorted((Criterion(c) for c in criteria), key=lambda c: c.value)
    rows = []
    for x in values:
        rho = spec.with_param(vary, float(x)).build()
        rep = criterion_report(rho, tol=tol, rank_tol=rank_tol, criteria=criteria)
        amp = conditional_amplitude(rho, "B", rank_tol=rank_tol)
        row = {vary: float(x)}
        for v in rep.verdicts:
            row[v.criterion.value] = v.statistic
        row["conditional_entropy_bits"] = conditional_entropy(rho, amplitude=amp)
        row["conditional_max_eigenvalue"] = amp.max_eigenvalue
        row["certified_inseparable"] = rep.certified_inseparable
        rows.append(row)
    return rows


def cmd_sweep(args, out) -> int:
    spec = NamedStateSpec(args.state, _parse_params(args.param))
    vary = args.vary or PRIMARY_PARAMETER.get(spec.name)
    if vary is None:
        raise SepscopeError(f"family {spec.name.value} has no default sweep parameter; pass --vary")
    values = parse_range(args.range)
    criteria = args.criteria.split(",") if args.criteria else [c.value for c in Criterion]
    rows = sweep_rows(spec, vary, values, criteria, args.tol, args.rank_tol)
    if args.format == "json":
        out.write(json.dumps({"state": spec.to_dict(), "vary": vary, "rows": rows}, indent=2) + "\n")
        return EXIT_PASS
    columns = list(rows[0].keys())
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([int(r[c]) if isinstance(r[c], bool) else _fmt(r[c]) for c in columns])
    else:
        for r in rows:
            flag = "INSEPARABLE" if r["certified_inseparable"] else "-"
            out.write(f"{vary}={_fmt(r[vary])}  lambda_min={_fmt(r.get('Lambda', float('nan')))}  "
                      f"S(A|B)={_fmt(r['conditional_entropy_bits'])}  {flag}\n")
    return EXIT_PASS


# compare


def _sample(kind: str, dims, seed: int, rank, terms):
    if kind == "separable":
        return random_separable(dims[0], dims[1], terms, seed)
    return random_density(dims[0], dims[1], rank, seed)


def compare_ensemble(dims, samples: int, seed: int, *, ensemble="random", rank=None, terms=4,
                     tol=DEFAULT_TOL, rank_tol=RANK_TOL, jobs: int = 1) -> dict:
    """Failure statistics of every criterion over a seeded ensemble.

    Sample ``i`` uses seed ``seed + i``, so results do not depend on ``jobs``.
    """
    names = [c.value for c in Criterion]

    def run(i):
        rho = _sample(ensemble, dims, seed + i, rank, terms)
        rep = criterion_report(rho, tol=tol, rank_tol=rank_tol)
        return {v.criterion.value: not v.passes for v in rep.verdicts}

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            fails = list(pool.map(run, range(samples)))
    else:
        fails = [run(i) for i in range(samples)]

    counts = {c: sum(f[c] for f in fails) for c in names}
    pairwise = {
        c1: {c2: sum(f[c1] and not f[c2] for f in fails) for c2 in names if c2 != c1} for c1 in names
    }
    lam, pta, spec = Criterion.LAMBDA.value, Criterion.PARTIAL_TRANSPOSE_A.value, Criterion.SPECTRAL_CONDITIONAL.value
    lam_fail = counts[lam]
    hidden = sum(f[lam] and not f[spec] for f in fails)
    return {
        "dims": list(dims),
        "samples": samples,
        "seed": seed,
        "ensemble": ensemble,
        "tolerance": tol,
        "failures": counts,
        "fractions": {c: (counts[c] / samples if samples else 0.0) for c in names},
        "certified_inseparable": sum(any(f.values()) for f in fails),
        "fails_but_passes": pairwise,
        "lambda_xor_partial_transpose_a": sum(f[lam] != f[pta] for f in fails),
        "spectral_fails_lambda_passes": sum(f[spec] and not f[lam] for f in fails),
        "inseparable_with_classical_spectrum": {
            "count": hidden,
            "of_lambda_failures": lam_fail,
            "fraction": hidden / lam_fail if lam_fail else 0.0,
        },
    }


def cmd_compare(args, out) -> int:
    dims = _parse_dims(args.dims)
    if args.samples < 1:
        raise SepscopeError("--samples must be >= 1")
    summary = compare_ensemble(dims, args.samples, args.seed, ensemble=args.ensemble, rank=args.rank,
                               terms=args.terms, tol=args.tol, rank_tol=args.rank_tol, jobs=args.jobs)
    if args.format == "json":
        out.write(json.dumps(summary, indent=2) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["criterion", "failures", "fraction"])
        for c, n in summary["failures"].items():
            w.writerow([c, n, _fmt(summary["fractions"][c])])
    else:
        out.write(f"{summary['ensemble']} ensemble, {dims[0]}x{dims[1]}, "
                  f"{summary['samples']} samples, seed {summary['seed']}\n")
        for c, n in summary["failures"].items():
            out.write(f"  {c:<22} fails {n:>6}  ({summary['fractions'][c]:.4f})\n")
        h = summary["inseparable_with_classical_spectrum"]
        out.write(f"  Lambda fails but rho_A|B <= 1: {h['count']} of {h['of_lambda_failures']}\n")
    return EXIT_PASS


# dilute


def cmd_dilute(args, out) -> int:
    inner_spec = NamedStateSpec(args.inner, _parse_params(args.inner_param))
    outer_spec = NamedStateSpec(args.outer, _parse_params(args.outer_param))
    inner, outer = inner_spec.build(), outer_spec.build()
    joint = dilute(inner, outer)
    reports = {
        "inner": analyze_state(inner, {"state": inner_spec.to_dict()}, tol=args.tol, rank_tol=args.rank_tol),
        "outer": analyze_state(outer, {"state": outer_spec.to_dict()}, tol=args.tol, rank_tol=args.rank_tol),
        "diluted": analyze_state(
            joint,
            {"dilute": {"inner": inner_spec.to_dict(), "outer": outer_spec.to_dict()}},
            tol=args.tol,
            rank_tol=args.rank_tol,
        ),
    }
    if args.format == "json":
        out.write(json.dumps({k: r.to_dict() for k, r in reports.items()}, indent=2) + "\n")
    else:
        for k, r in reports.items():
            out.write(f"[{k}]\n{r.to_text()}\n")
    return _exit_code(reports["diluted"])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="decision tolerance (default 1e-9 or $SEPSCOPE_TOL)")
    common.add_argument("--rank-tol", type=float, default=RANK_TOL, help="support cutoff on eigenvalues")
    common.add_argument("--format", choices=("json", "csv", "text"), default=None)

    p = argparse.ArgumentParser(prog="sepscope", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=f"sepscope {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="run every criterion on one state")
    a.add_argument("--state", help="named state family, e.g. werner, horodecki3x3, singlet")
    a.add_argument("--param", action="append", metavar="K=V", help="state parameter (repeatable)")
    a.add_argument("--file", help="JSON matrix file")
    a.set_defaults(func=cmd_analyze, default_format="json")

    s = sub.add_parser("sweep", parents=[common], help="scan one state parameter")
    s.add_argument("--state", required=True)
    s.add_argument("--param", action="append", metavar="K=V", help="fixed parameter (repeatable)")
    s.add_argument("--vary", help="parameter to scan (default: the family's main parameter)")
    s.add_argument("--range", required=True, metavar="LO:HI:STEP")
    s.add_argument("--criteria", help="comma-separated criterion names (default: all)")
    s.set_defaults(func=cmd_sweep, default_format="csv")

    c = sub.add_parser("compare", parents=[common], help="criterion statistics over a random ensemble")
    c.add_argument("--dims", default="2x2", metavar="DAxDB")
    c.add_argument("--samples", type=int, default=1000)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--ensemble", choices=("random", "separable"), default="random")
    c.add_argument("--rank", type=int, default=None, help="rank of random states (default full)")
    c.add_argument("--terms", type=int, default=4, help="product terms per separable sample")
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(func=cmd_compare, default_format="json")

    d = sub.add_parser("dilute", parents=[common], help="tensor an inner state with an outer one")
    d.add_argument("--inner", required=True)
    d.add_argument("--inner-param", action="append", metavar="K=V")
    d.add_argument("--outer", required=True)
    d.add_argument("--outer-param", action="append", metavar="K=V")
    d.set_defaults(func=cmd_dilute, default_format="json")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_PASS
    try:
        if args.tol is None:
            args.tol = _default_tol()
        if args.format is None:
            args.format = args.default_format
        return args.func(args, out)
    except (SepscopeError, OSError) as exc:
        print(f"sepscope: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def run(argv) -> tuple[int, str]:
    """Invoke the CLI in-process and capture stdout."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
