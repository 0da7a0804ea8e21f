"""Command-line front end: exact computations, identity-grid verification,
and finite-field oracle comparisons.

Output formats: plain (bare value / per-point lines), latex (powers of uv),
json (a versioned RunReport with sorted keys).  Exit codes: 0 all pass,
1 verification failure, 2 usage or parameter error, 3 resource guard.

Configuration precedence is flags, then PFES_-prefixed environment
variables, then defaults.  Verification reports never embed wall-clock
timing (it goes to stderr), so serial and --parallel runs of the same
command emit byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

from . import __version__
from .qcore import (
    QPoly, QRational, LowerParamPole, NotDivisible, NotPolynomial,
    ZeroDenominator, gauss_binomial, monomial,
)
from .efun import (
    PfaffianParams, RangeError, _rank_locus_weight, discrepancy,
    grassmannian_E, local_contribution, nondeg_skew_E, pf_stringy_closed,
    pf_stringy_recursive, pf_stringy_rodland, projective_E, rank_stratum_E,
    stringy_degree,
)
from .identities import (
    CutParams, f_circ, f_closed, isotropic_E, solve_newcor,
    verify_AC_BD, verify_hj, verify_newrec, verify_phi_reductions,
)
from .mirror import (
    even_anomaly_check, even_fiber_E, fiber_E_odd,
    main_coefficient_check, main_main_check,
)
from .fq_oracle import SkewFormFp, TooLarge, count_cut_stratum, count_isotropic, count_rank_stratum
from .caching import load_cache_dir, save_cache_dir

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


# ---------------------------------------------------------------------------
# rendering

def poly_plain(p: QPoly) -> str:
    return str(p)

def poly_latex(p: QPoly) -> str:
    if p.is_zero:
        return "0"
    parts = []
    for e in range(p.degree, -1, -1):
        c = p.coeffs[e]
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            var = "uv" if e == 1 else f"(uv)^{e}"
            body = var if mag == 1 else f"{mag}{var}"
        parts.append(sign + body)
    return "".join(parts)


def poly_json(p: QPoly) -> dict:
    return {"var": "q", "coeffs": list(p.coeffs)}


def rational_json(r: QRational) -> dict:
    return {"num": poly_json(r.num), "den": poly_json(r.den)}


def render_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _run_report(command: str, parameters: dict, results: list, timing_ms) -> dict:
    return {
        "version": __version__,
        "command": command,
        "parameters": {k: parameters[k] for k in sorted(parameters)},
        "results": results,
        "timing_ms": timing_ms,
    }


def _emit_error(fmt: str, message: str, command: str) -> None:
    if fmt == "json":
        sys.stdout.write(render_report(
            {"version": __version__, "command": command, "error": message}))
    print(f"error: {message}", file=sys.stderr)


# ---------------------------------------------------------------------------
# compute

def _compute_value(target: str, args) -> QPoly | int:
    if target == "grassmannian":
        return grassmannian_E(args.k, args.n)
    if target == "e-skew":
        return nondeg_skew_E(args.i)
    if target == "rank-stratum":
        return rank_stratum_E(args.i, args.n)
    if target == "pf-stringy":
        return pf_stringy_closed(PfaffianParams(args.n, args.k))
    if target == "discrepancy":
        return discrepancy(args.j, PfaffianParams(args.n, args.k))
    if target == "local-contribution":
        return local_contribution(args.p, args.k, args.n)
    if target == "isotropic":
        return isotropic_E(args.k, args.i, args.n)
    if target == "f":
        return f_closed(CutParams(args.n, args.k, args.i))
    if target == "f-circ":
        return f_circ(CutParams(args.n, args.k, args.i))
    if target == "fiber-odd":
        return fiber_E_odd(args.k, args.n)
    if target == "fiber-even":
        return even_fiber_E(args.k, args.n)
    raise RangeError(f"unknown compute target {target!r}")

_COMPUTE_PARAMS = {
    "grassmannian": ("k", "n"),
    "e-skew": ("i",),
    "rank-stratum": ("i", "n"),
    "pf-stringy": ("n", "k"),
    "discrepancy": ("j", "n", "k"),
    "local-contribution": ("p", "k", "n"),
    "isotropic": ("k", "i", "n"),
    "f": ("k", "i", "n"),
    "f-circ": ("k", "i", "n"),
    "fiber-odd": ("k", "n"),
    "fiber-even": ("k", "n"),
}


def cmd_compute(args) -> int:
    needed = _COMPUTE_PARAMS[args.target]
    params = {}
    for name in needed:
        value = getattr(args, name)
        if value is None:
            raise RangeError(f"compute {args.target} requires --{name}")
        params[name] = value
    start = time.perf_counter()
    value = _compute_value(args.target, args)
    elapsed_ms = int((time.perf_counter() - start) * 1000)
    if args.format == "plain":
        print(value if isinstance(value, int) else poly_plain(value))
    elif args.format == "latex":
        print(value if isinstance(value, int) else poly_latex(value))
    else:
        entry = {"name": args.target, "passed": None}
        if isinstance(value, int):
            entry["value"] = value
        else:
            entry["poly"] = poly_json(value)
        sys.stdout.write(render_report(
            _run_report("compute", params, [entry], elapsed_ms)))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify suites

def _row(name: str, passed: bool, skipped: bool = False, note: str = "") -> dict:
    return {"name": name, "passed": bool(passed), "skipped": bool(skipped),
            "note": note}


def _report_row(report) -> dict:
    point = ",".join(str(x) for x in report.parameter_point)
    return _row(f"{report.identity_name}({point})", report.passed,
                report.skipped, report.note)


def _odd_range(max_n: int):
    return [n for n in range(5, max_n + 1) if n % 2 == 1]


def _grid_relg(b):
    return [(i, r) for r in range(0, b["max_r"] + 1) for i in range(0, r + 1)]

def _run_relg(point):
    i, r = point
    lhs = grassmannian_E(2 * i, 2 * r) * (monomial(2 * r + 1) - 1)
    rhs = grassmannian_E(2 * i, 2 * r + 1) * (monomial(2 * r - 2 * i + 1) - 1)
    return [_row(f"relg(i={i},r={r})", lhs == rhs)]


def _grid_oddeven(b):
    return [(r,) for r in range(1, b["max_r"] + 1)]

def _run_oddeven(point):
    (r,) = point
    even = sum((nondeg_skew_E(i) * grassmannian_E(2 * i, 2 * r)
                for i in range(1, r + 1)), start=QPoly())
    odd = sum((nondeg_skew_E(i) * grassmannian_E(2 * i, 2 * r + 1)
               for i in range(1, r + 1)), start=QPoly())
    return [
        _row(f"oddeven-even(r={r})", even == projective_E(r * (2 * r - 1) - 1)),
        _row(f"oddeven-odd(r={r})", odd == projective_E(r * (2 * r + 1) - 1)),
    ]


def _grid_sum(b):
    return [(r,) for r in range(1, b["max_r"] + 1)]

def _run_sum(point):
    (r,) = point
    lhs = QPoly()
    for i in range(1, r):
        weight = QPoly([1 if t % 2 == 0 else 0 for t in range(2 * (r - i) - 1)])
        lhs = lhs + weight * nondeg_skew_E(i) * grassmannian_E(2 * i, 2 * r + 1)
    if r == 1:
        rhs = QPoly()
    else:
        rhs = pf_stringy_rodland(r)
    return [_row(f"sum(r={r})", lhs == rhs)]


def _grid_technical(b):
    return [(n, k) for n in _odd_range(b["max_n"])
            for k in range(1, (n - 3) // 2 + 1)]

def _run_technical(point):
    n, k = point
    lhs = QPoly()
    for i in range(1, (n - 1) // 2 + 1):
        lhs = lhs + rank_stratum_E(i, n) * _rank_locus_weight(i, k, n)
    rhs = pf_stringy_closed(PfaffianParams(n, k))
    return [_row(f"technical(n={n},k={k})", lhs == rhs)]


def _grid_stpf(b):
    return [(n,) for n in _odd_range(b["max_n"])]

def _run_stpf(point):
    (n,) = point
    rows = []
    if n == 5:
        rows.append(_row("stpf-base(r=2)",
                         pf_stringy_rodland(2) == grassmannian_E(2, 5)))
    got = pf_stringy_closed(PfaffianParams(n, (n - 3) // 2))
    rows.append(_row(f"stpf(n={n})", got == pf_stringy_rodland((n - 1) // 2)))
    return rows


def _grid_pfst2k(b):
    return [(n, k) for n in _odd_range(b["max_n"])
            for k in range(1, (n - 1) // 2 + 1)]

def _run_pfst2k(point):
    n, k = point
    params = PfaffianParams(n, k)
    closed = pf_stringy_closed(params)
    ok = (closed == pf_stringy_recursive(params)
          and closed.is_palindromic
          and closed.degree == stringy_degree(n, k))
    return [_row(f"pfst2k(n={n},k={k})", ok)]


def _grid_cut(b):
    return [(n, k, i) for n in _odd_range(b["max_n"])
            for k in range(1, (n - 1) // 2 + 1)
            for i in range(1, (n - 1) // 2 + 1)]

def _run_newrec(point):
    n, k, i = point
    return [_report_row(verify_newrec(CutParams(n, k, i)))]

def _run_acbd(point):
    n, k, i = point
    return [_report_row(r) for r in verify_AC_BD(CutParams(n, k, i))]

def _run_phi(point):
    n, k, i = point
    return [_report_row(r) for r in verify_phi_reductions(CutParams(n, k, i))]


def _grid_newcor(b):
    return [(n, i) for n in _odd_range(b["max_n"])
            for i in range(1, (n - 1) // 2 + 1)]

def _run_newcor(point):
    n, i = point
    half = (n - 1) // 2
    solved = solve_newcor(half, i, n)
    return [_row(f"newcor(k={k},i={i},n={n})",
                 solved[k - 1] == f_closed(CutParams(n, k, i)))
            for k in range(1, half + 1)]


def _grid_hj(b):
    return [(a, bb) for bb in range(0, b["max_b"] + 1) for a in range(0, bb + 1)]

def _run_hj(point):
    a, bb = point
    return [_report_row(verify_hj(a, bb))]


def _grid_main_coeff(b):
    return [(k,) for k in range(2, b["max_k"] + 1)]

def _run_main_coeff(point):
    (k,) = point
    return [_report_row(main_coefficient_check(k))]


def _grid_main_main(b):
    return [(n, k) for n in _odd_range(b["max_n"])
            for k in range(1, (n - 3) // 2 + 1)]

def _run_main_main(point):
    n, k = point
    report = main_main_check(n, k)
    return [_row(f"main-main(n={n},k={k})", report.overall and report.duality_ok)]


def _grid_even_anomaly(b):
    return [()]

def _run_even_anomaly(point):
    report = even_anomaly_check()
    return [_row("even-anomaly", report.passed, note=report.note)]


@dataclass(frozen=True)
class Suite:
    grid: Callable
    runner: Callable
    defaults: dict


SUITES: dict[str, Suite] = {
    "relg": Suite(_grid_relg, _run_relg, {"max_r": 8}),
    "oddeven": Suite(_grid_oddeven, _run_oddeven, {"max_r": 8}),
    "sum": Suite(_grid_sum, _run_sum, {"max_r": 8}),
    "technical": Suite(_grid_technical, _run_technical, {"max_n": 17}),
    "stpf": Suite(_grid_stpf, _run_stpf, {"max_n": 15}),
    "pfst2k": Suite(_grid_pfst2k, _run_pfst2k, {"max_n": 17}),
    "newrec": Suite(_grid_cut, _run_newrec, {"max_n": 13}),
    "newcor": Suite(_grid_newcor, _run_newcor, {"max_n": 13}),
    "hj": Suite(_grid_hj, _run_hj, {"max_b": 8}),
    "ac-bd": Suite(_grid_cut, _run_acbd, {"max_n": 11}),
    "phi": Suite(_grid_cut, _run_phi, {"max_n": 11}),
    "main-coeff": Suite(_grid_main_coeff, _run_main_coeff, {"max_k": 10}),
    "main-main": Suite(_grid_main_main, _run_main_main, {"max_n": 13}),
    "even-anomaly": Suite(_grid_even_anomaly, _run_even_anomaly, {}),
}


def _suite_bounds(name: str, args) -> dict:
    bounds = dict(SUITES[name].defaults)
    for key in bounds:
        flag = getattr(args, key, None)
        if flag is not None:
            bounds[key] = flag
    return bounds


def _run_point(task):
    suite, point = task
    return SUITES[suite].runner(point)


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    tasks = []
    for name in names:
        for point in SUITES[name].grid(_suite_bounds(name, args)):
            tasks.append((name, point))
    start = time.perf_counter()
    rows: list[dict] = []
    if args.parallel:
        with ProcessPoolExecutor() as pool:
            for batch in pool.map(_run_point, tasks):
                rows.extend(batch)
    else:
        for task in tasks:
            rows.extend(_run_point(task))
    elapsed_ms = int((time.perf_counter() - start) * 1000)

    failed = sum(1 for row in rows if not row["passed"])
    skipped = sum(1 for row in rows if row["skipped"])
    passed = len(rows) - failed - skipped
    if args.format == "json":
        sys.stdout.write(render_report(_run_report(
            "verify", {"suite": args.suite}, rows, None)))
    else:
        for row in rows:
            status = ("SKIP" if row["skipped"]
                      else ("PASS" if row["passed"] else "FAIL"))
            note = f"  ({row['note']})" if row["note"] else ""
            print(f"{row['name']} {status}{note}")
        print(f"suite {args.suite}: {len(rows)} points, "
              f"{passed} passed, {failed} failed, {skipped} skipped")
    print(f"verify completed in {elapsed_ms} ms", file=sys.stderr)
    return EXIT_OK if failed == 0 else EXIT_FAIL


# ---------------------------------------------------------------------------
# oracle

def cmd_oracle(args) -> int:
    p, n = args.p, args.n
    if args.target == "rank-stratum":
        params = {"p": p, "n": n, "rank": args.rank}
        count = count_rank_stratum(p, n, args.rank, args.max_enum)
        symbolic = (0 if args.rank == 0
                    else rank_stratum_E(args.rank // 2, n)(p))
    elif args.target == "isotropic":
        params = {"p": p, "n": n, "dim": args.dim, "alpha_rank": args.alpha_rank}
        if args.alpha_rank % 2:
            raise RangeError("--alpha-rank must be even")
        alpha = SkewFormFp.standard(p, n, args.alpha_rank // 2)
        count = count_isotropic(p, n, args.dim, alpha, args.max_enum)
        if args.alpha_rank == 0 or args.dim < 2:
            symbolic = gauss_binomial(n, args.dim, 1)(p)
        elif args.dim % 2 == 0:
            symbolic = isotropic_E(args.dim // 2, args.alpha_rank // 2, n)(p)
        else:
            raise RangeError("no symbolic counterpart for odd --dim with a "
                             "nonzero form; use an even subspace dimension")
    elif args.target == "cut-stratum":
        params = {"p": p, "n": n, "rank": args.rank, "alpha_rank": args.alpha_rank}
        if args.alpha_rank % 2 or args.alpha_rank < 2:
            raise RangeError("--alpha-rank must be even and positive")
        alpha = SkewFormFp.standard(p, n, args.alpha_rank // 2)
        count = count_cut_stratum(p, n, args.rank, alpha, args.max_enum)
        symbolic = f_circ(CutParams(n, args.rank // 2, args.alpha_rank // 2))(p)
    else:
        raise RangeError(f"unknown oracle target {args.target!r}")

    match = count == symbolic
    if args.format == "json":
        row = {"name": args.target, "count": count, "symbolic": symbolic,
               "passed": match}
        sys.stdout.write(render_report(_run_report(
            "oracle", params, [row], None)))
    else:
        print(f"count={count} symbolic={symbolic} {'MATCH' if match else 'MISMATCH'}")
    return EXIT_OK if match else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pfes",
        description="Exact stringy E-functions of skew-form rank loci: "
                    "compute values, verify identity grids, cross-check "
                    "against finite-field counts.")
    parser.add_argument("--cache-dir", default=None,
                        help="persist memoized polynomials between runs "
                             "(also PFES_CACHE_DIR)")
    sub = parser.add_subparsers(dest="command", required=True)

    comp = sub.add_parser("compute", help="print one exact value")
    comp.add_argument("target", choices=sorted(_COMPUTE_PARAMS))
    for flag in ("n", "k", "i", "j", "p"):
        comp.add_argument(f"--{flag}", type=int, default=None)
    comp.add_argument("--format", choices=("plain", "latex", "json"),
                      default="plain")
    comp.set_defaults(handler=cmd_compute)

    ver = sub.add_parser("verify", help="run an identity suite over its grid")
    ver.add_argument("suite", choices=sorted(SUITES) + ["all"])
    ver.add_argument("--max-n", dest="max_n", type=int, default=None)
    ver.add_argument("--max-r", dest="max_r", type=int, default=None)
    ver.add_argument("--max-b", dest="max_b", type=int, default=None)
    ver.add_argument("--max-k", dest="max_k", type=int, default=None)
    ver.add_argument("--parallel", action="store_true")
    ver.add_argument("--format", choices=("plain", "json"), default="plain")
    ver.set_defaults(handler=cmd_verify)

    orc = sub.add_parser("oracle", help="compare a brute-force count with "
                                        "the symbolic value at q = p")
    orc.add_argument("target", choices=("rank-stratum", "isotropic", "cut-stratum"))
    orc.add_argument("--p", type=int, required=True)
    orc.add_argument("--n", type=int, required=True)
    orc.add_argument("--rank", type=int, default=0)
    orc.add_argument("--dim", type=int, default=0)
    orc.add_argument("--alpha-rank", dest="alpha_rank", type=int, default=0)
    orc.add_argument("--max-enum", dest="max_enum", type=int, default=None,
                     help="override the enumeration guard (also PFES_MAX_ENUM)")
    orc.add_argument("--format", choices=("plain", "json"), default="plain")
    orc.set_defaults(handler=cmd_oracle)

    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    fmt = getattr(args, "format", "plain")
    cache_dir = args.cache_dir or os.environ.get("PFES_CACHE_DIR")
    if cache_dir:
        load_cache_dir(cache_dir)
    try:
        return args.handler(args)
    except RangeError as exc:
        _emit_error(fmt, str(exc), args.command)
        return EXIT_USAGE
    except TooLarge as exc:
        _emit_error(fmt, str(exc), args.command)
        return EXIT_RESOURCE
    except (NotPolynomial, NotDivisible, ZeroDenominator, LowerParamPole) as exc:
        _emit_error(fmt, str(exc), args.command)
        return EXIT_FAIL
    finally:
        if cache_dir:
            save_cache_dir(cache_dir)


if __name__ == "__main__":
    sys.exit(main())
