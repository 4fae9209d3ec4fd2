"""Command-line front end.

Exit codes: 0 all assertions hold, 1 an assertion failed, 2 usage or
parameter error.  Measured (Tier-2) quantities never change the exit code.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .affine import apply_d, apply_e, apply_f, apply_h
from .core import DeltaConvention, FockVector, Params, fmt_scalar, mono, scalar
from .heisenberg import apply_a, apply_a_star, apply_b
from .intertwiner import SingularError, SingularMode, WindowError, singular_vector, solve_singular
from .partitions import BetaTable, BetaUndefined, fmt_partition
from .report import canonical_dumps
from .suites import DEFAULT_B_LEVEL, SUITES, Settings, SuiteError, run_suite
from .virasoro import apply_L, apply_lbar


class UsageError(Exception):
    pass


def _scalar(text: str) -> Fraction:
    try:
        return scalar(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _m_range(text: str) -> tuple[int, ...]:
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from exc
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return tuple(range(lo, hi + 1))


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lambda", dest="lam", type=_scalar, default=Fraction(3, 2))
    p.add_argument("--kappa", type=_scalar, default=Fraction(2))
    p.add_argument("--mu", type=_scalar, default=Fraction(0))
    p.add_argument("--b-level", default=None, help="p/q, or 'kappa' to tie it to the level")
    p.add_argument("--m", dest="m_weight", type=int, default=1)
    p.add_argument("--beta1", type=_scalar, default=Fraction(1))
    p.add_argument("--delta-convention", choices=["affine", "virasoro"], default="virasoro")


def _params(args, default_b_level: str) -> Params:
    level = args.b_level if args.b_level is not None else default_b_level
    b_level = args.kappa if level == "kappa" else _scalar(level)
    if args.m_weight < 0:
        raise UsageError("--m must be >= 0")
    return Params(
        lam=args.lam,
        kappa=args.kappa,
        mu=args.mu,
        b_level=b_level,
        m_weight=args.m_weight,
        beta1=args.beta1,
        delta_convention=DeltaConvention(args.delta_convention),
    )


def _write_report(path: str | None, text: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _run_and_report(name: str, params: Params, settings: Settings, report_path: str | None, fmt: str = "table") -> int:
    report = run_suite(name, params, settings)
    text = report.dumps()
    _write_report(report_path, text)
    if fmt == "json":
        sys.stdout.write(text)
    else:
        for line in report.summary_lines():
            print(line)
        print(("PASS" if report.passed else "FAIL") + f" {name}")
    return 0 if report.passed else 1


def cmd_verify(args) -> int:
    params = _params(args, DEFAULT_B_LEVEL[args.suite])
    settings = Settings(
        range=args.range,
        window=args.window,
        samples=args.samples,
        seed=args.seed,
        m_range=args.m_range,
        degree=args.degree,
        max_n=args.max_n,
        mode=args.mode,
        oracle_pairs=args.oracle_pairs,
        central_charge=args.central_charge,
    )
    return _run_and_report(args.suite, params, settings, args.report, args.format)


def cmd_kz(args) -> int:
    params = _params(args, DEFAULT_B_LEVEL["kz"])
    settings = Settings(window=args.window, samples=args.samples, seed=args.seed, m_range=args.m_range, mode=args.mode)
    return _run_and_report("kz", params, settings, args.report)


OPS = {
    "a": lambda n, v, p: apply_a(n, v),
    "a*": lambda n, v, p: apply_a_star(n, v),
    "b": lambda n, v, p: apply_b(n, v, p),
    "e": lambda n, v, p: apply_e(n, v, p),
    "f": lambda n, v, p: apply_f(n, v),
    "h": lambda n, v, p: apply_h(n, v, p),
    "L": lambda n, v, p: apply_L(n, v, p),
    "Lbar": lambda n, v, p: apply_lbar(n, v),
}


def parse_word(text: str) -> list[tuple[str, int | None]]:
    word = []
    for token in text.split(","):
        token = token.strip()
        if token == "d":
            word.append(("d", None))
            continue
        name, sep, idx = token.rpartition(":")
        if not sep or name not in OPS:
            raise UsageError(f"cannot parse mode token {token!r}")
        try:
            word.append((name, int(idx)))
        except ValueError as exc:
            raise UsageError(f"bad mode index in {token!r}") from exc
    if not word:
        raise UsageError("empty word")
    return word


def parse_start(text: str) -> FockVector:
    if text in ("vac", "w"):
        return FockVector.basis(mono())
    try:
        return FockVector.from_json(json.loads(text))
    except (ValueError, TypeError, KeyError) as exc:
        raise UsageError(f"start state must be 'vac' or a JSON term list: {exc}") from exc


def act(word: list[tuple[str, int | None]], v: FockVector, params: Params) -> FockVector:
    for name, n in reversed(word):
        v = apply_d(v, params) if name == "d" else OPS[name](n, v, params)
    return v


def cmd_act(args) -> int:
    params = _params(args, "1")
    v = act(parse_word(args.word), parse_start(args.start), params)
    if args.format == "json":
        sys.stdout.write(canonical_dumps(v.to_json()))
    else:
        for term in v.to_json():
            print(json.dumps(term, separators=(",", ":"), ensure_ascii=False))
    return 0


def beta_rows(table: BetaTable) -> list[tuple[str, str]]:
    return [(fmt_partition(pi), fmt_scalar(v)) for pi, v in table.rows()]


def _latex_scalar(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    sign = "-" if x < 0 else ""
    return f"{sign}\\frac{{{abs(x.numerator)}}}{{{x.denominator}}}"


def cmd_beta(args) -> int:
    params = _params(args, "kappa")
    if params.kappa == 0:
        raise UsageError("beta needs --kappa != 0")
    table = BetaTable.from_formula(params.m_weight, params.kappa, args.max_n, params.beta1)
    if args.format == "json":
        sys.stdout.write(canonical_dumps(table.to_json()))
    elif args.format == "latex":
        print("\\begin{tabular}{ll}")
        print("$\\pi$ & $\\beta_\\pi$ \\\\ \\hline")
        for pi, v in table.rows():
            print(f"${fmt_partition(pi)}$ & ${_latex_scalar(v)}$ \\\\")
        print("\\end{tabular}")
    else:
        rows = beta_rows(table)
        width = max([len("partition")] + [len(r[0]) for r in rows])
        print(f"{'partition':<{width}}  beta")
        for pi, v in rows:
            print(f"{pi:<{width}}  {v}")
    return 0


def cmd_singular(args) -> int:
    params = _params(args, "kappa")
    if params.kappa == 0:
        raise UsageError("singular needs --kappa != 0")
    mode = SingularMode.FORMULA if args.formula else SingularMode.SOLVE
    dimension = len(solve_singular(args.degree, params))
    out = {"mode": mode.value, "degree": args.degree, "params": params.to_dict(),
           "dimension": dimension, "dimension_one": dimension == 1}
    try:
        out["tensor"] = singular_vector(mode, args.degree, params).to_json()
    except SingularError as exc:
        out["error"] = str(exc)
    text = canonical_dumps(out)
    _write_report(args.report, text)
    sys.stdout.write(text)
    return 0 if "tensor" in out else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wakimoto", description="Exact checks on the imaginary Wakimoto module of affine sl(2).")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    _add_params(v)
    v.add_argument("--range", type=int, default=None)
    v.add_argument("--window", type=int, default=None)
    v.add_argument("--samples", type=int, default=None)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--m-range", type=_m_range, default=(-1, 0, 1, 2))
    v.add_argument("--degree", type=int, default=5)
    v.add_argument("--max-n", type=int, default=8)
    v.add_argument("--mode", choices=["solve", "formula"], default="solve")
    v.add_argument("--oracle-pairs", type=int, default=100)
    v.add_argument("--central-charge", type=_scalar, default=None,
                   help="override the asserted central charge (default 6 - 6 mu^2)")
    v.add_argument("--report")
    v.add_argument("--format", choices=["json", "table"], default="table")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("act", help="apply a mode word (right to left) to a state")
    a.add_argument("word")
    a.add_argument("--start", default="vac")
    a.add_argument("--format", choices=["jsonl", "json"], default="jsonl")
    _add_params(a)
    a.set_defaults(func=cmd_act)

    b = sub.add_parser("beta", help="closed-form beta table")
    _add_params(b)
    b.add_argument("--max-n", type=int, default=8)
    b.add_argument("--format", choices=["table", "json", "latex"], default="table")
    b.set_defaults(func=cmd_beta)

    s = sub.add_parser("singular", help="singular vector through a z-degree")
    _add_params(s)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--solve", action="store_true")
    g.add_argument("--formula", action="store_true")
    s.add_argument("--degree", type=int, default=5)
    s.add_argument("--report")
    s.set_defaults(func=cmd_singular)

    k = sub.add_parser("kz", help="KZ suite")
    _add_params(k)
    k.add_argument("--m-range", type=_m_range, default=(-1, 0, 1, 2))
    k.add_argument("--window", type=int, default=4)
    k.add_argument("--samples", type=int, default=None)
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--mode", choices=["solve", "formula"], default="solve")
    k.add_argument("--report")
    k.set_defaults(func=cmd_kz)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, SuiteError, WindowError, SingularError, BetaUndefined, ZeroDivisionError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
