"""Deterministic Tier-2 reports kept under reports/ and compared byte-for-byte by the tests.

    python3 -m wakimoto.golden reports/
"""

from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

from .core import Params
from .intertwiner import compare_formula_solve
from .report import canonical_dumps
from .suites import Settings, run_suite

FORMULA_VS_SOLVE_CASES = [(1, Fraction(1), Fraction(0)), (2, Fraction(3, 2), Fraction(1)), (3, Fraction(-2), Fraction(1, 2))]


def formula_vs_solve() -> str:
    rows = []
    for m, kappa, lam in FORMULA_VS_SOLVE_CASES:
        rows.append(compare_formula_solve(5, Params(lam=lam, kappa=kappa, b_level=kappa, m_weight=m)))
    return canonical_dumps({"maxz": 5, "cases": rows})


def phi_b_residual() -> str:
    p = Params(lam=Fraction(3, 2), kappa=Fraction(2), b_level=Fraction(2), m_weight=1)
    rep = run_suite("phi", p, Settings(seed=0))
    return canonical_dumps({"params": p.to_dict(), "b_commutator": rep.tier2["b_commutator"]})


def kz_residuals() -> str:
    p = Params(lam=Fraction(3, 2), kappa=Fraction(2), b_level=Fraction(1), m_weight=1)
    return run_suite("kz", p, Settings(seed=0)).dumps()


GOLDEN = {
    "formula_vs_solve.json": formula_vs_solve,
    "phi_b_residual.json": phi_b_residual,
    "kz_residuals.json": kz_residuals,
}


def write_all(directory: str | Path) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for name, build in GOLDEN.items():
        path = directory / name
        path.write_text(build(), encoding="utf-8", newline="\n")
        out.append(path)
    return out


if __name__ == "__main__":
    for path in write_all(sys.argv[1] if len(sys.argv) > 1 else "reports"):
        print(path)
