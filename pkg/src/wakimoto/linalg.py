"""Sparse exact Gaussian elimination over the rationals.

Rows are dicts column -> Fraction.  Only what the singular-vector solver
needs: reduced row echelon form and a nullspace basis.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Sequence

Row = dict


def rref(rows: Iterable[Row], columns: Sequence[Hashable]) -> tuple[list[Row], list[Hashable]]:
    """Reduce the rows; pivots are chosen in the given column order.

    Returns (reduced rows, pivot columns), one pivot per returned row.
    """
    order = {c: i for i, c in enumerate(columns)}
    pivots: dict[Hashable, Row] = {}
    for row in rows:
        row = {c: Fraction(v) for c, v in row.items() if v}
        # pivot rows are fully reduced, so one pass over the original columns suffices
        for c in [c for c in row if c in pivots]:
            factor = row.get(c)
            if not factor:
                continue
            for pc, pv in pivots[c].items():
                nv = row.get(pc, 0) - factor * pv
                if nv:
                    row[pc] = nv
                else:
                    row.pop(pc, None)
        if not row:
            continue
        lead = min(row, key=order.__getitem__)
        inv = 1 / row[lead]
        row = {c: v * inv for c, v in row.items()}
        # back-substitute into earlier pivots
        for pc, prow in pivots.items():
            if lead in prow:
                factor = prow[lead]
                for c, v in row.items():
                    nv = prow.get(c, 0) - factor * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
        pivots[lead] = row
    piv_cols = sorted(pivots, key=order.__getitem__)
    return [pivots[c] for c in piv_cols], piv_cols


def nullspace(rows: Iterable[Row], columns: Sequence[Hashable]) -> list[dict]:
    """Basis of {x : row . x = 0 for every row}, one vector per free column."""
    reduced, piv_cols = rref(rows, columns)
    pivset = set(piv_cols)
    basis = []
    for free in columns:
        if free in pivset:
            continue
        vec = {free: Fraction(1)}
        for pc, row in zip(piv_cols, reduced):
            v = row.get(free)
            if v:
                vec[pc] = -v
        basis.append(vec)
    return basis
