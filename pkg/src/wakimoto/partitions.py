"""Integer partitions and the closed-form beta coefficients of the singular vector.

A partition is a non-increasing tuple of positive parts.  For a partition
with multiplicities n_k the closed form is

    beta = m^(N-1) / ((-kappa)^(N-1) * prod k^(n_k) * prod n_k!) * beta1,    N = sum n_k

and it is meant to satisfy  m beta(pi - k) + k n_k kappa beta(pi) = 0.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterator

from .core import scalar
from .report import VerificationReport

Partition = tuple[int, ...]


def _parts(n: int, largest: int) -> Iterator[Partition]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _parts(n - first, first):
            yield (first,) + rest


def partitions(n: int) -> list[Partition]:
    """All partitions of n, largest first part first."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return list(_parts(n, n))


def partitions_upto(n: int) -> list[Partition]:
    return [p for k in range(n + 1) for p in partitions(k)]


def multiplicities(pi: Partition) -> dict[int, int]:
    return dict(sorted(Counter(pi).items()))


def remove_part(pi: Partition, k: int) -> Partition:
    parts = list(pi)
    parts.remove(k)
    return tuple(parts)


def fmt_partition(pi: Partition) -> str:
    return "(" + ",".join(map(str, pi)) + ")"


class BetaUndefined(ValueError):
    pass


def beta_closed_form(pi: Partition, m, kappa, beta1=1) -> Fraction:
    """Closed-form beta for a nonempty partition."""
    kappa, beta1 = scalar(kappa), scalar(beta1)
    if kappa == 0:
        raise BetaUndefined("beta needs kappa != 0")
    if not pi:
        raise ValueError("beta is defined for nonempty partitions")
    mult = multiplicities(pi)
    total = sum(mult.values())
    denom = (-kappa) ** (total - 1)
    for k, nk in mult.items():
        denom *= Fraction(k) ** nk * factorial(nk)
    return Fraction(m) ** (total - 1) / denom * beta1


@dataclass
class BetaTable:
    m: int
    kappa: Fraction
    beta1: Fraction
    max_n: int
    values: dict[Partition, Fraction] = field(default_factory=dict)

    @classmethod
    def from_formula(cls, m: int, kappa, max_n: int, beta1=1) -> "BetaTable":
        kappa, beta1 = scalar(kappa), scalar(beta1)
        values = {pi: beta_closed_form(pi, m, kappa, beta1) for pi in partitions_upto(max_n) if pi}
        return cls(m, kappa, beta1, max_n, values)

    def rows(self) -> list[tuple[Partition, Fraction]]:
        return list(self.values.items())

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "kappa": str(self.kappa),
            "beta1": str(self.beta1),
            "max_n": self.max_n,
            "rows": [{"partition": list(pi), "beta": str(v)} for pi, v in self.values.items()],
        }


def beta_recurrence_check(table: BetaTable, scale: int = 1) -> VerificationReport:
    """m beta(pi - k) + scale * k n_k kappa beta(pi) = 0 for every (pi, k) with pi - k nonempty.

    ``scale=1`` is the recurrence attached to the closed form; ``scale=2``
    is the one a level-kappa bracket [h_k, h_-k] = 2 k kappa would give.
    """
    report = VerificationReport(
        "beta",
        None,
        {"m": table.m, "kappa": str(table.kappa), "beta1": str(table.beta1), "max_n": table.max_n, "scale": scale},
    )
    check = report.check("m*beta(pi-k)+k*n_k*kappa*beta(pi)=0")
    bad = []
    for pi, value in table.values.items():
        for k, nk in multiplicities(pi).items():
            smaller = remove_part(pi, k)
            if not smaller:
                continue
            lhs = table.m * table.values[smaller] + scale * k * nk * table.kappa * value
            if not check.record(lhs == 0, lambda: {"partition": list(pi), "k": k, "residual": str(lhs)}):
                bad.append({"partition": list(pi), "k": k})
    if bad:
        report.tier2["violations"] = bad
    report.tier2["entries"] = len(table.values)
    return report
