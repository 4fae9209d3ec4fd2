"""The irreducible sl(2)-module F_m, its dual, and the evaluation action.

Basis u_j = f^j u^m, 0 <= j <= m.  The dual carries the contragredient
action (X y)(u) = -y(X u), so the dual vector u_j^* has h-weight 2j - m and
f u_j^* = -u_{j-1}^*.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

GENERATORS = ("e", "f", "h")


def _clean(coeffs: Mapping[int, Fraction]) -> dict[int, Fraction]:
    return {j: Fraction(c) for j, c in sorted(coeffs.items()) if c}


def act_on_basis(x: str, m: int, j: int) -> tuple[int, Fraction] | None:
    """x u_j = c u_k as (k, c), or None when the result is zero."""
    if not 0 <= j <= m:
        raise ValueError(f"u_{j} is not a basis vector of F_{m}")
    if x == "f":
        return (j + 1, Fraction(1)) if j < m else None
    if x == "h":
        return (j, Fraction(m - 2 * j)) if m != 2 * j else None
    if x == "e":
        return (j - 1, Fraction(j * (m - j + 1))) if j > 0 else None
    if x == "c":
        return None
    raise ValueError(f"unknown sl(2) generator {x!r}")


@dataclass(frozen=True)
class SL2Vector:
    m: int
    coeffs: tuple[tuple[int, Fraction], ...] = ()

    @classmethod
    def of(cls, m: int, coeffs: Mapping[int, object]) -> "SL2Vector":
        if m < 0:
            raise ValueError("m must be >= 0")
        for j in coeffs:
            if not 0 <= j <= m:
                raise ValueError(f"index {j} outside 0..{m}")
        return cls(m, tuple(_clean(coeffs).items()))

    @classmethod
    def basis(cls, m: int, j: int) -> "SL2Vector":
        return cls.of(m, {j: 1})

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.coeffs)

    def __add__(self, other: "SL2Vector") -> "SL2Vector":
        d = self.as_dict()
        for j, c in other.coeffs:
            d[j] = d.get(j, 0) + c
        return SL2Vector.of(self.m, d)

    def __sub__(self, other: "SL2Vector") -> "SL2Vector":
        return self + other * -1

    def __mul__(self, c) -> "SL2Vector":
        return SL2Vector.of(self.m, {j: v * c for j, v in self.coeffs})

    def __bool__(self) -> bool:
        return bool(self.coeffs)


def sl2_act(x: str, v: SL2Vector) -> SL2Vector:
    out: dict[int, Fraction] = {}
    for j, c in v.coeffs:
        r = act_on_basis(x, v.m, j)
        if r is not None:
            out[r[0]] = out.get(r[0], 0) + r[1] * c
    return SL2Vector.of(v.m, out)


def evaluation_act(x: str, n: int, v: SL2Vector, zexp: int) -> tuple[SL2Vector, int]:
    """(x tensor t^n) acting on v z^zexp in F_m[z, z^-1]; the centre acts by 0."""
    return sl2_act(x, v), zexp + n


@dataclass(frozen=True)
class DualWeight:
    """The dual basis vector u_j^* of F_m^*."""

    m: int
    j: int

    def __post_init__(self):
        if not 0 <= self.j <= self.m:
            raise ValueError(f"dual index {self.j} outside 0..{self.m}")

    @property
    def alpha(self) -> int:
        return 2 * self.j - self.m


def dual_basis(m: int) -> list[DualWeight]:
    return [DualWeight(m, j) for j in range(m + 1)]


def dual_act(x: str, y: Mapping[int, Fraction], m: int) -> dict[int, Fraction]:
    """Contragredient action on a dual vector given as {j: coefficient of u_j^*}."""
    out: dict[int, Fraction] = {}
    for j, c in y.items():
        # (x y)(u_i) = -y(x u_i): collect i with x u_i proportional to u_j
        for i in range(m + 1):
            r = act_on_basis(x, m, i)
            if r is not None and r[0] == j:
                out[i] = out.get(i, 0) - r[1] * c
    return _clean(out)
