"""Windowed elements of W (x) F_m[z, z^-1] z^offset and z-series of Fock vectors.

A TensorVector stores exact coefficients of (monomial, u_j, z^n) for integer
n <= complete_through; everything above the window is unknown and is never
reported.  Exponents of the underlying series are offset + n.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .core import FockMonomial, FockVector, fmt_scalar
from .sl2 import act_on_basis

Key = tuple[FockMonomial, int, int]
LeftOp = Callable[[FockVector], FockVector]


def _clean(terms: Mapping[Key, Fraction]) -> dict[Key, Fraction]:
    return {k: c for k, c in terms.items() if c}


@dataclass(frozen=True)
class TensorVector:
    m: int
    terms: Mapping[Key, Fraction]
    complete_through: int
    offset: Fraction = Fraction(0)

    @classmethod
    def make(cls, m: int, terms: Mapping[Key, object], complete_through: int, offset=0) -> "TensorVector":
        clean = {}
        for (mono, j, z), c in terms.items():
            if not 0 <= j <= m:
                raise ValueError(f"u_{j} is not in F_{m}")
            if z <= complete_through and c:
                clean[(mono, j, z)] = Fraction(c)
        return cls(m, clean, complete_through, Fraction(offset))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def truncate(self, complete_through: int) -> "TensorVector":
        ct = min(complete_through, self.complete_through)
        return TensorVector.make(self.m, self.terms, ct, self.offset)

    def with_offset(self, offset) -> "TensorVector":
        return TensorVector(self.m, self.terms, self.complete_through, Fraction(offset))

    def __add__(self, other: "TensorVector") -> "TensorVector":
        if other.m != self.m or other.offset != self.offset:
            raise ValueError("adding tensors with different F_m or offset")
        ct = min(self.complete_through, other.complete_through)
        acc: dict[Key, Fraction] = dict(self.terms)
        for k, c in other.terms.items():
            acc[k] = acc.get(k, 0) + c
        return TensorVector.make(self.m, acc, ct, self.offset)

    def __mul__(self, c) -> "TensorVector":
        return TensorVector.make(self.m, {k: v * c for k, v in self.terms.items()}, self.complete_through, self.offset)

    def __sub__(self, other: "TensorVector") -> "TensorVector":
        return self + other * -1

    def slices(self) -> dict[tuple[int, int], FockVector]:
        """Left factors grouped by (j, z)."""
        groups: dict[tuple[int, int], dict] = defaultdict(dict)
        for (mono, j, z), c in self.terms.items():
            groups[(j, z)][mono] = c
        return {k: FockVector(v) for k, v in sorted(groups.items())}

    def left(self, op: LeftOp) -> "TensorVector":
        """op (x) 1 applied coefficient-wise."""
        acc: dict[Key, Fraction] = {}
        for (j, z), vec in self.slices().items():
            for mono, c in op(vec).items():
                key = (mono, j, z)
                acc[key] = acc.get(key, 0) + c
        return TensorVector.make(self.m, acc, self.complete_through, self.offset)

    def right(self, x: str, n: int) -> "TensorVector":
        """z^n (1 (x) x); shifting by n < 0 pulls unknown terms into the window."""
        acc: dict[Key, Fraction] = {}
        for (mono, j, z), c in self.terms.items():
            r = act_on_basis(x, self.m, j)
            if r is not None:
                key = (mono, r[0], z + n)
                acc[key] = acc.get(key, 0) + r[1] * c
        return TensorVector.make(self.m, acc, self.complete_through + min(n, 0), self.offset)

    def star(self, x: str, n: int, left_op: LeftOp) -> "TensorVector":
        """x_n * T = (x_n (x) 1) T + z^n (1 (x) x) T."""
        return self.left(left_op).truncate(self.complete_through + min(n, 0)) + self.right(x, n)

    def component(self, dual: Mapping[int, object]) -> "ZSeries":
        """Pair the F_m factor with a dual vector {j: coefficient of u_j^*}."""
        acc: dict[Fraction, dict] = defaultdict(dict)
        for (mono, j, z), c in self.terms.items():
            w = dual.get(j)
            if w:
                e = self.offset + z
                acc[e][mono] = acc[e].get(mono, 0) + c * w
        return ZSeries.make({e: FockVector(v) for e, v in acc.items()}, self.offset + self.complete_through)

    def to_json(self) -> dict:
        rows = []
        for (mono, j, z), c in sorted(self.terms.items(), key=lambda kv: (kv[0][2], kv[0][1], kv[0][0])):
            rows.append({"c": fmt_scalar(c), "a": list(mono.a), "b": list(mono.b), "j": j, "z": z})
        return {
            "m": self.m,
            "offset": fmt_scalar(self.offset),
            "complete_through": self.complete_through,
            "terms": rows,
        }


@dataclass(frozen=True)
class ZSeries:
    """Sum of FockVector coefficients times z^e, exact for e <= complete_through."""

    coeffs: Mapping[Fraction, FockVector] = field(default_factory=dict)
    complete_through: Fraction = Fraction(0)

    @classmethod
    def make(cls, coeffs: Mapping, complete_through) -> "ZSeries":
        ct = Fraction(complete_through)
        clean = {Fraction(e): v for e, v in coeffs.items() if v and Fraction(e) <= ct}
        return cls(dict(sorted(clean.items())), ct)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def truncate(self, complete_through) -> "ZSeries":
        return ZSeries.make(self.coeffs, min(Fraction(complete_through), self.complete_through))

    def __add__(self, other: "ZSeries") -> "ZSeries":
        acc = dict(self.coeffs)
        for e, v in other.coeffs.items():
            acc[e] = acc[e] + v if e in acc else v
        return ZSeries.make(acc, min(self.complete_through, other.complete_through))

    def __mul__(self, c) -> "ZSeries":
        return ZSeries.make({e: v * c for e, v in self.coeffs.items()}, self.complete_through)

    def __sub__(self, other: "ZSeries") -> "ZSeries":
        return self + other * -1

    def shift(self, k) -> "ZSeries":
        """Multiply by z^k."""
        return ZSeries.make({e + k: v for e, v in self.coeffs.items()}, self.complete_through + k)

    def apply(self, op: LeftOp) -> "ZSeries":
        return ZSeries.make({e: op(v) for e, v in self.coeffs.items()}, self.complete_through)

    def derivative(self) -> "ZSeries":
        """d/dz term-wise: e z^(e-1)."""
        return ZSeries.make({e - 1: v * e for e, v in self.coeffs.items()}, self.complete_through - 1)

    def z_derivative(self) -> "ZSeries":
        """z d/dz: multiplies the z^e coefficient by e."""
        return ZSeries.make({e: v * e for e, v in self.coeffs.items()}, self.complete_through)

    def to_json(self) -> dict:
        return {
            "complete_through": fmt_scalar(self.complete_through),
            "coefficients": [{"z": fmt_scalar(e), "vector": v.to_json()} for e, v in self.coeffs.items()],
        }


def zsum(series: Iterable[ZSeries], complete_through) -> ZSeries:
    out = ZSeries.make({}, complete_through)
    for s in series:
        out = out + s
    return out
