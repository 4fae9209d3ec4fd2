"""Exact coefficients, module parameters and the monomial/vector types.

Everything here is immutable.  Coefficients are :class:`fractions.Fraction`
throughout; no floating point value ever enters a computation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

Scalar = Fraction
ScalarLike = Union[Fraction, int, str]


def scalar(x: ScalarLike) -> Fraction:
    """Coerce ``x`` (int, Fraction, or a ``"p/q"`` string) to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def fmt_scalar(x: Fraction) -> str:
    return str(x)


class DeltaConvention(str, enum.Enum):
    AFFINE = "affine"
    VIRASORO = "virasoro"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Params:
    """Parameters of a module W_{lam,kappa} and of the operators acting on it.

    ``b_level`` is the normalisation of ``[b_m, b_{-m}] = 2 m b_level``.  The
    affine relations need ``b_level == kappa``; the Virasoro relations need
    ``b_level == 1``.
    """

    lam: Fraction = Fraction(0)
    kappa: Fraction = Fraction(1)
    mu: Fraction = Fraction(0)
    b_level: Fraction = Fraction(1)
    m_weight: int = 0
    beta1: Fraction = Fraction(1)
    delta_convention: DeltaConvention = DeltaConvention.VIRASORO
    delta_table: tuple[tuple[Fraction, Fraction], ...] = field(default=())

    def __post_init__(self) -> None:
        for name in ("lam", "kappa", "mu", "b_level", "beta1"):
            object.__setattr__(self, name, scalar(getattr(self, name)))
        object.__setattr__(self, "delta_convention", DeltaConvention(self.delta_convention))
        object.__setattr__(
            self,
            "delta_table",
            tuple(sorted((scalar(k), scalar(v)) for k, v in self.delta_table)),
        )
        if not isinstance(self.m_weight, int) or self.m_weight < 0:
            raise ValueError("m_weight must be a nonnegative integer")

    def with_(self, **changes) -> "Params":
        return replace(self, **changes)

    def shifted(self) -> "Params":
        """Parameters of the target module W_{lam - m, kappa}."""
        return replace(self, lam=self.lam - self.m_weight)

    def to_dict(self) -> dict:
        d = {
            "lambda": fmt_scalar(self.lam),
            "kappa": fmt_scalar(self.kappa),
            "mu": fmt_scalar(self.mu),
            "b_level": fmt_scalar(self.b_level),
            "m": self.m_weight,
            "beta1": fmt_scalar(self.beta1),
            "delta_convention": self.delta_convention.value,
        }
        if self.delta_table:
            d["delta_table"] = [[fmt_scalar(k), fmt_scalar(v)] for k, v in self.delta_table]
        return d


class FockMonomial(NamedTuple):
    """The basis word a_{n_1}...a_{n_k} b_{-m_1}...b_{-m_l} w.

    ``a`` holds the a-mode indices (any integer), ``b`` the positive integers
    m_i of the factors b_{-m_i}.  Both tuples are kept sorted; build instances
    with :func:`mono` rather than the raw constructor.
    """

    a: tuple[int, ...] = ()
    b: tuple[int, ...] = ()

    def to_json(self, c: Fraction) -> dict:
        return {"c": fmt_scalar(c), "a": list(self.a), "b": list(self.b)}

    def __str__(self) -> str:
        parts = [f"a_{{{n}}}" for n in self.a] + [f"b_{{{-m}}}" for m in self.b]
        return "".join(parts) + "w" if parts else "w"


VAC = FockMonomial((), ())


def mono(a: Iterable[int] = (), b: Iterable[int] = ()) -> FockMonomial:
    b = tuple(sorted(int(m) for m in b))
    if b and b[0] < 1:
        raise ValueError("b_parts entries must be >= 1")
    return FockMonomial(tuple(sorted(int(n) for n in a)), b)


def insert_part(parts: tuple[int, ...], n: int) -> tuple[int, ...]:
    # bisect-insert without importing bisect for tiny tuples
    i = 0
    while i < len(parts) and parts[i] < n:
        i += 1
    return parts[:i] + (n,) + parts[i:]


def remove_part(parts: tuple[int, ...], n: int) -> tuple[int, ...]:
    i = parts.index(n)
    return parts[:i] + parts[i + 1:]


class FockVector:
    """Finite sparse linear combination of :class:`FockMonomial`.

    Zero coefficients are never stored, so ``==`` is exact equality of vectors.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[FockMonomial, ScalarLike] | None = None):
        clean: dict[FockMonomial, Fraction] = {}
        if terms:
            for k, c in terms.items():
                c = scalar(c)
                if c:
                    clean[k] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict[FockMonomial, Fraction]) -> "FockVector":
        v = cls.__new__(cls)
        v._terms = terms
        v._hash = None
        return v

    @classmethod
    def basis(cls, m: FockMonomial, c: ScalarLike = 1) -> "FockVector":
        return cls({m: c})

    @property
    def terms(self) -> Mapping[FockMonomial, Fraction]:
        return self._terms

    def items(self):
        return self._terms.items()

    def __iter__(self) -> Iterator[FockMonomial]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __getitem__(self, m: FockMonomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, FockVector):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "FockVector") -> "FockVector":
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return FockVector._wrap(out)

    def __neg__(self) -> "FockVector":
        return FockVector._wrap({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + (-other)

    def __mul__(self, c: ScalarLike) -> "FockVector":
        c = scalar(c)
        if not c:
            return FockVector()
        return FockVector._wrap({k: c * v for k, v in self._terms.items()})

    __rmul__ = __mul__

    def sorted_items(self) -> list[tuple[FockMonomial, Fraction]]:
        return sorted(self._terms.items())

    def to_json(self) -> list[dict]:
        return [m.to_json(c) for m, c in self.sorted_items()]

    @classmethod
    def from_json(cls, terms: Iterable[Mapping]) -> "FockVector":
        acc = Accumulator()
        for t in terms:
            acc.add(mono(t.get("a", ()), t.get("b", ())), scalar(t["c"]))
        return acc.vector()

    def __repr__(self) -> str:
        if not self._terms:
            return "FockVector(0)"
        body = " + ".join(f"({c})*{m}" for m, c in self.sorted_items())
        return f"FockVector({body})"


class Accumulator:
    """Mutable scratch sum used inside kernels; freeze with :meth:`vector`."""

    __slots__ = ("d",)

    def __init__(self):
        self.d: dict = {}

    def add(self, key, c) -> None:
        if not c:
            return
        s = self.d.get(key, 0) + c
        if s:
            self.d[key] = s
        else:
            del self.d[key]

    def add_vector(self, v: FockVector, c: Fraction = Fraction(1)) -> None:
        for k, x in v.items():
            self.add(k, c * x)

    def vector(self) -> FockVector:
        return FockVector._wrap(self.d)


def vacuum() -> FockVector:
    return FockVector.basis(VAC)


def linear_combine(pairs: Iterable[tuple[ScalarLike, FockVector]]) -> FockVector:
    acc = Accumulator()
    for c, v in pairs:
        acc.add_vector(v, scalar(c))
    return acc.vector()


def d_eigenvalue(m: FockMonomial, params: Params | None = None) -> int:
    """Integer part of the d-eigenvalue; the full eigenvalue is this minus Delta(lam)."""
    return sum(m.a) - sum(m.b)


def conformal_delta(weight: ScalarLike, params: Params) -> Fraction:
    """Conformal weight of the sl(2) weight ``weight`` under ``params.delta_convention``.

    AFFINE: j(j+2) / (4(kappa+2)), the Casimir formula with <alpha,alpha> = 2.
    VIRASORO: j(j-2mu)/4, the L_0 eigenvalue of the vacuum at b_level 1.
    """
    j = scalar(weight)
    conv = params.delta_convention
    if conv is DeltaConvention.AFFINE:
        denom = 4 * (params.kappa + 2)
        if denom == 0:
            raise ZeroDivisionError("affine conformal weight is undefined at kappa = -2")
        return j * (j + 2) / denom
    if conv is DeltaConvention.VIRASORO:
        return virasoro_delta(j, params.mu)
    for k, v in params.delta_table:
        if k == j:
            return v
    raise KeyError(f"custom delta table has no entry for weight {j}")


def virasoro_delta(alpha: ScalarLike, mu: ScalarLike) -> Fraction:
    alpha, mu = scalar(alpha), scalar(mu)
    return alpha * (alpha - 2 * mu) / 4


def delta_gap(params: Params) -> Fraction:
    """Delta(lam) - Delta(lam - m): the exponent shift making Phi commute with d."""
    return conformal_delta(params.lam, params) - conformal_delta(params.lam - params.m_weight, params)


class VermaMonomial(NamedTuple):
    """PBW word f_{n_1}...f_{n_k} h_{-m_1}...h_{-m_l} v on the imaginary Verma side."""

    f: tuple[int, ...] = ()
    h: tuple[int, ...] = ()


def verma(f: Iterable[int] = (), h: Iterable[int] = ()) -> VermaMonomial:
    h = tuple(sorted(int(m) for m in h))
    if h and h[0] < 1:
        raise ValueError("h_parts entries must be >= 1")
    return VermaMonomial(tuple(sorted(int(n) for n in f)), h)
