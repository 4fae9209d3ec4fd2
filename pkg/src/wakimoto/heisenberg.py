"""Oscillator modes a_n, a*_n, b_n acting on the imaginary Wakimoto Fock space.

a_n is multiplication (pure creation) for every n, a*_n removes one a_{-n}
factor with the sign of -d/dx_{-n}, and b_n is a Heisenberg boson with
``[b_m, b_{-m}] = 2 m b_level`` and b_0 acting as lam.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .core import (
    Accumulator,
    FockMonomial,
    FockVector,
    Params,
    insert_part,
    remove_part,
)
from .report import Check, VerificationReport, vec_json

Op = Callable[[FockVector], FockVector]


class Engine:
    """Mode-sum action of the Heisenberg generators.

    Verification suites take an engine argument so tests can swap in a
    deliberately broken one and watch the suite catch it.
    """

    def a(self, n: int, v: FockVector) -> FockVector:
        return FockVector._wrap(
            {FockMonomial(insert_part(m.a, n), m.b): c for m, c in v.items()}
        )

    def a_star(self, n: int, v: FockVector) -> FockVector:
        target = -n
        acc = Accumulator()
        for m, c in v.items():
            k = m.a.count(target)
            if k:
                acc.add(FockMonomial(remove_part(m.a, target), m.b), -k * c)
        return acc.vector()

    def b(self, n: int, v: FockVector, params: Params) -> FockVector:
        if n < 0:
            return FockVector._wrap(
                {FockMonomial(m.a, insert_part(m.b, -n)): c for m, c in v.items()}
            )
        if n == 0:
            return v * params.lam
        scale = 2 * n * params.b_level
        acc = Accumulator()
        if not scale:
            return acc.vector()
        for m, c in v.items():
            k = m.b.count(n)
            if k:
                acc.add(FockMonomial(m.a, remove_part(m.b, n)), k * scale * c)
        return acc.vector()


ENGINE = Engine()


def apply_a(n: int, v: FockVector) -> FockVector:
    return ENGINE.a(n, v)


def apply_a_star(n: int, v: FockVector) -> FockVector:
    return ENGINE.a_star(n, v)


def apply_b(n: int, v: FockVector, params: Params) -> FockVector:
    return ENGINE.b(n, v, params)


def bracket(x: Op, y: Op, v: FockVector) -> FockVector:
    """[X, Y] v = X(Y v) - Y(X v)."""
    return x(y(v)) - y(x(v))


def _relations(engine: Engine, params: Params):
    """(name, (m, n), lhs-op-pair, expected) generators for the Heisenberg suite."""
    a = lambda n: (lambda v: engine.a(n, v))
    s = lambda n: (lambda v: engine.a_star(n, v))
    b = lambda n: (lambda v: engine.b(n, v, params))
    zero = lambda v: FockVector()
    ident = lambda c: (lambda v: v * c)
    return [
        ("[a_m,a_n]=0", a, a, lambda m, n: zero),
        ("[a*_m,a*_n]=0", s, s, lambda m, n: zero),
        ("[a_m,a*_n]=delta_{m+n,0}", a, s, lambda m, n: ident(1 if m + n == 0 else 0)),
        ("[a_m,b_n]=0", a, b, lambda m, n: zero),
        ("[a*_m,b_n]=0", s, b, lambda m, n: zero),
        (
            "[b_m,b_n]=2m*l*delta_{m+n,0}",
            b,
            b,
            lambda m, n: ident(2 * m * params.b_level if m + n == 0 else 0),
        ),
    ]


def check_relations(report: VerificationReport, relations, rng: range, samples: Sequence[FockVector]):
    for name, x, y, expected in relations:
        check = report.check(name)
        for m in rng:
            for n in rng:
                xm, yn, ex = x(m), y(n), expected(m, n)
                for v in samples:
                    residual = bracket(xm, yn, v) - ex(v)
                    check.record(not residual, lambda: {
                        "modes": [m, n],
                        "vector": vec_json(v),
                        "residual": vec_json(residual),
                    })


def check_heisenberg(
    R: int,
    samples: Sequence[FockVector],
    params: Params,
    engine: Engine = ENGINE,
    oracle_pairs: Iterable[tuple[Sequence[tuple[str, int]], FockVector]] = (),
) -> VerificationReport:
    """All oscillator relations for |indices| <= R on every sample vector.

    ``oracle_pairs`` are (mode word, vector) pairs replayed through the
    differential-operator oracle; the engine must agree exactly.
    """
    if R < 1:
        raise ValueError("R must be >= 1")
    report = VerificationReport("heisenberg", params, {"range": R, "samples": len(samples)})
    check_relations(report, _relations(engine, params), range(-R, R + 1), samples)

    pairs = list(oracle_pairs)
    if pairs:
        from . import oracle

        check = report.check("engine==oracle")
        for word, v in pairs:
            got = apply_word(word, v, params, engine)
            want = oracle.apply_word(word, v, params)
            check.record(got == want, lambda: {
                "word": [list(t) for t in word],
                "vector": vec_json(v),
                "residual": vec_json(got - want),
            })
    return report


def apply_word(word: Sequence[tuple[str, int]], v: FockVector, params: Params, engine: Engine = ENGINE) -> FockVector:
    """Apply a word of ("a"|"a*"|"b", index) tokens, rightmost first."""
    for name, n in reversed(list(word)):
        if name == "a":
            v = engine.a(n, v)
        elif name == "a*":
            v = engine.a_star(n, v)
        elif name == "b":
            v = engine.b(n, v, params)
        else:
            raise ValueError(f"unknown Heisenberg mode {name!r}")
    return v


__all__ = [
    "Engine",
    "ENGINE",
    "apply_a",
    "apply_a_star",
    "apply_b",
    "apply_word",
    "bracket",
    "check_heisenberg",
    "check_relations",
]
