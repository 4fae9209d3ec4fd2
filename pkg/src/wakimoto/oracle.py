"""Independent differential-operator model of the Fock space, built on sympy.

The Fock space is realised literally as the polynomial ring C[x_n, y_m]
(n in Z, m > 0).  Modes act by multiplication and differentiation:

    a_n    -> x_n *            a*_n -> -d/dx_{-n}
    b_{-m} -> y_m * (m > 0)    b_m  -> 2 m l d/dy_m (m > 0)    b_0 -> lam

and the affine generators use the explicit line-bundle formulas

    f_n -> x_n
    h_n -> -2 sum_m x_{m+n} d_{x_m} + [n<0] y_{-n} + [n>0] 2 n l d_{y_n} + [n=0] lam
    e_n -> -sum_{m,k} x_{k+m+n} d_{x_k} d_{x_m} + sum_{k>0} y_k d_{x_{-k-n}}
           + 2 l sum_{m>0} m d_{y_m} d_{x_{m-n}} + (kappa n + lam) d_{x_{-n}}

None of this shares code with the mode-sum engine; it only shares the
dictionary monomial <-> polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import sympy

from .core import Accumulator, FockVector, Params, mono


@lru_cache(maxsize=None)
def x(n: int) -> sympy.Symbol:
    return sympy.Symbol(f"x[{n}]")


@lru_cache(maxsize=None)
def y(m: int) -> sympy.Symbol:
    if m < 1:
        raise ValueError("y variables are indexed by m >= 1")
    return sympy.Symbol(f"y[{m}]")


def _parse(sym: sympy.Symbol) -> tuple[str, int]:
    name = sym.name
    return name[0], int(name[2:-1])


def _rat(c: Fraction) -> sympy.Rational:
    return sympy.Rational(c.numerator, c.denominator)


def to_poly(v: FockVector) -> sympy.Expr:
    expr = sympy.Integer(0)
    for m, c in v.items():
        term = _rat(c)
        for n in m.a:
            term *= x(n)
        for k in m.b:
            term *= y(k)
        expr += term
    return sympy.expand(expr)


def from_poly(p: sympy.Expr) -> FockVector:
    p = sympy.expand(p)
    acc = Accumulator()
    if p == 0:
        return acc.vector()
    gens = sorted(p.free_symbols, key=lambda s: s.name)
    if not gens:
        c = sympy.Rational(p)
        acc.add(mono(), Fraction(int(c.p), int(c.q)))
        return acc.vector()
    poly = sympy.Poly(p, *gens)
    for exps, c in poly.terms():
        a, b = [], []
        for g, e in zip(gens, exps):
            kind, idx = _parse(g)
            (a if kind == "x" else b).extend([idx] * e)
        c = sympy.Rational(c)
        acc.add(mono(a, b), Fraction(int(c.p), int(c.q)))
    return acc.vector()


def _present(p: sympy.Expr, kind: str) -> list[int]:
    return sorted(idx for k, idx in map(_parse, p.free_symbols) if k == kind)


def _dx(p, n):
    return sympy.diff(p, x(n))


def _dy(p, m):
    return sympy.diff(p, y(m))


def op_a(n: int, p):
    return sympy.expand(x(n) * p)


def op_a_star(n: int, p):
    return sympy.expand(-_dx(p, -n))


def op_b(n: int, p, params: Params):
    if n < 0:
        return sympy.expand(y(-n) * p)
    if n == 0:
        return sympy.expand(_rat(params.lam) * p)
    return sympy.expand(2 * n * _rat(params.b_level) * _dy(p, n))


def op_h(n: int, p, params: Params):
    out = sympy.Integer(0)
    for k in _present(p, "x"):
        out += -2 * x(k + n) * _dx(p, k)
    if n < 0:
        out += y(-n) * p
    elif n > 0:
        out += 2 * n * _rat(params.b_level) * _dy(p, n)
    else:
        out += _rat(params.lam) * p
    return sympy.expand(out)


def op_e(n: int, p, params: Params):
    ell, kap, lam = _rat(params.b_level), _rat(params.kappa), _rat(params.lam)
    xs = _present(p, "x")
    out = sympy.Integer(0)
    for k in xs:
        dk = _dx(p, k)
        for m in _present(dk, "x"):
            out += -x(k + m + n) * _dx(dk, m)
    for v in xs:
        k = -v - n
        if k > 0:
            out += y(k) * _dx(p, v)
    for m in _present(p, "y"):
        out += 2 * ell * m * _dx(_dy(p, m), m - n)
    out += (kap * n + lam) * _dx(p, -n)
    return sympy.expand(out)


def op_lbar(k: int, p):
    out = sympy.Integer(0)
    for v in _present(p, "x"):
        j = v + k  # a*_{k-j} differentiates x_{j-k}
        out += (j - k) * x(j) * (-_dx(p, v))
    return sympy.expand(out)


def op_L(k: int, p, params: Params):
    out = op_lbar(k, p)
    ell, lam, mu = _rat(params.b_level), _rat(params.lam), _rat(params.mu)

    def b(n, q):
        if n < 0:
            return y(-n) * q
        if n == 0:
            return lam * q
        return 2 * n * ell * _dy(q, n)

    ys = _present(p, "y")
    js = set(range(min(k, 0), 1)) | set(ys) | {k - m for m in ys}
    quad = sympy.Integer(0)
    for j in js:
        lo, hi = sorted((j, k - j))
        quad += b(lo, b(hi, p))
    out += sympy.Rational(1, 4) * quad - mu / 2 * (k + 1) * b(k, p)
    return sympy.expand(out)


def oracle_apply(op: str, n: int, p, params: Params):
    """Apply a single generator to a polynomial state."""
    if op == "a" or op == "f":
        return op_a(n, p)
    if op == "a*":
        return op_a_star(n, p)
    if op == "b":
        return op_b(n, p, params)
    if op == "h":
        return op_h(n, p, params)
    if op == "e":
        return op_e(n, p, params)
    if op == "Lbar":
        return op_lbar(n, p)
    if op == "L":
        return op_L(n, p, params)
    raise ValueError(f"oracle has no operator {op!r}")


def apply_word(word: Sequence[tuple[str, int]], v: FockVector, params: Params) -> FockVector:
    p = to_poly(v)
    for op, n in reversed(list(word)):
        p = oracle_apply(op, n, p, params)
    return from_poly(p)
