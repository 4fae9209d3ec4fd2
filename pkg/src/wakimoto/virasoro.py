"""The operators Lbar_k and L_k and the bracket suites built on them.

    Lbar_k = sum_j (j - k) a_j a*_{k-j}
    L_k    = Lbar_k + 1/4 sum_j :b_j b_{k-j}: - (mu/2)(k+1) b_k

Normal ordering puts the smaller index on the left, i.e. the larger-index
mode is applied to the vector first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .affine import _a_star_terms, apply_e, apply_f, apply_h
from .core import (
    Accumulator,
    FockMonomial,
    FockVector,
    Params,
    conformal_delta,
    d_eigenvalue,
    insert_part,
    virasoro_delta,
)
from .heisenberg import apply_a, apply_a_star, apply_b, bracket
from .report import VerificationReport, vec_json

QUARTER = Fraction(1, 4)


@dataclass
class OpCount:
    """Summand counter; pass one in to see how many terms a sum touched."""

    summands: int = 0


def apply_lbar(k: int, v: FockVector, count: OpCount | None = None) -> FockVector:
    acc = Accumulator()
    for m, c in v.items():
        for j_star, mult, rest in _a_star_terms(m):
            j = k - j_star
            if count is not None:
                count.summands += 1
            if j != k:
                acc.add(FockMonomial(insert_part(rest.a, j), rest.b), (j - k) * mult * c)
    return acc.vector()


def _b_pairs(k: int, m: FockMonomial) -> list[tuple[int, int, int]]:
    """Unordered pairs (lo, hi, multiplicity) of :b_lo b_hi: with lo + hi = k that can act on m.

    Either hi > 0 and hi is a b-part of m, or both indices are <= 0 (finitely
    many since lo, hi >= k).  The multiplicity is 2 for lo != hi because the
    ordered sum over j visits both (lo, hi) and (hi, lo).
    """
    his = {p for p in m.b if 2 * p >= k}
    if k <= 0:
        his.update(range(-(-k // 2), 1))  # ceil(k/2) .. 0
    return [(k - hi, hi, 1 if 2 * hi == k else 2) for hi in sorted(his)]


def apply_L(k: int, v: FockVector, params: Params, count: OpCount | None = None) -> FockVector:
    acc = Accumulator()
    acc.add_vector(apply_lbar(k, v, count))
    for m, c in v.items():
        basis = FockVector._wrap({m: c})
        for lo, hi, mult in _b_pairs(k, m):
            if count is not None:
                count.summands += 1
            acc.add_vector(apply_b(lo, apply_b(hi, basis, params), params), QUARTER * mult)
    lin = -params.mu / 2 * (k + 1)
    if lin:
        acc.add_vector(apply_b(k, v, params), lin)
    return acc.vector()


def _check_pairs(report, name, rng, samples, lhs_pair, expected):
    check = report.check(name)
    for m in rng:
        for n in rng:
            x, y = lhs_pair(m, n)
            ex = expected(m, n)
            for v in samples:
                residual = bracket(x, y, v) - ex(v)
                check.record(not residual, lambda: {
                    "modes": [m, n], "vector": vec_json(v), "residual": vec_json(residual)})
    return check


def check_lbar_lemmas(R: int, samples: Sequence[FockVector]) -> VerificationReport:
    report = VerificationReport("lbar", None, {"range": R, "samples": len(samples)})
    rng = range(-R, R + 1)
    L = lambda n: (lambda v: apply_lbar(n, v))
    _check_pairs(report, "[a_k,Lbar_n]=k a_{k+n}", rng, samples,
                 lambda k, n: (lambda v: apply_a(k, v), L(n)),
                 lambda k, n: (lambda v: apply_a(k + n, v) * k))
    _check_pairs(report, "[a*_k,Lbar_n]=(k+n) a*_{k+n}", rng, samples,
                 lambda k, n: (lambda v: apply_a_star(k, v), L(n)),
                 lambda k, n: (lambda v: apply_a_star(k + n, v) * (k + n)))
    _check_pairs(report, "[Lbar_m,Lbar_n]=(m-n)Lbar_{m+n}", rng, samples,
                 lambda m, n: (L(m), L(n)),
                 lambda m, n: (lambda v: apply_lbar(m + n, v) * (m - n)))
    # no central term: the m = -n bracket must vanish on the vacuum of every sample's support
    central = report.check("no central term in [Lbar_m,Lbar_-m]")
    vac = FockVector.basis(FockMonomial())
    for m in rng:
        residual = bracket(L(m), L(-m), vac)
        central.record(not residual, lambda: {"m": m, "residual": vec_json(residual)})
    return report


def central_charge(mu) -> Fraction:
    """Central charge value claimed for the L_k family: 6 - 6 mu^2."""
    return 6 - 6 * Fraction(mu) ** 2


def measured_central_charge(params: Params, m: int) -> Fraction:
    """c read off from ([L_m, L_{-m}] - 2m L_0) w = ((m^3 - m)/12) c w, m >= 2."""
    if m < 2:
        raise ValueError("m >= 2 needed (the central term vanishes for m = 0, 1)")
    vac = FockVector.basis(FockMonomial())
    out = bracket(lambda v: apply_L(m, v, params), lambda v: apply_L(-m, v, params), vac)
    out = out - apply_L(0, vac, params) * (2 * m)
    if set(out) - {FockMonomial()}:
        raise ArithmeticError(f"[L_{m},L_-{m}] - {2*m}L_0 is not proportional to the vacuum: {out!r}")
    return out[FockMonomial()] * 12 / (m ** 3 - m)


def check_virasoro(
    R: int, samples: Sequence[FockVector], params: Params, expected_c: Fraction | None = None
) -> VerificationReport:
    """[L_m, L_n] = (m-n) L_{m+n} + (m^3-m)/12 c delta_{m+n,0} with c = 6 - 6 mu^2 by default."""
    c = central_charge(params.mu) if expected_c is None else Fraction(expected_c)
    report = VerificationReport("virasoro", params, {"range": R, "samples": len(samples), "expected_c": str(c)})
    rng = range(-R, R + 1)
    L = lambda n: (lambda v: apply_L(n, v, params))
    _check_pairs(report, "[L_m,L_n]=(m-n)L_{m+n}+(m^3-m)/12*c*delta", rng, samples,
                 lambda m, n: (L(m), L(n)),
                 lambda m, n: (lambda v: apply_L(m + n, v, params) * (m - n)
                               + v * (Fraction(m ** 3 - m, 12) * c if m + n == 0 else 0)))
    measured = {}
    for m in range(2, max(R, 3) + 1):
        try:
            measured[str(m)] = str(measured_central_charge(params, m))
        except ArithmeticError as exc:
            measured[str(m)] = f"not central: {exc}"
    report.tier2["measured_central_charge"] = measured
    return report


def check_mixed_brackets(R: int, samples: Sequence[FockVector], params: Params) -> VerificationReport:
    """Mode forms of the field-vs-L identities; see docs/derivations.md for the extraction."""
    report = VerificationReport("mixed", params, {"range": R, "samples": len(samples)})
    rng = range(-R, R + 1)
    mu = params.mu
    L = lambda n: (lambda v: apply_L(n, v, params))
    a = lambda k: (lambda v: apply_a(k, v))
    s = lambda k: (lambda v: apply_a_star(k, v))
    b = lambda k: (lambda v: apply_b(k, v, params))
    e = lambda k: (lambda v: apply_e(k, v, params))
    f = lambda k: (lambda v: apply_f(k, v))
    h = lambda k: (lambda v: apply_h(k, v, params))

    def anomaly(p, n):
        # mu * d_w^2 delta(z/w) contributes mu p (p-1) at p + n = 0
        return mu * p * (p - 1) if p + n == 0 else 0

    _check_pairs(report, "[a_k,L_n]=k a_{k+n}", rng, samples,
                 lambda k, n: (a(k), L(n)), lambda k, n: (lambda v: a(k + n)(v) * k))
    _check_pairs(report, "[a*_k,L_n]=(k+n) a*_{k+n}", rng, samples,
                 lambda k, n: (s(k), L(n)), lambda k, n: (lambda v: s(k + n)(v) * (k + n)))
    _check_pairs(report, "[b_p,L_n]=p b_{p+n}+mu p(p-1) delta", rng, samples,
                 lambda p, n: (b(p), L(n)),
                 lambda p, n: (lambda v: b(p + n)(v) * p + v * anomaly(p, n)))
    _check_pairs(report, "[f_p,L_n]=p f_{p+n}", rng, samples,
                 lambda p, n: (f(p), L(n)), lambda p, n: (lambda v: f(p + n)(v) * p))
    _check_pairs(report, "[h_p,L_n]=p h_{p+n}+mu p(p-1) delta", rng, samples,
                 lambda p, n: (h(p), L(n)),
                 lambda p, n: (lambda v: h(p + n)(v) * p + v * anomaly(p, n)))
    _check_pairs(report, "[e_p,L_n]=p e_{p+n}-mu n(n+1) a*_{p+n}", rng, samples,
                 lambda p, n: (e(p), L(n)),
                 lambda p, n: (lambda v: e(p + n)(v) * p - s(p + n)(v) * (mu * n * (n + 1))))

    # L_{-1} and L_0 corollaries, written as [L_n, X_p]
    for name, X in (("f", f), ("e", e), ("h", h), ("b", b), ("a", a)):
        _check_pairs(report, f"[L_-1,{name}_p]=-p {name}_(p-1)", rng, samples,
                     lambda p, n, X=X: (L(-1), X(p)), lambda p, n, X=X: (lambda v: X(p - 1)(v) * -p))
        _check_pairs(report, f"[L_0,{name}_p]=-p {name}_p", rng, samples,
                     lambda p, n, X=X: (L(0), X(p)), lambda p, n, X=X: (lambda v: X(p)(v) * -p))
    _check_pairs(report, "[L_-1,a*_p]=-(p-1) a*_(p-1)", rng, samples,
                 lambda p, n: (L(-1), s(p)), lambda p, n: (lambda v: s(p - 1)(v) * -(p - 1)))
    _check_pairs(report, "[L_0,a*_p]=-p a*_p", rng, samples,
                 lambda p, n: (L(0), s(p)), lambda p, n: (lambda v: s(p)(v) * -p))
    return report


def check_d_vs_L0(samples: Sequence[FockVector], params: Params) -> VerificationReport:
    """(d + L_0) must be the scalar Delta_VIR(lam, mu) - Delta(lam) on every monomial."""
    report = VerificationReport("d-vs-l0", params, {"samples": len(samples)})
    expect = virasoro_delta(params.lam, params.mu) - conformal_delta(params.lam, params)
    check = report.check("(d+L_0)v=const*v")
    constants = set()
    for v in samples:
        for m in v:
            basis = FockVector.basis(m)
            d_part = basis * (d_eigenvalue(m) - conformal_delta(params.lam, params))
            out = d_part + apply_L(0, basis, params)
            ok = out == basis * expect
            if set(out) <= {m}:
                constants.add(out[m])
            check.record(ok, lambda: {"vector": vec_json(basis), "got": vec_json(out), "expected_constant": str(expect)})
    report.tier2["constant"] = str(expect)
    report.tier2["observed_constants"] = sorted(str(c) for c in constants)
    report.tier2["constant_is_zero"] = expect == 0
    return report


__all__ = [
    "OpCount",
    "apply_lbar",
    "apply_L",
    "check_lbar_lemmas",
    "check_virasoro",
    "check_mixed_brackets",
    "check_d_vs_L0",
    "central_charge",
    "measured_central_charge",
]
