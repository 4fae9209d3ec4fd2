"""The imaginary Wakimoto realisation of affine sl(2) and the map Psi.

Mode formulas (a(z) = sum a_m z^{-m-1}, a*(z) = sum a*_m z^{-m}):

    f_n = a_n
    h_n = b_n + 2 sum_j a_j a*_{n-j}
    e_n = -sum_{j,k} a_{n-j-k} a*_j a*_k - sum_j b_{n-j} a*_j - kappa n a*_n

Every sum is finite on a vector because a*_j kills all but finitely many j.
See docs/derivations.md for the derivation and the sign of the cubic term.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .core import (
    Accumulator,
    FockMonomial,
    FockVector,
    Params,
    VermaMonomial,
    conformal_delta,
    d_eigenvalue,
    insert_part,
    remove_part,
)
from .heisenberg import ENGINE, apply_a, apply_b, bracket, check_relations
from .report import VerificationReport, vec_json


def _a_star_terms(m: FockMonomial):
    """Yield (j, coefficient, monomial) for every nonzero a*_j m = coefficient * monomial."""
    seen = set()
    for p in m.a:
        if p in seen:
            continue
        seen.add(p)
        yield -p, -m.a.count(p), FockMonomial(remove_part(m.a, p), m.b)


def apply_f(n: int, v: FockVector) -> FockVector:
    return apply_a(n, v)


def apply_h(n: int, v: FockVector, params: Params) -> FockVector:
    acc = Accumulator()
    acc.add_vector(apply_b(n, v, params))
    for m, c in v.items():
        # 2 a_j a*_{n-j}: a*_{n-j} removes a part p = j - n, then a_j = a_{p+n} is inserted
        for j_star, k, rest in _a_star_terms(m):
            acc.add(FockMonomial(insert_part(rest.a, n - j_star), rest.b), 2 * k * c)
    return acc.vector()


def apply_e(n: int, v: FockVector, params: Params, cubic_sign: int = -1) -> FockVector:
    """e_n on v.  ``cubic_sign=+1`` flips the cubic sign (negative control)."""
    acc = Accumulator()
    lam, ell, kap = params.lam, params.b_level, params.kappa
    for m, c in v.items():
        for j, k1, m1 in _a_star_terms(m):
            # cubic: a_{n-j-k} a*_j a*_k summed over ordered (j, k)
            for kk, k2, m2 in _a_star_terms(m1):
                acc.add(FockMonomial(insert_part(m2.a, n - j - kk), m2.b), cubic_sign * k1 * k2 * c)
            # -b_{n-j} a*_j
            q = n - j
            if q < 0:
                acc.add(FockMonomial(m1.a, insert_part(m1.b, -q)), -k1 * c)
            elif q == 0:
                acc.add(m1, -lam * k1 * c)
            else:
                mult = m1.b.count(q)
                if mult:
                    acc.add(FockMonomial(m1.a, remove_part(m1.b, q)), -2 * q * ell * mult * k1 * c)
            # -kappa n a*_n
            if j == n:
                acc.add(m1, -kap * n * k1 * c)
    return acc.vector()


def apply_d(v: FockVector, params: Params) -> FockVector:
    shift = conformal_delta(params.lam, params)
    return FockVector({m: (d_eigenvalue(m) - shift) * c for m, c in v.items()})


def h0_weight(m: FockMonomial, params: Params):
    return params.lam - 2 * len(m.a)


class PsiUndefined(ValueError):
    pass


def psi(x: Mapping[VermaMonomial, object] | VermaMonomial, params: Params) -> FockVector:
    """Psi: f_{n_i} -> a_{n_i}, h_{-m_j} -> b_{-m_j} on PBW words, extended linearly."""
    if params.kappa == 0:
        raise PsiUndefined("Psi is an isomorphism only for kappa != 0")
    if isinstance(x, VermaMonomial):
        x = {x: 1}
    return FockVector({FockMonomial(w.f, w.h): c for w, c in x.items()})


def psi_inverse(v: FockVector, params: Params) -> dict[VermaMonomial, object]:
    if params.kappa == 0:
        raise PsiUndefined("Psi is an isomorphism only for kappa != 0")
    return {VermaMonomial(m.a, m.b): c for m, c in v.items()}


def affine_op(name: str, n: int, params: Params, cubic_sign: int = -1):
    if name == "e":
        return lambda v: apply_e(n, v, params, cubic_sign)
    if name == "f":
        return lambda v: apply_f(n, v)
    if name == "h":
        return lambda v: apply_h(n, v, params)
    raise ValueError(name)


def affine_relations(params: Params, cubic_sign: int = -1):
    """The six bracket families [X_m, Y_n] = [X,Y]_{m+n} + m (X|Y) kappa delta_{m+n,0}."""
    kap = params.kappa
    op = lambda name: (lambda n: affine_op(name, n, params, cubic_sign))
    zero = lambda v: FockVector()

    def ef(m, n):
        h = affine_op("h", m + n, params)
        c = m * kap if m + n == 0 else 0
        return lambda v: h(v) + v * c

    def he(m, n):
        e = affine_op("e", m + n, params, cubic_sign)
        return lambda v: e(v) * 2

    def hf(m, n):
        return lambda v: apply_f(m + n, v) * -2

    def hh(m, n):
        c = 2 * m * kap if m + n == 0 else 0
        return lambda v: v * c

    return [
        ("[e_m,f_n]=h_{m+n}+m*kappa*delta", op("e"), op("f"), ef),
        ("[h_m,e_n]=2e_{m+n}", op("h"), op("e"), he),
        ("[h_m,f_n]=-2f_{m+n}", op("h"), op("f"), hf),
        ("[h_m,h_n]=2m*kappa*delta", op("h"), op("h"), hh),
        ("[e_m,e_n]=0", op("e"), op("e"), lambda m, n: zero),
        ("[f_m,f_n]=0", op("f"), op("f"), lambda m, n: zero),
    ]


def check_affine(
    R: int,
    samples: Sequence[FockVector],
    params: Params,
    cubic_sign: int = -1,
    psi_words: Sequence[VermaMonomial] = (),
) -> VerificationReport:
    """Affine sl(2) relations of the realisation on every sample, |m|,|n| <= R.

    The realisation is a representation at level kappa only when
    ``params.b_level == kappa``; other levels are accepted so that the
    mismatch can be observed.
    """
    if R < 1:
        raise ValueError("R must be >= 1")
    report = VerificationReport("affine", params, {"range": R, "samples": len(samples)})
    check_relations(report, affine_relations(params, cubic_sign), range(-R, R + 1), samples)

    grade = report.check("grade(X_n v)=grade(v)+n")
    weight = report.check("h_0 weight=lam-2#a")
    for v in samples:
        for m in v:
            basis = FockVector.basis(m)
            h0 = apply_h(0, basis, params)
            weight.record(h0 == basis * h0_weight(m, params), lambda: {"vector": vec_json(basis)})
            for name in ("e", "f", "h"):
                for n in range(-R, R + 1):
                    out = affine_op(name, n, params, cubic_sign)(basis)
                    ok = all(d_eigenvalue(k) == d_eigenvalue(m) + n for k in out)
                    grade.record(ok, lambda: {"op": f"{name}_{n}", "vector": vec_json(basis)})

    if params.kappa == 0:
        report.skip("psi", "kappa=0")
    else:
        inv = report.check("psi_inverse(psi(x))=x")
        inter = report.check("psi intertwines f_n and h_{-m}")
        for w in psi_words:
            img = psi(w, params)
            inv.record(psi_inverse(img, params) == {w: 1}, lambda: {"word": [list(w.f), list(w.h)]})
            for n in range(-R, R + 1):
                lhs = psi({VermaMonomial(tuple(sorted(w.f + (n,))), w.h): 1}, params)
                inter.record(lhs == apply_f(n, img), lambda: {"word": [list(w.f), list(w.h)], "f": n})
            for k in range(1, R + 1):
                lhs = psi({VermaMonomial(w.f, tuple(sorted(w.h + (k,)))): 1}, params)
                inter.record(lhs == apply_b(-k, img, params), lambda: {"word": [list(w.f), list(w.h)], "h": -k})
                if not w.f:
                    # on f-free words the module action of h_{-k} is plain b_{-k}
                    rhs = apply_h(-k, img, params)
                    inter.record(lhs == rhs, lambda: {"word": [list(w.f), list(w.h)], "rho(h)": -k})
    return report


__all__ = [
    "apply_f",
    "apply_h",
    "apply_e",
    "apply_d",
    "psi",
    "psi_inverse",
    "PsiUndefined",
    "check_affine",
    "affine_relations",
    "affine_op",
    "bracket",
    "ENGINE",
]
