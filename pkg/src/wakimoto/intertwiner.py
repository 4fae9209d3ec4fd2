"""Singular vectors in W_{lam-m} (x) F_m(z), the intertwiner Phi and its identities.

Everything lives on the Wakimoto side: an element h_pi v (x) u_j z^n of the
Verma picture is stored as the term (b_pi w, j, n) of a TensorVector.

The tensor action of x_n on W_{lam-m} (x) F_m[z, z^-1] is

    x_n * T = (x_n (x) 1) T + z^n (1 (x) x) T

and Phi is built from the singular vector v# by
Phi(a_{n_1}...a_{n_k} b_{-m_1}...b_{-m_l} w) = f_{n_1}*...f_{n_k}* h_{-m_1}*...h_{-m_l}* v#.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .affine import apply_e, apply_f, apply_h
from .core import (
    DeltaConvention,
    FockMonomial,
    FockVector,
    Params,
    conformal_delta,
    d_eigenvalue,
    delta_gap,
    fmt_scalar,
    mono,
    virasoro_delta,
)
from .heisenberg import apply_a, apply_a_star, apply_b
from .linalg import nullspace
from .partitions import Partition, beta_closed_form, fmt_partition, multiplicities, partitions_upto
from .report import VerificationReport, vec_json
from .sl2 import DualWeight, dual_act, dual_basis
from .tensor import TensorVector, ZSeries, zsum
from .virasoro import apply_L


class SingularMode(str, enum.Enum):
    FORMULA = "formula"
    SOLVE = "solve"


class SingularError(ValueError):
    """No singular vector, or a solution space of dimension != 1."""


class WindowError(ValueError):
    """The requested window cannot be computed exactly from the data available."""


def _require_kappa(params: Params) -> None:
    if params.kappa == 0:
        raise ValueError("kappa != 0 required (W and the Verma module are identified only then)")


def left_op(x: str, n: int, left: Params):
    """x_n acting on the left factor W_{lam-m}."""
    if x == "h":
        return lambda v: apply_h(n, v, left)
    if x == "e":
        return lambda v: apply_e(n, v, left)
    if x == "f":
        return lambda v: apply_f(n, v)
    raise ValueError(f"unknown generator {x!r}")


def tensor_act(x: str, n: int, T: TensorVector, params: Params) -> TensorVector:
    """x_n * T with the left factor at highest weight lam - m."""
    return T.star(x, n, left_op(x, n, params.shifted()))


def _pi_key(pi: Partition):
    return (mono((), pi), 0, sum(pi))


# ---------------------------------------------------------------- singular vectors


def ansatz(maxz: int, params: Params) -> list[tuple[FockMonomial, int, int]]:
    """Pure-b terms b_pi w (x) u_j z^n that have h_0-weight lam and grade matching z^n.

    h_0-weight forces no a-parts and j = 0; the grade forces n = |pi|.
    """
    keys = []
    for pi in partitions_upto(maxz):
        for j in range(params.m_weight + 1):
            for z in range(maxz + 1):
                weight = (params.lam - params.m_weight) + (params.m_weight - 2 * j)
                if weight == params.lam and z == sum(pi):
                    keys.append((mono((), pi), j, z))
    return keys


def solve_singular(maxz: int, params: Params) -> list[TensorVector]:
    """Basis of the space of ansatz vectors killed by h_k*, e_k* (1 <= k <= maxz) through z^maxz."""
    _require_kappa(params)
    if maxz < 1:
        raise ValueError("maxz >= 1 required")
    keys = ansatz(maxz, params)
    m = params.m_weight
    images = {}
    for key in keys:
        unit = TensorVector.make(m, {key: 1}, maxz)
        images[key] = [tensor_act(x, k, unit, params) for k in range(1, maxz + 1) for x in ("h", "e")]
    rows: dict[tuple, dict] = {}
    for key in keys:
        for idx, img in enumerate(images[key]):
            for target, c in img.terms.items():
                row = rows.setdefault((idx, target), {})
                row[key] = row.get(key, 0) + c
    # put the empty partition last so it ends up as the free column
    columns = keys[1:] + keys[:1]
    sols = nullspace(rows.values(), columns)
    return [TensorVector.make(m, s, maxz) for s in sols]


def formula_coefficients(maxz: int, params: Params) -> dict[Partition, Fraction]:
    """Closed-form coefficients with the empty slot fixed by m c_0 + kappa beta_(1) = 0."""
    _require_kappa(params)
    m, kap, b1 = params.m_weight, params.kappa, params.beta1
    out: dict[Partition, Fraction] = {}
    if m == 0:
        # the closed form is not singular at m = 0; v# is the top vector alone
        out[()] = b1
        return out
    out[()] = -kap * b1 / m
    for pi in partitions_upto(maxz):
        if pi:
            out[pi] = beta_closed_form(pi, m, kap, b1)
    return out


def singular_vector(mode: SingularMode | str, maxz: int, params: Params) -> TensorVector:
    mode = SingularMode(mode)
    if mode is SingularMode.SOLVE:
        sols = solve_singular(maxz, params)
        if len(sols) != 1:
            raise SingularError(f"singular solution space has dimension {len(sols)}, expected 1")
        v = sols[0]
        top = v.terms.get(_pi_key(()), 0)
        if not top:
            raise SingularError("solution has no top component; cannot normalise")
        return v * (1 / top)
    coeffs = formula_coefficients(maxz, params)
    return TensorVector.make(params.m_weight, {_pi_key(pi): c for pi, c in coeffs.items()}, maxz)


def coefficients_by_partition(v: TensorVector) -> dict[Partition, Fraction]:
    out = {}
    for (mono_, j, z), c in v.terms.items():
        if mono_.a or j:
            raise ValueError("not a pure-b, u_0 tensor")
        out[tuple(sorted(mono_.b, reverse=True))] = c
    return dict(sorted(out.items(), key=lambda kv: (sum(kv[0]), [-p for p in kv[0]])))


def check_singular(v: TensorVector, krange: int, params: Params) -> VerificationReport:
    report = VerificationReport("singular", params, {"krange": krange, "complete_through": v.complete_through})
    if krange > v.complete_through:
        raise WindowError(f"v# is exact only through z^{v.complete_through}, krange {krange} requested")
    for x in ("h", "e"):
        check = report.check(f"{x}_k*v#=0")
        for k in range(1, krange + 1):
            r = tensor_act(x, k, v, params)
            check.record(not r, lambda: {"k": k, "residual": r.to_json()})
    weight = report.check("h_0 weight of every slice = lam")
    grade = report.check("d-grade of z^n slice = -n")
    left_lam = params.lam - params.m_weight
    for (mono_, j, z), c in v.terms.items():
        w = left_lam - 2 * len(mono_.a) + params.m_weight - 2 * j
        weight.record(w == params.lam, lambda: {"term": [list(mono_.a), list(mono_.b), j, z]})
        grade.record(d_eigenvalue(mono_) == -z, lambda: {"term": [list(mono_.a), list(mono_.b), j, z]})
    return report


def check_hminus_corollary(v: TensorVector, params: Params) -> VerificationReport:
    """Compare sum_{k>0} z^-k (h_k (x) 1) v# with -m v# inside the window.

    Per k the identity z^-k (h_k (x) 1) v# = -m v# holds on every coefficient
    that the shift keeps inside the window; summed over k the coefficient of
    z^n picks up one copy per admissible k, i.e. (ct - n) copies.
    """
    report = VerificationReport("hminus", params, {"complete_through": v.complete_through})
    left = params.shifted()
    ct = v.complete_through
    m = params.m_weight
    per_k = report.check("z^-k(h_k x 1)v# = -m v# (each k)")
    total = TensorVector.make(m, {}, ct)
    for k in range(1, ct + 1):
        img = v.left(lambda u, k=k: apply_h(k, u, left))
        shifted = TensorVector.make(m, {(a, j, z - k): c for (a, j, z), c in img.terms.items()}, ct - k)
        want = (v * -m).truncate(ct - k)
        r = shifted - want
        per_k.record(not r, lambda: {"k": k, "residual": r.to_json()})
        total = total + TensorVector.make(m, shifted.terms, ct)
    summed = report.check("sum_k z^-k(h_k x 1)v# = -m v#")
    r = total - v * -m
    summed.record(not r, lambda: {"residual": r.to_json()})
    ratios = {}
    for key, c in v.terms.items():
        ratios[str(key[2])] = fmt_scalar(total.terms.get(key, 0) / c) if c else "0"
    report.tier2["partial_sum_over_vsharp_by_z"] = dict(sorted(ratios.items(), key=lambda kv: int(kv[0])))
    return report


def compare_formula_solve(maxz: int, params: Params) -> dict:
    """Tier-2 record of the closed form against the solved singular vector."""
    solved = coefficients_by_partition(singular_vector(SingularMode.SOLVE, maxz, params))
    formula = formula_coefficients(maxz, params)
    top = formula[()]
    rows = []
    proportional = True
    ratios = set()
    for pi in partitions_upto(maxz):
        f = formula.get(pi, Fraction(0)) / top if top else Fraction(0)
        s = solved.get(pi, Fraction(0))
        ratio = fmt_scalar(f / s) if s else ("undefined" if f else "0/0")
        if s:
            ratios.add(f / s)
        elif f:
            proportional = False
        rows.append({
            "partition": fmt_partition(pi),
            "parts": len(pi),
            "formula": fmt_scalar(f),
            "solve": fmt_scalar(s),
            "formula_over_solve": ratio,
        })
    proportional = proportional and len(ratios) <= 1
    return {
        "params": params.to_dict(),
        "maxz": maxz,
        "agree_up_to_scale": proportional,
        "rows": rows,
    }


# ---------------------------------------------------------------- the intertwiner


def required_depth(m: FockMonomial, window: int) -> int:
    """Depth of v# needed so that Phi(m) is exact through z^window."""
    return window + sum(m.b) - sum(n for n in m.a if n < 0)


class PhiEngine:
    """Phi^W on Fock vectors, with a memoised singular vector.

    ``vsharp`` may be supplied; then requests deeper than its window raise
    WindowError instead of recomputing.
    """

    def __init__(self, params: Params, mode: SingularMode | str = SingularMode.SOLVE, vsharp: TensorVector | None = None):
        _require_kappa(params)
        self.params = params
        self.mode = SingularMode(mode)
        self._fixed = vsharp is not None
        self._vsharp = vsharp
        self._memo: dict[tuple[FockMonomial, int], TensorVector] = {}

    def vsharp(self, depth: int) -> TensorVector:
        depth = max(depth, 1)
        if self._vsharp is None or self._vsharp.complete_through < depth:
            if self._fixed:
                raise WindowError(
                    f"singular vector is exact through z^{self._vsharp.complete_through}, depth {depth} needed")
            self._vsharp = singular_vector(self.mode, depth, self.params)
        return self._vsharp.truncate(depth)

    def on_basis(self, m: FockMonomial, window: int) -> TensorVector:
        key = (m, window)
        if key not in self._memo:
            t = self.vsharp(required_depth(m, window))
            for k in m.b:
                t = tensor_act("h", -k, t, self.params)
            for n in m.a:
                t = tensor_act("f", n, t, self.params)
            self._memo[key] = t.truncate(window)
        return self._memo[key]

    def apply(self, v: FockVector, window: int) -> TensorVector:
        out = TensorVector.make(self.params.m_weight, {}, window)
        for m, c in v.sorted_items():
            out = out + self.on_basis(m, window) * c
        return out

    def component(self, dual: Mapping[int, object], v: FockVector, window: int, offset=0) -> ZSeries:
        """(1 (x) dual) Phi(v) as a z-series with exponents offset + n."""
        return self.apply(v, window).with_offset(offset).component(dual)

    def exact_component(self, dual, v: FockVector, target, offset=0) -> ZSeries:
        """Like component, with the window chosen so the series is exact through the absolute exponent target."""
        window = _ceil(Fraction(target) - Fraction(offset))
        return self.component(dual, v, window, offset).truncate(target)


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def phi_on_basis(word: FockMonomial, window: int, params: Params, vsharp: TensorVector | None = None,
                 mode: SingularMode | str = SingularMode.SOLVE) -> TensorVector:
    return PhiEngine(params, mode, vsharp).on_basis(word, window)


def hat_offset(x: DualWeight, params: Params) -> Fraction:
    return -delta_gap(params) - virasoro_delta(x.alpha, params.mu)


def phi_x(x: DualWeight, v: FockVector, window: int, params: Params, hatted: bool = False,
          graded: bool = False, engine: PhiEngine | None = None) -> ZSeries:
    """x-component of Phi(v); graded shifts by z^-Delta, hatted also by z^-Delta(mu, alpha)."""
    engine = engine or PhiEngine(params)
    if hatted:
        offset = hat_offset(x, params)
    elif graded:
        offset = -delta_gap(params)
    else:
        offset = Fraction(0)
    return engine.component({x.j: 1}, v, window, offset)


def _unit(j: int) -> dict[int, Fraction]:
    return {j: Fraction(1)}


def check_d_intertwining(delta_try, samples: Sequence[FockMonomial], window: int, params: Params,
                         engine: PhiEngine | None = None) -> VerificationReport:
    """z^-D Phi d - (d (x) 1) z^-D Phi = z d/dz (z^-D Phi), coefficient by coefficient."""
    delta_try = Fraction(delta_try)
    engine = engine or PhiEngine(params)
    gap = delta_gap(params)
    report = VerificationReport("d-intertwining", params,
                                {"delta_try": fmt_scalar(delta_try), "window": window, "samples": len(samples)})
    check = report.check("Phi d-(d x 1)Phi = z d/dz Phi")
    d_top = conformal_delta(params.lam, params)
    d_left = conformal_delta(params.lam - params.m_weight, params)
    ratios = set()
    for v in samples:
        t = engine.on_basis(v, window)
        gv = d_eigenvalue(v) - d_top
        for (mono_, j, z), c in sorted(t.terms.items(), key=lambda kv: (kv[0][2], kv[0][1], kv[0][0])):
            lhs = gv * c - (d_eigenvalue(mono_) - d_left) * c
            rhs = (z - delta_try) * c
            ratios.add((lhs - rhs) / c)
            check.record(lhs == rhs, lambda: {
                "vector": [list(v.a), list(v.b)], "term": [list(mono_.a), list(mono_.b), j, z],
                "residual": fmt_scalar(lhs - rhs)})
    report.tier2["delta_gap"] = fmt_scalar(gap)
    report.tier2["residual_over_coefficient"] = sorted(fmt_scalar(r) for r in ratios)
    return report


def check_phi_commutators(modes: Iterable[int], duals: Sequence[DualWeight], samples: Sequence[FockMonomial],
                          window: int, params: Params, engine: PhiEngine | None = None) -> VerificationReport:
    engine = engine or PhiEngine(params)
    modes = list(modes)
    left = params.shifted()
    report = VerificationReport("phi", params, {"modes": modes, "window": window, "samples": len(samples),
                                                "duals": [x.j for x in duals]})
    a_check = report.check("[a_m,Phi_x]=z^m Phi_fx")
    s_check = report.check("[a*_n,Phi_x]=0")
    b_rows = []
    for x in duals:
        ux = _unit(x.j)
        fx = dual_act("f", ux, x.m)
        hx = dual_act("h", ux, x.m)
        for v in samples:
            vv = FockVector.basis(v)
            base = engine.component(ux, vv, window)
            for n in modes:
                lhs = base.apply(lambda u: apply_a(n, u)) - engine.component(ux, apply_a(n, vv), window)
                rhs = engine.exact_component(fx, vv, window - n).shift(n) if fx else ZSeries.make({}, window)
                r = (lhs - rhs).truncate(window)
                a_check.record(not r, lambda: {"m": n, "j": x.j, "vector": [list(v.a), list(v.b)], "residual": r.to_json()})

                r = (base.apply(lambda u: apply_a_star(n, u)) - engine.component(ux, apply_a_star(n, vv), window)).truncate(window)
                s_check.record(not r, lambda: {"n": n, "j": x.j, "vector": [list(v.a), list(v.b)], "residual": r.to_json()})

                lhs = base.apply(lambda u: apply_b(n, u, left)) - engine.component(ux, apply_b(n, vv, params), window)
                rhs = engine.exact_component(hx, vv, window - n).shift(n) if hx else ZSeries.make({}, window)
                r = (lhs - rhs).truncate(window)
                if r:
                    b_rows.append({"m": n, "j": x.j, "vector": [list(v.a), list(v.b)], "residual": r.to_json()})
    total = len(modes) * len(duals) * len(samples)
    report.tier2["b_commutator"] = {"instances": total, "nonzero": len(b_rows), "residuals": b_rows}
    return report


# ---------------------------------------------------------------- KZ


def kz_min_window(m_range: Sequence[int]) -> int:
    return max(max(m_range), 0) + 2


def _kz_pieces(n: int, x: DualWeight, v: FockMonomial, window: int, params: Params, engine: PhiEngine):
    """LHS [L_n, Phi^_x] v and the three right-hand terms, all exact through offset + window."""
    left = params.shifted()
    off = hat_offset(x, params)
    target = off + window
    ux = _unit(x.j)
    fx = dual_act("f", ux, x.m)
    alpha = Fraction(x.alpha)
    vv = FockVector.basis(v)
    comp = lambda dual, vec, shift: engine.exact_component(dual, vec, target - shift, off).shift(shift)

    phi_v = comp(ux, vv, 0)
    lhs = phi_v.apply(lambda u: apply_L(n, u, left)) - comp(ux, apply_L(n, vv, params), 0)

    # Phi^_fx z^{n+1} d_z a*(z) = sum_p (-p) z^{n-p} Phi^_fx a*_p, with fx hatted at the offset of x
    rhs1 = []
    for p in sorted({-k for k in v.a}):
        w = apply_a_star(p, vv)
        if w and fx:
            rhs1.append(comp(fx, w, n - p) * -p)
    rhs1 = zsum(rhs1, target)

    # z^{n+1} :b(z) Phi^_x(z): = sum_{r>=1} z^{n+r} b_-r Phi^_x + sum_{q>=0} z^{n-q} Phi^_x b_q
    rhs2 = []
    lowest = min(phi_v.coeffs, default=None)
    if lowest is not None:
        r = 1
        while lowest + n + r <= target:
            rhs2.append(comp(ux, vv, n + r).apply(lambda u, r=r: apply_b(-r, u, left)))
            r += 1
    for q in sorted({0} | set(v.b)):
        w = apply_b(q, vv, params)
        if w:
            rhs2.append(comp(ux, w, n - q))
    rhs2 = zsum(rhs2, target) * (alpha / 2)

    rhs3 = comp(ux, vv, n) * ((n + 1) * virasoro_delta(alpha, params.mu))
    return lhs, rhs1, rhs2, rhs3, target


def kz_residual(n: int, x: DualWeight, v: FockMonomial, window: int, params: Params, engine: PhiEngine) -> ZSeries:
    lhs, r1, r2, r3, target = _kz_pieces(n, x, v, window, params, engine)
    return (lhs - r1 - r2 - r3).truncate(target)


def derivative_residual(x: DualWeight, v: FockVector | FockMonomial, window: int, params: Params,
                        engine: PhiEngine) -> ZSeries:
    """d/dz Phi^_x - Phi^_fx d_z a* - (alpha/2) :b Phi^_x:, exact through offset + window - 1."""
    _, r1, r2, _, target = _kz_pieces(-1, x, v, window, params, engine)
    off = hat_offset(x, params)
    phi = engine.exact_component(_unit(x.j), FockVector.basis(v), target + 1, off)
    return (phi.derivative() - r1 - r2).truncate(target)


def _series_rows(s: ZSeries) -> list:
    return s.to_json()["coefficients"]


def check_kz(m_range: Sequence[int], duals: Sequence[DualWeight], samples: Sequence[FockMonomial], window: int,
             params: Params, engine: PhiEngine | None = None) -> VerificationReport:
    m_range = list(m_range)
    need = kz_min_window(m_range)
    if window < need:
        raise WindowError(f"window {window} too small for m_range {m_range}: need >= {need}")
    engine = engine or PhiEngine(params)
    left = params.shifted()
    vir = params.delta_convention is DeltaConvention.VIRASORO
    report = VerificationReport("kz", params, {"m_range": m_range, "window": window, "samples": len(samples),
                                               "duals": [x.j for x in duals]})
    cross = report.check("z*(derivative residual) = (L_0 residual)") if vir else None
    direct = report.check("z d/dz Phi^_x = [L_0,Phi^_x] - Delta(mu,alpha) Phi^_x") if vir else None
    if not vir:
        report.skip("cross-consistency", "delta convention is not virasoro")
    kz_rows, deriv_rows, cross_rows = [], [], []
    zero_counts = {str(n): 0 for n in m_range}
    for x in duals:
        off = hat_offset(x, params)
        for v in samples:
            tag = {"j": x.j, "vector": [list(v.a), list(v.b)]}
            for n in m_range:
                r = kz_residual(n, x, v, window, params, engine)
                if r:
                    kz_rows.append({"m": n, **tag, "residual": _series_rows(r)})
                else:
                    zero_counts[str(n)] += 1
            d = derivative_residual(x, v, window, params, engine)
            if d:
                deriv_rows.append({**tag, "residual": _series_rows(d)})
            k0 = kz_residual(0, x, v, window, params, engine)
            c = (d.shift(1) - k0).truncate(off + window)
            vv = FockVector.basis(v)
            phi = engine.exact_component(_unit(x.j), vv, off + window, off)
            lhs = phi.z_derivative()
            rhs = (phi.apply(lambda u: apply_L(0, u, left))
                   - engine.exact_component(_unit(x.j), apply_L(0, vv, params), off + window, off)
                   - phi * virasoro_delta(x.alpha, params.mu))
            dr = (lhs - rhs).truncate(off + window)
            if vir:
                cross.record(not c, lambda: {**tag, "residual": _series_rows(c)})
                direct.record(not dr, lambda: {**tag, "residual": _series_rows(dr)})
            elif c or dr:
                cross_rows.append({**tag, "cross": _series_rows(c), "direct": _series_rows(dr)})
    total = len(duals) * len(samples)
    report.tier2["kz_zero_residual_count_by_m"] = zero_counts
    report.tier2["kz_instances_per_m"] = total
    report.tier2["kz_residuals"] = kz_rows
    report.tier2["derivative_form_residuals"] = deriv_rows
    report.tier2["fx_hat_exponent_mismatch"] = {
        str(x.j): fmt_scalar(virasoro_delta(x.alpha, params.mu) - virasoro_delta(x.alpha - 2, params.mu))
        for x in duals if x.j > 0}
    if not vir:
        report.tier2["cross_consistency_residuals"] = cross_rows
    return report


__all__ = [
    "SingularMode",
    "SingularError",
    "WindowError",
    "tensor_act",
    "ansatz",
    "solve_singular",
    "formula_coefficients",
    "singular_vector",
    "coefficients_by_partition",
    "check_singular",
    "check_hminus_corollary",
    "compare_formula_solve",
    "required_depth",
    "PhiEngine",
    "phi_on_basis",
    "phi_x",
    "hat_offset",
    "check_d_intertwining",
    "check_phi_commutators",
    "kz_min_window",
    "kz_residual",
    "derivative_residual",
    "check_kz",
    "dual_basis",
]
