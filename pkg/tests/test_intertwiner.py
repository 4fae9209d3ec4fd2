from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wakimoto.affine import apply_h
from wakimoto.core import DeltaConvention, FockVector, Params, delta_gap, mono
from wakimoto.intertwiner import (
    PhiEngine,
    SingularError,
    SingularMode,
    WindowError,
    ansatz,
    check_d_intertwining,
    check_hminus_corollary,
    check_kz,
    check_phi_commutators,
    check_singular,
    coefficients_by_partition,
    compare_formula_solve,
    formula_coefficients,
    hat_offset,
    kz_min_window,
    kz_residual,
    phi_x,
    singular_vector,
    solve_singular,
    tensor_act,
)
from wakimoto.sampling import sample_basis
from wakimoto.sl2 import DualWeight, dual_basis


def level(m, kappa, lam=Fraction(3, 2), **kw):
    return Params(lam=lam, kappa=kappa, b_level=kappa, m_weight=m, **kw)


def test_ansatz_is_pure_b_top_weight():
    keys = ansatz(3, level(2, 1))
    assert len(keys) == 1 + 1 + 2 + 3
    assert all(not k[0].a and k[1] == 0 and k[2] == sum(k[0].b) for k in keys)


@pytest.mark.parametrize("m,kappa", [(1, 1), (2, Fraction(3, 2)), (3, -2), (2, Fraction(-1, 3))])
def test_solve_is_one_dimensional(m, kappa):
    p = level(m, kappa)
    assert len(solve_singular(4, p)) == 1
    v = singular_vector(SingularMode.SOLVE, 4, p)
    assert check_singular(v, 4, p).passed


def test_degree_one_solve_ratio():
    # h_1 * (c0 w' u0 + c1 b_-1 w' u0 z) = (2 kappa c1 + m c0) w' u0 z in the u0 z slot
    for m, kappa in [(1, 1), (2, Fraction(3, 2)), (3, -2)]:
        c = coefficients_by_partition(singular_vector("solve", 1, level(m, kappa)))
        assert c[()] == 1
        assert c[(1,)] == -Fraction(m) / (2 * kappa)


def test_m_zero_is_top_vector_only():
    p = level(0, 2)
    v = singular_vector("solve", 4, p)
    assert coefficients_by_partition(v) == {(): 1}
    assert formula_coefficients(4, p) == {(): 1}
    rep = check_hminus_corollary(v, p)
    assert rep.passed


def test_solve_needs_kappa():
    with pytest.raises(ValueError):
        solve_singular(2, level(1, 0))


def test_formula_vs_solve_factor_two_per_part():
    p = level(2, Fraction(3, 2), lam=1)
    out = compare_formula_solve(5, p)
    assert not out["agree_up_to_scale"]
    for row in out["rows"]:
        assert Fraction(row["formula_over_solve"]) == 2 ** row["parts"]


def test_formula_is_not_singular_at_level_kappa():
    p = level(2, Fraction(3, 2))
    v = singular_vector("formula", 3, p)
    assert not check_singular(v, 3, p).passed


def test_hminus_per_k_holds_but_sum_does_not():
    p = level(2, Fraction(3, 2))
    v = singular_vector("solve", 4, p)
    rep = check_hminus_corollary(v, p)
    assert rep.checks["z^-k(h_k x 1)v# = -m v# (each k)"].passed
    assert not rep.checks["sum_k z^-k(h_k x 1)v# = -m v#"].passed
    ratios = rep.tier2["partial_sum_over_vsharp_by_z"]
    assert ratios == {str(n): str(-2 * (4 - n)) for n in range(5)}


def test_hminus_lowest_order():
    p = level(3, -2)
    v = singular_vector("solve", 2, p)
    c = coefficients_by_partition(v)
    left = p.shifted()
    img = v.left(lambda u: apply_h(1, u, left))
    assert img.terms[(mono(), 0, 1)] == -3 * c[()]
    assert 2 * p.kappa * c[(1,)] == -3 * c[()]


def test_phi_on_vacuum_and_a_minus_one():
    p = level(2, 1)
    eng = PhiEngine(p)
    v = eng.vsharp(4)
    assert eng.on_basis(mono(), 4) == v.truncate(4)
    assert eng.on_basis(mono([-1]), 3) == tensor_act("f", -1, eng.vsharp(5), p).truncate(3)
    s = phi_x(DualWeight(2, 0), FockVector.basis(mono()), 3, p, engine=eng)
    assert s.coeffs[Fraction(0)] == FockVector.basis(mono())
    assert not phi_x(DualWeight(2, 1), FockVector.basis(mono()), 3, p, engine=eng)


def test_offsets():
    p = level(2, 1)
    gap = delta_gap(p)
    assert hat_offset(DualWeight(2, 2), p) == -gap - Fraction(4, 4)
    g = phi_x(DualWeight(2, 0), FockVector.basis(mono()), 2, p, graded=True)
    assert min(g.coeffs) == -gap


def test_fixed_vsharp_raises_window_error():
    p = level(1, 1)
    eng = PhiEngine(p, vsharp=singular_vector("solve", 2, p))
    eng.on_basis(mono(), 2)
    with pytest.raises(WindowError):
        eng.on_basis(mono((), [2]), 2)


@settings(max_examples=15)
@given(st.lists(st.integers(-2, 2), max_size=2), st.lists(st.integers(1, 2), max_size=1), st.integers(0, 2))
def test_window_exactness(a, b, window):
    p = level(1, Fraction(3, 2))
    m = mono(a, b)
    small = PhiEngine(p).on_basis(m, window)
    big = PhiEngine(p).on_basis(m, window + 2)
    assert big.truncate(window) == small


@pytest.mark.parametrize("conv", [DeltaConvention.AFFINE, DeltaConvention.VIRASORO])
def test_d_intertwining(conv):
    p = level(2, 2, delta_convention=conv)
    eng = PhiEngine(p)
    samples = [mono(), mono([-1])]
    gap = delta_gap(p)
    assert check_d_intertwining(gap, samples, 3, p, eng).passed
    up = check_d_intertwining(gap + 1, samples, 3, p, eng)
    assert not up.passed and up.tier2["residual_over_coefficient"] == ["1"]
    down = check_d_intertwining(gap - 1, samples, 3, p, eng)
    assert not down.passed and down.tier2["residual_over_coefficient"] == ["-1"]


def test_d_intertwining_m_zero():
    p = level(0, 2)
    assert delta_gap(p) == 0
    assert check_d_intertwining(0, [mono(), mono([-1])], 3, p).passed


def test_phi_commutators_and_b_residual_shape():
    p = level(1, 2)
    samples = [mono(), mono([-1]), mono((), [1])]
    rep = check_phi_commutators(range(-3, 4), dual_basis(1), samples, 3, p)
    assert rep.passed
    assert rep.checks["[a*_n,Phi_x]=0"].instances == 7 * 2 * 3
    rows = rep.tier2["b_commutator"]["residuals"]
    assert rows
    assert all(r["j"] == 1 and r["vector"][0] for r in rows)


def test_kz_window_precondition():
    p = level(1, 2)
    assert kz_min_window([-1, 0, 1, 2]) == 4
    with pytest.raises(WindowError):
        check_kz([-1, 0, 1, 2], dual_basis(1), [mono()], 3, p)


def test_kz_cross_consistency_virasoro():
    p = Params(lam=Fraction(3, 2), kappa=2, b_level=1, m_weight=2, mu=Fraction(1, 2))
    rep = check_kz([-1, 0, 1, 2], dual_basis(2), sample_basis(0, 4), 4, p)
    assert rep.passed, rep.failed_checks()
    assert set(rep.tier2["fx_hat_exponent_mismatch"]) == {"1", "2"}


def test_kz_vacuum_top_component_vanishes():
    # on w nothing can go wrong: the x = u_0* component solves every mode equation
    p = Params(lam=Fraction(3, 2), kappa=2, b_level=1, m_weight=1)
    eng = PhiEngine(p)
    for n in (-1, 0, 1, 2):
        assert not kz_residual(n, DualWeight(1, 0), mono(), 4, p, eng)


def test_kz_affine_skips_cross_check():
    p = Params(lam=Fraction(3, 2), kappa=2, b_level=1, m_weight=1, delta_convention=DeltaConvention.AFFINE)
    rep = check_kz([0], dual_basis(1), [mono()], 2, p)
    assert rep.skipped[0]["check"] == "cross-consistency"
    assert "cross_consistency_residuals" in rep.tier2
