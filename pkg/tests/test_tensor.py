from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wakimoto.core import FockVector, Params, mono
from wakimoto.intertwiner import tensor_act
from wakimoto.tensor import TensorVector, ZSeries, zsum

from conftest import monomials

P = Params(lam=Fraction(5, 2), kappa=Fraction(3, 2), b_level=Fraction(3, 2), m_weight=2)
KILLING = {("e", "f"): 1, ("f", "e"): 1, ("h", "h"): 2}


@st.composite
def tensors(draw, m=2, ct=3):
    keys = draw(st.lists(st.tuples(monomials(2, 2), st.integers(0, m), st.integers(-2, ct)), min_size=1, max_size=3))
    return TensorVector.make(m, {k: draw(st.sampled_from([1, -1, Fraction(1, 2)])) for k in keys}, ct)


def lie(x, y):
    """[x, y] in sl(2) as (coefficient, generator) or None."""
    table = {("e", "f"): (1, "h"), ("f", "e"): (-1, "h"), ("h", "e"): (2, "e"), ("e", "h"): (-2, "e"),
             ("h", "f"): (-2, "f"), ("f", "h"): (2, "f")}
    return table.get((x, y))


@given(tensors(), st.sampled_from("efh"), st.sampled_from("efh"), st.integers(-2, 2), st.integers(-2, 2))
def test_tensor_action_is_a_representation(T, x, y, m, n):
    act = lambda g, k, t: tensor_act(g, k, t, P)
    lhs = act(x, m, act(y, n, T)) - act(y, n, act(x, m, T))
    want = T * 0
    br = lie(x, y)
    if br is not None:
        want = act(br[1], m + n, T) * br[0]
    if m + n == 0 and (x, y) in KILLING:
        want = want + T * (m * KILLING[(x, y)] * P.kappa)
    ct = min(lhs.complete_through, want.complete_through)
    assert lhs.truncate(ct) == want.truncate(ct)


def test_right_action_window():
    T = TensorVector.make(1, {(mono(), 0, 0): 1, (mono(), 0, 3): 1}, 3)
    out = T.right("f", -2)
    assert out.complete_through == 1
    assert out.terms == {(mono(), 1, -2): 1, (mono(), 1, 1): 1}
    assert T.right("f", 2).complete_through == 3
    assert T.right("f", 2).terms == {(mono(), 1, 2): 1}


def test_make_validates_and_drops_outside_window():
    T = TensorVector.make(1, {(mono(), 0, 5): 1, (mono(), 1, 0): 0}, 3)
    assert not T
    with pytest.raises(ValueError):
        TensorVector.make(1, {(mono(), 2, 0): 1}, 3)
    with pytest.raises(ValueError):
        T + TensorVector.make(2, {}, 3)


def test_component_and_json():
    T = TensorVector.make(2, {(mono([-1]), 1, 0): 2, (mono(), 0, 1): 3}, 2, offset=Fraction(-1, 2))
    s = T.component({1: Fraction(1, 2)})
    assert s.coeffs == {Fraction(-1, 2): FockVector.basis(mono([-1]))}
    assert s.complete_through == Fraction(3, 2)
    assert T.to_json()["terms"][0] == {"c": "2", "a": [-1], "b": [], "j": 1, "z": 0}


def test_zseries_calculus():
    v = FockVector.basis(mono())
    s = ZSeries.make({Fraction(1, 2): v, 2: v * 3}, 3)
    assert s.derivative().coeffs == {Fraction(-1, 2): v * Fraction(1, 2), 1: v * 6}
    assert s.z_derivative().coeffs == {Fraction(1, 2): v * Fraction(1, 2), 2: v * 6}
    assert s.shift(-1).complete_through == 2
    assert not (s - s)
    assert zsum([s, s], 1).coeffs == {Fraction(1, 2): v * 2}
