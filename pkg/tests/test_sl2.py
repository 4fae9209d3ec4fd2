from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wakimoto.sl2 import DualWeight, SL2Vector, act_on_basis, dual_act, dual_basis, evaluation_act, sl2_act


def commutator(x, y, v):
    return sl2_act(x, sl2_act(y, v)) - sl2_act(y, sl2_act(x, v))


def test_basis_action():
    assert act_on_basis("h", 2, 1) is None
    assert act_on_basis("f", 2, 0) == (1, 1)
    assert act_on_basis("f", 2, 2) is None
    assert act_on_basis("e", 3, 1) == (0, 3)
    assert act_on_basis("c", 3, 1) is None
    with pytest.raises(ValueError):
        act_on_basis("h", 2, 3)


def test_evaluation_examples():
    u0 = SL2Vector.basis(3, 0)
    assert evaluation_act("f", 2, u0, 0) == (SL2Vector.basis(3, 1), 2)
    assert evaluation_act("h", -1, u0, 3) == (u0 * 3, 2)
    assert evaluation_act("c", 4, u0, 1)[0] == SL2Vector.of(3, {})


@given(st.integers(0, 6), st.data())
def test_sl2_relations(m, data):
    v = SL2Vector.of(m, {j: data.draw(st.sampled_from([0, 1, -2, Fraction(1, 3)])) for j in range(m + 1)})
    assert commutator("e", "f", v) == sl2_act("h", v)
    assert commutator("h", "e", v) == sl2_act("e", v) * 2
    assert commutator("h", "f", v) == sl2_act("f", v) * -2


def dual_commutator(x, y, w, m):
    a = dual_act(x, dual_act(y, w, m), m)
    b = dual_act(y, dual_act(x, w, m), m)
    keys = set(a) | set(b)
    return {k: a.get(k, 0) - b.get(k, 0) for k in keys if a.get(k, 0) != b.get(k, 0)}


@given(st.integers(0, 6), st.data())
def test_dual_is_a_representation(m, data):
    w = {j: Fraction(data.draw(st.integers(-3, 3))) for j in range(m + 1)}
    w = {j: c for j, c in w.items() if c}
    assert dual_commutator("e", "f", w, m) == dual_act("h", w, m)
    scaled = {k: 2 * c for k, c in dual_act("e", w, m).items()}
    assert dual_commutator("h", "e", w, m) == scaled


@given(st.integers(0, 6), st.data())
def test_dual_pairing_is_contragredient(m, data):
    j = data.draw(st.integers(0, m))
    i = data.draw(st.integers(0, m))
    for x in ("e", "f", "h"):
        xy = dual_act(x, {j: Fraction(1)}, m)
        r = act_on_basis(x, m, i)
        rhs = -(r[1] if r is not None and r[0] == j else 0)
        assert xy.get(i, 0) == rhs


def test_dual_weights():
    assert [x.alpha for x in dual_basis(3)] == [-3, -1, 1, 3]
    assert dual_act("h", {1: 1}, 3) == {1: Fraction(-1)}
    assert dual_act("f", {2: 1}, 3) == {1: Fraction(-1)}
    assert dual_act("f", {0: 1}, 3) == {}
    with pytest.raises(ValueError):
        DualWeight(2, 3)
