from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from yanglab.dense import DenseModule
from yanglab.engine import (Generator, WeightVector, apply_generator, apply_word, hgen,
                            vector_from_json, vector_to_json, weight_of, xminus, xplus)
from yanglab.findim import WmModule, wm_closed_form_act
from yanglab.tensor import TensorModule

W1_3 = WmModule(1, 3)
DENSE = DenseModule(1, 9, 0)
U = TensorModule(DenseModule(1, 9, 0), WmModule(1, 1))

ALL_GENS = [g(k) for k in range(5) for g in (xplus, xminus, hgen)]


def test_generator_parse():
    assert Generator.parse("X2+") == xplus(2)
    assert Generator.parse("X_0^-") == xminus(0)
    assert Generator.parse("H3") == hgen(3)
    assert str(xminus(1)) == "X1-"
    with pytest.raises(ValueError):
        Generator.parse("X2")
    with pytest.raises(ValueError):
        Generator("X+", -1)


def test_x2_on_w1():
    assert apply_generator(W1_3, xplus(2), WeightVector.basis(0)) == WeightVector.basis(1, 9)


def test_h0_diagonal_everywhere():
    for module, idx in [(W1_3, 0), (WmModule(3, 1), 2), (DENSE, -4), (U, (2, 1))]:
        e = WeightVector.basis(idx)
        assert apply_generator(module, hgen(0), e) == module.weight(idx) * e


def test_x1_on_w2():
    assert apply_generator(WmModule(2, 1), xplus(1), WeightVector.basis(1)) == WeightVector.basis(2, 4)


def test_apply_word():
    v = WeightVector.basis(1, Fraction(2, 3))
    assert apply_word(W1_3, [], v) == v
    w0 = WmModule(1, 0)
    e1 = WeightVector.basis(1)
    comm = apply_word(w0, [xplus(0), xminus(0)], e1) - apply_word(w0, [xminus(0), xplus(0)], e1)
    assert comm == e1
    assert apply_word(DENSE, [xminus(0), xplus(0)], WeightVector.basis(0)) == \
        WeightVector.basis(0, Fraction(5, 4))


def test_weight_of():
    m = WmModule(4, 2)
    for s in range(5):
        assert weight_of(m, WeightVector.basis(s)) == 2 * s - 4
    assert weight_of(DENSE, WeightVector.basis(3)) == 7
    assert weight_of(DENSE, WeightVector.zero()) is None
    assert weight_of(DENSE, WeightVector({0: 1, 1: 1})) is None


@pytest.mark.parametrize("module,indices", [
    (WmModule(3, Fraction(3, 2)), range(4)),
    (DENSE, range(-3, 4)),
    (U, [(k, j) for k in range(-2, 3) for j in (0, 1)]),
])
def test_weight_homogeneity(module, indices):
    for idx in indices:
        mu = module.weight(idx)
        for gen in ALL_GENS:
            image = apply_generator(module, gen, WeightVector.basis(idx))
            if image:
                assert weight_of(module, image) == mu + gen.shift


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("a", [0, 1, Fraction(3, 2), Fraction(-2, 7)])
def test_engine_matches_closed_form(m, a):
    module = WmModule(m, a)
    for s in range(m + 1):
        for gen in ALL_GENS:
            assert apply_generator(module, gen, WeightVector.basis(s)) == \
                wm_closed_form_act(module, gen, s), (gen, s)


coeffs = st.fractions(min_value=-99, max_value=99, max_denominator=20)


@settings(max_examples=30, deadline=None)
@given(coeffs, coeffs, st.integers(-3, 3), st.integers(-3, 3),
       st.sampled_from([g for g in ALL_GENS if g.level <= 3]))
def test_linearity(alpha, beta, i, j, gen):
    u, v = WeightVector.basis(i), WeightVector.basis(j, 2)
    lhs = apply_generator(DENSE, gen, alpha * u + beta * v)
    rhs = alpha * apply_generator(DENSE, gen, u) + beta * apply_generator(DENSE, gen, v)
    assert lhs == rhs


def test_memo_and_direct_agree():
    for module, idx in [(DenseModule(Fraction(1, 2), 2, 1), 1), (U, (0, 1)), (WmModule(2, 5), 1)]:
        for gen in [xplus(3), xminus(3), hgen(3)]:
            e = WeightVector.basis(idx)
            assert apply_generator(module, gen, e, memo=True) == \
                apply_generator(module, gen, e, memo=False)


def test_zero_coefficients_dropped():
    v = WeightVector({0: 1, 1: 0})
    assert v.support() == [0]
    assert not (v - v)
    assert len(v + WeightVector.basis(0, -1)) == 0


def test_vector_json_round_trip():
    v = WeightVector({(1, 0): Fraction(1, 2), (0, 1): 1, (-3, 1): -2})
    data = vector_to_json(U, v)
    assert [e["index"] for e in data] == [[1, 0], [-3, 1], [0, 1]]
    assert vector_from_json(U, data) == v
