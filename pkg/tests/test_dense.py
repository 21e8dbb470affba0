from fractions import Fraction

import pytest

from yanglab.dense import (DenseModule, DenseValidationError, a_coeff, b_coeff, dense_primitive_act,
                           engine_h1_via_commutator, validate_dense, x1_closed_form)
from yanglab.engine import WeightVector, apply_generator, hgen, xminus, xplus
from yanglab.scalar_field import FieldContext, QuadScalar

GRID = [(mu, tau) for mu in (Fraction(1, 2), 1, 2) for tau in (9, 25, 2)
        if not (mu == 2 and tau in (9, 25))]


def b_by_recursion(mu, tau, b0, lo, hi):
    """Oracle: b from the two-step recursion, seeded by b_0 and the k=0 cross-relation."""
    mu, tau = Fraction(mu), Fraction(tau)

    def a(k):
        return (tau - (mu + 2 * k + 1) ** 2) / 4

    b = {0: b0}
    b[-1] = (mu - 2) * (b0 + a(0) - mu) / mu - a(-1)
    for k in range(1, hi + 1):
        b[k] = 2 * b[k - 1] - b[k - 2] + 6
    for k in range(-2, lo - 1, -1):
        b[k] = 6 - b[k + 2] + 2 * b[k + 1]
    return b


def test_validate_examples():
    assert validate_dense(1, 9, 0).mu == 1
    with pytest.raises(DenseValidationError, match="k=1"):
        validate_dense(1, 16, 0)
    with pytest.raises(DenseValidationError, match=r"mu not in \(0,2\]"):
        validate_dense(3, 2, 0)
    with pytest.raises(DenseValidationError, match=r"mu not in \(0,2\]"):
        validate_dense(0, 2, 0)
    with pytest.raises(DenseValidationError, match="k=-1"):
        validate_dense(1, 0, 0)
    with pytest.raises(DenseValidationError, match="k=0"):
        validate_dense(2, 9, 0)


def test_validation_brute_force():
    for mu in (Fraction(1, 2), 1, Fraction(3, 2), 2):
        for tau in range(0, 50):
            hits = [k for k in range(-30, 30) if (mu + 2 * k + 1) ** 2 == tau]
            if hits:
                with pytest.raises(DenseValidationError) as info:
                    DenseModule(mu, tau, 0)
                for k in hits:
                    assert f"k={k}" in str(info.value)
            else:
                DenseModule(mu, tau, 0)


def test_b_mu_outside_field_rejected():
    with pytest.raises(DenseValidationError):
        DenseModule(1, 2, QuadScalar(0, 1, FieldContext(3)))
    # sqrt(8) = 2 sqrt(2) is fine
    d = DenseModule(1, 2, QuadScalar(0, 1, FieldContext(8)))
    assert d.b_mu == QuadScalar(0, 2, FieldContext(2))


def test_a_coeff_examples():
    d = DenseModule(1, 9, 0)
    assert a_coeff(d, 0) == Fraction(5, 4)
    assert a_coeff(d, -1) == Fraction(9, 4)
    for mu, tau in GRID:
        d = DenseModule(mu, tau, 0)
        for k in range(-6, 7):
            assert a_coeff(d, k - 1) - a_coeff(d, k) == mu + 2 * k
            assert a_coeff(d, k) != 0


def test_b_coeff_examples():
    d = DenseModule(1, 9, 0)
    assert b_coeff(d, 0) == 0
    assert b_coeff(d, 1) == Fraction(17, 2)
    assert b_coeff(d, -1) == Fraction(-5, 2)


@pytest.mark.parametrize("mu,tau", GRID)
@pytest.mark.parametrize("b0", [0, Fraction(-7, 3), 5])
def test_b_closed_form_matches_recursion(mu, tau, b0):
    d = DenseModule(mu, tau, b0)
    oracle = b_by_recursion(mu, tau, Fraction(b0), -10, 10)
    for k in range(-10, 11):
        assert b_coeff(d, k) == oracle[k]


def test_b_mu_in_quadratic_field():
    ctx = FieldContext(2)
    b = QuadScalar(1, -1, ctx)
    d = DenseModule(1, 2, b)
    assert b_coeff(d, 0) == b
    assert b_coeff(d, 3).quad != 0


def test_primitive_actions():
    d = DenseModule(1, 9, 0)
    for k in (-3, 0, 4):
        assert dense_primitive_act(d, xminus(0), k) == WeightVector.basis(k - 1)
    assert dense_primitive_act(d, xplus(0), 0) == WeightVector.basis(1, Fraction(5, 4))
    assert dense_primitive_act(d, hgen(1), 1) == WeightVector.basis(1, Fraction(17, 2))
    assert dense_primitive_act(d, hgen(0), -2) == WeightVector.basis(-2, -3)
    with pytest.raises(ValueError):
        dense_primitive_act(d, xplus(1), 0)


def test_x1_closed_form_examples():
    d = DenseModule(1, 9, 0)
    assert x1_closed_form(d, -1, 0) == WeightVector.basis(-1, Fraction(5, 4))
    assert x1_closed_form(d, 1, 0) == WeightVector.basis(1, Fraction(45, 16))


@pytest.mark.parametrize("mu,tau", GRID)
def test_x1_closed_form_matches_engine(mu, tau):
    d = DenseModule(mu, tau, Fraction(1, 3))
    for k in range(-5, 6):
        e = WeightVector.basis(k)
        assert apply_generator(d, xplus(1), e) == x1_closed_form(d, 1, k)
        assert apply_generator(d, xminus(1), e) == x1_closed_form(d, -1, k)


@pytest.mark.parametrize("mu,tau", GRID)
def test_coefficient_identities(mu, tau):
    d = DenseModule(mu, tau, Fraction(2, 7))
    a, b = d.a_coeff, d.b_coeff
    for k in range(-10, 11):
        assert b(k) - 2 * b(k - 1) + b(k - 2) == 6
        assert (mu + 2 * k) * (b(k - 1) + a(k - 1)) == (mu + 2 * k - 2) * (b(k) + a(k) - mu - 2 * k)


@pytest.mark.parametrize("b0", [0, 1, Fraction(-5, 3)])
def test_mu_two_weight_zero(b0):
    d = DenseModule(2, 2, b0)
    # weight 0 is slot -1 when mu = 2
    assert d.weight(-1) == 0
    assert d.b_coeff(-1) == -d.a_coeff(-1)


@pytest.mark.parametrize("mu,tau", GRID)
def test_common_eigenvectors(mu, tau):
    d = DenseModule(mu, tau, 1)
    for j in range(-3, 4):
        for k in range(5):
            image = apply_generator(d, hgen(k), WeightVector.basis(j))
            assert image.support() in ([j], [])


@pytest.mark.parametrize("mu,tau", GRID)
def test_h1_commutator_consistency(mu, tau):
    d = DenseModule(mu, tau, Fraction(-1, 2))
    for k in range(-4, 5):
        assert engine_h1_via_commutator(d, k) == WeightVector.basis(k, d.b_coeff(k))


def test_json_descriptor():
    d = DenseModule(Fraction(1, 2), 2, QuadScalar(1, 1, FieldContext(2)))
    assert d.to_json() == {"type": "dense", "mu": "1/2", "tau": "2", "b_mu": "1+1*sqrt(2)"}
