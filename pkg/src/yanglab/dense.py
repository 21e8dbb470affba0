"""Dense modules V(mu, tau, b_mu) on the doubly infinite ladder v_{mu+2k}.

Ladder slot ``k`` labels the basis vector of weight ``mu + 2k``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .engine import (H, XMINUS, XPLUS, Generator, ModuleSpec, WeightVector, apply_generator,
                     xminus, xplus)
from .scalar_field import FieldContext, QuadScalar, convert_to_context, is_rational_square, to_rational


class DenseValidationError(ValueError):
    pass


@dataclass(frozen=True)
class DenseModule(ModuleSpec):
    mu: Fraction
    tau: Fraction
    b_mu: QuadScalar
    ctx: FieldContext = field(init=False, repr=False, compare=False)

    kind = "dense"

    def __post_init__(self):
        mu, tau = to_rational(self.mu), to_rational(self.tau)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "tau", tau)
        check_dense_parameters(mu, tau)
        ctx = FieldContext(tau)
        object.__setattr__(self, "ctx", ctx)
        try:
            b = convert_to_context(QuadScalar.coerce(self.b_mu), ctx)
        except ValueError as exc:
            raise DenseValidationError(
                f"b_mu must lie in Q(sqrt({tau})): {exc}") from None
        object.__setattr__(self, "b_mu", b)

    @property
    def context(self) -> FieldContext:
        return self.ctx

    def weight(self, index) -> Fraction:
        return self.mu + 2 * index

    def is_valid_index(self, index) -> bool:
        return isinstance(index, int) and not isinstance(index, bool)

    def indices_in_window(self, window: int) -> list:
        return list(range(-window, window + 1))

    def _a(self, k: int) -> Fraction:
        return (self.tau - (self.mu + 2 * k + 1) ** 2) / 4

    def a_coeff(self, k: int) -> QuadScalar:
        return self.ctx.embed(self._a(k))

    def b_coeff(self, k: int) -> QuadScalar:
        mu = self.mu
        w = mu + 2 * k
        return (self.b_mu + self._a(0)) * (w / mu) + (k * w - self._a(k))

    def primitive_act(self, gen: Generator, index) -> WeightVector:
        k = index
        if gen.kind == XMINUS and gen.level == 0:
            return WeightVector.basis(k - 1, self.ctx.embed(1))
        if gen.kind == XPLUS and gen.level == 0:
            return WeightVector.basis(k + 1, self.a_coeff(k))
        if gen.kind == H and gen.level == 0:
            return WeightVector.basis(k, self.ctx.embed(self.weight(k)))
        if gen.kind == H and gen.level == 1:
            return WeightVector.basis(k, self.b_coeff(k))
        raise ValueError(f"{gen} is not primitive")

    def to_json(self) -> dict:
        return {"type": "dense", "mu": str(self.mu), "tau": str(self.tau),
                "b_mu": str(self.b_mu)}


def check_dense_parameters(mu: Fraction, tau: Fraction) -> None:
    if not 0 < mu <= 2:
        raise DenseValidationError("mu not in (0,2]")
    s = is_rational_square(tau)
    if s is None:
        return
    # tau = (mu + 2k + 1)^2  <=>  k = (+-s - mu - 1)/2
    bad = sorted({int(k) for k in ((s - mu - 1) / 2, (-s - mu - 1) / 2) if k.denominator == 1})
    if bad:
        where = " and ".join(f"k={k}" for k in bad)
        raise DenseValidationError(f"a coefficient vanishes at {where}: tau = (mu+2k+1)^2")


def validate_dense(mu, tau, b_mu) -> DenseModule:
    return DenseModule(mu, tau, b_mu)


def a_coeff(spec: DenseModule, k: int) -> QuadScalar:
    return spec.a_coeff(k)


def b_coeff(spec: DenseModule, k: int) -> QuadScalar:
    return spec.b_coeff(k)


def dense_primitive_act(spec: DenseModule, gen: Generator, k: int) -> WeightVector:
    return spec.primitive_act(gen, k)


def x1_closed_form(spec: DenseModule, sign: int, k: int) -> WeightVector:
    """X_1^+- on v_k written directly in terms of the a and b coefficients."""
    mu, b = spec.mu, spec.b_coeff
    if sign < 0:
        c = -(b(k - 1) - b(k) + 2 * mu + 4 * k - 2) / 2
        return WeightVector.basis(k - 1, c)
    c = spec.a_coeff(k) * (b(k + 1) - b(k) - 2 * mu - 4 * k - 2) / 2
    return WeightVector.basis(k + 1, c)


@dataclass(frozen=True)
class MutatedDense(DenseModule):
    """A dense module with individual a/b coefficients shifted.

    ``shifts`` maps ``("a", k)`` or ``("b", k)`` to the amount added.  Such a
    module generally violates the Yangian relations; it exists to show the
    relation checks notice.
    """

    shifts: tuple = ()

    kind = "dense-mutated"

    def a_coeff(self, k: int) -> QuadScalar:
        return super().a_coeff(k) + dict(self.shifts).get(("a", k), 0)

    def b_coeff(self, k: int) -> QuadScalar:
        return super().b_coeff(k) + dict(self.shifts).get(("b", k), 0)

    def to_json(self) -> dict:
        raise TypeError("mutated modules are test fixtures and have no descriptor")


def engine_h1_via_commutator(spec: DenseModule, k: int) -> WeightVector:
    """[X_1^+, X_0^-] applied to v_k, derived through the engine."""
    e = WeightVector.basis(k)
    return (apply_generator(spec, xplus(1), apply_generator(spec, xminus(0), e))
            - apply_generator(spec, xminus(0), apply_generator(spec, xplus(1), e)))
