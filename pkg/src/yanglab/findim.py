"""Finite-dimensional evaluation modules W_m(a) and Drinfeld polynomials."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .engine import H, XMINUS, XPLUS, Generator, ModuleSpec, WeightVector, hgen
from .scalar_field import FieldContext, QuadScalar, ScalarLike


@dataclass(frozen=True)
class WmModule(ModuleSpec):
    """W_m(a): basis w_0..w_m, w_s of weight 2s - m."""

    m: int
    a: QuadScalar

    kind = "wm"

    def __post_init__(self):
        if isinstance(self.m, bool) or not isinstance(self.m, int) or self.m < 1:
            raise ValueError("m must be a positive integer")
        object.__setattr__(self, "a", QuadScalar.coerce(self.a))

    @property
    def context(self) -> FieldContext:
        return self.a.context

    def weight(self, index) -> Fraction:
        return Fraction(2 * index - self.m)

    def is_valid_index(self, index) -> bool:
        return isinstance(index, int) and not isinstance(index, bool) and 0 <= index <= self.m

    def indices_in_window(self, window: int) -> list:
        return list(range(self.m + 1))

    def primitive_act(self, gen: Generator, index) -> WeightVector:
        # Only level 0 and H_1 are handed to the engine.
        if gen.level > 1 or (gen.level == 1 and gen.kind != H):
            raise ValueError(f"{gen} is not primitive")
        return wm_closed_form_act(self, gen, index)

    def to_json(self) -> dict:
        return {"type": "wm", "m": self.m, "a": str(self.a)}


def wm_closed_form_act(spec: WmModule, gen: Generator, s: int) -> WeightVector:
    """Closed-form action of any X_k^+-, H_k on w_s."""
    if not spec.is_valid_index(s):
        raise IndexError(f"slot {s} out of range 0..{spec.m}")
    m, a, k = spec.m, spec.a, gen.level
    if gen.kind == XPLUS:
        if s == m:
            return WeightVector.zero()
        return WeightVector.basis(s + 1, (a + s) ** k * (s + 1))
    if gen.kind == XMINUS:
        if s == 0:
            return WeightVector.zero()
        return WeightVector.basis(s - 1, (a + s - 1) ** k * (m - s + 1))
    coeff = (a + s - 1) ** k * (s * (m - s + 1)) - (a + s) ** k * ((s + 1) * (m - s))
    return WeightVector.basis(s, coeff)


@dataclass(frozen=True)
class DrinfeldPoly:
    """Monic polynomial prod(u - root), kept as its list of roots."""

    roots: tuple

    def __post_init__(self):
        roots = tuple(QuadScalar.coerce(r) for r in self.roots)
        if not roots:
            raise ValueError("a Drinfeld polynomial needs at least one root")
        object.__setattr__(self, "roots", roots)

    @property
    def degree(self) -> int:
        return len(self.roots)

    @classmethod
    def for_wm(cls, m: int, a: ScalarLike) -> DrinfeldPoly:
        a = QuadScalar.coerce(a)
        return cls(tuple(a + i for i in range(m)))


def _series_from_roots(roots, n: int) -> list[QuadScalar]:
    """First n coefficients (in x = 1/u) of prod(1 - root*x)."""
    coeffs = [QuadScalar(1)] + [QuadScalar(0)] * (n - 1)
    for r in roots:
        for i in range(n - 1, 0, -1):
            coeffs[i] = coeffs[i] - r * coeffs[i - 1]
    return coeffs


def drinfeld_series(poly: DrinfeldPoly, K: int) -> list[QuadScalar]:
    """mu_0..mu_K where pi(u+1)/pi(u) = 1 + sum_k mu_k u^(-k-1) about u = infinity."""
    if K < 0:
        raise ValueError("K must be >= 0")
    n = K + 2
    # u^-m pi(u) = prod(1 - r x), u^-m pi(u+1) = prod(1 - (r-1) x)
    den = _series_from_roots(poly.roots, n)
    num = _series_from_roots([r - 1 for r in poly.roots], n)
    quot: list[QuadScalar] = []
    for i in range(n):
        c = num[i] - sum((quot[j] * den[i - j] for j in range(i)), QuadScalar(0))
        quot.append(c)  # den[0] == 1
    return quot[1:]


def wm_highest_series(spec: WmModule, K: int) -> list[QuadScalar]:
    """Eigenvalues of H_0..H_K on the top vector w_m."""
    return [wm_closed_form_act(spec, hgen(k), spec.m).coeff(spec.m) for k in range(K + 1)]
