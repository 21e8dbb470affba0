"""Exact arithmetic over Q and quadratic extensions Q(sqrt(D)).

Rationals are plain :class:`fractions.Fraction` values.  A :class:`QuadScalar`
is ``rat + quad*sqrt(D)`` tied to a :class:`FieldContext`.  When ``D`` is the
square of a rational the context is *degenerate*: it is just Q, and the
square root is folded into the rational part at construction.

Scalars with zero quadratic part are compatible with every context, so
rational parameters can be mixed freely with values living in Q(sqrt(D)).
Two scalars with non-degenerate, different contexts cannot be combined.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Union

Rational = Fraction
ScalarLike = Union[int, Fraction, "QuadScalar"]


class ContextMismatchError(ValueError):
    """Raised when scalars from two different quadratic fields meet."""


class ScalarParseError(ValueError):
    pass


def rational_normalize(n: int, d: int) -> Fraction:
    """Return ``n/d`` in lowest terms with a positive denominator."""
    if d == 0:
        raise ZeroDivisionError("zero denominator")
    return Fraction(n, d)


def to_rational(x) -> Fraction:
    if isinstance(x, QuadScalar):
        if x.quad != 0:
            raise ValueError(f"{x} is not rational")
        return x.rat
    if isinstance(x, str):
        return parse_scalar(x).as_rational()
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted")
    return Fraction(x)


def is_rational_square(r) -> Fraction | None:
    """Return ``s >= 0`` with ``s*s == r`` if such a rational exists."""
    r = Fraction(r)
    if r < 0:
        return None
    n, d = r.numerator, r.denominator
    sn, sd = isqrt(n), isqrt(d)
    if sn * sn == n and sd * sd == d:
        return Fraction(sn, sd)
    return None


@dataclass(frozen=True)
class FieldContext:
    """The field Q(sqrt(D)).  Degenerate (equal to Q) when D is a rational square."""

    D: Fraction
    root: Fraction | None = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "D", Fraction(self.D))
        object.__setattr__(self, "root", is_rational_square(self.D))

    @property
    def degenerate(self) -> bool:
        return self.root is not None

    def sqrt_d(self) -> QuadScalar:
        return QuadScalar(0, 1, self)

    def embed(self, x) -> QuadScalar:
        if isinstance(x, QuadScalar):
            return x.with_context(self)
        return QuadScalar(x, 0, self)


RATIONALS = FieldContext(Fraction(1))


def merge_contexts(a: FieldContext, b: FieldContext) -> FieldContext:
    if a.degenerate:
        return b
    if b.degenerate or a.D == b.D:
        return a
    raise ContextMismatchError(f"cannot mix Q(sqrt({a.D})) and Q(sqrt({b.D}))")


class QuadScalar:
    """Immutable element ``rat + quad*sqrt(D)`` of Q(sqrt(D))."""

    __slots__ = ("rat", "quad", "context")

    def __init__(self, rat=0, quad=0, context: FieldContext = RATIONALS):
        rat = Fraction(rat)
        quad = Fraction(quad)
        if context.degenerate:
            rat += quad * context.root
            quad = Fraction(0)
        object.__setattr__(self, "rat", rat)
        object.__setattr__(self, "quad", quad)
        object.__setattr__(self, "context", context)

    def __setattr__(self, name, value):
        raise AttributeError("QuadScalar is immutable")

    # --- coercion -----------------------------------------------------------

    @staticmethod
    def coerce(x: ScalarLike) -> QuadScalar:
        if isinstance(x, QuadScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return QuadScalar(x)
        if isinstance(x, str):
            return parse_scalar(x)
        raise TypeError(f"cannot interpret {x!r} as a scalar")

    def _ctx_with(self, other: QuadScalar) -> FieldContext:
        a, b = self.context, other.context
        if self.quad != 0 and other.quad != 0:
            return merge_contexts(a, b)
        if self.quad != 0:
            return a
        if other.quad != 0:
            return b
        # both rational: keep whichever field is more informative
        return merge_contexts(a, b) if _compatible(a, b) else a

    def with_context(self, ctx: FieldContext) -> QuadScalar:
        if self.quad == 0:
            return QuadScalar(self.rat, 0, ctx)
        if ctx.D == self.context.D:
            return self
        raise ContextMismatchError(f"{self} does not lie in Q(sqrt({ctx.D}))")

    # --- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        try:
            other = QuadScalar.coerce(other)
        except TypeError:
            return NotImplemented
        ctx = self._ctx_with(other)
        return QuadScalar(self.rat + other.rat, self.quad + other.quad, ctx)

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar(-self.rat, -self.quad, self.context)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = QuadScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return QuadScalar.coerce(other) - self

    def __mul__(self, other):
        try:
            other = QuadScalar.coerce(other)
        except TypeError:
            return NotImplemented
        ctx = self._ctx_with(other)
        a, b, c, e = self.rat, self.quad, other.rat, other.quad
        if b == 0 or e == 0:
            return QuadScalar(a * c, a * e + b * c, ctx)
        return QuadScalar(a * c + b * e * ctx.D, a * e + b * c, ctx)

    __rmul__ = __mul__

    def conjugate(self) -> QuadScalar:
        return QuadScalar(self.rat, -self.quad, self.context)

    def norm(self) -> Fraction:
        return self.rat * self.rat - self.quad * self.quad * self.context.D

    def inverse(self) -> QuadScalar:
        if not self:
            raise ZeroDivisionError("division by zero")
        n = self.norm()
        assert n != 0, "zero norm in a non-degenerate context"
        return QuadScalar(self.rat / n, -self.quad / n, self.context)

    def __truediv__(self, other):
        try:
            other = QuadScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QuadScalar.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadScalar(1, 0, self.context)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # --- comparison ---------------------------------------------------------

    def __bool__(self):
        return self.rat != 0 or self.quad != 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.quad == 0 and self.rat == other
        if not isinstance(other, QuadScalar):
            return NotImplemented
        if self.rat != other.rat or self.quad != other.quad:
            return False
        return self.quad == 0 or self.context.D == other.context.D

    def __hash__(self):
        if self.quad == 0:
            return hash(self.rat)
        return hash((self.rat, self.quad, self.context.D))

    def is_rational(self) -> bool:
        return self.quad == 0

    def as_rational(self) -> Fraction:
        if self.quad != 0:
            raise ValueError(f"{self} is not rational")
        return self.rat

    # --- text form ----------------------------------------------------------

    def __str__(self):
        if self.quad == 0:
            return str(self.rat)
        sign = "+" if self.quad > 0 else "-"
        return f"{self.rat}{sign}{abs(self.quad)}*sqrt({self.context.D})"

    def __repr__(self):
        return f"QuadScalar('{self}')"


def _compatible(a: FieldContext, b: FieldContext) -> bool:
    return a.degenerate or b.degenerate or a.D == b.D


def quad_mul(x: QuadScalar, y: QuadScalar) -> QuadScalar:
    return x * y


def quad_inv(x: QuadScalar) -> QuadScalar:
    return x.inverse()


def sqrt_in_field(x: ScalarLike, context: FieldContext | None = None) -> QuadScalar | None:
    """Square root of ``x`` inside its field, or ``None`` if there is none.

    The returned root is canonical: its first nonzero component (rational
    part, then quadratic part) is positive.
    """
    x = QuadScalar.coerce(x)
    ctx = context if context is not None else x.context
    x = x.with_context(ctx)
    p, q = x.rat, x.quad
    if q == 0:
        s = is_rational_square(p)
        if s is not None:
            return QuadScalar(s, 0, ctx)
        if ctx.degenerate:
            return None
        # (v*sqrt(D))^2 = v^2 D
        v = is_rational_square(p / ctx.D)
        if v is not None:
            return QuadScalar(0, v, ctx)
        return None
    # (u + v sqrt(D))^2 = p + q sqrt(D)  =>  u^4 - p u^2 + q^2 D / 4 = 0
    disc = is_rational_square(p * p - q * q * ctx.D)
    if disc is None:
        return None
    for u2 in ((p + disc) / 2, (p - disc) / 2):
        u = is_rational_square(u2)
        if u:
            return QuadScalar(u, q / (2 * u), ctx)
    return None


_SCALAR_RE = re.compile(
    r"^(-?\d+)(?:/(\d+))?"
    r"(?:([+-])(\d+)(?:/(\d+))?\*sqrt\((-?\d+(?:/\d+)?)\))?$"
)


def parse_scalar(text: str, context: FieldContext | None = None) -> QuadScalar:
    """Parse ``p[/q][(+|-)r[/s]*sqrt(D)]`` (no whitespace)."""
    m = _SCALAR_RE.match(text)
    if m is None:
        raise ScalarParseError(f"malformed scalar {text!r}")
    num, den, sign, qnum, qden, radicand = m.groups()
    rat = rational_normalize(int(num), int(den) if den else 1)
    if sign is None:
        return QuadScalar(rat, 0, context or RATIONALS)
    quad = rational_normalize(int(qnum), int(qden) if qden else 1)
    if sign == "-":
        quad = -quad
    d_num, _, d_den = radicand.partition("/")
    ctx = FieldContext(rational_normalize(int(d_num), int(d_den) if d_den else 1))
    value = QuadScalar(rat, quad, ctx)
    if context is not None:
        value = convert_to_context(value, context)
    return value


def _rescale_into(x: QuadScalar, ctx: FieldContext) -> QuadScalar:
    # sqrt(D') = s*sqrt(D) when D'/D = s^2.
    if ctx.degenerate:
        raise ContextMismatchError(f"{x} does not lie in Q")
    s = is_rational_square(x.context.D / ctx.D)
    if s is None:
        raise ContextMismatchError(f"{x} does not lie in Q(sqrt({ctx.D}))")
    return QuadScalar(x.rat, x.quad * s, ctx)


def convert_to_context(x: QuadScalar, ctx: FieldContext) -> QuadScalar:
    """Re-express ``x`` in ``ctx``; works across radicands differing by a square."""
    if x.quad == 0 or x.context.D == ctx.D:
        return x.with_context(ctx)
    return _rescale_into(x, ctx)
