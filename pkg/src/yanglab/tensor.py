"""Tensor products of weight modules through the partial coproduct.

Only the coproduct images of H_0, H_1, X_0^+- and X_1^+- are known
explicitly.  The engine uses the first four as primitives; the X_1^+-
formulas are kept as an independent check on the derivation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .engine import (H, XMINUS, XPLUS, Generator, ModuleSpec, WeightVector, apply_generator,
                     hgen, xminus, xplus)
from .scalar_field import FieldContext, merge_contexts


def outer(u: WeightVector, v: WeightVector) -> WeightVector:
    return WeightVector._raw({(i, j): a * b for i, a in u.items() for j, b in v.items()})


@dataclass(frozen=True)
class TensorModule(ModuleSpec):
    left: ModuleSpec
    right: ModuleSpec
    ctx: FieldContext = field(init=False, repr=False, compare=False)

    kind = "tensor"

    def __post_init__(self):
        object.__setattr__(self, "ctx", merge_contexts(self.left.context, self.right.context))

    @property
    def context(self) -> FieldContext:
        return self.ctx

    def weight(self, index) -> Fraction:
        i, j = index
        return self.left.weight(i) + self.right.weight(j)

    def is_valid_index(self, index) -> bool:
        return (isinstance(index, tuple) and len(index) == 2
                and self.left.is_valid_index(index[0]) and self.right.is_valid_index(index[1]))

    def indices_in_window(self, window: int) -> list:
        return [(i, j) for i in self.left.indices_in_window(window)
                for j in self.right.indices_in_window(window)]

    def index_key(self, index):
        # right factor first: a weight space of V (x) W_1 lists v_{k+1} (x) w_-1 before v_k (x) w_1
        i, j = index
        return (self.right.index_key(j), self.left.index_key(i))

    def _leg(self, gen_left, gen_right, index) -> WeightVector:
        i, j = index
        u = WeightVector.basis(i) if gen_left is None else apply_generator(
            self.left, gen_left, WeightVector.basis(i))
        if not u:
            return u
        v = WeightVector.basis(j) if gen_right is None else apply_generator(
            self.right, gen_right, WeightVector.basis(j))
        return outer(u, v)

    def primitive_act(self, gen: Generator, index) -> WeightVector:
        if gen.level > 1 or (gen.level == 1 and gen.kind != H):
            raise ValueError(f"{gen} is not primitive")
        return tensor_primitive_act(self, gen, index)

    def to_json(self) -> dict:
        return {"type": "tensor", "left": self.left.to_json(), "right": self.right.to_json()}


def tensor_primitive_act(spec: TensorModule, gen: Generator, index) -> WeightVector:
    """Coproduct action of H_0, H_1, X_0^+-, X_1^+- on a pair basis vector."""
    leg = spec._leg
    if gen == hgen(0):
        return WeightVector.basis(index, spec.weight(index))
    if gen == hgen(1):
        return (leg(hgen(1), None, index) + leg(None, hgen(1), index)
                + leg(hgen(0), hgen(0), index)
                - 2 * leg(xminus(0), xplus(0), index))
    if gen.kind in (XPLUS, XMINUS) and gen.level == 0:
        return leg(gen, None, index) + leg(None, gen, index)
    if gen == xplus(1):
        return leg(gen, None, index) + leg(None, gen, index) + leg(hgen(0), xplus(0), index)
    if gen == xminus(1):
        return leg(gen, None, index) + leg(None, gen, index) + leg(xminus(0), hgen(0), index)
    raise ValueError(f"no explicit coproduct formula for {gen}")


def weight_space_basis(spec: ModuleSpec, weight, window: int) -> list:
    """Basis indices of the given weight inside the slot window, canonically ordered."""
    if window < 0:
        raise ValueError("window must be >= 0")
    weight = Fraction(weight)
    return spec.sorted_indices(i for i in spec.indices_in_window(window)
                               if spec.weight(i) == weight)
