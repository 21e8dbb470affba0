"""Weight-module interface and derivation of every Yangian generator.

A module only has to say how ``X_0^+``, ``X_0^-``, ``H_0`` and ``H_1`` act on
its basis.  All other generators are obtained by the recursion

    X_{l+1}^{+-} = +-1/2 [H_1 - 1/2 H_0^2, X_l^{+-}]
    H_r          = X_r^+ X_0^- - X_0^- X_r^+          (r >= 2)

so a single code path produces every action, whatever the module.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
import re
from typing import Hashable, Iterable, Iterator

from .scalar_field import RATIONALS, FieldContext, QuadScalar, ScalarLike

XPLUS, XMINUS, H = "X+", "X-", "H"

Index = Hashable


@dataclass(frozen=True)
class Generator:
    kind: str
    level: int

    def __post_init__(self):
        if self.kind not in (XPLUS, XMINUS, H):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.level < 0:
            raise ValueError("generator level must be >= 0")

    @property
    def shift(self) -> int:
        return {XPLUS: 2, XMINUS: -2, H: 0}[self.kind]

    @property
    def sign(self) -> int:
        return {XPLUS: 1, XMINUS: -1, H: 0}[self.kind]

    def __str__(self):
        if self.kind == H:
            return f"H{self.level}"
        return f"X{self.level}{self.kind[1]}"

    @classmethod
    def parse(cls, text: str) -> Generator:
        """Accepts ``H3``, ``X2+``, ``X0-`` (also ``X_2^+`` / ``H_3``)."""
        m = re.fullmatch(r"([HX])_?(\d+)\^?([+-]?)", text.strip())
        if m is None:
            raise ValueError(f"malformed generator {text!r}")
        letter, level, sign = m.groups()
        if letter == "H":
            if sign:
                raise ValueError(f"malformed generator {text!r}")
            return cls(H, int(level))
        if not sign:
            raise ValueError(f"X generator needs a sign: {text!r}")
        return cls("X" + sign, int(level))


def xplus(k: int) -> Generator:
    return Generator(XPLUS, k)


def xminus(k: int) -> Generator:
    return Generator(XMINUS, k)


def hgen(k: int) -> Generator:
    return Generator(H, k)


def xgen(sign: int, k: int) -> Generator:
    return Generator(XPLUS if sign > 0 else XMINUS, k)


PRIMITIVES = frozenset({xplus(0), xminus(0), hgen(0), hgen(1)})


class WeightVector:
    """Finite linear combination of basis indices; zero coefficients are never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for idx, c in dict(terms).items():
                c = QuadScalar.coerce(c)
                if c:
                    clean[idx] = c
        self._terms = clean

    @classmethod
    def _raw(cls, terms: dict) -> WeightVector:
        v = cls.__new__(cls)
        v._terms = terms
        return v

    @classmethod
    def basis(cls, index: Index, coeff: ScalarLike = 1) -> WeightVector:
        return cls({index: coeff})

    @classmethod
    def zero(cls) -> WeightVector:
        return cls._raw({})

    def __iter__(self) -> Iterator[tuple[Index, QuadScalar]]:
        return iter(self._terms.items())

    def items(self):
        return self._terms.items()

    def support(self) -> list:
        return list(self._terms)

    def coeff(self, index: Index) -> QuadScalar:
        return self._terms.get(index, QuadScalar(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other: WeightVector) -> WeightVector:
        if not isinstance(other, WeightVector):
            return NotImplemented
        out = dict(self._terms)
        for idx, c in other._terms.items():
            s = out[idx] + c if idx in out else c
            if s:
                out[idx] = s
            else:
                out.pop(idx, None)
        return WeightVector._raw(out)

    def __neg__(self):
        return WeightVector._raw({i: -c for i, c in self._terms.items()})

    def __sub__(self, other: WeightVector) -> WeightVector:
        if not isinstance(other, WeightVector):
            return NotImplemented
        return self + (-other)

    def __rmul__(self, scalar) -> WeightVector:
        scalar = QuadScalar.coerce(scalar)
        if not scalar:
            return WeightVector.zero()
        return WeightVector._raw({i: scalar * c for i, c in self._terms.items()})

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, WeightVector):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        body = " + ".join(f"({c})*e{idx}" for idx, c in self._terms.items())
        return f"WeightVector({body or '0'})"


def linear_combination(pairs: Iterable[tuple[ScalarLike, WeightVector]]) -> WeightVector:
    out: dict = {}
    for scalar, vec in pairs:
        scalar = QuadScalar.coerce(scalar)
        if not scalar:
            continue
        for idx, c in vec.items():
            s = out[idx] + scalar * c if idx in out else scalar * c
            if s:
                out[idx] = s
            else:
                out.pop(idx, None)
    return WeightVector._raw(out)


class ModuleSpec(ABC):
    """A weight module described by its primitive actions on a basis.

    Subclasses are immutable value objects.  Each instance owns a write-once
    cache of derived basis actions, keyed by ``(generator, index)``.
    """

    kind: str = "abstract"

    @property
    @abstractmethod
    def context(self) -> FieldContext: ...

    @abstractmethod
    def primitive_act(self, gen: Generator, index: Index) -> WeightVector:
        """Action of a generator in :data:`PRIMITIVES` on one basis vector."""

    @abstractmethod
    def weight(self, index: Index) -> Fraction: ...

    @abstractmethod
    def is_valid_index(self, index: Index) -> bool: ...

    @abstractmethod
    def indices_in_window(self, window: int) -> list:
        """Basis indices whose ladder slot lies in ``[-window, window]``."""

    @abstractmethod
    def to_json(self) -> dict: ...

    def index_key(self, index: Index):
        return index

    def sorted_indices(self, indices: Iterable[Index]) -> list:
        return sorted(indices, key=self.index_key)

    def scalar(self, x: ScalarLike) -> QuadScalar:
        return self.context.embed(QuadScalar.coerce(x))

    def _memo(self) -> dict:
        try:
            return self.__dict__["_action_cache"]
        except KeyError:
            cache: dict = {}
            object.__setattr__(self, "_action_cache", cache)
            return cache


# --- action engine ----------------------------------------------------------

def act_on_basis(module: ModuleSpec, gen: Generator, index: Index,
                 memo: bool = True) -> WeightVector:
    if memo:
        cache = module._memo()
        key = (gen, index)
        hit = cache.get(key)
        if hit is not None:
            return hit
        result = _derive(module, gen, index, memo)
        # write-once: concurrent writers compute identical values
        return cache.setdefault(key, result)
    return _derive(module, gen, index, memo)


def _derive(module: ModuleSpec, gen: Generator, index: Index, memo: bool) -> WeightVector:
    if gen in PRIMITIVES:
        return module.primitive_act(gen, index)
    e = WeightVector.basis(index)
    if gen.kind == H:
        r = gen.level
        up, down = xplus(r), xminus(0)
        return (apply_generator(module, up, apply_generator(module, down, e, memo), memo)
                - apply_generator(module, down, apply_generator(module, up, e, memo), memo))
    prev = Generator(gen.kind, gen.level - 1)
    # +-1/2 [T, X_l], T = H_1 - 1/2 H_0^2
    commutator = (_apply_t(module, apply_generator(module, prev, e, memo), memo)
                  - apply_generator(module, prev, _apply_t(module, e, memo), memo))
    return Fraction(gen.sign, 2) * commutator


def _apply_t(module: ModuleSpec, v: WeightVector, memo: bool) -> WeightVector:
    h1 = apply_generator(module, hgen(1), v, memo)
    sq = linear_combination(
        (module.weight(idx) ** 2 * c / 2, WeightVector.basis(idx)) for idx, c in v.items())
    return h1 - sq


def apply_generator(module: ModuleSpec, gen: Generator, v: WeightVector,
                    memo: bool = True) -> WeightVector:
    """Exact action of ``gen`` on ``v``, derived from the primitive actions."""
    return linear_combination(
        (c, act_on_basis(module, gen, idx, memo)) for idx, c in v.items())


def apply_word(module: ModuleSpec, word: list[Generator], v: WeightVector,
               memo: bool = True) -> WeightVector:
    """Apply ``word[0] word[1] ... word[-1]`` to ``v`` (rightmost acts first)."""
    for gen in reversed(word):
        v = apply_generator(module, gen, v, memo)
    return v


def weight_of(module: ModuleSpec, v: WeightVector) -> Fraction | None:
    weights = {module.weight(idx) for idx, _ in v.items()}
    if len(weights) != 1:
        return None
    return weights.pop()


# --- serialisation -----------------------------------------------------------

def index_to_json(index: Index):
    if isinstance(index, tuple):
        return [index_to_json(i) for i in index]
    return index


def index_from_json(obj) -> Index:
    if isinstance(obj, list):
        return tuple(index_from_json(i) for i in obj)
    if isinstance(obj, bool) or not isinstance(obj, int):
        raise ValueError(f"bad basis index {obj!r}")
    return obj


def vector_to_json(module: ModuleSpec, v: WeightVector) -> list[dict]:
    return [{"index": index_to_json(idx), "coeff": str(v.coeff(idx))}
            for idx in module.sorted_indices(v.support())]


def vector_from_json(module: ModuleSpec, data: list[dict]) -> WeightVector:
    from .scalar_field import parse_scalar

    terms = {}
    for entry in data:
        idx = index_from_json(entry["index"])
        if not module.is_valid_index(idx):
            raise ValueError(f"index {entry['index']!r} is not a basis index of this module")
        terms[idx] = terms.get(idx, QuadScalar(0)) + parse_scalar(entry["coeff"])
    return WeightVector(terms)


__all__ = [
    "Generator", "WeightVector", "ModuleSpec", "PRIMITIVES", "RATIONALS",
    "apply_generator", "apply_word", "weight_of", "act_on_basis",
    "xplus", "xminus", "hgen", "xgen", "linear_combination",
    "vector_to_json", "vector_from_json", "index_to_json", "index_from_json",
]
