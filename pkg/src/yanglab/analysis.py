"""Relation checks, small exact eigenproblems and the simplicity decision
for V(mu, tau, b_mu) (x) W_1(r)."""
from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .dense import DenseModule, check_dense_parameters
from .engine import (Generator, ModuleSpec, WeightVector, apply_generator, apply_word, hgen,
                     index_to_json, vector_to_json, xgen, xminus, xplus)
from .findim import WmModule
from .scalar_field import (ContextMismatchError, FieldContext, QuadScalar, ScalarLike,
                           convert_to_context, merge_contexts, sqrt_in_field, to_rational)
from .tensor import TensorModule, weight_space_basis


class WindowError(ValueError):
    """An image left the finite window of basis vectors being tracked."""


# --- defining relations -------------------------------------------------------

HH_COMMUTE = "HH-commute"
H0_X_LADDER = "H0-X-ladder"
XX_TO_H = "XX-to-H"
HX_RECURSION = "HX-recursion"
XX_RECURSION = "XX-recursion"
RELATION_ORDER = (HH_COMMUTE, H0_X_LADDER, XX_TO_H, HX_RECURSION, XX_RECURSION)


@dataclass(frozen=True)
class RelationReport:
    relation: str
    sign: str
    k: int
    l: int
    index: object
    residual: WeightVector

    @property
    def passed(self) -> bool:
        return not self.residual

    def to_json(self, module: ModuleSpec) -> dict:
        return {"relation": self.relation, "sign": self.sign, "k": self.k, "l": self.l,
                "index": index_to_json(self.index), "pass": self.passed,
                "residual": vector_to_json(module, self.residual)}


def _bracket(module, a, b, v):
    return apply_word(module, [a, b], v) - apply_word(module, [b, a], v)


def _anti(module, a, b, v):
    return apply_word(module, [a, b], v) + apply_word(module, [b, a], v)


def _residual(module: ModuleSpec, relation: str, sign: int, k: int, l: int, index) -> WeightVector:
    e = WeightVector.basis(index)
    if relation == HH_COMMUTE:
        return _bracket(module, hgen(k), hgen(l), e)
    if relation == H0_X_LADDER:
        x = xgen(sign, k)
        return _bracket(module, hgen(0), x, e) - (2 * sign) * apply_generator(module, x, e)
    if relation == XX_TO_H:
        return _bracket(module, xplus(k), xminus(l), e) - apply_generator(module, hgen(k + l), e)
    if relation == HX_RECURSION:
        lhs = (_bracket(module, hgen(k + 1), xgen(sign, l), e)
               - _bracket(module, hgen(k), xgen(sign, l + 1), e))
        return lhs - sign * _anti(module, hgen(k), xgen(sign, l), e)
    if relation == XX_RECURSION:
        lhs = (_bracket(module, xgen(sign, k + 1), xgen(sign, l), e)
               - _bracket(module, xgen(sign, k), xgen(sign, l + 1), e))
        return lhs - sign * _anti(module, xgen(sign, k), xgen(sign, l), e)
    raise ValueError(f"unknown relation {relation!r}")


def relation_instances(K: int):
    """All (relation, sign, k, l) with levels at most K."""
    out = []
    for l in range(K + 1):
        for k in range(l):
            out.append((HH_COMMUTE, 0, k, l))
    for k in range(K + 1):
        for s in (1, -1):
            out.append((H0_X_LADDER, s, k, 0))
    for k in range(K + 1):
        for l in range(K + 1):
            out.append((XX_TO_H, 0, k, l))
    for rel in (HX_RECURSION, XX_RECURSION):
        for s in (1, -1):
            for k in range(K + 1):
                for l in range(K + 1):
                    out.append((rel, s, k, l))
    return out


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("YANGLAB_THREADS", "1")))
    except ValueError:
        return 1


def check_defining_relations(module: ModuleSpec, K: int, sample, threads: int | None = None
                             ) -> list[RelationReport]:
    """Evaluate every relation instance with levels <= K on each sample basis vector."""
    if K < 0:
        raise ValueError("K must be >= 0")
    sample = list(sample)
    if not sample:
        raise ValueError("sample must be nonempty")
    for idx in sample:
        if not module.is_valid_index(idx):
            raise ValueError(f"{idx!r} is not a basis index of this module")
    jobs = [(rel, s, k, l, idx) for (rel, s, k, l) in relation_instances(K) for idx in sample]

    def run(job):
        rel, s, k, l, idx = job
        return RelationReport(rel, {1: "+", -1: "-", 0: ""}[s], k, l, idx,
                              _residual(module, rel, s, k, l, idx))

    threads = threads or _default_threads()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(run, jobs))
    else:
        reports = [run(j) for j in jobs]
    reports.sort(key=lambda r: (RELATION_ORDER.index(r.relation), r.sign, r.k, r.l,
                                module.index_key(r.index)))
    return reports


def all_passed(reports) -> bool:
    return all(r.passed for r in reports)


def default_sample(module: ModuleSpec, window: int = 3) -> list:
    if isinstance(module, WmModule):
        return list(range(module.m + 1))
    return module.sorted_indices(module.indices_in_window(window))


# --- matrices and eigenvectors --------------------------------------------------

@dataclass(frozen=True)
class Matrix:
    entries: tuple          # row-major tuple of row tuples of QuadScalar
    row_labels: tuple
    col_labels: tuple
    context: FieldContext

    @property
    def rows(self) -> int:
        return len(self.row_labels)

    @property
    def cols(self) -> int:
        return len(self.col_labels)

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]

    @classmethod
    def from_rows(cls, rows, row_labels=None, col_labels=None, context=None) -> Matrix:
        entries = tuple(tuple(QuadScalar.coerce(x) for x in row) for row in rows)
        ctx = context
        if ctx is None:
            ctx = FieldContext(1)
            for row in entries:
                for x in row:
                    if x.quad:
                        ctx = merge_contexts(ctx, x.context)
        n_cols = len(entries[0]) if entries else 0
        return cls(entries,
                   tuple(row_labels if row_labels is not None else range(len(entries))),
                   tuple(col_labels if col_labels is not None else range(n_cols)), ctx)

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "row_labels": [index_to_json(i) for i in self.row_labels],
                "col_labels": [index_to_json(i) for i in self.col_labels],
                "entries": [[str(x) for x in row] for row in self.entries]}


def operator_matrix(module: ModuleSpec, gen: Generator, source_weight, window: int) -> Matrix:
    """Matrix of ``gen`` from the windowed source weight space to the target one."""
    if window < 1:
        raise ValueError("window must be >= 1")
    source_weight = Fraction(source_weight)
    cols = weight_space_basis(module, source_weight, window)
    rows = weight_space_basis(module, source_weight + gen.shift, window)
    position = {idx: r for r, idx in enumerate(rows)}
    grid = [[QuadScalar(0, 0, module.context)] * len(cols) for _ in rows]
    for c, idx in enumerate(cols):
        image = apply_generator(module, gen, WeightVector.basis(idx))
        for tgt, coeff in image.items():
            if tgt not in position:
                raise WindowError("window too small")
            grid[position[tgt]][c] = coeff
    return Matrix(tuple(tuple(r) for r in grid), tuple(rows), tuple(cols), module.context)


def _normalized(labels, coords) -> WeightVector:
    last = max(i for i, x in enumerate(coords) if x)
    pivot = coords[last]
    return WeightVector({labels[i]: x / pivot for i, x in enumerate(coords)})


def h1_eigenvectors(mat: Matrix) -> list[tuple[QuadScalar, WeightVector]]:
    """Exact eigenpairs of a 1x1 or 2x2 matrix over its field.

    Eigenvectors are scaled so their last nonzero coordinate is 1.  An empty
    list means the characteristic polynomial has no root in the field.
    """
    if mat.rows != mat.cols or mat.rows not in (1, 2):
        raise ValueError("only 1x1 and 2x2 matrices are supported")
    labels = mat.col_labels
    if mat.rows == 1:
        return [(mat[0, 0], WeightVector.basis(labels[0]))]
    a, b, c, d = mat[0, 0], mat[0, 1], mat[1, 0], mat[1, 1]
    trace, det = a + d, a * d - b * c
    root = sqrt_in_field(trace * trace - 4 * det, mat.context)
    if root is None:
        return []
    if not root:
        lam = trace / 2
        if not b and not c:
            return [(lam, WeightVector.basis(labels[0])), (lam, WeightVector.basis(labels[1]))]
        eigenvalues = [lam]
    else:
        eigenvalues = [(trace - root) / 2, (trace + root) / 2]
    out = []
    for lam in eigenvalues:
        p, q = a - lam, b
        if not p and not q:
            p, q = c, d - lam
        # (-q, p) spans the kernel of the nonzero row (p, q)
        out.append((lam, _normalized(labels, [-q, p])))
    return out


def is_proportional(u: WeightVector, v: WeightVector) -> QuadScalar | None:
    """The scalar c with u == c*v, or None.  ``v`` must be nonzero."""
    if not v:
        raise ValueError("reference vector is zero")
    if not u:
        return QuadScalar(0)
    if set(u.support()) != set(v.support()):
        return None
    idx = next(iter(v.support()))
    c = u.coeff(idx) / v.coeff(idx)
    return c if u == c * v else None


def weight_space_dims(module: ModuleSpec, window: int) -> list[tuple[Fraction, int]]:
    counts = Counter(module.weight(i) for i in module.indices_in_window(window))
    return sorted(counts.items())


# --- simplicity of V (x) W_1(r) --------------------------------------------------

@dataclass(frozen=True)
class Witness:
    t: QuadScalar
    b_critical: QuadScalar
    sign: str

    def to_json(self) -> dict:
        return {"t": str(self.t), "b_critical": str(self.b_critical), "sign": self.sign}


@dataclass(frozen=True)
class SimplicityVerdict:
    simple: bool
    witnesses: tuple
    field_obstruction: bool

    def to_json(self) -> dict:
        return {"simple": self.simple, "witnesses": [w.to_json() for w in self.witnesses],
                "field_obstruction": self.field_obstruction}


def critical_values(mu, tau, r) -> list[Witness]:
    """Both critical b_mu values with their eigen-ratios, '+' first.

    b = mu(r - 1 - t) - a_mu ties each critical value to its ratio t:
    the '+sqrt(tau)' value pairs with t = (-(mu+1) - sqrt(tau))/2.
    """
    mu, tau = to_rational(mu), to_rational(tau)
    ctx = FieldContext(tau)
    r = convert_to_context(QuadScalar.coerce(r), ctx)
    sqrt_tau = ctx.sqrt_d()
    a_mu = (tau - (mu + 1) ** 2) / 4
    out = []
    for sign, s in (("+", 1), ("-", -1)):
        b = (mu * mu + mu + s * mu * sqrt_tau) / 2 - a_mu + mu * (r - 1)
        t = (-(mu + 1) - s * sqrt_tau) / 2
        out.append(Witness(t, b, sign))
    return out


def simplicity_criterion(mu, tau, b_mu: ScalarLike, r: ScalarLike) -> SimplicityVerdict:
    """Closed-form decision: simple unless b_mu is one of the two critical values."""
    mu, tau = to_rational(mu), to_rational(tau)
    check_dense_parameters(mu, tau)
    ctx = FieldContext(tau)
    witnesses = critical_values(mu, tau, r)
    try:
        b = convert_to_context(QuadScalar.coerce(b_mu), ctx)
    except ContextMismatchError:
        # b_mu has an irrational part outside Q(sqrt(tau)); it cannot be critical
        return SimplicityVerdict(True, tuple(witnesses), True)
    hits = tuple(w for w in witnesses if w.b_critical == b)
    if hits:
        return SimplicityVerdict(False, hits, False)
    return SimplicityVerdict(True, tuple(witnesses), False)


@dataclass(frozen=True)
class Ladder:
    rungs: tuple            # ((weight, WeightVector), ...) in increasing weight
    eigen_ratio: QuadScalar

    def to_json(self, module: ModuleSpec) -> dict:
        return {"t": str(self.eigen_ratio),
                "rungs": [{"weight": str(w), "vector": vector_to_json(module, v)}
                          for w, v in self.rungs]}


def _is_eigen(module, gen, v) -> bool:
    return is_proportional(apply_generator(module, gen, v), v) is not None


def _check_u(U) -> None:
    if not (isinstance(U, TensorModule) and isinstance(U.left, DenseModule)
            and isinstance(U.right, WmModule) and U.right.m == 1):
        raise ValueError("the probe needs a module of the form dense (x) W_1(r)")


def submodule_probe(U: TensorModule, window: int = 6) -> Ladder | None:
    """Search for a proper submodule with one-dimensional weight spaces.

    Starting from each H_1-eigenvector at weight mu+1, walk the X_0^+- orbit
    while it stays inside slots [-window+1, window-1], requiring every rung
    to be an H_1-eigenvector and the chain to be closed under X_0^+-.
    """
    _check_u(U)
    if window < 3:
        raise ValueError("window must be >= 3")
    lo, hi = -window + 1, window - 1
    base_weight = U.left.mu + 1
    mat = operator_matrix(U, hgen(1), base_weight, window)
    h1, up, down = hgen(1), xplus(0), xminus(0)

    def slots(v):
        return [i for (i, _), _ in v.items()]

    for _, v in h1_eigenvectors(mat):
        rungs = {0: v}
        ok = True
        for step, gen in ((1, up), (-1, down)):
            n, cur = 0, v
            while ok:
                nxt = apply_generator(U, gen, cur)
                if not nxt:
                    break
                if min(slots(nxt)) < lo or max(slots(nxt)) > hi:
                    break
                if not _is_eigen(U, h1, nxt):
                    ok = False
                    break
                n += step
                rungs[n] = nxt
                cur = nxt
        if not ok:
            continue
        # closure: the opposite ladder operator must return to the previous rung
        for n, vec in rungs.items():
            if n == 0:
                continue
            back = down if n > 0 else up
            prev = rungs[n - 1] if n > 0 else rungs[n + 1]
            if is_proportional(apply_generator(U, back, vec), prev) is None:
                ok = False
                break
        if not ok:
            continue
        labels = U.sorted_indices(v.support())
        ratio = v.coeff(labels[0]) / v.coeff(labels[-1]) if len(labels) == 2 else QuadScalar(0)
        ordered = tuple((base_weight + 2 * n, rungs[n]) for n in sorted(rungs))
        return Ladder(ordered, ratio)
    return None


def eigen_ratio(v: WeightVector, labels) -> QuadScalar | None:
    """a/b for v = a*e_labels[0] + b*e_labels[1]; None when b == 0."""
    b = v.coeff(labels[1])
    if not b:
        return None
    return v.coeff(labels[0]) / b


def u_module(mu, tau, b_mu, r) -> TensorModule:
    return TensorModule(DenseModule(mu, tau, b_mu), WmModule(1, QuadScalar.coerce(r)))
