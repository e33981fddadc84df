"""The boolean power in decreasing form: step functions.

A :class:`StepElem` is a decreasing step function from scalars into a
finite boolean algebra: value 1 up to a first threshold, then a strictly
decreasing chain of nonzero components on half-open intervals
``(a[i-1], a[i]]``, then 0.  Such functions encode decreasing
decompositions ``a0 + sum(b_i * e_i)`` with ``b_i > 0`` and strictly
decreasing idempotents, and they biject with orthogonal form via
upper-tail joins:

    to_steps(f)(a) = join of f(b) over b >= a.

The direct arithmetic formulas on step functions are

    (f + g)(a) = join of f(b1) & g(b2) over b1 + b2 >= a
    (b f)(a)   = join of f(c) over b c >= a            (b > 0)
    (f g)(a)   = join of f(b1) & g(b2) over b1, b2 >= 0, b1 b2 >= a
                                                        (f, g >= 0)
    (-f)(a)    = meet of ~f(b) over b > -a

each evaluated only at candidate thresholds, which suffices because both
sides are step functions whose breakpoints lie in those candidate sets.
Every direct formula is cross-checked against transport through the
bijection with orthogonal form.  Meet, join, and the order are pointwise.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Iterable, Sequence

from .boolalg import (
    Algebra,
    BoolElem,
    element_from_json,
    element_to_json,
    element_to_literal,
)
from .orthogonal import (
    OrthElem,
    orth_add,
    orth_const,
    orth_embed,
    orth_mul,
    orth_scale,
)
from .scalars import Scalar, format_scalar, parse_scalar

__all__ = [
    "StepElem",
    "CompatibleSteps",
    "to_steps",
    "to_orth",
    "step_const",
    "step_zero",
    "step_one",
    "step_embed",
    "step_add",
    "step_sub",
    "step_scale_pos",
    "step_mul_nonneg",
    "step_neg",
    "step_mul",
    "step_scale",
    "step_meet",
    "step_join",
    "step_leq",
    "decreasing_decomposition",
    "orth_to_decreasing",
    "from_decomposition",
    "compatible_decreasing",
    "is_idempotent",
    "step_to_json",
    "step_from_json",
]


@dataclass(frozen=True)
class StepElem:
    """Decreasing step function in canonical form.

    ``thresholds`` strictly increase; ``idems`` strictly decrease with
    ``idems[0] == 1`` and ``idems[-1] != 0``.  The function is 1 for
    ``a <= thresholds[0]``, ``idems[i]`` on ``(thresholds[i-1],
    thresholds[i]]``, and 0 past ``thresholds[-1]``.
    """

    algebra: Algebra
    thresholds: tuple[Scalar, ...]
    idems: tuple[BoolElem, ...]

    def __post_init__(self) -> None:
        if not self.thresholds or len(self.thresholds) != len(self.idems):
            raise ValueError("thresholds and components must align and be nonempty")
        if not self.idems[0].is_one:
            raise ValueError("the first step must have component 1")
        if self.idems[-1].is_zero:
            raise ValueError("the last step must have a nonzero component")
        for i in range(1, len(self.thresholds)):
            if not self.thresholds[i - 1] < self.thresholds[i]:
                raise ValueError("thresholds must strictly increase")
            below, here = self.idems[i - 1], self.idems[i]
            if here.algebra != self.algebra or not (here <= below and here != below):
                raise ValueError("components must strictly decrease")
        if self.idems[0].algebra != self.algebra:
            raise ValueError("component from a different algebra")

    def value(self, a: Scalar) -> BoolElem:
        """Evaluate the step function at ``a``."""
        index = bisect_left(self.thresholds, a)
        if index == len(self.thresholds):
            return self.algebra.zero
        return self.idems[index]

    def value_right(self, a: Scalar) -> BoolElem:
        """The value just past ``a``: join of the values at points > ``a``."""
        index = bisect_right(self.thresholds, a)
        if index == len(self.thresholds):
            return self.algebra.zero
        return self.idems[index]

    def __add__(self, other: "StepElem") -> "StepElem":
        return step_add(self, other)

    def __sub__(self, other: "StepElem") -> "StepElem":
        return step_sub(self, other)

    def __mul__(self, other: "StepElem") -> "StepElem":
        return step_mul(self, other)

    def __neg__(self) -> "StepElem":
        return step_neg(self)

    def __str__(self) -> str:
        def bare(idem: BoolElem) -> str:
            if idem.is_zero or idem.is_one:
                return element_to_literal(idem)
            return ",".join(idem.atom_names())

        return " ".join(
            f"[{bare(idem)} | {format_scalar(threshold)}]"
            for threshold, idem in zip(self.thresholds, self.idems)
        )

    def __repr__(self) -> str:
        return f"StepElem({self})"


@dataclass(frozen=True)
class CompatibleSteps:
    """Two step functions re-expressed over one shared threshold grid."""

    thresholds: tuple[Scalar, ...]
    left: tuple[BoolElem, ...]
    right: tuple[BoolElem, ...]


def _check_same_algebra(f: StepElem, g: StepElem) -> Algebra:
    if f.algebra != g.algebra:
        raise ValueError("mixed algebras: operands belong to different algebras")
    return f.algebra


def _assemble(algebra: Algebra, points: Sequence[tuple[Scalar, BoolElem]]) -> StepElem:
    """Canonical step function from samples at its candidate breakpoints.

    ``points`` must be sorted by strictly increasing scalar with
    decreasing component values starting at 1; runs of equal components
    merge (keeping the largest scalar of each run) and a trailing zero
    run is dropped.
    """
    if not points:
        raise ValueError("cannot assemble a step function from no points")
    if not points[0][1].is_one:
        raise ValueError("assembly requires the first sampled value to be 1")
    thresholds: list[Scalar] = []
    idems: list[BoolElem] = []
    for scalar, component in points:
        if idems:
            if not component <= idems[-1]:
                raise ValueError("assembly requires decreasing sampled values")
            if component == idems[-1]:
                thresholds[-1] = scalar
                continue
        thresholds.append(scalar)
        idems.append(component)
    if idems[-1].is_zero:
        thresholds.pop()
        idems.pop()
    return StepElem(algebra, tuple(thresholds), tuple(idems))


# --- the bijection with orthogonal form ----------------------------------


def _to_steps_raw(f: OrthElem) -> StepElem:
    tails: list[BoolElem] = []
    acc = f.algebra.zero
    for _, component in reversed(f.entries):
        acc = acc | component
        tails.append(acc)
    tails.reverse()
    return StepElem(f.algebra, f.values(), tuple(tails))


def _to_orth_raw(g: StepElem) -> OrthElem:
    entries = []
    for i in range(len(g.thresholds) - 1):
        entries.append((g.thresholds[i], g.idems[i] & ~g.idems[i + 1]))
    entries.append((g.thresholds[-1], g.idems[-1]))
    return OrthElem(g.algebra, tuple(entries))


def to_steps(f: OrthElem) -> StepElem:
    """Convert orthogonal form to step form by upper-tail joins."""
    result = _to_steps_raw(f)
    assert _to_orth_raw(result) == f
    return result


def to_orth(g: StepElem) -> OrthElem:
    """Convert step form back to orthogonal form (inverse of to_steps)."""
    result = _to_orth_raw(g)
    assert _to_steps_raw(result) == g
    return result


# --- distinguished elements ----------------------------------------------


def step_const(algebra: Algebra, a: Scalar) -> StepElem:
    return StepElem(algebra, (a,), (algebra.one,))


def step_zero(algebra: Algebra) -> StepElem:
    return step_const(algebra, 0)


def step_one(algebra: Algebra) -> StepElem:
    return step_const(algebra, 1)


def step_embed(e: BoolElem) -> StepElem:
    """Embed an idempotent as a step function (1 up to 0, ``e`` up to 1)."""
    algebra = e.algebra
    if e.is_one:
        return step_const(algebra, 1)
    if e.is_zero:
        return step_const(algebra, 0)
    return StepElem(algebra, (0, 1), (algebra.one, e))


# --- arithmetic -----------------------------------------------------------


def _transport(op, *elems: StepElem) -> StepElem:
    return _to_steps_raw(op(*(_to_orth_raw(f) for f in elems)))


def step_add(f: StepElem, g: StepElem) -> StepElem:
    algebra = _check_same_algebra(f, g)
    candidates = sorted({u + v for u in f.thresholds for v in g.thresholds})
    points = []
    for c in candidates:
        mask = 0
        for u in f.thresholds:
            for v in g.thresholds:
                if u + v >= c:
                    mask |= (f.value(u) & g.value(v)).mask
        points.append((c, algebra.from_mask(mask)))
    result = _assemble(algebra, points)
    assert result == _transport(orth_add, f, g)
    return result


def step_scale_pos(b: Scalar, f: StepElem) -> StepElem:
    """Multiply by a strictly positive scalar: thresholds scale, steps stay."""
    if not b > 0:
        raise ValueError("scalar must be > 0 here; use step_scale for general b")
    result = StepElem(
        f.algebra, tuple(b * t for t in f.thresholds), f.idems
    )
    assert result == _transport(lambda x: orth_scale(b, x), f)
    return result


def step_mul_nonneg(f: StepElem, g: StepElem) -> StepElem:
    algebra = _check_same_algebra(f, g)
    zero = step_zero(algebra)
    if not (step_leq(zero, f) and step_leq(zero, g)):
        raise ValueError("both factors must be nonnegative; use step_mul instead")
    candidates = sorted({u * v for u in f.thresholds for v in g.thresholds})
    points = []
    for c in candidates:
        mask = 0
        for u in f.thresholds:
            for v in g.thresholds:
                if u * v >= c:
                    mask |= (f.value(u) & g.value(v)).mask
        points.append((c, algebra.from_mask(mask)))
    result = _assemble(algebra, points)
    assert result == _transport(orth_mul, f, g)
    return result


def step_neg(f: StepElem) -> StepElem:
    # (-f)(a) = meet of ~f(b) over b > -a, which collapses to the
    # complement of the value just past -a
    algebra = f.algebra
    candidates = [-t for t in reversed(f.thresholds)]
    points = [(c, ~f.value_right(-c)) for c in candidates]
    result = _assemble(algebra, points)
    assert result == _transport(lambda x: orth_scale(-1, x), f)
    return result


def step_mul(f: StepElem, g: StepElem) -> StepElem:
    """General multiplication, via transport through orthogonal form."""
    _check_same_algebra(f, g)
    result = _transport(orth_mul, f, g)
    zero = step_zero(f.algebra)
    if step_leq(zero, f) and step_leq(zero, g):
        assert result == step_mul_nonneg(f, g)
    return result


def step_scale(b: Scalar, f: StepElem) -> StepElem:
    """General scalar action, via transport through orthogonal form."""
    result = _transport(lambda x: orth_scale(b, x), f)
    if b > 0:
        assert result == step_scale_pos(b, f)
    elif b == -1:
        assert result == step_neg(f)
    return result


def step_sub(f: StepElem, g: StepElem) -> StepElem:
    return step_add(f, step_neg(g))


# --- order and lattice ----------------------------------------------------


def _merged_grid(f: StepElem, g: StepElem) -> list[Scalar]:
    return sorted(set(f.thresholds) | set(g.thresholds))


def step_meet(f: StepElem, g: StepElem) -> StepElem:
    algebra = _check_same_algebra(f, g)
    points = [(c, f.value(c) & g.value(c)) for c in _merged_grid(f, g)]
    return _assemble(algebra, points)


def step_join(f: StepElem, g: StepElem) -> StepElem:
    algebra = _check_same_algebra(f, g)
    points = [(c, f.value(c) | g.value(c)) for c in _merged_grid(f, g)]
    return _assemble(algebra, points)


def step_leq(f: StepElem, g: StepElem) -> bool:
    """Pointwise order; checking the merged thresholds is exhaustive."""
    _check_same_algebra(f, g)
    return all(f.value(c) <= g.value(c) for c in _merged_grid(f, g))


# --- decompositions ---------------------------------------------------------


def decreasing_decomposition(
    f: StepElem,
) -> tuple[Scalar, tuple[tuple[Scalar, BoolElem], ...]]:
    """Read off ``a0 + sum(b_i * e_i)`` with ``b_i > 0`` from the steps."""
    a0 = f.thresholds[0]
    pairs = tuple(
        (f.thresholds[i] - f.thresholds[i - 1], f.idems[i])
        for i in range(1, len(f.thresholds))
    )
    assert from_decomposition(f.algebra, a0, pairs) == f
    return a0, pairs


def from_decomposition(
    algebra: Algebra, a0: Scalar, pairs: Iterable[tuple[Scalar, BoolElem]]
) -> StepElem:
    """Rebuild the element ``a0 + sum(b * e)`` via orthogonal arithmetic."""
    acc = orth_const(algebra, a0)
    for b, e in pairs:
        acc = orth_add(acc, orth_scale(b, orth_embed(e)))
    return _to_steps_raw(acc)


def orth_to_decreasing(
    f: OrthElem,
) -> tuple[Scalar, tuple[tuple[Scalar, BoolElem], ...]]:
    """Decreasing decomposition straight from an orthogonal decomposition.

    With values sorted ascending, each coefficient is the gap between
    consecutive values and each idempotent is the upper-tail join of the
    components at the larger values.
    """
    values = f.values()
    a0 = values[0]
    pairs = []
    tail = f.algebra.zero
    tails = []
    for _, component in reversed(f.entries):
        tail = tail | component
        tails.append(tail)
    tails.reverse()
    for i in range(1, len(values)):
        pairs.append((values[i] - values[i - 1], tails[i]))
    result = (a0, tuple(pairs))
    assert result == decreasing_decomposition(_to_steps_raw(f))
    return result


def compatible_decreasing(s: StepElem, t: StepElem) -> CompatibleSteps:
    """Re-express two elements over one shared threshold grid.

    The grid starts at a scalar lower bound of both elements and ends at
    an upper bound; when both elements are nonnegative the grid starts
    at 0.  Both elements reconstruct from their grid values, which is
    asserted.
    """
    algebra = _check_same_algebra(s, t)
    grid = _merged_grid(s, t)
    zero = step_zero(algebra)
    if step_leq(zero, s) and step_leq(zero, t) and grid[0] != 0:
        grid = [0] + grid
    result = CompatibleSteps(
        thresholds=tuple(grid),
        left=tuple(s.value(a) for a in grid),
        right=tuple(t.value(a) for a in grid),
    )
    assert result.left[0].is_one and result.right[0].is_one
    for elem, values in ((s, result.left), (t, result.right)):
        pairs = [
            (grid[i] - grid[i - 1], values[i]) for i in range(1, len(grid))
        ]
        assert from_decomposition(algebra, grid[0], pairs) == elem
    return result


def is_idempotent(f: StepElem) -> bool:
    """Order-theoretic idempotence test: ``f == (2 f) meet 1``."""
    doubled = step_scale_pos(2, f)
    by_order = step_meet(doubled, step_one(f.algebra)) == f
    g = _to_orth_raw(f)
    assert by_order == (orth_mul(g, g) == g)
    return by_order


# --- JSON ---------------------------------------------------------------


def step_to_json(f: StepElem) -> dict:
    return {
        "rep": "flat",
        "steps": [
            {"upto": format_scalar(threshold), "idem": element_to_json(idem)}
            for threshold, idem in zip(f.thresholds, f.idems)
        ],
    }


def step_from_json(algebra: Algebra, obj) -> StepElem:
    if not isinstance(obj, dict) or obj.get("rep") != "flat" or "steps" not in obj:
        raise ValueError(f"bad step-form JSON: {obj!r}")
    points = [
        (parse_scalar(item["upto"]), element_from_json(algebra, item["idem"]))
        for item in obj["steps"]
    ]
    for i in range(1, len(points)):
        if not points[i - 1][0] < points[i][0]:
            raise ValueError("step thresholds must strictly increase")
    return _assemble(algebra, points)
