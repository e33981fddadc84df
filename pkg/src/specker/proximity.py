"""De Vries proximities on finite boolean algebras and their lift.

A proximity here is a binary relation on a finite boolean algebra
subject to the compingent axioms (D1-D7 below), checked exhaustively.
The relation lifts pointwise to step functions: two elements are related
exactly when their step values are related at every scalar, which is
decidable by looking at the merged thresholds only.

The lifted relation is itself a proximity in the algebra sense (axioms
P1-P10); those laws quantify over all elements, so they are verified by
bounded random sampling plus constructive witnesses for the two
existential axioms (interpolation and positive approximation), with all
randomness seeded.

Axioms on the boolean algebra:

    D1  0 < 0 and 1 < 1
    D2  e < f implies e <= f
    D3  e <= f < g <= h implies e < h
    D4  e < f and e < g imply e < f & g
    D5  e < f implies ~f < ~e
    D6  e < f implies e < g < f for some g
    D7  e != 0 implies f < e for some f != 0

(writing ``<`` for the proximity).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .boolalg import Algebra, BoolElem, element_from_json, element_to_json
from .steps import (
    StepElem,
    compatible_decreasing,
    step_add,
    step_embed,
    step_join,
    step_leq,
    step_meet,
    step_mul_nonneg,
    step_neg,
    step_one,
    step_scale_pos,
    step_zero,
    _assemble,
)

__all__ = [
    "ProxRel",
    "AxiomResult",
    "ProxReport",
    "leq_proximity",
    "check_devries",
    "enumerate_devries",
    "interpolant",
    "lift_check",
    "sample_proximity_axioms",
    "restrict_lift",
    "sample_related_pair",
    "interpolate_lifted",
    "positive_approximant",
    "prox_to_json",
    "prox_from_json",
]


@dataclass(frozen=True)
class ProxRel:
    """A binary relation on a finite boolean algebra, as mask pairs."""

    algebra: Algebra
    pairs: frozenset[tuple[int, int]]

    def related(self, e: BoolElem, f: BoolElem) -> bool:
        if e.algebra != self.algebra or f.algebra != self.algebra:
            raise ValueError("elements from a different algebra")
        return (e.mask, f.mask) in self.pairs

    def sorted_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.pairs)

    def __repr__(self) -> str:
        return f"ProxRel({len(self.pairs)} pairs on {self.algebra!r})"


@dataclass(frozen=True)
class AxiomResult:
    name: str
    passed: bool
    checked: int
    counterexample: tuple = ()

    def __str__(self) -> str:
        if self.passed:
            return f"{self.name}: pass ({self.checked} checks)"
        witness = ", ".join(str(x) for x in self.counterexample)
        return f"{self.name}: FAIL ({witness})"


@dataclass(frozen=True)
class ProxReport:
    """Outcome of an axiom check, one result per axiom."""

    subject: str
    results: tuple[AxiomResult, ...]

    @property
    def ok(self) -> bool:
        return all(result.passed for result in self.results)

    def failures(self) -> tuple[AxiomResult, ...]:
        return tuple(result for result in self.results if not result.passed)

    def summary(self) -> str:
        if self.ok:
            return f"PASS ({len(self.results)} axioms)"
        failed = self.failures()
        return f"FAIL ({', '.join(str(result) for result in failed)})"

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "axioms": [
                {
                    "name": result.name,
                    "passed": result.passed,
                    "checked": result.checked,
                    "counterexample": [str(x) for x in result.counterexample],
                }
                for result in self.results
            ],
        }


def leq_proximity(algebra: Algebra) -> ProxRel:
    """The order relation itself, the canonical de Vries proximity."""
    pairs = frozenset(
        (e, f)
        for e in range(algebra.size)
        for f in range(algebra.size)
        if e & f == e
    )
    return ProxRel(algebra, pairs)


def _submasks(mask: int) -> Iterable[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def check_devries(rel: ProxRel, max_elements: int = 32) -> ProxReport:
    """Exhaustively verify the de Vries axioms D1-D7 on a finite algebra."""
    algebra = rel.algebra
    if algebra.size > max_elements:
        raise ValueError(
            f"algebra with {algebra.size} elements exceeds the exhaustive "
            f"bound of {max_elements}"
        )
    full = algebra.full_mask
    pairs = rel.pairs
    elem = algebra.from_mask
    results = []

    d1_ok = (0, 0) in pairs and (full, full) in pairs
    results.append(
        AxiomResult("D1", d1_ok, 2, () if d1_ok else (elem(0), elem(full)))
    )

    def run(name, generator):
        checked = 0
        for condition, witness in generator:
            checked += 1
            if not condition:
                results.append(AxiomResult(name, False, checked, witness))
                return
        results.append(AxiomResult(name, True, checked))

    run(
        "D2",
        (
            (e & f == e, (elem(e), elem(f)))
            for e, f in rel.sorted_pairs()
        ),
    )

    def d3_cases():
        for f, g in rel.sorted_pairs():
            for e in _submasks(f):
                for extension in _submasks(full & ~g):
                    h = g | extension
                    yield (e, h) in pairs, (elem(e), elem(f), elem(g), elem(h))

    run("D3", d3_cases())

    def d4_cases():
        by_left: dict[int, list[int]] = {}
        for e, f in rel.sorted_pairs():
            by_left.setdefault(e, []).append(f)
        for e, rights in sorted(by_left.items()):
            for f, g in itertools.product(rights, rights):
                yield (e, f & g) in pairs, (elem(e), elem(f), elem(g))

    run("D4", d4_cases())

    run(
        "D5",
        (
            ((full & ~f, full & ~e) in pairs, (elem(e), elem(f)))
            for e, f in rel.sorted_pairs()
        ),
    )

    def d6_cases():
        for e, f in rel.sorted_pairs():
            found = any(
                (e, g) in pairs and (g, f) in pairs for g in range(algebra.size)
            )
            yield found, (elem(e), elem(f))

    run("D6", d6_cases())

    def d7_cases():
        for e in range(1, algebra.size):
            found = any((f, e) in pairs for f in range(1, algebra.size))
            yield found, (elem(e),)

    run("D7", d7_cases())

    return ProxReport("de Vries axioms", tuple(results))


@lru_cache(maxsize=None)
def _devries_ok(rel: ProxRel) -> bool:
    return check_devries(rel).ok


def _require_devries(rel: ProxRel) -> None:
    if not _devries_ok(rel):
        raise ValueError("relation is not a de Vries proximity")


def enumerate_devries(algebra: Algebra) -> list[ProxRel]:
    """All de Vries proximities on a very small algebra.

    The search space is all relations on the algebra; everything failing
    D1 or D2 is excluded up front (any proximity contains (0,0) and
    (1,1) and sits inside <=), and the survivors run the full checker.
    """
    if algebra.size > 4:
        raise ValueError("enumeration is limited to algebras with at most 4 elements")
    full = algebra.full_mask
    forced = {(0, 0), (full, full)}
    optional = sorted(
        (e, f)
        for e in range(algebra.size)
        for f in range(algebra.size)
        if e & f == e and (e, f) not in forced
    )
    found = []
    for k in range(len(optional) + 1):
        for subset in itertools.combinations(optional, k):
            rel = ProxRel(algebra, frozenset(forced | set(subset)))
            if check_devries(rel).ok:
                found.append(rel)
    return found


def interpolant(rel: ProxRel, e: BoolElem, f: BoolElem) -> BoolElem:
    """Some ``g`` with ``e < g < f``, smallest and lexicographically first.

    Raises ``ValueError`` when no witness exists, which signals that the
    relation is not a de Vries proximity (or that ``(e, f)`` is not in
    it at all).
    """
    if not rel.related(e, f):
        raise ValueError("interpolant requires a related pair")
    algebra = rel.algebra
    candidates = [
        algebra.from_mask(g)
        for g in range(algebra.size)
        if (e.mask, g) in rel.pairs and (g, f.mask) in rel.pairs
    ]
    if not candidates:
        raise ValueError(
            f"no interpolant between {e} and {f}: not a de Vries proximity"
        )
    return min(candidates, key=lambda g: (g.atom_count(), g.atom_names()))


def lift_check(rel: ProxRel, s: StepElem, t: StepElem) -> bool:
    """The pointwise lift: related iff step values are related everywhere.

    Checking the merged thresholds suffices: both functions are constant
    between them, below the grid both are 1 (related by D1), and past it
    both are 0 (related by D1).
    """
    if s.algebra != rel.algebra or t.algebra != rel.algebra:
        raise ValueError("mixed algebras in lifted proximity check")
    _require_devries(rel)
    grid = sorted(set(s.thresholds) | set(t.thresholds))
    return all((s.value(b).mask, t.value(b).mask) in rel.pairs for b in grid)


def restrict_lift(rel: ProxRel) -> ProxRel:
    """Restrict the lifted relation back to embedded idempotents.

    The round trip is the identity, which is asserted.
    """
    _require_devries(rel)
    algebra = rel.algebra
    pairs = frozenset(
        (e, f)
        for e in range(algebra.size)
        for f in range(algebra.size)
        if lift_check(
            rel, step_embed(algebra.from_mask(e)), step_embed(algebra.from_mask(f))
        )
    )
    restricted = ProxRel(algebra, pairs)
    assert restricted == rel
    return restricted


# --- sampling machinery -----------------------------------------------------


def _random_grid(
    rng: random.Random, coeff_bound: int, low: int | None = None
) -> list[int]:
    lo = -coeff_bound if low is None else low
    count = rng.randint(1, min(4, coeff_bound - lo + 1))
    points: set[int] = set()
    while len(points) < count:
        points.add(rng.randint(lo, coeff_bound))
    return sorted(points)


def _prefix_meets(masks: Sequence[int]) -> list[int]:
    out = []
    acc = None
    for mask in masks:
        acc = mask if acc is None else acc & mask
        out.append(acc)
    return out


def sample_related_pair(
    rng: random.Random,
    rel: ProxRel,
    coeff_bound: int,
    nonneg: bool = False,
) -> tuple[StepElem, StepElem]:
    """A random pair of step functions related under the lifted relation.

    Built from a random grid and random related idempotent pairs,
    prefix-met on both sides so the step chains decrease; D3 and D4
    guarantee the met pairs stay related, hence the construction is
    sound for any relation passing the de Vries axioms.
    """
    _require_devries(rel)
    algebra = rel.algebra
    full = algebra.full_mask
    grid = _random_grid(rng, coeff_bound, low=0 if nonneg else None)
    choices = rel.sorted_pairs()
    chosen = [(full, full)]
    chosen += [rng.choice(choices) for _ in range(len(grid) - 1)]
    lefts = _prefix_meets([pair[0] for pair in chosen])
    rights = _prefix_meets([pair[1] for pair in chosen])
    s = _assemble(
        algebra, [(a, algebra.from_mask(m)) for a, m in zip(grid, lefts)]
    )
    t = _assemble(
        algebra, [(a, algebra.from_mask(m)) for a, m in zip(grid, rights)]
    )
    assert lift_check(rel, s, t)
    return s, t


def _random_element(rng: random.Random, algebra: Algebra, coeff_bound: int) -> StepElem:
    from .pointwise import random_steps

    return random_steps(rng, algebra, coeff_bound)


def sample_proximity_axioms(
    rel: ProxRel,
    samples: int = 200,
    coeff_bound: int = 10,
    seed: int = 0,
) -> ProxReport:
    """Sampled verification of the lifted-proximity axioms P1-P10.

    P1-P8 run on randomly constructed tuples; P9 constructs the
    interpolating element from idempotent interpolants on a compatible
    grid; P10 constructs the positive approximant from an approximation
    witness below the smallest step component.  A failing axiom reports
    the offending tuple.
    """
    _require_devries(rel)
    algebra = rel.algebra
    rng = random.Random(f"{seed}:proximity-axioms")
    zero = step_zero(algebra)
    one = step_one(algebra)
    results = []

    def run(name: str, generator) -> None:
        checked = 0
        for condition, witness in generator:
            checked += 1
            if not condition:
                results.append(AxiomResult(name, False, checked, witness))
                return
        results.append(AxiomResult(name, True, checked))

    run(
        "P1",
        [
            (lift_check(rel, zero, zero), (zero, zero)),
            (lift_check(rel, one, one), (one, one)),
        ],
    )

    def p2_cases():
        for _ in range(samples):
            s, t = sample_related_pair(rng, rel, coeff_bound)
            yield step_leq(s, t), (s, t)

    run("P2", p2_cases())

    def p3_cases():
        for _ in range(samples):
            t, r = sample_related_pair(rng, rel, coeff_bound)
            down = step_join(_random_element(rng, algebra, coeff_bound), zero)
            up = step_join(_random_element(rng, algebra, coeff_bound), zero)
            s = step_add(t, step_neg(down))
            u = step_add(r, up)
            yield lift_check(rel, s, u), (s, t, r, u)

    run("P3", p3_cases())

    def p4_cases():
        for _ in range(samples):
            s1, t = sample_related_pair(rng, rel, coeff_bound)
            s2, r = sample_related_pair(rng, rel, coeff_bound)
            s = step_meet(s1, s2)
            if not (lift_check(rel, s, t) and lift_check(rel, s, r)):
                # meets of related pairs stay related; if this fires the
                # relation itself is broken, so report it
                yield False, (s, t, r)
                return
            yield lift_check(rel, s, step_meet(t, r)), (s, t, r)

    run("P4", p4_cases())

    def p5_cases():
        for _ in range(samples):
            s, t = sample_related_pair(rng, rel, coeff_bound)
            yield lift_check(rel, step_neg(t), step_neg(s)), (s, t)

    run("P5", p5_cases())

    def p6_cases():
        for _ in range(samples):
            s, t = sample_related_pair(rng, rel, coeff_bound)
            r, u = sample_related_pair(rng, rel, coeff_bound)
            yield lift_check(rel, step_add(s, r), step_add(t, u)), (s, t, r, u)

    run("P6", p6_cases())

    def p7_cases():
        for _ in range(samples):
            if rng.random() < 0.5:
                s, t = sample_related_pair(rng, rel, coeff_bound)
            else:
                s = _random_element(rng, algebra, coeff_bound)
                t = _random_element(rng, algebra, coeff_bound)
            a = rng.randint(1, coeff_bound)
            scaled = lift_check(rel, step_scale_pos(a, s), step_scale_pos(a, t))
            plain = lift_check(rel, s, t)
            yield scaled == plain, (a, s, t)

    run("P7", p7_cases())

    def p8_cases():
        for _ in range(samples):
            s, t = sample_related_pair(rng, rel, coeff_bound, nonneg=True)
            r, u = sample_related_pair(rng, rel, coeff_bound, nonneg=True)
            yield lift_check(
                rel, step_mul_nonneg(s, r), step_mul_nonneg(t, u)
            ), (s, t, r, u)

    run("P8", p8_cases())

    def p9_cases():
        for _ in range(samples):
            s, t = sample_related_pair(rng, rel, coeff_bound)
            r = interpolate_lifted(rel, s, t)
            yield lift_check(rel, s, r) and lift_check(rel, r, t), (s, r, t)

    run("P9", p9_cases())

    def p10_cases():
        for _ in range(samples):
            s = step_join(
                _random_element(rng, algebra, coeff_bound), zero
            )
            if s == zero:
                s = step_add(s, one)
            t = positive_approximant(rel, s)
            positive = step_leq(zero, t) and t != zero
            yield positive and lift_check(rel, t, s), (t, s)

    run("P10", p10_cases())

    return ProxReport("lifted proximity axioms", tuple(results))


def interpolate_lifted(rel: ProxRel, s: StepElem, t: StepElem) -> StepElem:
    """Construct ``r`` with ``s < r < t`` in the lifted relation.

    Interpolants of the step values over a compatible grid, prefix-met
    so they decrease.
    """
    _require_devries(rel)
    if not lift_check(rel, s, t):
        raise ValueError("interpolation requires a related pair")
    shared = compatible_decreasing(s, t)
    witnesses = [
        interpolant(rel, e, f).mask for e, f in zip(shared.left, shared.right)
    ]
    met = _prefix_meets(witnesses)
    points = [
        (a, rel.algebra.from_mask(m)) for a, m in zip(shared.thresholds, met)
    ]
    return _assemble(rel.algebra, points)


def positive_approximant(rel: ProxRel, s: StepElem) -> StepElem:
    """Construct ``0 < t`` related to ``s``, for strictly positive ``s``.

    Uses an approximation witness below the smallest step component of
    ``s``, spread over the window (0, top threshold].
    """
    _require_devries(rel)
    algebra = rel.algebra
    zero = step_zero(algebra)
    if not (step_leq(zero, s) and s != zero):
        raise ValueError("a positive approximant needs s > 0")
    smallest = s.idems[-1]
    candidates = [
        algebra.from_mask(f)
        for f in range(1, algebra.size)
        if (f, smallest.mask) in rel.pairs
    ]
    if not candidates:
        raise ValueError(
            f"no nonzero witness below {smallest}: not a de Vries proximity"
        )
    e = min(candidates, key=lambda g: (g.atom_count(), g.atom_names()))
    top = s.thresholds[-1]
    points = [(0, algebra.one), (top, e)]
    return _assemble(algebra, points)


# --- JSON ---------------------------------------------------------------


def prox_to_json(rel: ProxRel) -> dict:
    elem = rel.algebra.from_mask
    return {
        "proximity": {
            "pairs": [
                [element_to_json(elem(e)), element_to_json(elem(f))]
                for e, f in rel.sorted_pairs()
            ]
        }
    }


def prox_from_json(algebra: Algebra, obj) -> ProxRel:
    if not isinstance(obj, dict) or "proximity" not in obj:
        raise ValueError(f"bad proximity JSON: {obj!r}")
    spec = obj["proximity"]
    if spec == "leq":
        return leq_proximity(algebra)
    if isinstance(spec, dict) and "pairs" in spec:
        pairs = frozenset(
            (
                element_from_json(algebra, left).mask,
                element_from_json(algebra, right).mask,
            )
            for left, right in spec["pairs"]
        )
        return ProxRel(algebra, pairs)
    raise ValueError(f"bad proximity JSON: {obj!r}")
