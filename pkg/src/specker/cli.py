"""Command-line front end.

Loads algebras, elements, proximities, and morphisms from JSON files,
runs operations and verification suites, and prints human-readable
output (or machine-readable JSON with ``--json``).

Exit codes: 0 on success or a passing check, 1 when a verification
fails, 2 on usage, file, or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, Union

from .boolalg import Algebra, algebra_from_json
from .morphisms import (
    DVMorphism,
    check_dv_morphism,
    enumerate_boolean_homs,
    functor_id,
    functor_sp,
    lift_morphism,
    morphism_from_json,
    morphism_to_json,
    naturality_check,
    restrict_prox_morphism,
    sample_morphism_axioms,
    star_compose_dv,
)
from .orthogonal import (
    OrthElem,
    orth_from_json,
    orth_join,
    orth_leq,
    orth_meet,
    orth_to_json,
)
from .pointwise import atom_values, oracle_diff
from .proximity import (
    ProxRel,
    check_devries,
    enumerate_devries,
    leq_proximity,
    lift_check,
    prox_from_json,
    prox_to_json,
    restrict_lift,
    sample_proximity_axioms,
)
from .steps import (
    StepElem,
    step_from_json,
    step_join,
    step_meet,
    step_to_json,
    to_orth,
    to_steps,
)
from .terms import ParseError, normalize_term, parse_term

Element = Union[OrthElem, StepElem]


class UsageError(ValueError):
    """Bad invocation or unreadable input; maps to exit code 2."""


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _load_algebra(path: str | None) -> Algebra:
    if path is None:
        raise UsageError("this subcommand needs --algebra")
    try:
        return algebra_from_json(_load_json(path))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _load_element(algebra: Algebra, path: str) -> Element:
    obj = _load_json(path)
    try:
        if isinstance(obj, dict) and obj.get("rep") == "flat":
            return step_from_json(algebra, obj)
        return orth_from_json(algebra, obj)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _load_proximity(algebra: Algebra, spec: str) -> ProxRel:
    if spec == "leq":
        return leq_proximity(algebra)
    try:
        return prox_from_json(algebra, _load_json(spec))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _load_morphism(path: str) -> DVMorphism:
    try:
        return morphism_from_json(_load_json(path))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _element_json(elem: Element) -> dict:
    if isinstance(elem, StepElem):
        return step_to_json(elem)
    return orth_to_json(elem)


def _print_element(elem: Element, as_json: bool) -> None:
    print(json.dumps(_element_json(elem)) if as_json else str(elem))


def _print_report(report, as_json: bool) -> int:
    if as_json:
        print(json.dumps(report.to_json()))
    else:
        print(report.summary())
    return 0 if report.ok else 1


_SUBCOMMANDS = (
    "normalize",
    "eval",
    "convert",
    "order",
    "meet",
    "join",
    "check-devries",
    "enumerate-devries",
    "lift",
    "check-prox",
    "check-morphism",
    "compose",
    "equiv-check",
    "oracle-diff",
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="specker",
        description="Exact computation in Specker algebras over finite boolean algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--algebra", help="algebra JSON file")
        p.add_argument("--proximity", default="leq", help="proximity JSON file or 'leq'")
        p.add_argument("--expr", help="term to normalize or evaluate")
        p.add_argument("--morphism", action="append", default=[], help="morphism JSON file")
        p.add_argument("--samples", type=int, default=200)
        p.add_argument("--coeff-bound", type=int, default=10)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--json", action="store_true", dest="as_json")
        if name == "convert":
            p.add_argument("element", help="element JSON file")
        elif name in ("order", "meet", "join"):
            p.add_argument("left", help="element JSON file")
            p.add_argument("right", help="element JSON file")
        elif name == "lift":
            p.add_argument("left", nargs="?", help="element JSON file")
            p.add_argument("right", nargs="?", help="element JSON file")
        elif name == "compose":
            p.add_argument("outer", help="morphism JSON file (applied second)")
            p.add_argument("inner", help="morphism JSON file (applied first)")
    return parser


def _cmd_normalize(args) -> int:
    algebra = _load_algebra(args.algebra)
    if args.expr is None:
        raise UsageError("normalize needs --expr")
    elem = normalize_term(parse_term(args.expr), algebra)
    _print_element(elem, args.as_json)
    return 0


def _cmd_eval(args) -> int:
    algebra = _load_algebra(args.algebra)
    if args.expr is None:
        raise UsageError("eval needs --expr")
    elem = normalize_term(parse_term(args.expr), algebra)
    if args.as_json:
        _print_element(elem, True)
    else:
        print(atom_values(elem))
    return 0


def _cmd_convert(args) -> int:
    algebra = _load_algebra(args.algebra)
    elem = _load_element(algebra, args.element)
    converted = to_orth(elem) if isinstance(elem, StepElem) else to_steps(elem)
    _print_element(converted, args.as_json)
    return 0


def _as_orth(elem: Element) -> OrthElem:
    return to_orth(elem) if isinstance(elem, StepElem) else elem


def _cmd_order(args) -> int:
    algebra = _load_algebra(args.algebra)
    left = _as_orth(_load_element(algebra, args.left))
    right = _as_orth(_load_element(algebra, args.right))
    forward = orth_leq(left, right)
    backward = orth_leq(right, left)
    if forward and backward:
        print("EQ")
    elif forward:
        print("LEQ")
    elif backward:
        print("GEQ")
    else:
        print("INCOMPARABLE")
    return 0


def _cmd_lattice(args, op_name: str) -> int:
    algebra = _load_algebra(args.algebra)
    left = _load_element(algebra, args.left)
    right = _load_element(algebra, args.right)
    if isinstance(left, StepElem):
        right_steps = right if isinstance(right, StepElem) else to_steps(right)
        result: Element = (step_meet if op_name == "meet" else step_join)(
            left, right_steps
        )
    else:
        right_orth = _as_orth(right)
        result = (orth_meet if op_name == "meet" else orth_join)(left, right_orth)
    _print_element(result, args.as_json)
    return 0


def _cmd_check_devries(args) -> int:
    algebra = _load_algebra(args.algebra)
    rel = _load_proximity(algebra, args.proximity)
    return _print_report(check_devries(rel), args.as_json)


def _cmd_enumerate_devries(args) -> int:
    algebra = _load_algebra(args.algebra)
    relations = enumerate_devries(algebra)
    if args.as_json:
        print(json.dumps([prox_to_json(rel) for rel in relations]))
    else:
        print(f"{len(relations)} de Vries proximities")
        for rel in relations:
            print(json.dumps(prox_to_json(rel)))
    return 0


def _cmd_lift(args) -> int:
    if args.morphism:
        m = _load_morphism(args.morphism[0])
        lifted = lift_morphism(m)
        restricted = restrict_prox_morphism(lifted)
        status = "OK" if restricted.table == m.table else "MISMATCH"
        if args.as_json:
            print(json.dumps(morphism_to_json(restricted)))
        else:
            print(f"lifted morphism; restriction round-trip {status}")
        return 0 if status == "OK" else 1
    algebra = _load_algebra(args.algebra)
    rel = _load_proximity(algebra, args.proximity)
    if args.left and args.right:
        left = _load_element(algebra, args.left)
        right = _load_element(algebra, args.right)
        left_steps = left if isinstance(left, StepElem) else to_steps(left)
        right_steps = right if isinstance(right, StepElem) else to_steps(right)
        related = lift_check(rel, left_steps, right_steps)
        print("RELATED" if related else "NOT RELATED")
        return 0
    restricted = restrict_lift(rel)
    if args.as_json:
        print(json.dumps(prox_to_json(restricted)))
    else:
        print(f"lift restricts to {len(restricted.pairs)} pairs; round-trip OK")
    return 0


def _cmd_check_prox(args) -> int:
    algebra = _load_algebra(args.algebra)
    rel = _load_proximity(algebra, args.proximity)
    base = check_devries(rel)
    if not base.ok:
        return _print_report(base, args.as_json)
    report = sample_proximity_axioms(
        rel, samples=args.samples, coeff_bound=args.coeff_bound, seed=args.seed
    )
    if not args.as_json:
        print(f"seed={args.seed} samples={args.samples} coeff-bound={args.coeff_bound}")
    return _print_report(report, args.as_json)


def _cmd_check_morphism(args) -> int:
    if not args.morphism:
        raise UsageError("check-morphism needs --morphism")
    m = _load_morphism(args.morphism[0])
    base = check_dv_morphism(m)
    if not base.ok:
        return _print_report(base, args.as_json)
    report = sample_morphism_axioms(
        lift_morphism(m),
        samples=args.samples,
        coeff_bound=args.coeff_bound,
        seed=args.seed,
    )
    if not args.as_json:
        print(f"seed={args.seed} samples={args.samples} coeff-bound={args.coeff_bound}")
    return _print_report(report, args.as_json)


def _cmd_compose(args) -> int:
    outer = _load_morphism(args.outer)
    inner = _load_morphism(args.inner)
    try:
        composed = star_compose_dv(outer, inner)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.as_json:
        print(json.dumps(morphism_to_json(composed)))
    else:
        print(repr(composed))
    return 0


def _cmd_equiv_check(args) -> int:
    if args.algebra:
        algebras = [_load_algebra(args.algebra)]
    else:
        from .boolalg import make_algebra

        algebras = [make_algebra(["x"]), make_algebra(["p", "q"])]
    print(f"seed={args.seed} samples={args.samples}")
    failures = 0
    for algebra in algebras:
        rel = leq_proximity(algebra)
        round_trip = functor_id(functor_sp(rel)) == rel
        print(f"{algebra!r}: Id(Sp(-)) round-trip {'OK' if round_trip else 'FAIL'}")
        failures += 0 if round_trip else 1
    for source in algebras:
        for target in algebras:
            for i, hom in enumerate(enumerate_boolean_homs(source, target)):
                report = naturality_check(
                    hom, samples=max(1, args.samples // 2), seed=args.seed
                )
                print(
                    f"hom {i} {source.atoms}->{target.atoms}: {report.summary()}"
                )
                failures += 0 if report.ok else 1
    return 0 if failures == 0 else 1


def _cmd_oracle_diff(args) -> int:
    algebra = _load_algebra(args.algebra)
    records = oracle_diff(
        algebra,
        seed=args.seed,
        samples=args.samples,
        coeff_bound=args.coeff_bound,
    )
    for record in records:
        print(json.dumps(record))
    return 0 if all(record["status"] == "pass" for record in records) else 1


_COMMANDS = {
    "normalize": _cmd_normalize,
    "eval": _cmd_eval,
    "convert": _cmd_convert,
    "order": _cmd_order,
    "meet": lambda args: _cmd_lattice(args, "meet"),
    "join": lambda args: _cmd_lattice(args, "join"),
    "check-devries": _cmd_check_devries,
    "enumerate-devries": _cmd_enumerate_devries,
    "lift": _cmd_lift,
    "check-prox": _cmd_check_prox,
    "check-morphism": _cmd_check_morphism,
    "compose": _cmd_compose,
    "equiv-check": _cmd_equiv_check,
    "oracle-diff": _cmd_oracle_diff,
}


def run(argv: Sequence[str]) -> int:
    """Execute one CLI invocation; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
