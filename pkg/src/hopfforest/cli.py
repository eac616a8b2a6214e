"""Command-line interface.

Results go to stdout, diagnostics to stderr.  Exit codes: 0 when the command
succeeds and every check passes, 1 when a verification or comparison fails,
2 for malformed input or unknown ids.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .antipode import (
    METHODS,
    antipode_endomap,
    antipode_generator,
    term_stats,
)
from .coproduct import (
    coassociativity_report,
    convolution_check,
    counit_report,
    iterated_reduced,
)
from .errors import ConstructionError, InputError
from .hopfspec import CoproductSpec, faa_di_bruno_spec, load_spec_file, save_spec
from .linearize import chain_of, k_linearizations
from .prelie import (
    associativity_report,
    dualize,
    filtration_report,
    load_prelie_file,
    prelie_check,
    save_prelie,
)
from .trees import (
    PosetView,
    enumerate_trees,
    tree_notation,
    tree_stats,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopfforest",
        description=(
            "Exact antipode computations for graded right-handed polynomial "
            "Hopf algebras, by alternating-sum, recursive and cancellation-"
            "free tree methods."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("antipode", help="antipode of one generator")
    p.add_argument("--spec", required=True, help="coproduct table (JSON file)")
    p.add_argument("--element", required=True, type=int, help="generator id")
    p.add_argument("--method", required=True, choices=METHODS)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser(
        "coproduct", help="iterated reduced coproduct of one generator"
    )
    p.add_argument("--spec", required=True)
    p.add_argument("--element", required=True, type=int)
    p.add_argument(
        "--iterate",
        type=int,
        default=2,
        metavar="K",
        help="tensor rank K of the iterate (default 2: the reduced coproduct)",
    )
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("trees", help="realized trees behind one generator")
    p.add_argument("--spec", required=True)
    p.add_argument("--element", required=True, type=int)

    p = sub.add_parser(
        "linearizations", help="level assignments of each realized tree"
    )
    p.add_argument("--spec", required=True)
    p.add_argument("--element", required=True, type=int)
    p.add_argument("--k", required=True, type=int, help="number of levels")

    p = sub.add_parser("verify", help="run every consistency check")
    p.add_argument("--spec", required=True)
    p.add_argument("--max-degree", required=True, type=int)

    p = sub.add_parser("compare", help="method agreement and term counts")
    p.add_argument("--spec", required=True)
    p.add_argument("--max-degree", required=True, type=int)

    p = sub.add_parser("gen", help="emit built-in spec documents")
    gen_sub = p.add_subparsers(dest="generator", required=True)
    g = gen_sub.add_parser("fdb", help="composition Hopf algebra table")
    g.add_argument("--max-degree", required=True, type=int)

    p = sub.add_parser("dualize", help="coproduct table dual to a preLie spec")
    p.add_argument("--prelie", required=True, help="preLie spec (JSON file)")
    p.add_argument("--max-degree", required=True, type=int)

    p = sub.add_parser("prelie-verify", help="preLie identity and product checks")
    p.add_argument("--prelie", required=True)

    return parser


def _print_check(name: str, problems: list[str]) -> bool:
    print(f"{name}: {'ok' if not problems else 'FAIL'}")
    for line in problems:
        print(f"  {line}", file=sys.stderr)
    return not problems


def _cmd_antipode(args: argparse.Namespace) -> int:
    spec = load_spec_file(args.spec)
    value = antipode_generator(spec, args.element, args.method)
    if args.format == "text":
        print(value.render())
    else:
        doc = {
            "element": args.element,
            "method": args.method,
            "terms": [
                {"monomial": list(m.indices), "coeff": str(c)}
                for m, c in value.terms()
            ],
        }
        print(json.dumps(doc, indent=2))
    return 0


def _cmd_coproduct(args: argparse.Namespace) -> int:
    spec = load_spec_file(args.spec)
    if args.iterate < 1:
        raise InputError(f"--iterate must be >= 1, got {args.iterate}")
    value = iterated_reduced(spec, args.element, args.iterate)
    if args.format == "text":
        print(value.render())
    else:
        doc = {
            "element": args.element,
            "iterate": args.iterate,
            "terms": [
                {
                    "factors": [list(m.indices) for m in key],
                    "coeff": str(c),
                }
                for key, c in value.terms()
            ],
        }
        print(json.dumps(doc, indent=2))
    return 0


def _cmd_trees(args: argparse.Namespace) -> int:
    spec = load_spec_file(args.spec)
    for t in enumerate_trees(spec, args.element):
        l, h, lam, value = tree_stats(t, spec)
        sign = "-1" if l % 2 else "+1"
        print(
            f"{tree_notation(t)} l={l} h={h} sign={sign} "
            f"lambda={lam} v={value.render()}"
        )
    return 0


def _cmd_linearizations(args: argparse.Namespace) -> int:
    spec = load_spec_file(args.spec)
    if args.k < 1:
        raise InputError(f"--k must be >= 1, got {args.k}")
    for t in enumerate_trees(spec, args.element):
        view = PosetView.of_tree(t)
        lins = k_linearizations(view, args.k)
        print(f"{tree_notation(t)} k={args.k} count={len(lins)}")
        for lin in lins:
            print(f"  chain: {chain_of(view, lin).render()}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    spec = load_spec_file(args.spec)
    if args.max_degree < 1:
        raise InputError(f"--max-degree must be >= 1, got {args.max_degree}")
    ok = _print_check("structural validation", spec.validate())
    if ok:
        ok &= _print_check(
            "coassociativity", coassociativity_report(spec, args.max_degree)
        )
        ok &= _print_check("counit", counit_report(spec, args.max_degree))
        agreement: list[str] = []
        for i in spec.generator_ids():
            if spec.degree(i) > args.max_degree:
                continue
            values = {
                method: antipode_generator(spec, i, method) for method in METHODS
            }
            if len(set(values.values())) != 1:
                agreement.append(
                    f"methods disagree on generator {i}: "
                    + "; ".join(f"{m}: {v.render()}" for m, v in values.items())
                )
        ok &= _print_check("method agreement", agreement)
        for method in METHODS:
            ok &= _print_check(
                f"antipode convolution ({method})",
                convolution_check(
                    spec, args.max_degree, antipode_endomap(spec, method)
                ),
            )
    print(f"VERIFY: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def _cmd_compare(args: argparse.Namespace) -> int:
    spec = load_spec_file(args.spec)
    if args.max_degree < 1:
        raise InputError(f"--max-degree must be >= 1, got {args.max_degree}")
    all_agree = True
    for i in spec.generator_ids():
        if spec.degree(i) > args.max_degree:
            continue
        values = [antipode_generator(spec, i, method) for method in METHODS]
        agree = len(set(values)) == 1
        all_agree &= agree
        stats = term_stats(spec, i)
        label = spec.generators[i].display()
        print(
            f"{label}: dyson-salam={stats.dyson_salam_terms} "
            f"forest={stats.forest_terms} agree={'yes' if agree else 'NO'}"
        )
    return 0 if all_agree else 1


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.max_degree < 1:
        raise InputError(f"--max-degree must be >= 1, got {args.max_degree}")
    sys.stdout.write(save_spec(faa_di_bruno_spec(args.max_degree)))
    return 0


def _cmd_dualize(args: argparse.Namespace) -> int:
    prelie = load_prelie_file(args.prelie)
    sys.stdout.write(save_spec(dualize(prelie, args.max_degree)))
    return 0


def _cmd_prelie_verify(args: argparse.Namespace) -> int:
    spec = load_prelie_file(args.prelie)
    problems = spec.validate()
    if problems:
        raise InputError("invalid preLie spec: " + "; ".join(problems))
    ok = _print_check("preLie identity", prelie_check(spec))
    ok &= _print_check("product associativity", associativity_report(spec))
    ok &= _print_check("length filtration", filtration_report(spec))
    print(f"VERIFY: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


_COMMANDS = {
    "antipode": _cmd_antipode,
    "coproduct": _cmd_coproduct,
    "trees": _cmd_trees,
    "linearizations": _cmd_linearizations,
    "verify": _cmd_verify,
    "compare": _cmd_compare,
    "gen": _cmd_gen,
    "dualize": _cmd_dualize,
    "prelie-verify": _cmd_prelie_verify,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse and execute one command; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; pass both through
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
