#!/usr/bin/env python3
"""
Command-line interface for causal multiteam checking.

Exit codes: 0 true / pass, 1 false / counterexample, 2 input error,
3 guard exceeded, 130 interrupted.
"""

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Any, List, Optional

# Add the scripts directory to the path so the package imports work when run as a file
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from causal_multiteams.atoms.macros import KINDS, expand_atom  # noqa: E402
from causal_multiteams.core.enumeration import LawMode, enumerate_models  # noqa: E402
from causal_multiteams.core.loader import load_model, load_signature, model_to_dict  # noqa: E402
from causal_multiteams.errors import (  # noqa: E402
    CausalMultiteamError,
    GuardExceededError,
    LawsRequiredError,
)
from causal_multiteams.geometry.conic import conic_discriminant  # noqa: E402
from causal_multiteams.geometry.extract import extract  # noqa: E402
from causal_multiteams.geometry.inequalities import IneqClass, prune  # noqa: E402
from causal_multiteams.geometry.io import load_probability_set, probability_set_to_dict  # noqa: E402
from causal_multiteams.geometry.synth import synth  # noqa: E402
from causal_multiteams.oracle.corpus import random_formulas  # noqa: E402
from causal_multiteams.oracle.equivalence import equiv  # noqa: E402
from causal_multiteams.rewrite.characteristic import characteristic_formula  # noqa: E402
from causal_multiteams.rewrite.normal_forms import push_boxright, supset_normal_form  # noqa: E402
from causal_multiteams.rewrite.relativize import relativize  # noqa: E402
from causal_multiteams.semantics.evaluate import EvalConfig, satisfies  # noqa: E402
from causal_multiteams.syntax.abbreviations import expand_abbreviations  # noqa: E402
from causal_multiteams.syntax.fragments import FragmentLabel, classify_fragment  # noqa: E402
from causal_multiteams.syntax.parser import parse  # noqa: E402
from causal_multiteams.syntax.printer import format_number, to_text  # noqa: E402
from causal_multiteams.utils.config import configure_logging, get_settings  # noqa: E402

EXIT_TRUE, EXIT_FALSE, EXIT_INPUT, EXIT_GUARD, EXIT_INTERRUPTED = 0, 1, 2, 3, 130


def emit(args, text: str, payload: Any) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _signature(args, model_path: Optional[str] = None):
    if getattr(args, "sig", None):
        return load_signature(args.sig)
    if model_path:
        return load_signature(model_path)
    return None


def _laws(args):
    if not getattr(args, "laws", None):
        return None
    return load_model(args.laws).laws


def _mode(args, laws):
    return LawMode.parse(args.mode, laws)


def cmd_check(args) -> int:
    model = load_model(args.model)
    formula = parse(args.formula, model.signature)
    verdict = satisfies(model, formula, EvalConfig.from_settings(co_strategy=args.strategy))
    emit(args, "true" if verdict else "false", {"formula": to_text(formula), "verdict": verdict})
    return EXIT_TRUE if verdict else EXIT_FALSE


def cmd_rewrite(args) -> int:
    sig = _signature(args, args.laws)
    formula = parse(args.formula, sig)
    if args.pass_name == "supset-nf":
        result = supset_normal_form(formula)
    elif args.pass_name == "push-box":
        result = push_boxright(formula)
    elif args.pass_name == "relativize":
        if not args.laws:
            raise LawsRequiredError("relativize needs --laws model.json")
        model = load_model(args.laws)
        result = relativize(formula, model.laws, model.signature)
    else:
        result = expand_abbreviations(formula)
    emit(args, to_text(result), {"pass": args.pass_name, "formula": to_text(result)})
    return EXIT_TRUE


def cmd_extract(args) -> int:
    sig = load_signature(args.sig)
    formula = parse(args.formula, sig)
    result = extract(formula, sig, _laws(args))
    if args.prune:
        result = prune(result, args.prune)
    print(json.dumps(probability_set_to_dict(result, with_class=True), indent=2))
    return EXIT_TRUE


def cmd_synth(args) -> int:
    s = load_probability_set(args.input)
    sig = load_signature(args.sig) if args.sig else None
    formula = synth(s, IneqClass.parse(args.target), sig)
    emit(args, to_text(formula), {"formula": to_text(formula), "fragment": str(classify_fragment(formula))})
    return EXIT_TRUE


def cmd_classify(args) -> int:
    sig = load_signature(args.sig) if args.sig else None
    label = classify_fragment(parse(args.formula, sig))
    emit(args, str(label), {"fragment": str(label)})
    return EXIT_TRUE


def cmd_equiv(args) -> int:
    sig = load_signature(args.sig)
    laws = _laws(args)
    report = equiv(parse(args.f1, sig), parse(args.f2, sig), sig, args.max_size, _mode(args, laws))
    if args.report:
        report.save(args.report)
    if report.passed:
        emit(args, "pass", report.to_dict())
        return EXIT_TRUE
    counterexample = report.counterexample.to_dict()
    emit(args, json.dumps(counterexample, indent=2), report.to_dict())
    return EXIT_FALSE


def _split_vars(raw: str):
    head, _, zs = raw.partition("|")
    xs, _, ys = head.partition(";")
    names = lambda text: tuple(name.strip() for name in text.split(",") if name.strip())
    return names(xs), names(ys), names(zs)


def cmd_atoms(args) -> int:
    sig = load_signature(args.sig)
    xs, ys, zs = _split_vars(args.vars)
    formula = expand_atom(args.kind, xs, ys, zs or None, sig)
    emit(args, to_text(formula), {"kind": args.kind, "formula": to_text(formula),
                                  "fragment": str(classify_fragment(formula))})
    return EXIT_TRUE


def cmd_discriminant(args) -> int:
    value = conic_discriminant(Fraction(args.delta))
    emit(args, format_number(value), {"delta": args.delta, "discriminant": format_number(value)})
    return EXIT_TRUE


def cmd_enumerate(args) -> int:
    sig = load_signature(args.sig)
    for model in enumerate_models(sig, args.max_size, _mode(args, _laws(args))):
        print(json.dumps(model_to_dict(model)))
    return EXIT_TRUE


def cmd_sample(args) -> int:
    sig = load_signature(args.sig)
    formulas = random_formulas(sig, FragmentLabel.parse(args.fragment), args.count, args.seed, args.depth)
    texts = [to_text(f) for f in formulas]
    emit(args, "\n".join(texts), {"seed": args.seed, "formulas": texts})
    return EXIT_TRUE


def cmd_characteristic(args) -> int:
    model = load_model(args.model)
    arg = model.multiteam if args.kind == "theta" else model.laws
    formula = characteristic_formula(args.kind, arg, model.signature)
    emit(args, to_text(formula), {"kind": args.kind, "formula": to_text(formula)})
    return EXIT_TRUE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Model checking, rewriting and inequality compilation for causal multiteams",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python causal-multiteams.py check -m scripts/causal_multiteams/data/sum_chain.json -f "[Y:=1] Pr(Z=3) >= 1/2"
  python causal-multiteams.py discriminant --delta 1/2
  python causal-multiteams.py equiv -f1 "A=1 => (B=1 => Pr(C=1)>=1/2)" -f2 "(A=1 and B=1) => Pr(C=1)>=1/2" --sig sig.json --max-size 4
        """,
    )
    parser.add_argument("--json", action="store_true", help="Print results as JSON")
    parser.add_argument("--log-level", default=None, help="Logging level (default: CML_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="Decide T |= formula")
    p.add_argument("-m", "--model", required=True)
    p.add_argument("-f", "--formula", required=True)
    p.add_argument("--strategy", choices=["rowwise", "split_search"], default="rowwise")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("rewrite", help="Apply a rewrite pass")
    p.add_argument("--pass", dest="pass_name", required=True,
                   choices=["supset-nf", "push-box", "relativize", "expand"])
    p.add_argument("--laws", help="Model file whose function component is used")
    p.add_argument("--sig")
    p.add_argument("-f", "--formula", required=True)
    p.set_defaults(handler=cmd_rewrite)

    p = sub.add_parser("extract", help="Compile a formula to an inequality system")
    p.add_argument("-f", "--formula", required=True)
    p.add_argument("--sig", required=True)
    p.add_argument("--laws")
    p.add_argument("--prune", type=int, default=0, help="Heuristic pruning on the N-grid")
    p.set_defaults(handler=cmd_extract)

    p = sub.add_parser("synth", help="Compile an inequality system to a formula")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--target", required=True, choices=["monic", "signed-monic", "signed-binary"])
    p.add_argument("--sig")
    p.set_defaults(handler=cmd_synth)

    p = sub.add_parser("classify", help="Print the fragment label")
    p.add_argument("-f", "--formula", required=True)
    p.add_argument("--sig")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("equiv", help="Check two formulas on every small model")
    p.add_argument("-f1", required=True)
    p.add_argument("-f2", required=True)
    p.add_argument("--sig", required=True)
    p.add_argument("--max-size", type=int, default=4)
    p.add_argument("--mode", default="all", choices=["all", "fixed", "none"])
    p.add_argument("--laws")
    p.add_argument("--report", help="Save the oracle report as JSON")
    p.set_defaults(handler=cmd_equiv)

    p = sub.add_parser("atoms", help="Dependence-style atoms")
    atoms_sub = p.add_subparsers(dest="atoms_command", required=True)
    q = atoms_sub.add_parser("expand", help="Print the formula of an atom")
    q.add_argument("--kind", required=True, choices=list(KINDS))
    q.add_argument("--vars", required=True, help='"X;Y", "X1,X2;Y" or "X;Y|Z"')
    q.add_argument("--sig", required=True)
    q.set_defaults(handler=cmd_atoms)

    p = sub.add_parser("discriminant", help="Discriminant of the conditional-comparison conic")
    p.add_argument("--delta", required=True)
    p.set_defaults(handler=cmd_discriminant)

    p = sub.add_parser("enumerate", help="Stream every model up to a size as JSON lines")
    p.add_argument("--sig", required=True)
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--mode", default="none", choices=["all", "fixed", "none"])
    p.add_argument("--laws")
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("sample", help="Seeded random formulas")
    p.add_argument("--fragment", default="PCO")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--sig", required=True)
    p.set_defaults(handler=cmd_sample)

    p = sub.add_parser("characteristic", help="Characteristic formula of a model's laws or multiteam")
    p.add_argument("--kind", required=True, choices=["phi", "psi", "theta"])
    p.add_argument("-m", "--model", required=True)
    p.set_defaults(handler=cmd_characteristic)

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        configure_logging(args.log_level or get_settings().log_level)
        return args.handler(args)
    except GuardExceededError as e:
        print(f"[ERROR] {e}", file=sys.stderr)
        return EXIT_GUARD
    except CausalMultiteamError as e:
        print(f"[ERROR] {e}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, OSError) as e:
        print(f"[ERROR] {e}", file=sys.stderr)
        return EXIT_INPUT
    except KeyboardInterrupt:
        print("\n[INTERRUPTED] Stopped by user.", file=sys.stderr)
        return EXIT_INTERRUPTED


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
