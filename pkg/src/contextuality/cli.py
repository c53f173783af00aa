"""Command-line front end.

Subcommands: validate, classify, obstruction, report, examples.  Exit
codes: 0 analysis completed, 1 usage error, 2 invalid or signalling model,
3 internal verification failure (a witness or certificate failed its
re-check, which must never happen).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .cohomology import Ring, VerificationError, obstruction
from .corpus import EXAMPLE_NAMES, example_text, load_example
from .documents import DocumentError, ScenarioDocument, parse_scenario
from .extendability import classify
from .model import SignallingError, support_violations
from .report import RING_ORDER, build_report, emit_report, format_witness
from .scenario import Section

USAGE_ERROR = 1
MODEL_ERROR = 2
VERIFICATION_FAILURE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: ANN001  (argparse override)
        self.print_usage(sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _rings(flag: str) -> tuple[Ring, ...]:
    if flag == "both":
        return RING_ORDER
    return (Ring(flag),)


def _load_document(path: str) -> ScenarioDocument:
    return parse_scenario(Path(path).read_text("utf-8"))


def _checked_support(document: ScenarioDocument):
    support = document.support_model()
    violations = support_violations(support)
    if violations:
        raise SignallingError(
            f"support is possibilistically signalling at {len(violations)} section(s)",
            violations,
        )
    return support


def _cmd_validate(args) -> int:  # noqa: ANN001
    document = _load_document(args.file)
    _checked_support(document)
    kind = "distribution" if document.kind == "distribution" else "support"
    print(f"{document.name}: valid {kind} model")
    return 0


def _cmd_classify(args) -> int:  # noqa: ANN001
    document = _load_document(args.file)
    support = _checked_support(document)
    result = classify(support)
    count = len(result.global_sections)
    print(
        f"{result.verdict.value.replace('_', ' ')}; "
        f"{count} global section{'s' if count != 1 else ''}"
    )
    return 0


def _parse_section_flag(document: ScenarioDocument, context: int, text: str) -> Section:
    scenario = document.scenario
    if not 0 <= context < len(scenario.contexts):
        raise DocumentError([f"--context: no context with index {context}"])
    members = scenario.contexts[context].members
    values = tuple(text.split(","))
    if len(values) != len(members):
        raise DocumentError(
            [f"--section: {text!r} has {len(values)} outcomes, context has {len(members)}"]
        )
    unknown = [v for v in values if v not in scenario.outcomes]
    if unknown:
        raise DocumentError([f"--section: unknown outcome(s) {unknown}"])
    return Section(members, values)


def _print_obstruction(result, show_witness: bool) -> None:  # noqa: ANN001
    ring_name = result.ring.describe()
    where = f"context {result.base} section {result.section.outcome_string()}"
    if result.vanishes:
        print(f"{where}: vanishes over {ring_name}")
        if show_witness:
            assert result.witness is not None
            for line in format_witness(
                [
                    {
                        "context": k,
                        "terms": [
                            {"section": s.outcome_string(), "coefficient": c}
                            for s, c in combo.terms()
                        ],
                    }
                    for k, combo in enumerate(result.witness)
                ]
            ):
                print(line)
    else:
        print(f"{where}: does not vanish over {ring_name}")
        if show_witness:
            assert result.certificate is not None
            print(f"    certificate: {result.certificate.reason}")


def _cmd_obstruction(args) -> int:  # noqa: ANN001
    document = _load_document(args.file)
    support = _checked_support(document)
    rings = _rings(args.ring)
    if (args.context is None) != (args.section is None):
        raise SystemExit(USAGE_ERROR)
    if args.all and args.context is not None:
        raise SystemExit(USAGE_ERROR)

    if args.context is not None:
        section = _parse_section_flag(document, args.context, args.section)
        for ring in rings:
            result = obstruction(support, args.context, section, ring)
            _print_obstruction(result, args.witness)
        return 0

    for ring in rings:
        non_vanishing = 0
        total = 0
        for ctx in support.scenario.contexts:
            for section in support.support_list(ctx.index):
                result = obstruction(support, ctx.index, section, ring)
                total += 1
                non_vanishing += 0 if result.vanishes else 1
                _print_obstruction(result, args.witness)
        print(f"{non_vanishing}/{total} non-vanishing over {ring.describe()}")
    return 0


def _run_report(document: ScenarioDocument, ring_flag: str, as_json: bool, witness: bool) -> int:
    _checked_support(document)
    report = build_report(document, rings=_rings(ring_flag), include_witnesses=witness)
    sys.stdout.write(emit_report(report, as_json, include_witnesses=witness))
    return 0


def _cmd_report(args) -> int:  # noqa: ANN001
    return _run_report(_load_document(args.file), args.ring, args.json, args.witness)


def _cmd_examples(args) -> int:  # noqa: ANN001
    if args.action == "list":
        for name in EXAMPLE_NAMES:
            print(name)
        return 0
    if args.name is None:
        raise SystemExit(USAGE_ERROR)
    if args.name not in EXAMPLE_NAMES:
        print(
            f"unknown example {args.name!r}; choose from {', '.join(EXAMPLE_NAMES)}",
            file=sys.stderr,
        )
        return USAGE_ERROR
    if args.action == "show":
        sys.stdout.write(example_text(args.name))
        return 0
    return _run_report(load_example(args.name), args.ring, args.json, args.witness)


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="contextuality",
        description=(
            "Decide contextuality of empirical models on measurement covers by "
            "global-section search and by exact obstruction computations."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="validate a scenario file")
    p_validate.add_argument("file")
    p_validate.set_defaults(handler=_cmd_validate)

    p_classify = sub.add_parser("classify", help="oracle classification of a model")
    p_classify.add_argument("file")
    p_classify.set_defaults(handler=_cmd_classify)

    p_obstruction = sub.add_parser(
        "obstruction", help="obstruction verdicts for one or all support sections"
    )
    p_obstruction.add_argument("file")
    p_obstruction.add_argument("--ring", choices=("z2", "z", "both"), default="both")
    p_obstruction.add_argument("--context", type=int, default=None)
    p_obstruction.add_argument("--section", default=None)
    p_obstruction.add_argument("--all", action="store_true", default=False)
    p_obstruction.add_argument("--witness", action="store_true", default=False)
    p_obstruction.set_defaults(handler=_cmd_obstruction)

    p_report = sub.add_parser("report", help="full analysis report")
    p_report.add_argument("file")
    p_report.add_argument("--ring", choices=("z2", "z", "both"), default="both")
    p_report.add_argument("--json", action="store_true", default=False)
    p_report.add_argument("--witness", action="store_true", default=False)
    p_report.set_defaults(handler=_cmd_report)

    p_examples = sub.add_parser("examples", help="list, show, or analyze bundled models")
    p_examples.add_argument("action", choices=("list", "show", "run"))
    p_examples.add_argument("name", nargs="?", default=None)
    p_examples.add_argument("--ring", choices=("z2", "z", "both"), default="both")
    p_examples.add_argument("--json", action="store_true", default=False)
    p_examples.add_argument("--witness", action="store_true", default=False)
    p_examples.set_defaults(handler=_cmd_examples)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except DocumentError as exc:
        for error in exc.errors:
            print(f"error: {error}", file=sys.stderr)
        return MODEL_ERROR
    except SignallingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for violation in exc.violations[:20]:
            print(f"  {violation}", file=sys.stderr)
        return MODEL_ERROR
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return MODEL_ERROR
    except VerificationError as exc:
        print(f"internal verification failure: {exc}", file=sys.stderr)
        return VERIFICATION_FAILURE


def entry_point() -> None:
    raise SystemExit(main())
