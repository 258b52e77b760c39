"""Command line: ``run``, ``reproduce`` and ``validate``.

Exit codes: 0 the checker ran, 2 a verdict is negative or a counterexample
was found, 1 the input could not be used.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .commands import EXAMPLES, reproduce_example, run_command
from .problem import COMMANDS, ProblemError, parse_problem
from .report import Report


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quotcheck", description="Checks for quotients of module categories.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    run = sub.add_parser("run", help="run the task of a problem file")
    run.add_argument("problem", type=Path)
    run.add_argument("--command", choices=COMMANDS, help="override the task command")
    run.add_argument("--out", type=Path, help="write the JSON report here instead of stdout")
    run.add_argument("--seed", type=int)
    run.add_argument("--samples", type=int)
    run.add_argument("--ext-enum-bound", type=int)
    run.add_argument("--max-string-len", type=int)
    run.add_argument("--timings", action="store_true", help="include wall-clock timings in the report")

    rep = sub.add_parser("reproduce", help="run the battery of a bundled example")
    rep.add_argument("example", help=f"one of: {', '.join(EXAMPLES)}")
    rep.add_argument("--out", type=Path)
    rep.add_argument("--seed", type=int, default=1)
    rep.add_argument("--samples", type=int, default=64)
    rep.add_argument("--timings", action="store_true")

    val = sub.add_parser("validate", help="parse a problem file and report what it defines")
    val.add_argument("problem", type=Path)
    val.add_argument("--out", type=Path)
    return ap


def _emit(report: Report, out: Path | None, timings: bool = False):
    text = report.to_json(timings)
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)
    for v in report.verdicts:
        print(f"{v.name}: {v.value} [{v.scope}]", file=sys.stderr)


def _load(path: Path, overrides: dict | None = None):
    try:
        text = path.read_text()
    except OSError as exc:
        raise ProblemError(f"cannot read {path}: {exc.strerror}") from None
    return parse_problem(text, overrides)


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.cmd == "run":
            overrides = {"seed": args.seed, "samples": args.samples,
                         "ext_enum_bound": args.ext_enum_bound, "strings_max_len": args.max_string_len}
            p = _load(args.problem, overrides)
            report = run_command(p, args.command)
            _emit(report, args.out, args.timings)
        elif args.cmd == "reproduce":
            if args.example not in EXAMPLES:
                raise ProblemError(f"unknown example {args.example!r}; known examples: {', '.join(EXAMPLES)}")
            report = reproduce_example(args.example, args.seed, args.samples)
            _emit(report, args.out, args.timings)
        else:
            p = _load(args.problem)
            report = run_command(p, "validate")
            _emit(report, args.out)
    except ProblemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
