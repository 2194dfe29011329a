"""Command-line interface: ``stabzx <command> ...``.

Exit codes: 0 success or equal, 1 unequal (or a failed rule check),
2 usage/parse/validation error, 3 oracle qubit bound exceeded,
4 internal disagreement between the decision procedure and the oracle.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import gslc, rules, semantics
from .diagram import Diagram, DiagramError, bend_inputs, export_dot, parse, serialize, unbend
from .equality import equal_diagrams
from .normalize import normalize

EXIT_OK, EXIT_UNEQUAL, EXIT_USAGE, EXIT_BOUND, EXIT_INTERNAL = 0, 1, 2, 3, 4


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load(path: str) -> Diagram:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise _Fail(EXIT_USAGE, f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse(text)
    except DiagramError as exc:
        raise _Fail(EXIT_USAGE, f"{path}: {exc}") from None


def _interpret(d: Diagram, bound: int):
    try:
        return semantics.interpret(d, bound)
    except semantics.OracleBoundError as exc:
        raise _Fail(EXIT_BOUND, str(exc)) from None


def cmd_parse(args) -> int:
    print(serialize(_load(args.file)))
    return EXIT_OK


def cmd_interpret(args) -> int:
    print(_interpret(_load(args.file), args.max_qubits).to_text())
    return EXIT_OK


def cmd_normalize(args) -> int:
    d = _load(args.file)
    ni = d.n_inputs
    if ni:
        print(f"map: {ni} inputs bent into outputs 0..{ni - 1}", file=sys.stderr)
    s = normalize(bend_inputs(d))
    if args.emit == "gslc":
        print(gslc.to_json(s))
    else:
        out = gslc.to_diagram(s, n_zero=ni + d.n_outputs)
        print(serialize(unbend(out, ni)))
    return EXIT_OK


def cmd_equal(args) -> int:
    d1, d2 = _load(args.file1), _load(args.file2)
    verdict = equal_diagrams(d1, d2)
    if args.oracle:
        if (d1.n_inputs, d1.n_outputs) != (d2.n_inputs, d2.n_outputs):
            truth = False
        else:
            truth = semantics.scalar_equal(_interpret(d1, args.max_qubits), _interpret(d2, args.max_qubits))
        if truth != verdict:
            raise _Fail(EXIT_INTERNAL, f"oracle disagrees: procedure says {verdict}, oracle says {truth}")
    print("equal" if verdict else "unequal")
    return EXIT_OK if verdict else EXIT_UNEQUAL


def cmd_dot(args) -> int:
    sys.stdout.write(export_dot(_load(args.file)).rstrip("\n") + "\n")
    return EXIT_OK


def cmd_rules_check(args) -> int:
    count, failed = rules.check_soundness(semantics.interpret, semantics.scalar_equal)
    if failed:
        for label in failed:
            print(f"unsound: {label}", file=sys.stderr)
        print(f"rules: {len(failed)} of {count} instances unsound")
        return EXIT_UNEQUAL
    print(f"rules: all sound ({count} instances)")
    return EXIT_OK


def cmd_random(args) -> int:
    if args.qubits < 1 or args.depth < 0:
        raise _Fail(EXIT_USAGE, "need --qubits >= 1 and --depth >= 0")
    print(serialize(semantics.random_stabilizer_diagram(args.qubits, args.depth, args.seed)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stabzx", description="Stabilizer ZX-calculus normal forms and equality.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("parse", help="validate a diagram and print its canonical JSON")
    s.add_argument("file")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("interpret", help="print the exact matrix of a diagram")
    s.add_argument("file")
    s.add_argument("--max-qubits", type=int, default=semantics.DEFAULT_MAX_QUBITS)
    s.set_defaults(func=cmd_interpret)

    s = sub.add_parser("normalize", help="print the rGS-LC normal form")
    s.add_argument("file")
    s.add_argument("--emit", choices=("gslc", "diagram"), default="gslc")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("equal", help="decide equality of two diagrams up to scalar")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("--oracle", action="store_true", help="cross-check with the matrix oracle")
    s.add_argument("--max-qubits", type=int, default=semantics.DEFAULT_MAX_QUBITS)
    s.set_defaults(func=cmd_equal)

    s = sub.add_parser("dot", help="export a diagram as Graphviz DOT")
    s.add_argument("file")
    s.set_defaults(func=cmd_dot)

    s = sub.add_parser("rules-check", help="run the finite rule-soundness suite")
    s.set_defaults(func=cmd_rules_check)

    s = sub.add_parser("random", help="print a seeded random stabilizer state diagram")
    s.add_argument("--qubits", type=int, required=True)
    s.add_argument("--depth", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.set_defaults(func=cmd_random)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"stabzx: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
