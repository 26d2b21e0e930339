"""
License:
--------
Copyright 2026 The uawork Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.


File description:
-----------------
Command-line interface of the workbench.

Exit codes: 0 success or property holds, 1 property fails or witness found, 2 input error, 3 budget exhausted or
undecided. Results go to stdout, logs and errors to stderr.

"""

import argparse
import json
import logging
import sys

from ._version import __version__
from .algebra import load_algebra, serialize_algebra
from .closure import Budget
from .commutator import Answer, Decision, is_supernilpotent, tc_commutator, two_term_higher_commutator
from .errors import BudgetExhaustedError, WorkbenchError
from .lattice import Partition, Subset, all_subuniverses, congruence_generated, congruence_lattice, \
    subuniverse_closure
from .paper_example import verify_theorem_example
from .retract import Verdict, build_retract, theorem_main
from .settings import load_config

__all__ = ["EXIT_OK", "EXIT_FAILS", "EXIT_INPUT", "EXIT_UNDECIDED", "build_parser", "run", "main"]

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_INPUT = 2
EXIT_UNDECIDED = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """
    ArgumentParser that raises on usage errors instead of exiting, so run() can report them on its own streams.
    """

    def error(self, message):
        raise _UsageError("{}\n{}: error: {}".format(self.format_usage().rstrip(), self.prog, message))


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--config", help="YAML file overriding the packaged defaults.")
    common.add_argument("--verbose", action="store_true", help="Log at DEBUG level on stderr.")
    common.add_argument("--format", choices=("text", "json"), default="text", help="Output format.")
    common.add_argument("--budget", type=int, help="Maximum closure insertions.")
    common.add_argument("--max-ops", type=int, help="Maximum operation applications.")

    parser = _Parser(prog="uawork", description="Finite universal-algebra workbench.")
    parser.add_argument("--version", action="version", version="uawork " + __version__)
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def algebra_command(name, help_text):
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("algebra", help="Algebra file, or the name of a built-in algebra.")
        return sub

    algebra_command("parse", "Parse an algebra file and print it back.")
    algebra_command("con", "List all congruences.")
    algebra_command("sub", "List all subuniverses.")

    commutator = algebra_command("commutator", "Compute a commutator of congruences.")
    commutator.add_argument("--theta", action="append", default=[],
                            help="Congruence: '0', '1' or seed pairs 'a-b,c-d'. Repeat for each argument.")
    commutator.add_argument("--kind", choices=("two-term", "tc"), default="two-term",
                            help="2-term higher commutator or term-condition commutator.")
    commutator.add_argument("--mode", choices=("exact", "zero-test"), default="exact")
    commutator.add_argument("--arity", type=int, default=2,
                            help="Number of arguments when a single --theta (or none) is given.")

    supernil = algebra_command("supernil", "Decide supernilpotence of a given class.")
    supernil.add_argument("--cls", type=int, default=1, help="Supernilpotence class.")
    supernil.add_argument("--theta", default="1", help="Congruence: '0', '1' or seed pairs 'a-b,c-d'.")

    retract = algebra_command("retract", "Represent a subalgebra as a retract of a subdirect power.")
    retract.add_argument("--subalgebra", required=True, help="Generators of B as 'a,b,...'.")
    retract.add_argument("--cls", type=int, help="Class to build at; searched up to retract.max_cls if omitted.")
    retract.add_argument("--theta", help="Congruence: '0', '1' or seed pairs 'a-b,c-d'; needs --cls, default '1'.")

    subparsers.add_parser("verify-paper-example", parents=[common],
                          help="Replay every check on the Z_6 example algebra.")
    return parser


def _congruence(A, text):
    text = text.strip()
    if text == "0":
        return Partition.zero(A.size)
    if text == "1":
        return Partition.one(A.size)
    pairs = []
    for item in text.split(","):
        left, sep, right = item.partition("-")
        try:
            pairs.append((int(left), int(right)))
        except ValueError:
            raise WorkbenchError("malformed seed pair {!r} in --theta".format(item))
    return congruence_generated(A, pairs)


def _budget(config, args, section="budget"):
    if section == "budget":
        budget = Budget.from_config(config)
    else:
        limits = config.get("paper_example", "witness_budget")
        budget = Budget(int(limits["max_insertions"]), int(limits["max_op_applications"]))
    return budget.override(args.budget, args.max_ops)


def _emit(out, args, payload, text):
    if args.format == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        out.write(text)


# ------------------------- Commands -------------------------
def _cmd_parse(args, config, out):
    A = load_algebra(args.algebra)
    payload = {"name": A.name, "size": A.size,
               "operations": [{"symbol": symbol, "arity": arity, "table": table.reshape(-1).tolist()}
                              for symbol, arity, table in A.operations()]}
    _emit(out, args, payload, serialize_algebra(A))
    return EXIT_OK


def _cmd_con(args, config, out):
    A = load_algebra(args.algebra)
    lattice = congruence_lattice(A, int(config.get("congruence_lattice", "max_size")))
    _emit(out, args, {"algebra": A.name, "congruences": [str(p) for p in lattice]},
          "".join("{}\n".format(p) for p in lattice))
    return EXIT_OK


def _cmd_sub(args, config, out):
    A = load_algebra(args.algebra)
    subuniverses = all_subuniverses(A, int(config.get("all_subuniverses", "max_size")))
    _emit(out, args, {"algebra": A.name, "subuniverses": [list(s.elements) for s in subuniverses]},
          "".join("{}\n".format(s) for s in subuniverses))
    return EXIT_OK


def _cmd_commutator(args, config, out):
    A = load_algebra(args.algebra)
    thetas = [_congruence(A, text) for text in args.theta] or [Partition.one(A.size)]
    if len(thetas) == 1:
        thetas = thetas * args.arity
    if args.kind == "tc":
        if len(thetas) != 2:
            raise WorkbenchError("the term-condition commutator takes exactly two congruences")
        try:
            value = tc_commutator(A, thetas[0], thetas[1], budget=_budget(config, args))
        except BudgetExhaustedError as e:
            logger.warning("%s", e)
            _emit(out, args, {"value": None, "decided": Decision.UNKNOWN_BUDGET.value},
                  "value: unknown\ndecided: {}\n".format(Decision.UNKNOWN_BUDGET.value))
            return EXIT_UNDECIDED
        _emit(out, args, {"value": str(value), "decided": Decision.EXACT.value},
              "value: {}\ndecided: {}\n".format(value, Decision.EXACT.value))
        return EXIT_OK
    result = two_term_higher_commutator(A, thetas, mode=args.mode, budget=_budget(config, args))
    _emit(out, args, result.to_dict(), result.to_text())
    return EXIT_UNDECIDED if result.decided is Decision.UNKNOWN_BUDGET else EXIT_OK


def _cmd_supernil(args, config, out):
    A = load_algebra(args.algebra)
    result = is_supernilpotent(A, _congruence(A, args.theta), args.cls, _budget(config, args))
    _emit(out, args, result.to_dict(), result.to_text())
    return {Answer.YES: EXIT_OK, Answer.NO: EXIT_FAILS, Answer.UNKNOWN: EXIT_UNDECIDED}[result.answer]


def _cmd_retract(args, config, out):
    A = load_algebra(args.algebra)
    B = subuniverse_closure(A, Subset.parse(args.subalgebra, A.size))
    budget = _budget(config, args)
    if args.cls is None:
        if args.theta is not None:
            raise WorkbenchError("--theta needs --cls; the class search always uses theta = 1")
        certificate = theorem_main(A, B, int(config.get("retract", "max_cls")), budget)
    else:
        certificate = build_retract(A, B, _congruence(A, args.theta or "1"), args.cls, budget)
    out.write(certificate.to_json() if args.format == "json" else certificate.to_text())
    return {Verdict.VALID: EXIT_OK, Verdict.INVALID: EXIT_FAILS, Verdict.UNDECIDED: EXIT_UNDECIDED}[
        certificate.verdict]


def _cmd_verify_paper_example(args, config, out):
    report = verify_theorem_example(_budget(config, args, section="paper_example"), config)
    payload = {"passed": report.passed,
               "checks": [{"section": line.section, "name": line.name, "status": line.status.value,
                           "evidence": line.evidence} for line in report.lines]}
    _emit(out, args, payload, report.to_text())
    return EXIT_OK if report.passed else EXIT_FAILS


_COMMANDS = {
    "parse": _cmd_parse,
    "con": _cmd_con,
    "sub": _cmd_sub,
    "commutator": _cmd_commutator,
    "supernil": _cmd_supernil,
    "retract": _cmd_retract,
    "verify-paper-example": _cmd_verify_paper_example,
}


def run(argv=None, out=None, err=None):
    """
    Runs one command.

    :param list argv: arguments without the program name, sys.argv[1:] if None.
    :param out: stream for results, sys.stdout if None.
    :param err: stream for usage errors, errors and logs, sys.stderr if None.
    :return: exit code.
    :rtype: int
    """
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        err.write("{}\n".format(e))
        return EXIT_INPUT
    except SystemExit as e:
        # --help and --version
        return e.code or EXIT_OK

    package_logger = logging.getLogger("uawork")
    handler = logging.StreamHandler(err)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    previous_level = package_logger.level
    package_logger.addHandler(handler)
    try:
        config = load_config(args.config)
        package_logger.setLevel(logging.DEBUG if args.verbose else config.get("logging", "level"))
        return _COMMANDS[args.command](args, config, out)
    except WorkbenchError as e:
        err.write("error: {}\n".format(e))
        return EXIT_INPUT
    finally:
        package_logger.removeHandler(handler)
        package_logger.setLevel(previous_level)


def main():
    raise SystemExit(run())
