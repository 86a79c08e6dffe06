"""Command-line front end.

Subcommands:

  check    parse a contract, report well-formedness and conflict states
  eval     adjudicate a contract on a recorded interaction
  compile  build the (blame) automaton, export DOT and optional figures
  mc       model-check two Moore machines against a contract

Every command prints a JSON report to stdout (and optionally to a file).
Exit codes: 0 = compliant/unknown, 1 = violation/conflict/counterexample,
2 = input error.  Reports are byte-stable across runs on identical inputs
except for the generated_at timestamp.  The CDL_SEED environment variable
seeds any randomized tie-breaking in exploratory subcommands; the shipped
commands are fully deterministic, so it is recorded but unused.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import hashlib
import json
import os
import random
import sys

from . import __version__
from . import autom, moore, quant, semantics, viz
from .blame import blame as assign_blame
from .errors import CdlError
from .parser import load_contract_document
from .traces import load_interaction

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT_ERROR = 2


def _digest(path):
    with open(path, "rb") as handle:
        return hashlib.sha256(handle.read()).hexdigest()


def _report(command, inputs, result):
    return {
        "tool": "cdl",
        "version": __version__,
        "command": command,
        "generated_at": datetime.datetime.now(datetime.timezone.utc)
        .isoformat(timespec="seconds"),
        "inputs": {path: _digest(path) for path in inputs},
        "result": result,
    }


def _emit(report, args):
    text = json.dumps(report, indent=2, sort_keys=True)
    print(text)
    if getattr(args, "report", None):
        with open(args.report, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")


def _read(path):
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _load_contract(path):
    return load_contract_document(_read(path))


def _event_str(event):
    return sorted(str(a) for a in sorted(event))


def cmd_check(args):
    alphabet, contract = _load_contract(args.contract)
    from .contracts import check_wellformed

    violations = check_wellformed(contract)
    if violations:
        report = _report("check", [args.contract], {
            "wellformed": False,
            "violations": [str(v) for v in violations],
        })
        _emit(report, args)
        return EXIT_INPUT_ERROR
    automaton = autom.aut(contract, alphabet)
    witnesses = autom.conflict_states(automaton)
    result = {
        "wellformed": True,
        "conflict_free": not witnesses,
        "conflict_states": [automaton.states[s].name for s in witnesses],
        "automaton_states": len(automaton.states),
    }
    _emit(_report("check", [args.contract], result), args)
    return EXIT_VIOLATION if witnesses else EXIT_OK


def cmd_eval(args):
    alphabet, contract = _load_contract(args.contract)
    interaction = load_interaction(_read(args.trace))
    if interaction.alphabet != alphabet:
        raise CdlError(
            f"trace alphabet {sorted(interaction.alphabet)} does not match "
            f"contract alphabet {sorted(alphabet)}")
    start = args.start
    verdict = semantics.evaluate(contract, interaction, start)
    result = {
        "verdict": verdict.kind.value,
        "index": verdict.index,
        "start": start,
    }
    if args.blame:
        verdict_blame = assign_blame(contract, interaction, start)
        if verdict_blame is None:
            result["blame"] = None
        else:
            result["blame"] = {
                "index": verdict_blame.index,
                "blamed": sorted(verdict_blame.blamed),
            }
    if args.score is not None:
        outcome = quant.score(contract, interaction, args.score, start)
        result["score"] = {
            "party": outcome.party,
            "status": outcome.status.value,
            "score": outcome.score,
        }
    if args.csv:
        _write_step_table(args.csv, interaction)
    if args.fig:
        title = f"verdict: {verdict}"
        viz.render_interaction(interaction, args.fig, verdict.index, title)
    _emit(_report("eval", [args.contract, args.trace], result), args)
    return EXIT_VIOLATION if verdict.is_violated else EXIT_OK


def _write_step_table(path, interaction):
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["step", "party0", "party1", "labeled"])
        for i in range(len(interaction)):
            writer.writerow([
                i,
                " ".join(sorted(interaction.trace0[i])),
                " ".join(sorted(interaction.trace1[i])),
                " ".join(_event_str(interaction.labeled(i))),
            ])


def cmd_compile(args):
    alphabet, contract = _load_contract(args.contract)
    if args.blame:
        automaton = autom.blaut(contract, alphabet)
    else:
        automaton = autom.aut(contract, alphabet)
    dot = automaton.to_dot()
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as handle:
            handle.write(dot + "\n")
    if args.fig:
        viz.render_automaton(automaton, args.fig)
    result = {
        "blame": args.blame,
        "states": len(automaton.states),
        "transitions": len(automaton.edges),
        "rejecting": sorted(automaton.states[s].name
                            for s in automaton.rejecting_states()),
        "dot": args.dot,
    }
    _emit(_report("compile", [args.contract], result), args)
    return EXIT_OK


def cmd_mc(args):
    alphabet, contract = _load_contract(args.contract)
    m0 = moore.load_moore(_read(args.machine0))
    m1 = moore.load_moore(_read(args.machine1))
    if args.blame is None:
        counterexample = moore.model_check(m0, m1, contract, alphabet)
    else:
        counterexample = moore.blame_check(m0, m1, contract, alphabet,
                                           args.blame)
    inputs = [args.contract, args.machine0, args.machine1]
    if counterexample is None:
        _emit(_report("mc", inputs, {"ok": True, "blame_party": args.blame}),
              args)
        return EXIT_OK
    result = {
        "ok": False,
        "blame_party": args.blame,
        "counterexample": {
            "trace": [_event_str(e) for e in counterexample.trace],
            "states": list(counterexample.states),
            "violation_index": counterexample.violation_index,
            "blamed": sorted(counterexample.blamed)
            if counterexample.blamed is not None else None,
        },
    }
    _emit(_report("mc", inputs, result), args)
    return EXIT_VIOLATION


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cdl",
        description="verify two-party synchronous deontic contracts")
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="well-formedness and conflict scan")
    p_check.add_argument("contract")
    p_check.add_argument("--report", help="also write the JSON report here")
    p_check.set_defaults(func=cmd_check)

    p_eval = sub.add_parser("eval", help="adjudicate a recorded interaction")
    p_eval.add_argument("contract")
    p_eval.add_argument("trace")
    p_eval.add_argument("--from", dest="start", type=int, default=0,
                        help="start position (default 0)")
    p_eval.add_argument("--blame", action="store_true",
                        help="also assign blame for a violation")
    p_eval.add_argument("--score", type=int, choices=(0, 1), default=None,
                        help="also compute the mistake score of a party")
    p_eval.add_argument("--report", help="also write the JSON report here")
    p_eval.add_argument("--csv", help="write a per-step table here")
    p_eval.add_argument("--fig", help="save a timeline figure here")
    p_eval.set_defaults(func=cmd_eval)

    p_compile = sub.add_parser("compile", help="compile to a safety automaton")
    p_compile.add_argument("contract")
    p_compile.add_argument("--blame", action="store_true",
                           help="build the blame automaton instead")
    p_compile.add_argument("--dot", help="write DOT here")
    p_compile.add_argument("--fig", help="save a rendered figure here")
    p_compile.add_argument("--report", help="also write the JSON report here")
    p_compile.set_defaults(func=cmd_compile)

    p_mc = sub.add_parser("mc", help="model-check two agents against a contract")
    p_mc.add_argument("contract")
    p_mc.add_argument("machine0")
    p_mc.add_argument("machine1")
    p_mc.add_argument("--blame", type=int, choices=(0, 1), default=None,
                      help="ask whether this party can ever be blamed")
    p_mc.add_argument("--report", help="also write the JSON report here")
    p_mc.set_defaults(func=cmd_mc)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    seed = os.environ.get("CDL_SEED")
    if seed is not None:
        random.seed(seed)
    try:
        return args.func(args)
    except (CdlError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
