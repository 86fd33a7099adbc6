"""Command-line front end: check, sat, mc, props, gen, fuzz.

Exit codes: 0 success, 1 fuzz discrepancy, 2 usage or parse error, 3 resource
cap exceeded.  Output is line-oriented text; --json switches each command to a
single machine-readable record.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .decide import explain, is_satisfiable, is_valid
from .logics import LogicId
from .mcheck import satisfies, valid_on_model
from .models import (
    ModelError,
    RandomModelConfig,
    frame_properties,
    load_model,
    random_model,
    save_model,
)
from .normalform import ClauseCapError
from .synth import synthesize
from .syntax import ParseError, parse, random_formula, render
from .models import validate_model

# Desk-scale guidance: coalition and joint-action enumeration is exhaustive
# over the declared action list, so keep agents <= 3, actions <= 4, states <= 8.
SCALE_NOTE = "intended for desk-scale models (agents <= 3, actions <= 4, states <= 8)"


def _emit(args, record: dict, text_lines) -> None:
    if args.json:
        print(json.dumps(record, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _witness_text(clause_index, clause, witness) -> str:
    from .normalform import sd_to_formula

    head = f"clause {clause_index}: {render(sd_to_formula(clause))}"
    if witness is None:
        return head + " :: no reduction witness (clause invalid)"
    if witness.kind == "gamma":
        return head + " :: gamma is a tautology"
    neat = sorted(witness.neat)
    return (
        head
        + f" :: neat antecedent indices {neat}, consequent index {witness.positive},"
        + f" reduced to {render(witness.reduced)}"
    )


def cmd_check(args) -> int:
    logic = LogicId.from_string(args.logic)
    formula = parse(args.formula, args.agents)
    lines = []
    if args.trace:
        verdict, details = explain(formula, logic, args.agents)
        lines.extend(
            _witness_text(i, clause, witness) for i, (clause, witness) in enumerate(details)
        )
    else:
        verdict = is_valid(formula, logic, args.agents)
    result = "valid" if verdict else "invalid"
    lines.append(result)
    record = {
        "command": "check",
        "formula": render(formula),
        "logic": logic.name,
        "agents": args.agents,
        "result": result,
    }
    _emit(args, record, lines)
    return 0


def cmd_sat(args) -> int:
    logic = LogicId.from_string(args.logic)
    formula = parse(args.formula, args.agents)
    sat = is_satisfiable(formula, logic, args.agents)
    result = "satisfiable" if sat else "unsatisfiable"
    lines = [result]
    record = {
        "command": "sat",
        "formula": render(formula),
        "logic": logic.name,
        "agents": args.agents,
        "result": result,
    }
    if sat and args.model:
        pointed = synthesize(formula, logic, args.agents)
        save_model(pointed.model, args.model, pointed=pointed.state)
        lines.append(f"model written to {args.model}")
        record["model"] = args.model
        record["pointed"] = pointed.state
    _emit(args, record, lines)
    return 0


def cmd_mc(args) -> int:
    model = load_model(args.model)
    if args.state not in model.labels:
        raise ModelError(f"unknown state {args.state!r}")
    formula = parse(args.formula, model.agents)
    verdict = satisfies(model, args.state, formula)
    result = "true" if verdict else "false"
    record = {
        "command": "mc",
        "model": args.model,
        "state": args.state,
        "formula": render(formula),
        "result": result,
    }
    _emit(args, record, [result])
    return 0


def cmd_props(args) -> int:
    model = load_model(args.model)
    props = frame_properties(model)
    line = (
        f"serial={str(props.serial).lower()}"
        f" independent={str(props.independent).lower()}"
        f" deterministic={str(props.deterministic).lower()}"
    )
    record = {
        "command": "props",
        "model": args.model,
        "serial": props.serial,
        "independent": props.independent,
        "deterministic": props.deterministic,
    }
    _emit(args, record, [line])
    return 0


def cmd_gen(args) -> int:
    logic = LogicId.from_string(args.logic)
    cfg = RandomModelConfig(
        num_states=args.states,
        num_actions=args.actions,
        agents=args.agents,
        branching=args.branching,
    )
    model = random_model(cfg, logic, args.seed)
    save_model(model, args.out)
    line = (
        f"wrote {args.out}: {len(model.states)} states, {len(model.actions)} actions,"
        f" {model.agents} agents ({logic.name}-model, seed {args.seed})"
    )
    record = {
        "command": "gen",
        "logic": logic.name,
        "seed": args.seed,
        "out": args.out,
        "states": len(model.states),
        "actions": len(model.actions),
        "agents": model.agents,
    }
    _emit(args, record, [line])
    return 0


def _fuzz_iteration(logic, agents, depth, atoms, rng, models_per_valid):
    """One differential round; returns (stage, detail) on discrepancy else None."""
    formula = random_formula(rng, depth, agents, atoms)
    sat = is_satisfiable(formula, logic, agents)
    valid = is_valid(formula, logic, agents)
    if valid and not sat:
        return formula, "consistency", "declared valid but unsatisfiable", None
    if sat:
        pointed = synthesize(formula, logic, agents)
        if pointed is None:
            return formula, "synthesize", "declared satisfiable but no model produced", None
        report = validate_model(pointed.model, logic)
        if not report.passed:
            return formula, "validate", report.violation.describe(), pointed
        if not satisfies(pointed.model, pointed.state, formula):
            return formula, "mcheck", "synthesized model does not satisfy the formula", pointed
    if valid:
        for _ in range(models_per_valid):
            cfg = RandomModelConfig(
                num_states=rng.randint(1, 5),
                num_actions=rng.randint(1, 3),
                agents=agents,
                branching=2,
            )
            sample = random_model(cfg, logic, rng.randrange(2**30))
            if not valid_on_model(sample, formula):
                return formula, "soundness", "declared valid but fails on a random model", None
    return None


def cmd_fuzz(args) -> int:
    logic = LogicId.from_string(args.logic)
    atoms = ("p", "q")
    for iteration in range(args.iters):
        rng = random.Random(args.seed * 1_000_003 + iteration)
        outcome = _fuzz_iteration(logic, args.agents, args.depth, atoms, rng, 3)
        if outcome is not None:
            formula, stage, detail, pointed = outcome
            bundle = {
                "seed": args.seed,
                "iteration": iteration,
                "logic": logic.name,
                "agents": args.agents,
                "formula": render(formula),
                "stage": stage,
                "detail": detail,
            }
            if pointed is not None:
                model_path = args.bundle + ".model.json"
                save_model(pointed.model, model_path, pointed=pointed.state)
                bundle["model"] = model_path
            with open(args.bundle, "w", encoding="utf-8") as handle:
                json.dump(bundle, handle, indent=2)
            print(f"discrepancy at iteration {iteration} ({stage}); bundle: {args.bundle}")
            return 1
    record = {
        "command": "fuzz",
        "logic": logic.name,
        "iters": args.iters,
        "seed": args.seed,
        "result": "ok",
    }
    _emit(args, record, [f"ok: {args.iters} iterations, no discrepancy"])
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cglogic",
        description=(
            "Validity, satisfiability, model checking and countermodel synthesis "
            "for the eight coalition logics over general concurrent game models; "
            + SCALE_NOTE
            + "."
        ),
    )
    parser.add_argument("--json", action="store_true", help="emit one JSON record instead of text")
    sub = parser.add_subparsers(dest="command", required=True)

    logic_kw = dict(
        required=True,
        help="one of E, S, I, D, SI, SD, ID, SID (any letter order; MCL=E, CL=SID)",
    )

    p_check = sub.add_parser("check", help="decide validity of a formula")
    p_check.add_argument("--logic", **logic_kw)
    p_check.add_argument("--agents", type=int, required=True)
    p_check.add_argument("--trace", action="store_true", help="print per-clause reduction witnesses")
    p_check.add_argument("formula")
    p_check.set_defaults(func=cmd_check)

    p_sat = sub.add_parser("sat", help="decide satisfiability; optionally write a model")
    p_sat.add_argument("--logic", **logic_kw)
    p_sat.add_argument("--agents", type=int, required=True)
    p_sat.add_argument("--model", help="write a synthesized pointed model to this path")
    p_sat.add_argument("formula")
    p_sat.set_defaults(func=cmd_sat)

    p_mc = sub.add_parser("mc", help="model-check a formula at a state of a model file")
    p_mc.add_argument("model")
    p_mc.add_argument("state")
    p_mc.add_argument("formula")
    p_mc.set_defaults(func=cmd_mc)

    p_props = sub.add_parser("props", help="report the frame properties of a model file")
    p_props.add_argument("model")
    p_props.set_defaults(func=cmd_props)

    p_gen = sub.add_parser("gen", help="generate a seeded random model of a logic")
    p_gen.add_argument("--logic", **logic_kw)
    p_gen.add_argument("--states", type=int, default=4)
    p_gen.add_argument("--actions", type=int, default=2)
    p_gen.add_argument("--agents", type=int, default=2)
    p_gen.add_argument("--branching", type=int, default=2)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(func=cmd_gen)

    p_fuzz = sub.add_parser("fuzz", help="differential loop over random formulas")
    p_fuzz.add_argument("--logic", **logic_kw)
    p_fuzz.add_argument("--iters", type=int, default=100)
    p_fuzz.add_argument("--seed", type=int, default=0)
    p_fuzz.add_argument("--depth", type=int, default=2, help="modal depth cap for random formulas")
    p_fuzz.add_argument("--agents", type=int, default=2)
    p_fuzz.add_argument("--bundle", default="fuzz_failure.json", help="reproduction bundle path")
    p_fuzz.set_defaults(func=cmd_fuzz)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ClauseCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ParseError, ModelError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
