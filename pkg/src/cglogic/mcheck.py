"""Semantic evaluation on models: satisfaction, ensures/enables, validity."""

from __future__ import annotations

from .models import Model, JointAction, ModelError, outcome
from .syntax import And, Atom, Coal, Formula, Not, Top, max_agent


def _check_fit(m: Model, f: Formula) -> None:
    worst = max_agent(f)
    if worst >= m.agents:
        raise ValueError(f"formula mentions agent {worst}; model has {m.agents} agent(s)")


def sat_states(m: Model, f: Formula) -> frozenset[str]:
    """States at which the formula holds.

    Evaluation is recursive with per-subformula memoization; unlabeled atoms
    are false.  The modal clause groups the listed profiles at each state by
    their restriction to the coalition, so cost tracks the sparse table.
    """
    _check_fit(m, f)
    everything = frozenset(m.states)
    memo: dict[int, frozenset[str]] = {}

    def eval_at(node: Formula) -> frozenset[str]:
        cached = memo.get(id(node))
        if cached is not None:
            return cached
        match node:
            case Top():
                result = everything
            case Atom(name):
                result = frozenset(s for s in m.states if name in m.labels[s])
            case Not(child):
                result = everything - eval_at(child)
            case And(left, right):
                result = eval_at(left) & eval_at(right)
            case Coal(coalition, child):
                good = eval_at(child)
                members = sorted(coalition)
                holds = set()
                for state in m.states:
                    groups: dict[tuple[str, ...], set[str]] = {}
                    for profile, targets in m.entries(state).items():
                        key = tuple(profile[a] for a in members)
                        groups.setdefault(key, set()).update(targets)
                    if any(targets <= good for targets in groups.values()):
                        holds.add(state)
                result = frozenset(holds)
            case _:
                raise TypeError(f"not a formula: {node!r}")
        memo[id(node)] = result
        return result

    return eval_at(f)


def satisfies(m: Model, state: str, f: Formula) -> bool:
    if state not in m.labels:
        raise ModelError(f"unknown state {state!r}")
    return state in sat_states(m, f)


def ensures(m: Model, state: str, coalition, ja: JointAction, f: Formula) -> bool:
    """True iff every outcome of the joint action satisfies f (vacuous on empty)."""
    out = outcome(m, state, coalition, ja)
    if not out:
        return True
    return out <= sat_states(m, f)


def enables(m: Model, state: str, coalition, ja: JointAction, f: Formula) -> bool:
    """True iff some outcome of the joint action satisfies f."""
    out = outcome(m, state, coalition, ja)
    if not out:
        return False
    return bool(out & sat_states(m, f))


def valid_on_model(m: Model, f: Formula) -> bool:
    return sat_states(m, f) == frozenset(m.states)
