"""Shared test fixtures: small hand-built models, random-model pools, and the
exhaustive small-model enumeration used as a brute-force satisfiability oracle."""

from __future__ import annotations

import itertools
import random

from cglogic import (
    ALL_LOGICS,
    Model,
    RandomModelConfig,
    frame_properties,
    random_model,
    sat_states,
)


def loop_model(agents=1, actions=("a",), labels=("p",), atoms=("p", "q")):
    """One state, every profile loops back to it; an SID-model."""
    table = {
        "s0": {profile: frozenset({"s0"}) for profile in itertools.product(actions, repeat=agents)}
    }
    return Model(agents, tuple(actions), ("s0",), table, {"s0": frozenset(labels)}, tuple(atoms))


def empty_table_model(agents=1, actions=("a",), states=("s0",), atoms=("p",)):
    """No profile has any outcome anywhere."""
    return Model(agents, tuple(actions), tuple(states), {}, {}, tuple(atoms))


def two_agent_fork():
    """outcomes at s: (x,x) -> {t}, (x,y) -> {u}; t and u loop."""
    table = {
        "s": {("x", "x"): frozenset({"t"}), ("x", "y"): frozenset({"u"})},
        "t": {(a, b): frozenset({"t"}) for a in ("x", "y") for b in ("x", "y")},
        "u": {(a, b): frozenset({"u"}) for a in ("x", "y") for b in ("x", "y")},
    }
    labels = {"s": frozenset(), "t": frozenset({"p"}), "u": frozenset()}
    return Model(2, ("x", "y"), ("s", "t", "u"), table, labels, ("p",))


def branching_profile_model():
    """One available profile at s with the two-state outcome {t, u}; p only at t."""
    table = {
        "s": {("x", "x"): frozenset({"t", "u"})},
        "t": {(a, b): frozenset({"t"}) for a in ("x", "y") for b in ("x", "y")},
        "u": {(a, b): frozenset({"u"}) for a in ("x", "y") for b in ("x", "y")},
    }
    labels = {"s": frozenset(), "t": frozenset({"p"}), "u": frozenset()}
    return Model(2, ("x", "y"), ("s", "t", "u"), table, labels, ("p",))


def random_x_model(x, seed, max_states=6, max_actions=3, max_agents=3, agents=None, atoms=("p", "q")):
    """Seeded random model of the given logic with randomized desk-scale sizes;
    pass ``agents`` to pin the agent count instead of randomizing it."""
    rng = random.Random((seed + 1) * 7919)
    cfg = RandomModelConfig(
        num_states=rng.randint(1, max_states),
        num_actions=rng.randint(1, max_actions),
        agents=agents if agents is not None else rng.randint(1, max_agents),
        branching=2,
    )
    return random_model(cfg, x, seed, atoms=atoms)


def model_pool(x, count, seed_base=0, **kwargs):
    return [random_x_model(x, seed_base + i, **kwargs) for i in range(count)]


def equivalent_on(model, f, g) -> bool:
    return sat_states(model, f) == sat_states(model, g)


def props_allow(props, logic) -> bool:
    return (
        (not logic.has_S or props.serial)
        and (not logic.has_I or props.independent)
        and (not logic.has_D or props.deterministic)
    )


def enumerate_small_models(max_states=2, max_actions=2, atoms=("p", "q")):
    """Every 1-agent model with at most the given numbers of states and actions,
    paired with its frame properties.  Sizes stay exhaustive-search friendly:
    2 states x 2 actions gives 4096 outcome-table/labeling combinations."""
    pool = []
    atom_subsets = [frozenset(c) for size in range(len(atoms) + 1) for c in itertools.combinations(atoms, size)]
    for n_states in range(1, max_states + 1):
        states = tuple(f"s{i}" for i in range(n_states))
        target_subsets = [
            frozenset(c)
            for size in range(n_states + 1)
            for c in itertools.combinations(states, size)
        ]
        for n_actions in range(1, max_actions + 1):
            actions = tuple(f"a{i}" for i in range(n_actions))
            cells = [(s, (a,)) for s in states for a in actions]
            for assignment in itertools.product(target_subsets, repeat=len(cells)):
                outcomes: dict = {}
                for (state, profile), targets in zip(cells, assignment):
                    if targets:
                        outcomes.setdefault(state, {})[profile] = targets
                for labeling in itertools.product(atom_subsets, repeat=n_states):
                    model = Model(1, actions, states, outcomes, dict(zip(states, labeling)), atoms)
                    pool.append((model, frame_properties(model)))
    return pool


def brute_force_satisfiable(pool, f, logic) -> bool:
    """True iff some enumerated model of the logic satisfies f at some state."""
    return any(
        props_allow(props, logic) and sat_states(model, f)
        for model, props in pool
    )


ALL = ALL_LOGICS
