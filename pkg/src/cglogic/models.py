"""Explicit finite general concurrent game models.

A model stores the grand-coalition outcome table sparsely: profiles without a
listed entry have empty outcome.  Coalition outcomes and availability are
derived by the union-over-extensions rule, so they can be computed by
grouping the listed entries instead of enumerating all action profiles.
"""

from __future__ import annotations

import itertools
import json
from collections.abc import Mapping
from dataclasses import dataclass
from pathlib import Path


class ModelError(ValueError):
    """Malformed model data: dangling references, duplicates, bad shapes."""


class JointAction(Mapping):
    """Immutable assignment of one action to each agent of a coalition."""

    __slots__ = ("_pairs",)

    def __init__(self, assignment=()):
        self._pairs = tuple(sorted(dict(assignment).items()))

    def __getitem__(self, agent):
        for known, action in self._pairs:
            if known == agent:
                return action
        raise KeyError(agent)

    def __iter__(self):
        return iter(agent for agent, _ in self._pairs)

    def __len__(self):
        return len(self._pairs)

    def __hash__(self):
        return hash(self._pairs)

    def __eq__(self, other):
        if isinstance(other, JointAction):
            return self._pairs == other._pairs
        if isinstance(other, Mapping):
            return dict(self._pairs) == dict(other)
        return NotImplemented

    def __repr__(self):
        return f"JointAction({dict(self._pairs)!r})"

    @property
    def coalition(self) -> frozenset[int]:
        return frozenset(agent for agent, _ in self._pairs)

    def restrict(self, coalition) -> "JointAction":
        return JointAction((a, v) for a, v in self._pairs if a in coalition)

    def merge(self, other: "JointAction") -> "JointAction":
        """Union of two joint actions; overlapping agents must agree."""
        combined = dict(self._pairs)
        for agent, action in other.items():
            if combined.get(agent, action) != action:
                raise ValueError(f"conflicting actions for agent {agent}")
            combined[agent] = action
        return JointAction(combined)

    def extends(self, other: "JointAction") -> bool:
        return all(self.get(agent) == action for agent, action in other.items())


def profile_action(profile) -> JointAction:
    """Full-coalition joint action from a profile tuple (agent order)."""
    return JointAction(enumerate(profile))


def action_profile(ja: JointAction, agents: int) -> tuple[str, ...]:
    """Profile tuple from a full-coalition joint action."""
    try:
        return tuple(ja[i] for i in range(agents))
    except KeyError as missing:
        raise ValueError(f"joint action does not cover agent {missing}") from None


@dataclass(frozen=True)
class FrameProperties:
    serial: bool
    independent: bool
    deterministic: bool


@dataclass(frozen=True)
class Violation:
    """Witness for a failed frame property."""

    prop: str
    state: str
    coalitions: tuple[frozenset[int], ...]
    joint_actions: tuple[JointAction, ...]

    def describe(self) -> str:
        coals = ", ".join("{" + ",".join(map(str, sorted(c))) + "}" for c in self.coalitions)
        actions = ", ".join(repr(dict(a)) for a in self.joint_actions)
        text = f"{self.prop} fails at state {self.state!r} (coalitions {coals}"
        if actions:
            text += f"; joint actions {actions}"
        return text + ")"


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    violation: Violation | None = None


@dataclass(frozen=True)
class Model:
    """Finite general concurrent game model.

    ``outcomes`` maps state -> profile tuple -> outcome set; entries with an
    empty outcome set are dropped on construction, so "listed" and
    "available with nonempty outcome" coincide.
    """

    agents: int
    actions: tuple[str, ...]
    states: tuple[str, ...]
    outcomes: dict[str, dict[tuple[str, ...], frozenset[str]]]
    labels: dict[str, frozenset[str]]
    atoms: tuple[str, ...] = ()

    def __post_init__(self):
        if self.agents < 1:
            raise ModelError("a model needs at least one agent")
        states = tuple(self.states)
        actions = tuple(self.actions)
        if not states:
            raise ModelError("a model needs at least one state")
        if not actions:
            raise ModelError("a model needs at least one action")
        if len(set(states)) != len(states):
            raise ModelError("duplicate state names")
        if len(set(actions)) != len(actions):
            raise ModelError("duplicate action names")
        state_set = set(states)
        action_set = set(actions)

        table: dict[str, dict[tuple[str, ...], frozenset[str]]] = {}
        for state in self.outcomes:
            if state not in state_set:
                raise ModelError(f"outcome entry for unknown state {state!r}")
        for state in states:
            entries = {}
            for profile, targets in sorted(self.outcomes.get(state, {}).items()):
                profile = tuple(profile)
                if len(profile) != self.agents:
                    raise ModelError(
                        f"profile {profile!r} at state {state!r} must list one action per agent"
                    )
                for action in profile:
                    if action not in action_set:
                        raise ModelError(f"unknown action {action!r} at state {state!r}")
                targets = frozenset(targets)
                for target in targets:
                    if target not in state_set:
                        raise ModelError(f"unknown outcome state {target!r} at state {state!r}")
                if targets:
                    entries[profile] = targets
            if entries:
                table[state] = entries

        labels: dict[str, frozenset[str]] = {}
        atom_pool = set(self.atoms)
        for state in self.labels:
            if state not in state_set:
                raise ModelError(f"labels for unknown state {state!r}")
        for state in states:
            marked = frozenset(self.labels.get(state, ()))
            atom_pool.update(marked)
            labels[state] = marked

        object.__setattr__(self, "states", states)
        object.__setattr__(self, "actions", actions)
        object.__setattr__(self, "outcomes", table)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "atoms", tuple(sorted(atom_pool)))

    def entries(self, state: str) -> dict[tuple[str, ...], frozenset[str]]:
        """Listed (nonempty-outcome) profiles at a state."""
        if state not in self.labels:
            raise ModelError(f"unknown state {state!r}")
        return self.outcomes.get(state, {})

    def full_coalition(self) -> frozenset[int]:
        return frozenset(range(self.agents))


@dataclass(frozen=True)
class PointedModel:
    model: Model
    state: str

    def __post_init__(self):
        if self.state not in self.model.labels:
            raise ModelError(f"pointed state {self.state!r} not in model")


def _check_coalition(m: Model, coalition) -> frozenset[int]:
    coalition = frozenset(coalition)
    if not all(0 <= a < m.agents for a in coalition):
        raise ModelError(f"coalition {sorted(coalition)} out of range for {m.agents} agent(s)")
    return coalition


def outcome(m: Model, state: str, coalition, ja: JointAction) -> frozenset[str]:
    """Union of grand-coalition outcomes over all full profiles extending ja."""
    coalition = _check_coalition(m, coalition)
    if frozenset(ja.keys()) != coalition:
        raise ValueError("joint action domain must equal the coalition")
    for action in ja.values():
        if action not in m.actions:
            raise ModelError(f"unknown action {action!r}")
    entries = m.entries(state)
    if len(coalition) == m.agents:
        return entries.get(action_profile(ja, m.agents), frozenset())
    result: set[str] = set()
    for profile, targets in entries.items():
        if all(profile[a] == ja[a] for a in coalition):
            result.update(targets)
    return frozenset(result)


def available_actions(m: Model, state: str, coalition) -> set[JointAction]:
    """Joint actions of the coalition with nonempty derived outcome."""
    coalition = _check_coalition(m, coalition)
    found: set[JointAction] = set()
    for profile in m.entries(state):
        found.add(JointAction((a, profile[a]) for a in coalition))
    return found


def coalitions(agents: int):
    """All coalitions over 0..agents-1, smallest first, deterministic order."""
    for size in range(agents + 1):
        for combo in itertools.combinations(range(agents), size):
            yield frozenset(combo)


def _sorted_actions(actions) -> list[JointAction]:
    return sorted(actions, key=lambda ja: tuple(ja.items()))


def _serial_violation(m: Model) -> Violation | None:
    for state in m.states:
        for coalition in coalitions(m.agents):
            if not available_actions(m, state, coalition):
                return Violation("serial", state, (coalition,), ())
    return None


def _independent_violation(m: Model) -> Violation | None:
    coalition_list = list(coalitions(m.agents))
    for state in m.states:
        avail = {c: available_actions(m, state, c) for c in coalition_list}
        for c in coalition_list:
            for d in coalition_list:
                if c & d:
                    continue
                merged_avail = avail[c | d]
                for ja_c in _sorted_actions(avail[c]):
                    for ja_d in _sorted_actions(avail[d]):
                        if ja_c.merge(ja_d) not in merged_avail:
                            return Violation("independent", state, (c, d), (ja_c, ja_d))
    return None


def _deterministic_violation(m: Model) -> Violation | None:
    full = m.full_coalition()
    for state in m.states:
        for profile, targets in m.entries(state).items():
            if len(targets) > 1:
                return Violation("deterministic", state, (full,), (profile_action(profile),))
    return None


_CHECKS = (
    ("serial", "has_S", _serial_violation),
    ("independent", "has_I", _independent_violation),
    ("deterministic", "has_D", _deterministic_violation),
)


def frame_properties(m: Model) -> FrameProperties:
    return FrameProperties(
        serial=_serial_violation(m) is None,
        independent=_independent_violation(m) is None,
        deterministic=_deterministic_violation(m) is None,
    )


def validate_model(m: Model, logic) -> ValidationReport:
    """Check the frame properties named by the logic; report the first failure."""
    for _, flag, finder in _CHECKS:
        if getattr(logic, flag):
            violation = finder(m)
            if violation is not None:
                return ValidationReport(False, violation)
    return ValidationReport(True)


def _model_to_doc(m: Model, pointed: str | None) -> dict:
    doc = {
        "agents": m.agents,
        "actions": list(m.actions),
        "states": list(m.states),
        "atoms": list(m.atoms),
        "labels": {state: sorted(m.labels[state]) for state in m.states},
        "outcomes": [
            {"state": state, "profile": list(profile), "to": sorted(targets)}
            for state in m.states
            for profile, targets in sorted(m.entries(state).items())
        ],
    }
    if pointed is not None:
        if pointed not in m.labels:
            raise ModelError(f"pointed state {pointed!r} not in model")
        doc["pointed"] = pointed
    return doc


def _model_from_doc(doc: dict) -> tuple[Model, str | None]:
    if not isinstance(doc, dict):
        raise ModelError("model file must contain a JSON object")
    for key in ("agents", "actions", "states"):
        if key not in doc:
            raise ModelError(f"model file is missing {key!r}")
    agents = doc["agents"]
    if not isinstance(agents, int) or agents < 1:
        raise ModelError("agents must be a positive integer")
    states = [str(s) for s in doc["states"]]
    actions = [str(a) for a in doc["actions"]]
    atoms = [str(a) for a in doc.get("atoms", [])]
    labels = {str(s): frozenset(map(str, marked)) for s, marked in doc.get("labels", {}).items()}
    for state, marked in labels.items():
        unknown = marked - set(atoms)
        if atoms and unknown:
            raise ModelError(f"label {sorted(unknown)} at state {state!r} not among declared atoms")
    table: dict[str, dict[tuple[str, ...], frozenset[str]]] = {}
    seen: set[tuple[str, tuple[str, ...]]] = set()
    for entry in doc.get("outcomes", []):
        try:
            state = str(entry["state"])
            profile = tuple(str(a) for a in entry["profile"])
            targets = frozenset(str(t) for t in entry["to"])
        except (KeyError, TypeError) as exc:
            raise ModelError(f"bad outcome entry {entry!r}") from exc
        key = (state, profile)
        if key in seen:
            raise ModelError(f"duplicate outcome key ({state!r}, {list(profile)})")
        seen.add(key)
        table.setdefault(state, {})[profile] = targets
    model = Model(agents, tuple(actions), tuple(states), table, labels, tuple(atoms))
    pointed = doc.get("pointed")
    if pointed is not None:
        pointed = str(pointed)
        if pointed not in model.labels:
            raise ModelError(f"pointed state {pointed!r} not in model")
    return model, pointed


def save_model(m: Model, path, pointed: str | None = None) -> None:
    doc = _model_to_doc(m, pointed)
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def load_model(path) -> Model:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ModelError(f"not valid JSON: {exc}") from exc
    model, _ = _model_from_doc(doc)
    return model


def load_pointed_model(path) -> PointedModel:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ModelError(f"not valid JSON: {exc}") from exc
    model, pointed = _model_from_doc(doc)
    if pointed is None:
        raise ModelError("model file has no 'pointed' state")
    return PointedModel(model, pointed)


@dataclass(frozen=True)
class RandomModelConfig:
    num_states: int = 4
    num_actions: int = 2
    agents: int = 2
    branching: int = 2


def random_model(cfg: RandomModelConfig, logic, seed, atoms=("p", "q", "r")) -> Model:
    """Seeded random model guaranteed to satisfy the logic's frame properties.

    Availability is generated agent-wise when independence is required (a
    profile is enabled iff each agent's action is individually enabled),
    which yields independent frames by construction; seriality keeps every
    per-agent enabled set nonempty, and determinism truncates outcome sets
    to singletons.
    """
    import random as _random

    if min(cfg.num_states, cfg.num_actions, cfg.agents, cfg.branching) < 1:
        raise ValueError("all RandomModelConfig bounds must be >= 1")
    rng = _random.Random(seed)
    states = [f"s{i}" for i in range(cfg.num_states)]
    actions = [f"a{i}" for i in range(cfg.num_actions)]
    outcomes: dict[str, dict[tuple[str, ...], frozenset[str]]] = {}
    labels: dict[str, frozenset[str]] = {}
    for state in states:
        if logic.has_I:
            lowest = 1 if logic.has_S else 0
            enabled = [
                rng.sample(actions, rng.randint(lowest, len(actions)))
                for _ in range(cfg.agents)
            ]
            chosen = list(itertools.product(*enabled))
        else:
            pool = list(itertools.product(actions, repeat=cfg.agents))
            count = rng.randint(1 if logic.has_S else 0, len(pool))
            chosen = rng.sample(pool, count)
        entries = {}
        for profile in chosen:
            width = 1 if logic.has_D else rng.randint(1, cfg.branching)
            entries[profile] = frozenset(rng.sample(states, min(width, len(states))))
        if entries:
            outcomes[state] = entries
        labels[state] = frozenset(a for a in atoms if rng.random() < 0.5)
    return Model(cfg.agents, tuple(actions), tuple(states), outcomes, labels, tuple(atoms))
