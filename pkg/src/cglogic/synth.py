"""Countermodel synthesis: blueprints from satisfiable standard conjunctions,
their realization by model gluing, and recursive end-to-end synthesis.

A blueprint names one base action per antecedent index and one per consequent
index of the source clause, and lists, for every full action profile over
those base actions, finitely many formulas the profile must enable.  Realizing
it glues a fresh root onto recursively synthesized submodels, one per listed
formula; the root's outcome table makes exactly the performable joint actions
available.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .decide import is_neat, reduction_witness, validity_oracle
from .logics import LogicId
from .mcheck import enables, ensures, satisfies
from .models import (
    JointAction,
    Model,
    PointedModel,
    available_actions,
    coalitions,
    profile_action,
    validate_model,
)
from .normalform import (
    DEFAULT_CLAUSE_CAP,
    Literal,
    StandardConjunction,
    basic_positive_indices,
    negate,
    to_standard_disjunctions,
)
from .syntax import Formula, Not, atoms_of, big_and, big_or, max_agent, modal_depth, render


class RealizationError(RuntimeError):
    """An internal invariant of the construction was breached; this is a bug."""


def neg_action(index: int) -> str:
    """Base action played to support antecedent index ``index``."""
    return f"n{index}"


def pos_action(index: int) -> str:
    """Base action counting toward consequent index ``index``."""
    return f"p{index}"


_POS_RE = re.compile(r"p(\d+)\Z")


def _positive_index(action: str) -> int | None:
    match = _POS_RE.fullmatch(action)
    return int(match.group(1)) if match else None


@dataclass(frozen=True)
class Blueprint:
    """Finite-support listing of formulas per full profile over the base actions."""

    agents: int
    base_actions: tuple[str, ...]
    listing: dict[tuple[str, ...], frozenset[Formula]]

    def __post_init__(self):
        table = {}
        for profile, formulas in self.listing.items():
            profile = tuple(profile)
            if len(profile) != self.agents:
                raise ValueError(f"profile {profile!r} must list one action per agent")
            formulas = frozenset(formulas)
            if formulas:
                table[profile] = formulas
        object.__setattr__(self, "base_actions", tuple(self.base_actions))
        object.__setattr__(self, "listing", table)


def support(negatives, coalition, ja: JointAction) -> frozenset[int]:
    """Antecedent indices whose coalition lies inside ``coalition`` and whose
    members all play that index's base action; empty-coalition indices always
    qualify."""
    found = set()
    for i, (a_i, _) in enumerate(negatives):
        if a_i <= coalition and all(ja[a] == neg_action(i) for a in a_i):
            found.add(i)
    return frozenset(found)


def impeach(ja: JointAction, n_positive: int) -> int:
    """Sum of the consequent indices played, modulo the consequent count."""
    if n_positive < 1:
        raise ValueError("need at least one consequent index")
    total = 0
    for action in ja.values():
        j = _positive_index(action)
        if j is not None:
            total += j
    return total % n_positive


def _dedupe(parts):
    seen = set()
    kept = []
    for part in parts:
        if part not in seen:
            seen.add(part)
            kept.append(part)
    return kept


def build_blueprint(sc: StandardConjunction, logic: LogicId) -> Blueprint:
    """Blueprint whose realization satisfies the standard conjunction.

    Requires that every reduction of the negated clause fails for the logic
    (otherwise some listed formula is unsatisfiable, detected downstream).
    A profile gets a nonempty listing exactly when its support is neat.
    """
    negatives = sc.negatives
    positives = sc.positives
    ag = frozenset(range(sc.agents))
    base = tuple(neg_action(i) for i in range(len(negatives))) + tuple(
        pos_action(j) for j in range(len(positives))
    )
    basics = sorted(basic_positive_indices(sc))
    listing: dict[tuple[str, ...], frozenset[Formula]] = {}
    for profile in itertools.product(base, repeat=sc.agents):
        ja = profile_action(profile)
        supp = support(negatives, ag, ja)
        if not is_neat(supp, negatives, logic):
            continue
        phis = [negatives[i][1] for i in sorted(supp)]
        cover = frozenset().union(*(negatives[i][0] for i in supp)) if supp else frozenset()
        if logic.has_D:
            target = impeach(ja, len(positives))
            if not cover <= positives[target][0]:
                target = 0
            parts = phis + [Not(positives[target][1])]
            parts += [Not(positives[k][1]) for k in basics if k != target]
            formulas = [big_and(_dedupe(parts))]
        else:
            formulas = [
                big_and(_dedupe(phis + [Not(psi_j)]))
                for b_j, psi_j in positives
                if cover <= b_j
            ]
        listing[profile] = frozenset(formulas)
    return Blueprint(sc.agents, base, listing)


def derived_listing(bp: Blueprint, coalition, ja: JointAction) -> frozenset[Formula]:
    """Union of the listings of all full profiles extending the joint action."""
    collected: set[Formula] = set()
    for profile, formulas in bp.listing.items():
        if all(profile[a] == ja[a] for a in coalition):
            collected.update(formulas)
    return frozenset(collected)


def performable(bp: Blueprint, coalition) -> set[JointAction]:
    """Joint actions of the coalition with nonempty derived listing."""
    return {
        JointAction((a, profile[a]) for a in coalition) for profile in bp.listing
    }


def check_regular(bp: Blueprint, logic: LogicId, sat) -> bool:
    """Regularity: listed formulas satisfiable (via the oracle), plus the
    blueprint-level analogues of the frame properties the logic assumes."""
    for formulas in bp.listing.values():
        for chi in formulas:
            if not sat(chi):
                return False
    coalition_list = list(coalitions(bp.agents))
    if logic.has_S:
        for c in coalition_list:
            if not performable(bp, c):
                return False
    if logic.has_I:
        pja = {c: performable(bp, c) for c in coalition_list}
        for c in coalition_list:
            for d in coalition_list:
                if c & d:
                    continue
                for ja_c in pja[c]:
                    for ja_d in pja[d]:
                        if ja_c.merge(ja_d) not in pja[c | d]:
                            return False
    if logic.has_D:
        for formulas in bp.listing.values():
            if len(formulas) != 1:
                return False
    return True


def _prefixed(prefix: str, model: Model) -> tuple[Model, dict[str, str]]:
    states = {s: prefix + s for s in model.states}
    actions = {a: prefix + a for a in model.actions}
    outcomes = {
        states[s]: {
            tuple(actions[a] for a in profile): frozenset(states[t] for t in targets)
            for profile, targets in entries.items()
        }
        for s, entries in model.outcomes.items()
    }
    labels = {states[s]: model.labels[s] for s in model.states}
    renamed = Model(
        model.agents,
        tuple(actions[a] for a in model.actions),
        tuple(states[s] for s in model.states),
        outcomes,
        labels,
        model.atoms,
    )
    return renamed, states


ROOT_STATE = "s0"


def realize(bp: Blueprint, gamma, provider, logic: LogicId) -> PointedModel:
    """Glue provider-supplied submodels under a fresh root state.

    ``gamma`` is a set of propositional literals without complementary pairs;
    the root is labeled with its positive atoms.  ``provider`` maps each
    listed formula to a pointed model of the right logic satisfying it.
    Submodel state and action namespaces are kept disjoint by prefixing them
    with the profile and the formula's position, so the base actions (which
    never contain ``#``) survive unchanged.  The realization conditions are
    verified on the glued model and any breach raises RealizationError.
    """
    gamma = frozenset(gamma)
    for literal in gamma:
        if not isinstance(literal, Literal):
            raise ValueError(f"gamma may hold only propositional literals, got {literal!r}")
        if literal.complement() in gamma:
            raise ValueError(f"gamma contains complementary pair on {literal.atom!r}")

    states = [ROOT_STATE]
    actions = list(bp.base_actions)
    atoms = {literal.atom for literal in gamma}
    outcomes: dict[str, dict[tuple[str, ...], frozenset[str]]] = {}
    labels: dict[str, frozenset[str]] = {
        ROOT_STATE: frozenset(l.atom for l in gamma if l.positive)
    }
    root_entries: dict[tuple[str, ...], frozenset[str]] = {}
    witness_roots: list[tuple[tuple[str, ...], Formula, str]] = []

    for profile in sorted(bp.listing):
        formulas = sorted(bp.listing[profile], key=render)
        roots = []
        for k, formula in enumerate(formulas):
            pointed = provider(formula)
            if pointed.model.agents != bp.agents:
                raise RealizationError("submodel has a different agent count")
            sub, names = _prefixed(f"{','.join(profile)}#{k}#", pointed.model)
            states.extend(sub.states)
            actions.extend(sub.actions)
            atoms.update(sub.atoms)
            outcomes.update(sub.outcomes)
            labels.update(sub.labels)
            root = names[pointed.state]
            roots.append(root)
            witness_roots.append((profile, formula, root))
        root_entries[profile] = frozenset(roots)
    outcomes[ROOT_STATE] = root_entries

    model = Model(
        bp.agents, tuple(actions), tuple(states), outcomes, labels, tuple(sorted(atoms))
    )
    _verify_realization(model, bp, gamma, witness_roots, logic)
    return PointedModel(model, ROOT_STATE)


def _verify_realization(model: Model, bp: Blueprint, gamma, witness_roots, logic: LogicId):
    for coalition in coalitions(bp.agents):
        if available_actions(model, ROOT_STATE, coalition) != performable(bp, coalition):
            raise RealizationError(
                f"availability at the root differs from the blueprint for coalition {sorted(coalition)}"
            )
    root_labels = model.labels[ROOT_STATE]
    for literal in gamma:
        if literal.positive != (literal.atom in root_labels):
            raise RealizationError(f"root does not satisfy literal {literal!r}")
    full = model.full_coalition()
    for profile, formula, root in witness_roots:
        if not satisfies(model, root, formula):
            raise RealizationError(f"glued submodel lost its formula {render(formula)!r}")
        if not enables(model, ROOT_STATE, full, profile_action(profile), formula):
            raise RealizationError(f"profile {profile!r} fails to enable {render(formula)!r}")
    for profile, formulas in bp.listing.items():
        listed = big_or(sorted(formulas, key=render))
        if not ensures(model, ROOT_STATE, full, profile_action(profile), listed):
            raise RealizationError(f"profile {profile!r} fails to ensure its listed disjunction")
    report = validate_model(model, logic)
    if not report.passed:
        raise RealizationError(f"glued model is not a {logic}-model: {report.violation.describe()}")


def _satisfying_labels(f: Formula) -> frozenset[str] | None:
    """Truth-table search for a satisfying valuation of a depth-0 formula."""
    from .decide import _eval_prop  # truth-table evaluator, shared with is_taut

    from .syntax import Atom

    names = sorted(atoms_of(f))
    for bits in itertools.product((False, True), repeat=len(names)):
        assignment = {Atom(name): value for name, value in zip(names, bits)}
        if _eval_prop(f, assignment):
            return frozenset(name for name, value in zip(names, bits) if value)
    return None


def _loop_model(true_atoms, atoms, agents: int) -> PointedModel:
    # Every profile maps the single state to itself, so all three frame
    # properties hold and the model fits every logic.
    model = Model(
        agents,
        ("a",),
        (ROOT_STATE,),
        {ROOT_STATE: {("a",) * agents: frozenset({ROOT_STATE})}},
        {ROOT_STATE: frozenset(true_atoms)},
        tuple(sorted(atoms)),
    )
    return PointedModel(model, ROOT_STATE)


def synthesize(
    f: Formula, logic: LogicId, agents: int, clause_cap: int = DEFAULT_CLAUSE_CAP
) -> PointedModel | None:
    """Pointed model of the logic satisfying f, or None when f is unsatisfiable.

    Depth-0 formulas become one-state loop models over a satisfying
    valuation.  Otherwise the negation is normalized; a clause with no
    reduction witness is negated into a standard conjunction, its blueprint
    is built, the listed formulas are synthesized recursively (all strictly
    shallower) and glued by :func:`realize`.
    """
    if agents < 1:
        raise ValueError("agents must be >= 1")
    worst = max_agent(f)
    if worst >= agents:
        raise ValueError(f"formula mentions agent {worst}; session has {agents} agent(s)")
    if modal_depth(f) == 0:
        valuation = _satisfying_labels(f)
        if valuation is None:
            return None
        return _loop_model(valuation, atoms_of(f), agents)

    rec = validity_oracle(logic, agents, clause_cap)
    chosen = None
    for clause in to_standard_disjunctions(Not(f), agents, clause_cap):
        if reduction_witness(clause, logic, rec) is None:
            chosen = clause
            break
    if chosen is None:
        return None

    sc = negate(chosen)
    bp = build_blueprint(sc, logic)
    cache: dict[Formula, PointedModel] = {}

    def provider(chi: Formula) -> PointedModel:
        if chi not in cache:
            pointed = synthesize(chi, logic, agents, clause_cap)
            if pointed is None:
                raise RealizationError(
                    f"listed formula unexpectedly unsatisfiable: {render(chi)}"
                )
            cache[chi] = pointed
        return cache[chi]

    pointed = realize(bp, sc.gammaC, provider, logic)
    if not satisfies(pointed.model, pointed.state, f):
        raise RealizationError(f"synthesized model does not satisfy {render(f)!r}")
    return pointed
