"""Normal form: every formula of modal depth >= 1 becomes a conjunction of
standard disjunctions  gamma v (/\\ <A_i>phi_i -> \\/ <B_j>psi_j).

Maximal modal subformulas are treated as opaque atoms; the propositional
skeleton goes to CNF by distribution, which preserves equivalence (fresh-
variable encodings would only preserve equisatisfiability).  Each CNF clause
is then split into the propositional part (gamma), the negated modal atoms
(the antecedent family) and the positive modal atoms (the consequent
family); <AG>falsity is pinned at consequent index 0 and <{}>truth joins a
nonempty antecedent family, both equivalence-preserving on all models.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    BOT,
    TOP,
    And,
    Atom,
    Coal,
    Formula,
    Implies,
    Not,
    Top,
    big_and,
    big_or,
    modal_depth,
    render,
)

DEFAULT_CLAUSE_CAP = 100_000


class ClauseCapError(RuntimeError):
    """Distribution would exceed the configured clause-count cap."""


@dataclass(frozen=True)
class Literal:
    atom: str
    positive: bool = True

    def complement(self) -> "Literal":
        return Literal(self.atom, not self.positive)

    def to_formula(self) -> Formula:
        node = Atom(self.atom)
        return node if self.positive else Not(node)


_EMPTY_TOP: tuple[frozenset[int], Formula] = (frozenset(), TOP)


def _check_families(agents, gamma, negatives, positives, negated: bool):
    ag = frozenset(range(agents))
    if not positives or positives[0] != (ag, BOT):
        shape = "~<AG>false" if negated else "<AG>false"
        raise ValueError(f"positive index 0 must be {shape}")
    if negatives and _EMPTY_TOP not in negatives:
        raise ValueError("a nonempty antecedent family must contain <>true")
    for coalition, _ in tuple(negatives) + tuple(positives):
        if not coalition <= ag:
            raise ValueError(f"coalition {sorted(coalition)} out of range for {agents} agent(s)")
    for literal in gamma:
        if not isinstance(literal, Literal):
            raise ValueError(f"gamma may hold only propositional literals, got {literal!r}")


def _freeze_families(obj, gamma_field: str):
    object.__setattr__(obj, gamma_field, frozenset(getattr(obj, gamma_field)))
    object.__setattr__(
        obj, "negatives", tuple((frozenset(c), f) for c, f in obj.negatives)
    )
    object.__setattr__(
        obj, "positives", tuple((frozenset(c), f) for c, f in obj.positives)
    )


@dataclass(frozen=True)
class StandardDisjunction:
    """gamma v (/\\_i <A_i>phi_i -> \\/_j <B_j>psi_j) with pinned index 0."""

    agents: int
    gamma: frozenset[Literal]
    negatives: tuple[tuple[frozenset[int], Formula], ...]
    positives: tuple[tuple[frozenset[int], Formula], ...]

    def __post_init__(self):
        _freeze_families(self, "gamma")
        _check_families(self.agents, self.gamma, self.negatives, self.positives, negated=False)


@dataclass(frozen=True)
class StandardConjunction:
    """gamma ^ /\\_i <A_i>phi_i ^ /\\_j ~<B_j>psi_j with pinned index 0."""

    agents: int
    gammaC: frozenset[Literal]
    negatives: tuple[tuple[frozenset[int], Formula], ...]
    positives: tuple[tuple[frozenset[int], Formula], ...]

    def __post_init__(self):
        _freeze_families(self, "gammaC")
        _check_families(self.agents, self.gammaC, self.negatives, self.positives, negated=True)


# Skeleton literals: ("top", polarity) | ("atom", name, polarity) | ("modal", Coal, polarity)


def _nnf(f: Formula, positive: bool):
    match f:
        case Top():
            return ("lit", ("top", positive))
        case Atom(name):
            return ("lit", ("atom", name, positive))
        case Coal():
            return ("lit", ("modal", f, positive))
        case Not(child):
            return _nnf(child, not positive)
        case And(left, right):
            kind = "and" if positive else "or"
            return (kind, _nnf(left, positive), _nnf(right, positive))
    raise TypeError(f"not a formula: {f!r}")


def _lit_key(lit):
    if lit[0] == "atom":
        return (0, lit[1], not lit[2])
    if lit[0] == "modal":
        return (1, render(lit[1]), not lit[2])
    return (2, "", not lit[1])


def _dedupe(items):
    seen = set()
    kept = []
    for item in items:
        if item not in seen:
            seen.add(item)
            kept.append(item)
    return kept


def _cnf(node, cap: int) -> list[frozenset]:
    if node[0] == "lit":
        return [frozenset([node[1]])]
    left = _cnf(node[1], cap)
    right = _cnf(node[2], cap)
    if node[0] == "and":
        clauses = left + right
    else:
        if len(left) * len(right) > cap:
            raise ClauseCapError(
                f"CNF distribution needs {len(left) * len(right)} clauses (cap {cap})"
            )
        clauses = [c | d for c in left for d in right]
    clauses = _dedupe(clauses)
    if len(clauses) > cap:
        raise ClauseCapError(f"CNF has {len(clauses)} clauses (cap {cap})")
    return clauses


def _clause_to_sd(clause, agents: int) -> StandardDisjunction:
    ag = frozenset(range(agents))
    gamma = set()
    neg_family: list[tuple[frozenset[int], Formula]] = []
    pos_family: list[tuple[frozenset[int], Formula]] = []
    saw_top = False
    for lit in sorted(clause, key=_lit_key):
        if lit[0] == "top":
            # A falsity literal drops out of the disjunction; a truth literal
            # is re-expressed as <>true on both sides, which keeps the clause
            # a tautology without losing its other (depth-carrying) members.
            saw_top = saw_top or lit[1]
        elif lit[0] == "atom":
            gamma.add(Literal(lit[1], lit[2]))
        else:
            part = (lit[1].coalition, lit[1].child)
            (pos_family if lit[2] else neg_family).append(part)
    if saw_top:
        neg_family.insert(0, _EMPTY_TOP)
        pos_family.insert(0, _EMPTY_TOP)
    positives = [(ag, BOT)] + [p for p in _dedupe(pos_family) if p != (ag, BOT)]
    negatives = []
    if neg_family:
        negatives = [_EMPTY_TOP] + [n for n in _dedupe(neg_family) if n != _EMPTY_TOP]
    return StandardDisjunction(agents, frozenset(gamma), tuple(negatives), tuple(positives))


def to_standard_disjunctions(
    f: Formula, agents: int, clause_cap: int = DEFAULT_CLAUSE_CAP
) -> list[StandardDisjunction]:
    """Equivalent list of standard disjunctions (their conjunction matches f).

    Requires modal depth >= 1; depth-0 formulas are purely propositional and
    are decided directly by the caller.  Clauses whose gamma contains
    complementary literals are kept.
    """
    if modal_depth(f) < 1:
        raise ValueError("normal form needs modal depth >= 1; decide depth-0 input propositionally")
    clauses = _cnf(_nnf(f, True), clause_cap)
    return [_clause_to_sd(clause, agents) for clause in clauses]


def negate(sd: StandardDisjunction) -> StandardConjunction:
    """Standard conjunction equivalent to the negation of the clause."""
    return StandardConjunction(
        sd.agents,
        frozenset(lit.complement() for lit in sd.gamma),
        sd.negatives,
        sd.positives,
    )


def _gamma_formula(literals, empty: Formula, combine) -> Formula:
    ordered = sorted(literals, key=lambda lit: (lit.atom, not lit.positive))
    if not ordered:
        return empty
    return combine(lit.to_formula() for lit in ordered)


def sd_to_formula(sd: StandardDisjunction) -> Formula:
    """Literal reading gamma v (/\\ <A_i>phi_i -> \\/ <B_j>psi_j).

    Empty gamma reads as falsity and an empty antecedent family as a truth
    antecedent.
    """
    gamma = _gamma_formula(sd.gamma, BOT, big_or)
    antecedent = big_and(Coal(c, f) for c, f in sd.negatives)
    consequent = big_or(Coal(c, f) for c, f in sd.positives)
    return big_or([gamma, Implies(antecedent, consequent)])


def sc_to_formula(sc: StandardConjunction) -> Formula:
    """Literal reading gamma ^ /\\ <A_i>phi_i ^ /\\ ~<B_j>psi_j (empty gamma is truth)."""
    gamma = _gamma_formula(sc.gammaC, TOP, big_and)
    parts = [gamma]
    parts.extend(Coal(c, f) for c, f in sc.negatives)
    parts.extend(Not(Coal(c, f)) for c, f in sc.positives)
    return big_and(parts)


def basic_positive_indices(clause) -> frozenset[int]:
    """Indices j with B_j the grand coalition; index 0 is always included."""
    ag = frozenset(range(clause.agents))
    return frozenset(j for j, (coalition, _) in enumerate(clause.positives) if coalition == ag)
