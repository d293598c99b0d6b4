"""Preference-based rule updates: Zhang's reducts with the PRZ pipeline, and
Delgrande's prioritised transforms with a pluggable preferred-model strategy.

Orders are sets of id pairs ``(a, b)`` read as ``a ≺ b``: the rule ``b`` is
more preferred than ``a``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable

from . import applicability
from ._search import maximal_subsets, minimal_subsets
from .classical import mt_justified_update
from .errors import ApplicabilityError, NoStrategyConfigured, PriorityCycle
from .models import Universe, compile_rules, is_coherent, is_stable_mask, stable_models
from .syntax import Dlp, Literal, Program, Rule, RuleOccurrence

Id = tuple[int, int]


def transitive_closure(pairs: Iterable[tuple[Id, Id]]) -> frozenset[tuple[Id, Id]]:
    closure = set(pairs)
    while True:
        extra = {(a, d) for a, b in closure for c, d in closure if b == c} - closure
        if not extra:
            return frozenset(closure)
        closure |= extra


@dataclass(frozen=True)
class PrioritizedProgram:
    """A program with a strict partial order over its occurrence ids."""

    program: Program
    order: frozenset[tuple[Id, Id]] = frozenset()

    def __post_init__(self) -> None:
        order = frozenset(self.order)
        object.__setattr__(self, "order", order)
        ids = self.program.ids()
        for a, b in order:
            if a == b:
                raise PriorityCycle(f"order is not irreflexive at {a}")
            if a not in ids or b not in ids:
                raise ValueError(f"order mentions an id outside the program: {(a, b)}")
        if transitive_closure(order) != order:
            raise ValueError("order is not transitive")

    @classmethod
    def closed(cls, program: Program, pairs: Iterable[tuple[Id, Id]]) -> "PrioritizedProgram":
        """Build from arbitrary pairs by transitive closure; cycles are errors."""
        closure = transitive_closure(pairs)
        loops = sorted(a for a, b in closure if a == b)
        if loops:
            raise PriorityCycle(f"merged priorities contain a cycle through {loops[0]}")
        return cls(program, closure)

    def less(self, a: Id, b: Id) -> bool:
        return (a, b) in self.order


# --- Zhang's reducts ----------------------------------------------------------

def defeated(pi: Rule, q: Program | Iterable[Rule], universe=None) -> bool:
    """Some stable model of ``Q`` contains a literal of ``B⁻(π)``."""
    neg = pi.body_neg
    if not neg:
        return False
    return any(m & neg for m in stable_models(q, universe))


class _ReductSearch:
    """Search over elimination sequences ``P_{i+1} = P_i ∖ R_i``.

    A candidate ``R`` is removable from the current rule set ``S`` when

    (a) some rule ``π' ∈ S ∖ R`` is preferred to every member of ``R`` and
        defeats each of them in ``S ∖ R``: the head of ``π'`` lies in ``B⁻``
        of the member and in a stable model of ``S ∖ R``;
    (b) no nonempty ``R' ⊆ S`` consisting of rules less preferred than one
        member of ``R`` is defeated (in the plain sense) by ``S ∖ R'``.

    Each step removes a ⊆-minimal removable set; a state with nothing
    removable is a reduct.
    """

    def __init__(self, pp: PrioritizedProgram, universe: Universe):
        self.pp = pp
        self.u = universe
        self.rules = {o.id: o.rule for o in pp.program.rules}
        self.crules = {rid: compile_rules([r], universe)[0] for rid, r in self.rules.items()}
        self.lower = {rid: {a for a, b in pp.order if b == rid} for rid in self.rules}
        self.higher = {rid: {b for a, b in pp.order if a == rid} for rid in self.rules}
        self._sm: dict[frozenset[Id], list[int]] = {}

    def stable(self, ids: frozenset[Id]) -> list[int]:
        got = self._sm.get(ids)
        if got is None:
            crules = [self.crules[i] for i in ids]
            got = [j for j in self.u.interpretations() if is_stable_mask(crules, j)]
            self._sm[ids] = got
        return got

    def neg_mask(self, rid: Id) -> int:
        return self.crules[rid][3]

    def plain_defeated(self, rid: Id, remainder: frozenset[Id]) -> bool:
        neg = self.neg_mask(rid)
        return bool(neg) and any(m & neg for m in self.stable(remainder))

    def defeated_by(self, rid: Id, winner: Id, remainder: frozenset[Id]) -> bool:
        kind, hbit, _, _ = self.crules[winner]
        if kind != 1 or not hbit & self.neg_mask(rid):
            return False
        return any(m & hbit for m in self.stable(remainder))

    def removable(self, state: frozenset[Id], r: tuple[Id, ...]) -> bool:
        rs = frozenset(r)
        remainder = state - rs
        common = set.intersection(*(self.higher[x] for x in r)) & remainder
        if not any(all(self.defeated_by(x, w, remainder) for x in r) for w in common):
            return False
        for x in r:
            below = sorted(self.lower[x] & state)
            below = [y for y in below if self.neg_mask(y)]
            for size in range(1, len(below) + 1):
                for rp in itertools.combinations(below, size):
                    rem2 = state - frozenset(rp)
                    if all(self.plain_defeated(y, rem2) for y in rp):
                        return False
        return True

    def reducts(self) -> set[frozenset[Id]]:
        out: set[frozenset[Id]] = set()
        seen: set[frozenset[Id]] = set()
        stack = [frozenset(self.rules)]
        while stack:
            state = stack.pop()
            if state in seen:
                continue
            seen.add(state)
            # only rules with a preferred rule and a negative body can go
            movable = sorted(x for x in state if self.higher[x] & state and self.neg_mask(x))
            steps = minimal_subsets(movable, lambda r: self.removable(state, r))
            if not steps:
                out.add(state)
            for r in steps:
                stack.append(state - frozenset(r))
        return out


def zhang_reducts(pp: PrioritizedProgram, universe=None) -> list[Program]:
    """All reducts of a prioritised program, sorted by their rendering."""
    u = Universe.of(pp.program) if universe is None else Universe.of(pp.program, universe)
    if not pp.order:
        return [pp.program]
    found = _ReductSearch(pp, u).reducts()
    programs = [pp.program.select(ids) for ids in found]
    return sorted(programs, key=lambda p: sorted(o.id for o in p.rules))


def prz_models(dlp: Dlp) -> set[frozenset]:
    """PRZ-models of a two-layer DLP ``⟨P, U⟩``.

    A single-layer DLP is accepted and has the stable models of its program,
    so that immunity to empty updates can be stated.
    """
    if len(dlp) == 1 and applicability.violation("rvd", dlp) is None:
        return stable_models(dlp[0], Universe.of(dlp))
    applicability.require("prz", dlp)
    p, upd = dlp.layers
    u = Universe.of(dlp)
    out: set[frozenset] = set()
    for jp in stable_models(p, u):
        for jpu in mt_justified_update(jp, upd, u):
            facts = [Rule.make(Literal(l)) for l in jpu]

            def coherent_with_facts(sub: tuple[RuleOccurrence, ...]) -> bool:
                return is_coherent([o.rule for o in sub] + facts, u)

            for keep in maximal_subsets(p.rules, coherent_with_facts):
                kept = Program(keep, p.alphabet)
                order = {(a.id, b.id) for a in keep for b in upd.rules}
                pp = PrioritizedProgram(kept.union(upd), frozenset(order))
                for red in zhang_reducts(pp, u):
                    out |= stable_models(red, u)
    return out


# --- Delgrande's transforms -----------------------------------------------------

def defeasible(rule: Rule) -> Rule:
    """``l <- B, ~complement(l)`` for objective heads; other rules unchanged."""
    h = rule.head_literal
    if h is None or h.naf:
        return rule
    return Rule(rule.head, rule.body | {Literal(h.obj.complement, True)})


def _defeasible_program(p: Program, ids: Iterable[Id] | None = None) -> Program:
    chosen = None if ids is None else set(ids)
    occs = tuple(RuleOccurrence(defeasible(o.rule), o.id) if chosen is None or o.id in chosen else o
                 for o in p.rules)
    return Program(occs, p.alphabet)


def conflict_pairs(p: Program, u: Program) -> set[tuple[Id, Id]]:
    """``C(P, U)``: pairs of rules with complementary objective heads."""
    out = set()
    for a in p.rules:
        ha = a.rule.head_literal
        if ha is None or ha.naf:
            continue
        for b in u.rules:
            hb = b.rule.head_literal
            if hb is not None and not hb.naf and hb.obj == ha.obj.complement:
                out.add((a.id, b.id))
    return out


def conflict_rules(p: Program, u: Program) -> set[Id]:
    """``c(P, U)``: the rules taking part in some conflicting pair."""
    return {x for pair in conflict_pairs(p, u) for x in pair}


def _check_heads(*programs: Program) -> None:
    for prog in programs:
        if prog.has_default_heads():
            raise ApplicabilityError("Delgrande transforms need programs without default negation in heads")


def delgrande_transform(i: int, p: Program | PrioritizedProgram, u: Program) -> PrioritizedProgram:
    """``*_i(P, U)`` for ``i ∈ {0, 1, 2}``.

    When ``p`` is already prioritised (an earlier step of an iteration) its
    order is merged with the new one by transitive closure.
    """
    base, inherited = (p.program, p.order) if isinstance(p, PrioritizedProgram) else (p, frozenset())
    _check_heads(base, u)
    if i == 0:
        pd, ud = _defeasible_program(base), _defeasible_program(u)
        program = pd.union(ud)
        order = {(a.id, b.id) for a in pd.rules for b in ud.rules}
    elif i == 1:
        pd, ud = _defeasible_program(base), _defeasible_program(u)
        program = pd.union(ud)
        order = conflict_pairs(pd, ud)
    elif i == 2:
        both = base.union(u)
        c = conflict_rules(base, u)
        program = _defeasible_program(both, c)
        order = conflict_pairs(_defeasible_program(base), _defeasible_program(u))
    else:
        raise ValueError("transform index must be 0, 1 or 2")
    return PrioritizedProgram.closed(program, set(inherited) | order)


def delgrande_iterated(i: int, dlp: Dlp) -> PrioritizedProgram:
    """Left fold of ``*_i`` over the layers of ``dlp``."""
    if len(dlp) == 0:
        return PrioritizedProgram(Program((), dlp.alphabet))
    acc: Program | PrioritizedProgram = dlp[0]
    if len(dlp) == 1:
        _check_heads(dlp[0])
        return PrioritizedProgram(dlp[0])
    for layer in dlp.layers[1:]:
        acc = delgrande_transform(i, acc, layer)
    return acc


# --- preferred-model strategies --------------------------------------------

Strategy = Callable[[PrioritizedProgram, set], set]

_STRATEGIES: dict[str, Strategy] = {}


def register_strategy(name: str, fn: Strategy) -> None:
    """Make ``fn(pp, stable_models) -> preferred models`` available by name."""
    _STRATEGIES[name] = fn


def get_strategy(name: str) -> Strategy:
    try:
        return _STRATEGIES[name]
    except KeyError:
        known = ", ".join(sorted(_STRATEGIES)) or "none"
        raise NoStrategyConfigured(f"no preference strategy named {name!r} (registered: {known})")


def identity_strategy(pp: PrioritizedProgram, models: set) -> set:
    """Every stable model is preferred."""
    return set(models)


register_strategy("identity", identity_strategy)


def prx_models(dlp: Dlp, i: int, strategy: Strategy | str | None) -> set[frozenset]:
    """Preferred stable models of the iterated ``*_i`` transform."""
    if strategy is None:
        raise NoStrategyConfigured("PRX needs a preferred-model strategy plugin")
    if isinstance(strategy, str):
        strategy = get_strategy(strategy)
    applicability.require("prx", dlp)
    pp = delgrande_iterated(i, dlp)
    sms = stable_models(pp.program, Universe.of(dlp, pp.program))
    preferred = set(strategy(pp, sms))
    if not preferred <= sms:
        raise ValueError("strategy returned models that are not stable models of the transform")
    return preferred
