"""Syntactic transformations and tests on programs and DLPs."""

from __future__ import annotations

from graphlib import CycleError, TopologicalSorter

from .syntax import (
    DERIVED_OFFSET,
    Dlp,
    Literal,
    ObjLit,
    Program,
    Rule,
    RuleOccurrence,
)


def expansion_rule(rule: Rule) -> Rule | None:
    """``~complement(l) <- B`` for a rule with objective head ``l``, else None."""
    h = rule.head_literal
    if h is None or h.naf:
        return None
    return Rule(frozenset([Literal(h.obj.complement, True)]), rule.body)


def expand(dlp: Dlp) -> Dlp:
    """The expanded version of ``dlp``.

    Every rule with an objective head ``l`` gets a companion
    ``~complement(l) <- B`` in the same layer, with ordinal
    ``DERIVED_OFFSET + source ordinal``.  Expanding twice is a no-op.
    """
    if dlp.expanded:
        return dlp
    layers = []
    for prog in dlp.layers:
        occs = list(prog.rules)
        for occ in prog.rules:
            extra = expansion_rule(occ.rule)
            if extra is not None:
                occs.append(RuleOccurrence(extra, (occ.layer, DERIVED_OFFSET + occ.id[1])))
        layers.append(Program(tuple(occs), prog.alphabet))
    return Dlp(tuple(layers), dlp.alphabet, expanded=True)


def source_id(rid: tuple[int, int]) -> tuple[int, int]:
    """The id of the rule an expansion-derived occurrence came from."""
    layer, ordinal = rid
    return (layer, ordinal - DERIVED_OFFSET) if ordinal >= DERIVED_OFFSET else rid


def _fresh(taken: set[str], counter: list[int]) -> str:
    while True:
        name = f"aux{counter[0]}"
        counter[0] += 1
        if name not in taken:
            taken.add(name)
            return name


def eliminate_constraints(program: Program | Dlp) -> Program | Dlp:
    """Replace each constraint ``<- B`` by ``a <- not a, B`` with a fresh atom ``a``.

    Works on a single program or layer-wise on a DLP (fresh atoms are unique
    across the whole DLP).  Occurrence ids are preserved.
    """
    taken = set(program.alphabet)
    counter = [0]

    def rewrite(prog: Program) -> Program:
        occs = []
        for occ in prog.rules:
            if occ.rule.is_constraint:
                a = ObjLit(_fresh(taken, counter))
                rule = Rule(frozenset([Literal(a)]), occ.rule.body | {Literal(a, True)})
                occs.append(RuleOccurrence(rule, occ.id))
            else:
                occs.append(occ)
        return Program(tuple(occs), prog.alphabet)

    if isinstance(program, Dlp):
        return Dlp(tuple(rewrite(p) for p in program.layers), program.alphabet, program.expanded)
    return rewrite(program)


def is_tautological(rule: Rule) -> bool:
    """``B ∩ H ≠ ∅`` or ``B⁺ ∩ B⁻ ≠ ∅``."""
    return bool(rule.body & rule.head) or bool(rule.body_pos & rule.body_neg)


def is_acyclic(target: Dlp | Program) -> tuple[bool, dict[str, int] | None]:
    """Decide acyclicity of ``all(P)`` and return a level mapping witness.

    Levels are assigned to atoms, so ``p`` and ``-p`` share a level, and
    default literals share the level of their objective literal.  This keeps
    the expanded DLP acyclic whenever the DLP is.  The witness maps each atom
    to the length of the longest dependency chain below it.
    """
    program = target.all() if isinstance(target, Dlp) else target
    graph: dict[str, set[str]] = {a: set() for a in program.alphabet}
    for occ in program.rules:
        rule = occ.rule
        if rule.is_constraint:
            return False, None
        head = rule.head_literal.obj.atom
        for b in rule.body:
            if b.obj.atom == head:
                return False, None
            graph[head].add(b.obj.atom)
    try:
        order = list(TopologicalSorter(graph).static_order())
    except CycleError:
        return False, None
    level: dict[str, int] = {}
    for node in order:
        level[node] = 1 + max((level[b] for b in graph[node]), default=-1)
    return True, level
