"""Revision-flavoured rule updates: RVS (maximal coherent subsets) and RVD
(back-to-front commitments over three-valued d-interpretations)."""

from __future__ import annotations

from typing import Iterable, NamedTuple

from . import applicability
from ._search import maximal_subsets
from .models import NONE, POS, Universe, compile_rules, least_mask, stable_models, submasks
from .syntax import Dlp, Literal, ObjLit, Program, Rule


def rvs_models(dlp: Dlp) -> set[frozenset]:
    """Stable models of ``P' ∪ U`` for every maximal ``P' ⊆ P`` keeping it coherent."""
    applicability.require("rvs", dlp)
    p, u = dlp.layers
    un = Universe.of(dlp)
    urules = u.plain_rules()
    out: set[frozenset] = set()

    def coherent(sub) -> bool:
        return bool(stable_models([o.rule for o in sub] + urules, un))

    for keep in maximal_subsets(p.rules, coherent):
        out |= stable_models([o.rule for o in keep] + urules, un)
    return out


class ThreeValuedD(NamedTuple):
    """A disjoint pair ``(J⁺, J⁻)`` of objective literals."""

    plus: frozenset
    minus: frozenset

    def __str__(self) -> str:
        show = lambda s: "{" + ",".join(sorted(map(str, s))) + "}"
        return f"({show(self.plus)},{show(self.minus)})"


def pgm(j: ThreeValuedD) -> list[Rule]:
    """``Pgm(J)``: facts for ``J⁺`` and constraints ``<- p`` for ``J⁻``."""
    return ([Rule.make(Literal(l)) for l in sorted(j.plus)]
            + [Rule.make(None, [Literal(l)]) for l in sorted(j.minus)])


def _answer_sets(rules: list[Rule], u: Universe) -> list[tuple[int, int]]:
    """Three-valued answer-sets as mask pairs.

    ``J⁺`` must be the least model of the usual reduct and of the d-reduct,
    with ``J⁻`` ⊆-minimal, and no constraint of the reduct may fire in ``J⁺``.
    """
    crules = compile_rules(rules, u)
    out = []
    for plus in u.interpretations():
        live = [c for c in crules if not c[3] & plus]
        if any(c[0] == NONE and c[2] & plus == c[2] for c in live):
            continue
        definite = [(c[1], c[2]) for c in live if c[0] == POS]
        if least_mask(definite) != plus:
            continue
        candidates = 0
        for c in live:
            candidates |= c[3]
        # the d-reduct only grows with J⁻, so the least model is monotone in
        # J⁻ and the full candidate set always reproduces the usual reduct
        hits = [m for m in submasks(candidates)
                if least_mask([(c[1], c[2]) for c in live if c[0] == POS and c[3] & m == c[3]]) == plus]
        for m in hits:
            if not any(o != m and o & m == o for o in hits):
                out.append((plus, m))
    return out


def three_valued_answer_sets(program: Program | Iterable[Rule], universe=None) -> set[ThreeValuedD]:
    rules = program.plain_rules() if isinstance(program, Program) else list(program)
    u = Universe.of(rules) if universe is None else Universe.of(rules, universe)
    return {ThreeValuedD(u.interp(p), u.interp(m)) for p, m in _answer_sets(rules, u)}


def rvd_models(dlp: Dlp) -> set[frozenset]:
    """RVD-models, processing layers from the last one back to the first.

    The construction carries the kept rules ``R`` and the commitments
    ``C = (C⁺, C⁻)``.  Start with ``R = P_n`` and ``C`` a three-valued answer
    set of ``P_n``.  For each earlier layer, keep a maximal ``M ⊆ P_i`` such
    that ``R ∪ M ∪ Pgm(C)`` has a three-valued answer set, add it to ``R``,
    choose such an answer set ``J`` and commit to ``(J⁺, J⁻ ∪ C⁻)``.  A model is
    ``C⁺`` after layer 0.
    """
    applicability.require("rvd", dlp)
    if len(dlp) == 0:
        return {frozenset()}
    u = Universe.of(dlp)
    layers = [p.plain_rules() for p in dlp.layers]
    results: set[frozenset] = set()

    def visit(i: int, kept: list[Rule], plus: int, minus: int) -> None:
        if i < 0:
            results.add(u.interp(plus))
            return
        commit = pgm(ThreeValuedD(u.interp(plus), u.interp(minus)))

        def consistent(sub) -> bool:
            return bool(_answer_sets(kept + list(sub) + commit, u))

        for extra in maximal_subsets(layers[i], consistent):
            r = kept + list(extra)
            for jp, jm in _answer_sets(r + commit, u):
                visit(i - 1, r, jp, jm | minus)

    last = len(layers) - 1
    for jp, jm in _answer_sets(layers[last], u):
        visit(last - 1, layers[last], jp, jm)
    return results
