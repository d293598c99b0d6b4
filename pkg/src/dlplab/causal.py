"""Rule update semantics based on causal rejection: JU, AS, DS and RD.

Every entry point expands the DLP once and then tests each consistent
interpretation of its universe.  :class:`CompiledDlp` holds the expanded
rules as bitmask tuples plus the conflict partners of each rule, so that a
single candidate costs a handful of integer operations per rule.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .errors import ConstraintPresent
from .models import (
    NAF,
    NONE,
    POS,
    CRule,
    Universe,
    body_true,
    compile_rule,
    is_stable_mask,
    least_mask,
    rule_true,
)
from .syntax import Dlp, Literal, ObjLit, Rule
from .transform import expand

SEMANTICS = ("ju", "as", "ds", "rd")


def conflict(pi: Rule, sigma: Rule) -> bool:
    """``H(π) ≠ ∅`` and ``H(π) = ~H(σ)``."""
    h, g = pi.head_literal, sigma.head_literal
    return h is not None and g is not None and h.obj == g.obj and h.naf != g.naf


@dataclass
class CompiledDlp:
    """An expanded DLP in bitmask form."""

    dlp: Dlp
    universe: Universe
    ids: list[tuple[int, int]]
    layer: list[int]
    rules: list[CRule]
    partners: list[list[int]]  # indices of rules in conflict with rule k
    n_layers: int

    @classmethod
    def build(cls, dlp: Dlp, universe: Universe | None = None) -> "CompiledDlp":
        exp = expand(dlp)
        u = Universe.of(exp) if universe is None else universe.extend(exp)
        occs = exp.occurrences()
        rules = [compile_rule(o.rule, u) for o in occs]
        partners: list[list[int]] = [[] for _ in occs]
        for a, b in itertools.permutations(range(len(occs)), 2):
            ka, kb = rules[a], rules[b]
            if ka[0] != NONE and kb[0] != NONE and ka[1] == kb[1] and ka[0] != kb[0]:
                partners[a].append(b)
        return cls(exp, u, [o.id for o in occs], [o.layer for o in occs], rules, partners,
                   len(exp.layers))

    def sat(self, j: int) -> list[bool]:
        return [body_true(c, j) for c in self.rules]

    def rejected(self, variant: str, j: int, sat: list[bool] | None = None) -> set[int]:
        if sat is None:
            sat = self.sat(j)
        layer, partners = self.layer, self.partners
        if variant == "ju":
            return {k for k in range(len(self.rules))
                    if any(sat[s] and layer[s] > layer[k] for s in partners[k])}
        if variant == "rd":
            return {k for k in range(len(self.rules))
                    if any(sat[s] and layer[s] >= layer[k] for s in partners[k])}
        if variant == "as":
            rej: set[int] = set()
            # later layers are settled first: a rule can only be rejected by
            # unrejected rules from strictly later layers
            for i in range(self.n_layers - 1, -1, -1):
                for k in range(len(self.rules)):
                    if layer[k] != i:
                        continue
                    if any(sat[s] and layer[s] > i and s not in rej for s in partners[k]):
                        rej.add(k)
            return rej
        raise ValueError(f"unknown rejection variant {variant!r}")

    def default_assumptions(self, j: int, sat: list[bool] | None = None) -> int:
        """Mask of objective literals ``l`` with ``~l ∈ Def(P, J)``."""
        if sat is None:
            sat = self.sat(j)
        supported = 0
        for c, s in zip(self.rules, sat):
            if s and c[0] == POS:
                supported |= c[1]
        return self.universe.full & ~supported

    def is_model(self, semantics: str, j: int) -> bool:
        sat = self.sat(j)
        if semantics in ("ju", "as"):
            rej = self.rejected(semantics, j, sat)
            kept = [c for k, c in enumerate(self.rules) if k not in rej]
            return is_stable_mask(kept, j)
        if semantics in ("ds", "rd"):
            rej = self.rejected("ju" if semantics == "ds" else "rd", j, sat)
            return self._least_check(j, sat, rej)
        raise ValueError(f"unknown semantics {semantics!r}")

    def _least_check(self, j: int, sat: list[bool], rej: set[int]) -> bool:
        # literals as atoms: bit k is objective literal k, bit m+k is ~literal k
        m = len(self.universe.lits)
        full = self.universe.full
        target = j | ((full & ~j) << m)
        definite = []
        for k, (kind, hbit, pos, neg) in enumerate(self.rules):
            if k in rej or kind == NONE:
                continue
            head = hbit if kind == POS else hbit << m
            definite.append((head, pos | (neg << m)))
        start = self.default_assumptions(j, sat) << m
        return least_mask(definite, start) == target

    def models(self, semantics: str) -> set[frozenset]:
        u = self.universe
        return {u.interp(j) for j in u.interpretations() if self.is_model(semantics, j)}

    def id_set(self, indices: Iterable[int]) -> set[tuple[int, int]]:
        return {self.ids[k] for k in indices}


def _require_constraint_free(dlp: Dlp) -> None:
    if dlp.has_constraints():
        raise ConstraintPresent(
            "causal rejection semantics apply to DLPs without integrity constraints; "
            "apply eliminate_constraints first")


def rejected(variant: str, dlp: Dlp, j: Iterable[ObjLit]) -> set[tuple[int, int]]:
    """Ids of rejected occurrences of the expanded DLP w.r.t. ``J``."""
    j = frozenset(j)
    comp = CompiledDlp.build(dlp, Universe.of(j))
    return comp.id_set(comp.rejected(variant.lower(), comp.universe.mask(j)))


def default_assumptions(dlp: Dlp, j: Iterable[ObjLit]) -> set[Literal]:
    j = frozenset(j)
    comp = CompiledDlp.build(dlp, Universe.of(j))
    mask = comp.default_assumptions(comp.universe.mask(j))
    return {Literal(l, True) for l in comp.universe.interp(mask)}


def models(semantics: str, dlp: Dlp, universe: Universe | None = None) -> set[frozenset]:
    """JU-, AS-, DS- or RD-models of ``dlp``."""
    semantics = semantics.lower()
    if semantics not in SEMANTICS:
        raise ValueError(f"unknown semantics {semantics!r}")
    _require_constraint_free(dlp)
    return CompiledDlp.build(dlp, universe).models(semantics)


def all_models(dlp: Dlp) -> dict[str, set[frozenset]]:
    _require_constraint_free(dlp)
    comp = CompiledDlp.build(dlp)
    return {s: comp.models(s) for s in SEMANTICS}


def explain(semantics: str, dlp: Dlp) -> list[tuple[frozenset, set[tuple[int, int]]]]:
    """Each model paired with the ids of the occurrences rejected for it."""
    semantics = semantics.lower()
    _require_constraint_free(dlp)
    comp = CompiledDlp.build(dlp)
    variant = {"ju": "ju", "as": "as", "ds": "ju", "rd": "rd"}[semantics]
    out = []
    for j in comp.universe.interpretations():
        if comp.is_model(semantics, j):
            out.append((comp.universe.interp(j), comp.id_set(comp.rejected(variant, j))))
    return out


# --- level-mapping characterisation of RD ---------------------------------

def _weak_orders(items: list) -> Iterable[dict]:
    """All weak orderings of ``items`` as rank dictionaries (ordered set partitions)."""
    n = len(items)
    if n == 0:
        yield {}
        return

    def rec(k: int, ranks: list[int], groups: int):
        if k == n:
            # a rank vector that is a "restricted growth" string only fixes the
            # partition; every ordering of its blocks is a distinct weak order
            for perm in itertools.permutations(range(groups)):
                yield {items[i]: perm[ranks[i]] for i in range(n)}
            return
        for g in range(groups + 1):
            ranks.append(g)
            yield from rec(k + 1, ranks, max(groups, g + 1))
            ranks.pop()

    yield from rec(0, [], 0)


def rd_models_levelmapping(dlp: Dlp, max_literals: int = 7) -> set[frozenset]:
    """RD-models via the existence of a supporting level mapping.

    Only the relative order of literal levels matters, so the search runs
    over weak orderings of the literals that occur in rules whose body holds
    in the candidate and that can either reject or support something.
    """
    from .errors import AlphabetTooLarge

    _require_constraint_free(dlp)
    comp = CompiledDlp.build(dlp)
    u = comp.universe
    n = len(comp.rules)
    bit_index = {1 << k: k for k in range(len(u.lits))}
    out: set[frozenset] = set()
    for j in u.interpretations():
        sat = comp.sat(j)
        # a rule only matters if its body holds; then it matters if it can
        # support a true objective literal or reject an earlier rule
        relevant = [
            k for k in range(n)
            if sat[k] and (
                (comp.rules[k][0] == POS and comp.rules[k][1] & j)
                or any(comp.layer[p] < comp.layer[k] for p in comp.partners[k]))
        ]
        lits: set[int] = set()
        for k in relevant:
            kind, hbit, pos, neg = comp.rules[k]
            lits.add(bit_index[hbit])
            lits.update(bit_index[b] for b in bit_index if b & (pos | neg))
        if len(lits) > max_literals:
            raise AlphabetTooLarge(f"level-mapping search over {len(lits)} literals")
        for ranks in _weak_orders(sorted(lits)):
            eligible = set()
            for k in relevant:
                kind, hbit, pos, neg = comp.rules[k]
                body_levels = [ranks[bit_index[b]] for b in bit_index if b & (pos | neg)]
                if ranks[bit_index[hbit]] > max(body_levels, default=-1):
                    eligible.add(k)
            rej = {k for k in range(n)
                   if any(s in eligible and comp.layer[s] > comp.layer[k] for s in comp.partners[k])}
            if not all(rule_true(c, j) for k, c in enumerate(comp.rules) if k not in rej):
                continue
            supported = 0
            for k in eligible:
                if k not in rej and comp.rules[k][0] == POS:
                    supported |= comp.rules[k][1]
            if supported & j == j:
                out.add(u.interp(j))
                break
    return out
