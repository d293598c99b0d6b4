"""Semantic program change: cardinality-based revision over HT-models and
exception-driven rule updates over RE-models.

Programs are handled as model sets.  An updated program is kept as its
characterisation (a set of RE-model sets, one per rule-base) and is never
turned back into rule text, except by :func:`representative_rule` when a
set happens to be the RE-model set of a single small rule.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .models import (
    ModelSet,
    ProgramLike,
    ThreeValued,
    Universe,
    _as_rules,
    compile_rule,
    ht_models,
    re_models,
    reduct_true,
    submasks,
)
from .syntax import Dlp, Literal, ObjLit, Program, Rule

TRUE, UNDEFINED, FALSE = "T", "U", "F"


# --- cardinality-based revision -------------------------------------------------

def _popcount(x: int) -> int:
    return bin(x).count("1")


def _closest_totals(ms: set[int], ns: set[int]) -> set[int]:
    """σ over two-valued interpretations given as masks."""
    if not ms or not ns:
        return set()
    dist = {m: min(_popcount(m ^ n) for n in ns) for m in ms}
    best = min(dist.values())
    return {m for m, d in dist.items() if d == best}


def _closest_pairs(ms: Iterable[tuple[int, int]], ns: Iterable[tuple[int, int]]) -> set[tuple[int, int]]:
    """σ over three-valued interpretations, distances ordered by ``(|J÷L|, |I÷K|)``."""
    ms, ns = list(ms), list(ns)
    if not ms or not ns:
        return set()
    dist = {(i, j): min((_popcount(j ^ l), _popcount(i ^ k)) for k, l in ns) for i, j in ms}
    best = min(dist.values())
    return {x for x, d in dist.items() if d == best}


def cardinality_revision_sets(p_ht: ModelSet, q_ht: ModelSet) -> ModelSet:
    """``⊗_c`` on HT-model sets directly.

    The selection is made among the models of ``Q``, taking those closest
    to the models of ``P``.
    """
    if p_ht.universe != q_ht.universe:
        raise ValueError("model sets over different universes")
    u = q_ht.universe
    if not p_ht.pairs:
        return q_ht
    totals_p = {j for i, j in p_ht.pairs if i == j}
    totals_q = {j for i, j in q_ht.pairs if i == j}
    chosen = _closest_totals(totals_q, totals_p)
    close = _closest_pairs(q_ht.pairs, p_ht.pairs)
    out = [(i, j) for j in chosen for i in submasks(j) if i == j or (i, j) in close]
    return ModelSet(u, out)


def cardinality_revision(p: ProgramLike, q: ProgramLike, universe=None) -> ModelSet:
    """HT-models of ``P ⊗_c Q``."""
    u = Universe.of(_as_rules(p), _as_rules(q))
    if universe is not None:
        u = u.extend(universe) if isinstance(universe, Universe) else u.extend(atoms=universe)
    return cardinality_revision_sets(ht_models(p, u), ht_models(q, u))


# --- forcing and conflicts --------------------------------------------------------

def _lit_bit(u: Universe, p) -> int:
    if isinstance(p, str):
        p = ObjLit.parse(p)
    return u.bit(p)


def _forces_bit(pairs: frozenset, b: int, j: int) -> str | None:
    members = [v for v, x in ((TRUE, (j | b, j | b)),
                              (UNDEFINED, (j & ~b, j | b)),
                              (FALSE, (j & ~b, j & ~b))) if x in pairs]
    return members[0] if len(members) == 1 else None


def forces(m: ModelSet, p: str | ObjLit, j: Iterable[ObjLit]) -> str | None:
    """The truth value (``'T'``, ``'U'`` or ``'F'``) that ``M`` forces on ``p``
    w.r.t. ``J``, or None when no value is forced."""
    u = m.universe
    return _forces_bit(m.pairs, _lit_bit(u, p), u.mask(j))


def _conflict_mask(mp: frozenset, np: frozenset, u: Universe, j: int) -> int:
    out = 0
    for k in range(len(u.lits)):
        b = 1 << k
        v = _forces_bit(mp, b, j)
        if v is not None:
            w = _forces_bit(np, b, j)
            if w is not None and w != v:
                out |= b
    return out


def conflicts(m: ModelSet, n: ModelSet, j: Iterable[ObjLit]) -> set[ObjLit]:
    """Literals on which ``M`` and ``N`` are in conflict w.r.t. ``J``."""
    m._check(n)
    u = m.universe
    return set(u.interp(_conflict_mask(m.pairs, n.pairs, u, u.mask(j))))


# --- local exception functions ---------------------------------------------

@lru_cache(maxsize=65536)
def _exceptions(kind: str, m: ModelSet, n: ModelSet) -> ModelSet:
    u = m.universe
    out: set[tuple[int, int]] = set()
    totals = u.interpretations()
    for j in totals:
        c = _conflict_mask(m.pairs, n.pairs, u, j)
        if not c:
            continue
        if kind == "a":
            out.update((i, j) for i in submasks(j))
            continue
        for k in totals:
            if k & j != j:
                continue
            for i in submasks(j):
                # some conflicting p must not become undefined, unless K = J
                if k == j or c & ~(k & ~i):
                    out.add((i, k))
    return ModelSet(u, out)


def exception_fn(kind: str, m: ModelSet, n: ModelSet) -> ModelSet:
    """``ε_a(M, N)`` or ``ε_b(M, N)``."""
    kind = kind.lower()
    if kind not in ("a", "b"):
        raise ValueError("exception function kind must be 'a' or 'b'")
    m._check(n)
    return _exceptions(kind, m, n)


# --- exception-driven characterisations --------------------------------------

@dataclass(frozen=True)
class ExceptionCharacterisation:
    """A program seen as the set of RE-model sets of its rule-bases."""

    kind: str
    universe: Universe
    sets: frozenset[ModelSet]

    @classmethod
    def of(cls, kind: str, program: ProgramLike, universe: Universe | None = None) -> "ExceptionCharacterisation":
        rules = _as_rules(program)
        u = Universe.of(rules) if universe is None else universe.extend(rules)
        return cls(kind.lower(), u, frozenset(re_models(r, u) for r in _as_rules(program)))

    def update(self, program: ProgramLike) -> "ExceptionCharacterisation":
        rules = _as_rules(program)
        if Universe.of(self.universe, rules) != self.universe:
            raise ValueError("the update mentions literals outside the universe of the "
                             "characterisation; build it over the whole DLP")
        new = [re_models(r, self.universe) for r in rules]
        kept = set()
        for m in self.sets:
            extra = m
            for n in new:
                extra = extra | _exceptions(self.kind, m, n)
            kept.add(extra)
        return ExceptionCharacterisation(self.kind, self.universe, frozenset(kept | set(new)))

    def intersection(self) -> ModelSet:
        """RE-models of the whole characterisation; the empty one gives 𝒳."""
        pairs = set(self.universe.pairs())
        for m in self.sets:
            pairs &= m.pairs
        return ModelSet(self.universe, pairs)

    def ht_models(self) -> ModelSet:
        re = self.intersection()
        return ModelSet(self.universe, ((i, j) for i, j in re.pairs if (j, j) in re.pairs))

    def stable_models(self) -> set[frozenset]:
        return stable_models_of_characterisation(self)

    def rr_equivalent(self, other: "ExceptionCharacterisation | ProgramLike") -> bool:
        """Equality of the rule-base sets once the tautology set 𝒳 is adjoined."""
        if not isinstance(other, ExceptionCharacterisation):
            other = ExceptionCharacterisation.of(self.kind, other, self.universe)
        if other.universe != self.universe:
            raise ValueError("characterisations over different universes")
        top = ModelSet.everything(self.universe)
        return self.sets | {top} == other.sets | {top}

    def sorted_sets(self) -> list[ModelSet]:
        return sorted(self.sets, key=_set_key)

    def to_json(self) -> list[list[dict]]:
        return [[{"lower": sorted(map(str, x.lower)), "upper": sorted(map(str, x.upper))} for x in m]
                for m in self.sorted_sets()]

    def render(self) -> str:
        lines = []
        for m in self.sorted_sets():
            rule = representative_rule(m)
            lines.append(str(rule) if rule is not None else "{" + ", ".join(map(str, m)) + "}")
        return "\n".join(lines)


def _set_key(m: ModelSet) -> tuple:
    return (len(m), sorted((j, i) for i, j in m.pairs))


def exception_update(kind: str, p: ProgramLike, u: ProgramLike, universe=None) -> ExceptionCharacterisation:
    """Characterisation of ``P ⊕ U`` for the ``ε_kind``-driven operator."""
    un = Universe.of(_as_rules(p), _as_rules(u))
    if universe is not None:
        un = un.extend(universe) if isinstance(universe, Universe) else un.extend(atoms=universe)
    return ExceptionCharacterisation.of(kind, p, un).update(u)


def exception_fold(kind: str, dlp: Dlp, universe: Universe | None = None) -> ExceptionCharacterisation:
    """Left fold of the update over the layers of ``dlp``."""
    u = Universe.of(dlp) if universe is None else universe.extend(dlp)
    c = ExceptionCharacterisation(kind.lower(), u, frozenset())
    for layer in dlp.layers:
        c = c.update(layer)
    return c


def stable_models_of_characterisation(c: ExceptionCharacterisation) -> set[frozenset]:
    """The J with ``⟨J,J⟩ ∈ ⋂C`` and no ``⟨I,J⟩``, ``I ⊊ J``, in ``⋂C``."""
    pairs = c.intersection().pairs
    u = c.universe
    out = set()
    for j in u.interpretations():
        if (j, j) in pairs and not any((i, j) in pairs for i in submasks(j) if i != j):
            out.add(u.interp(j))
    return out


def exception_models(kind: str, dlp: Dlp) -> set[frozenset]:
    """Stable models of an ``ε_kind``-driven update of a DLP."""
    return stable_models_of_characterisation(exception_fold(kind, dlp))


def ea_models(dlp: Dlp) -> set[frozenset]:
    return exception_models("a", dlp)


def eb_models(dlp: Dlp) -> set[frozenset]:
    return exception_models("b", dlp)


# --- representative rules ----------------------------------------------------------

REPRESENTATIVE_LIMIT = 5


@lru_cache(maxsize=32)
def _rule_table(u: Universe) -> dict[frozenset, Rule]:
    lits = u.lits
    pairs = u.pairs()
    heads: list[Literal | None] = [None]
    heads += [Literal(l) for l in lits] + [Literal(l, True) for l in lits]
    table: dict[frozenset, Rule] = {}
    # bodies with fewer literals first, so the first rule found is the shortest
    bodies = sorted(itertools.product((None, False, True), repeat=len(lits)),
                    key=lambda b: sum(x is not None for x in b))
    for body_choice in bodies:
        body = [Literal(l, naf) for l, naf in zip(lits, body_choice) if naf is not None]
        for h in heads:
            rule = Rule.make(h, body)
            c = compile_rule(rule, u)
            key = frozenset(x for x in pairs if reduct_true(c, x[0], x[1]))
            table.setdefault(key, rule)
    return table


def representative_rule(m: ModelSet) -> Rule | None:
    """A single rule whose RE-model set is ``m``, searched over small universes."""
    if len(m.universe.lits) > REPRESENTATIVE_LIMIT:
        return None
    return _rule_table(m.universe).get(m.pairs)


# --- postulate reports -------------------------------------------------------

@dataclass
class SampledReport:
    """Pass and fail counts per postulate over sampled program pairs."""

    operator: str
    samples: int
    seed: int
    failures: dict[str, int]
    counterexamples: dict[str, tuple[str, ...]]

    def passed(self, name: str) -> bool:
        return self.failures[name] == 0

    def to_json(self) -> dict:
        return {
            "operator": self.operator,
            "samples": self.samples,
            "seed": self.seed,
            "postulates": {k: {"pass": v == 0, "failures": v,
                               "counterexample": list(self.counterexamples.get(k, ()))}
                           for k, v in sorted(self.failures.items())},
        }


def _random_rule(rng: random.Random, atoms: list[str], default_heads: bool) -> Rule:
    body = []
    for a in atoms:
        r = rng.random()
        if r < 0.2:
            body.append(Literal(ObjLit(a)))
        elif r < 0.35:
            body.append(Literal(ObjLit(a), True))
    head_atom = ObjLit(rng.choice(atoms))
    head = Literal(head_atom, default_heads and rng.random() < 0.3)
    if rng.random() < 0.1:
        head = None
    return Rule.make(head, body)


def random_program(rng: random.Random, atoms: list[str], size: int, default_heads: bool = True) -> list[Rule]:
    return [_random_rule(rng, atoms, default_heads) for _ in range(size)]


def _render(rules: list[Rule]) -> str:
    return " ".join(map(str, rules)) or "(empty)"


def check_revision_postulates(samples: int = 200, atoms: int = 2, seed: int = 0) -> SampledReport:
    """PRSE1–PRSE6 for ``⊗_c``, on random programs over ``atoms`` atoms."""
    rng = random.Random(seed)
    names = [f"p{k}" for k in range(atoms)]
    u = Universe.of(atoms=names)
    fails = {f"PRSE{k}": 0 for k in range(1, 7)}
    cex: dict[str, tuple[str, ...]] = {}
    ht = lambda rules: ht_models(rules, u)
    rev = cardinality_revision_sets
    for _ in range(samples):
        p, uu, v = (random_program(rng, names, rng.randint(0, 3)) for _ in range(3))
        # an HT-equivalent rewrite of P and of U for PRSE4
        q = p + [Rule.make(names[0], [names[0]])]
        uu2 = list(reversed(uu)) + uu[:1]
        hp, hq, hu, hv = ht(p), ht(q), ht(uu), ht(v)
        r = rev(hp, hu)
        checks = {
            "PRSE1": r <= hu,
            "PRSE2": not (hp & hu).pairs or r == hp & hu,
            "PRSE3": not hu.pairs or bool(r.pairs),
            "PRSE4": hp != hq or hu != ht(uu2) or rev(hq, ht(uu2)) == r,
            "PRSE5": (r & hv) <= rev(hp, hu & hv),
            "PRSE6": not (r & hv).pairs or rev(hp, hu & hv) <= (r & hv),
        }
        for k, ok in checks.items():
            if not ok:
                fails[k] += 1
                cex.setdefault(k, (_render(p), _render(uu), _render(v)))
    return SampledReport("cardinality", samples, seed, fails, cex)


def check_update_postulates(kind: str = "b", samples: int = 200, atoms: int = 2, seed: int = 0) -> SampledReport:
    """PU1–PU6 for an ``ε_kind``-driven operator under HT-entailment.

    The result is informative only: by the impossibility result, an operator
    that respects support and fact update cannot satisfy all of them.
    """
    rng = random.Random(seed)
    names = [f"p{k}" for k in range(atoms)]
    u = Universe.of(atoms=names)
    fails = {f"PU{k}": 0 for k in range(1, 7)}
    cex: dict[str, tuple[str, ...]] = {}

    def upd(p, q) -> ModelSet:
        return ExceptionCharacterisation.of(kind, p, u).update(q).ht_models()

    for _ in range(samples):
        p, uu, v = (random_program(rng, names, rng.randint(0, 3)) for _ in range(3))
        hp, hu, hv = ht_models(p, u), ht_models(uu, u), ht_models(v, u)
        r = upd(p, uu)
        rv = upd(p, v)
        checks = {
            "PU1": r <= hu,
            "PU2": not hp <= hu or r == hp,
            "PU3": not (hp.pairs and hu.pairs) or bool(r.pairs),
            "PU4": hu != hv or r == rv,
            "PU5": (r & hv) <= upd(p, uu + v),
            "PU6": not (r <= hv and rv <= hu) or r == rv,
        }
        for k, ok in checks.items():
            if not ok:
                fails[k] += 1
                cex.setdefault(k, (_render(p), _render(uu), _render(v)))
    return SampledReport(f"e{kind}", samples, seed, fails, cex)


__all__ = [
    "ExceptionCharacterisation",
    "SampledReport",
    "cardinality_revision",
    "cardinality_revision_sets",
    "check_revision_postulates",
    "check_update_postulates",
    "conflicts",
    "ea_models",
    "eb_models",
    "exception_fn",
    "exception_fold",
    "exception_models",
    "exception_update",
    "forces",
    "representative_rule",
    "stable_models_of_characterisation",
]
