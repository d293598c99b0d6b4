"""Brute-force model theory: classical, stable, HT and RE models.

Internally an interpretation is a bitmask over a :class:`Universe` of
objective literals; the public functions accept and return frozensets of
:class:`~dlplab.syntax.ObjLit`.  Enumeration order is ascending mask order,
skipping masks that contain a literal together with its complement.
"""

from __future__ import annotations

import itertools
import os
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Union

from .errors import AlphabetTooLarge
from .syntax import TAU_ATOM, Dlp, Literal, ObjLit, Program, Rule, RuleOccurrence

Interpretation = frozenset  # frozenset[ObjLit]

DEFAULT_MAX_ATOMS = 16


def max_atoms() -> int:
    """Enumeration bound on base atoms; ``DLPLAB_MAX_ATOMS`` overrides it."""
    raw = os.environ.get("DLPLAB_MAX_ATOMS")
    if raw is None or not raw.strip():
        return DEFAULT_MAX_ATOMS
    return int(raw)


class ThreeValued(NamedTuple):
    """A pair ``⟨I, J⟩`` with ``I ⊆ J``: true in I, undefined in J∖I, false outside J."""

    lower: frozenset
    upper: frozenset

    def __str__(self) -> str:
        def show(s):
            return "{" + ",".join(sorted(map(str, s))) + "}"

        return f"<{show(self.lower)},{show(self.upper)}>"


def three_valued(lower: Iterable[str] | str, upper: Iterable[str] | str) -> ThreeValued:
    from .syntax import interp

    lo, up = interp(lower), interp(upper)
    if not lo <= up:
        raise ValueError("lower part must be a subset of the upper part")
    return ThreeValued(lo, up)


class Universe:
    """A finite, sorted set of objective literals with a bit per literal."""

    __slots__ = ("lits", "index", "full", "comp_pairs", "atoms", "_interps", "_pairs")

    def __init__(self, lits: tuple[ObjLit, ...]):
        self.lits = lits
        self.index = {l: k for k, l in enumerate(lits)}
        self.full = (1 << len(lits)) - 1
        self.comp_pairs = tuple(
            (1 << k) | (1 << self.index[l.complement])
            for k, l in enumerate(lits)
            if not l.negative and l.complement in self.index
        )
        self.atoms = tuple(sorted({l.atom for l in lits}))
        self._interps: list[int] | None = None
        self._pairs: list[tuple[int, int]] | None = None

    @staticmethod
    @lru_cache(maxsize=None)
    def from_lits(lits: tuple[ObjLit, ...]) -> "Universe":
        return Universe(lits)

    @classmethod
    def of(cls, *sources, atoms: Iterable[str] = ()) -> "Universe":
        """Universe of all atoms plus every objective literal mentioned in ``sources``.

        Sources may be programs, DLPs, rules, occurrences, universes,
        iterables of ObjLit/Literal, or atom names.
        """
        lits: set[ObjLit] = {ObjLit(a) for a in atoms}
        for src in sources:
            _collect(src, lits)
        return cls.from_lits(tuple(sorted(lits)))

    def __repr__(self) -> str:
        return f"Universe({', '.join(map(str, self.lits))})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Universe) and self.lits == other.lits

    def __hash__(self) -> int:
        return hash(self.lits)

    def __len__(self) -> int:
        return len(self.lits)

    def extend(self, *sources, atoms: Iterable[str] = ()) -> "Universe":
        return Universe.of(self, *sources, atoms=atoms)

    def check_bound(self) -> None:
        bound = max_atoms()
        if len(self.atoms) > bound:
            raise AlphabetTooLarge(
                f"{len(self.atoms)} atoms exceed the enumeration bound {bound} "
                "(set DLPLAB_MAX_ATOMS to raise it)")

    def bit(self, l: ObjLit) -> int:
        return 1 << self.index[l]

    def mask(self, literals: Iterable[ObjLit]) -> int:
        m = 0
        for l in literals:
            m |= 1 << self.index[l]
        return m

    def interp(self, mask: int) -> frozenset:
        return frozenset(l for k, l in enumerate(self.lits) if mask >> k & 1)

    def consistent(self, mask: int) -> bool:
        return all(mask & c != c for c in self.comp_pairs)

    def interpretations(self) -> list[int]:
        """All consistent masks in ascending order."""
        # checked on every call: universes are shared, the bound may change
        self.check_bound()
        if self._interps is None:
            options: list[tuple[int, ...]] = []
            for a in self.atoms:
                bits = [self.bit(l) for l in (ObjLit(a), ObjLit(a, True)) if l in self.index]
                options.append((0, *bits))
            self._interps = sorted(sum(c) for c in itertools.product(*options))
        return self._interps

    def pairs(self) -> list[tuple[int, int]]:
        """All three-valued interpretations ``(I, J)`` as mask pairs."""
        if self._pairs is None:
            out = []
            for j in self.interpretations():
                for i in submasks(j):
                    out.append((i, j))
            self._pairs = sorted(out, key=lambda p: (p[1], p[0]))
        return self._pairs

    def sort_key(self, mask: int) -> tuple:
        return tuple(sorted(str(l) for l in self.interp(mask)))


def submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _collect(src, lits: set[ObjLit]) -> None:
    if isinstance(src, Universe):
        lits.update(src.lits)
    elif isinstance(src, Dlp):
        lits.update(ObjLit(a) for a in src.alphabet)
        for p in src.layers:
            _collect(p, lits)
    elif isinstance(src, Program):
        lits.update(ObjLit(a) for a in src.alphabet)
        lits.update(src.objective_literals())
    elif isinstance(src, RuleOccurrence):
        _collect(src.rule, lits)
    elif isinstance(src, Rule):
        lits.update(src.objective_literals())
        lits.update(ObjLit(a) for a in src.atoms())
    elif isinstance(src, ObjLit):
        lits.add(src)
        lits.add(ObjLit(src.atom))
    elif isinstance(src, Literal):
        _collect(src.obj, lits)
    elif isinstance(src, str):
        lits.add(ObjLit(src))
    else:
        for item in src:
            _collect(item, lits)


# --- compiled rules -------------------------------------------------------
#
# A compiled rule is a tuple (kind, hbit, pos, neg): kind 0 = constraint,
# 1 = objective head, 2 = default-negated head; hbit is the head literal's
# bit, pos/neg are the masks of B⁺ and B⁻.

CRule = tuple[int, int, int, int]
NONE, POS, NAF = 0, 1, 2


def compile_rule(rule: Rule, u: Universe) -> CRule:
    h = rule.head_literal
    if h is None:
        kind, hbit = NONE, 0
    else:
        kind, hbit = (NAF if h.naf else POS), u.bit(h.obj)
    pos = neg = 0
    for b in rule.body:
        if b.naf:
            neg |= u.bit(b.obj)
        else:
            pos |= u.bit(b.obj)
    return (kind, hbit, pos, neg)


def compile_rules(rules: Iterable[Rule | RuleOccurrence], u: Universe) -> list[CRule]:
    return [compile_rule(r.rule if isinstance(r, RuleOccurrence) else r, u) for r in rules]


def body_true(c: CRule, j: int) -> bool:
    return c[2] & j == c[2] and not c[3] & j


def rule_true(c: CRule, j: int) -> bool:
    kind, hbit, pos, neg = c
    if pos & j != pos or neg & j:
        return True
    if kind == POS:
        return bool(hbit & j)
    if kind == NAF:
        return not hbit & j
    return False


def least_mask(definite: list[tuple[int, int]], start: int = 0) -> int:
    """Least fixpoint of ``(head_bit, body_mask)`` rules."""
    model = start
    pending = list(definite)
    changed = True
    while changed:
        changed = False
        rest = []
        for hbit, pos in pending:
            if pos & model == pos:
                if not hbit & model:
                    model |= hbit
                    changed = True
            else:
                rest.append((hbit, pos))
        pending = rest
    return model


def reduct_parts(crules: Iterable[CRule], j: int) -> tuple[list[tuple[int, int]], list[int]]:
    """GL reduct w.r.t. ``j``: definite rules and constraint bodies."""
    definite, constraints = [], []
    for kind, hbit, pos, neg in crules:
        if neg & j:
            continue
        if kind == POS:
            definite.append((hbit, pos))
        elif kind == NAF:
            if hbit & j:
                constraints.append(pos)
        else:
            constraints.append(pos)
    return definite, constraints


def is_stable_mask(crules: Iterable[CRule], j: int) -> bool:
    """``j`` is a subset-minimal model of the reduct.

    The reduct is Horn, so its minimal model is unique when it exists: the
    least model of its definite part, provided no constraint fires.
    """
    definite, constraints = reduct_parts(crules, j)
    if least_mask(definite) != j:
        return False
    return all(pos & j != pos for pos in constraints)


def reduct_true(c: CRule, i: int, j: int) -> bool:
    """``I ⊨ π^J`` for a single compiled rule."""
    kind, hbit, pos, neg = c
    if neg & j:
        return True
    if kind == NAF and not hbit & j:
        return True
    if pos & i != pos:
        return True
    return kind == POS and bool(hbit & i)


# --- public API -------------------------------------------------------------

ProgramLike = Union[Program, Rule, RuleOccurrence, Iterable[Rule]]


def _as_rules(target: ProgramLike) -> list[Rule]:
    if isinstance(target, Rule):
        return [target]
    if isinstance(target, RuleOccurrence):
        return [target.rule]
    if isinstance(target, Program):
        return target.plain_rules()
    return [r.rule if isinstance(r, RuleOccurrence) else r for r in target]


def _universe(target, universe) -> Universe:
    if universe is None:
        return Universe.of(target)
    if isinstance(universe, Universe):
        return universe.extend(target)
    return Universe.of(target, atoms=universe)


def satisfies(j: Iterable[ObjLit], target: Literal | ObjLit | ProgramLike) -> bool:
    """Classical satisfaction following the table: ``J ⊨ ~l`` iff ``l ∉ J``."""
    j = frozenset(j)
    if isinstance(target, ObjLit):
        return target in j
    if isinstance(target, Literal):
        return (target.obj not in j) if target.naf else (target.obj in j)
    for r in _as_rules(target):
        if all(satisfies(j, b) for b in r.body) and not any(satisfies(j, h) for h in r.head):
            return False
    return True


def body_satisfied(j: Iterable[ObjLit], rule: Rule) -> bool:
    j = frozenset(j)
    return all(satisfies(j, b) for b in rule.body)


def classical_models(program: ProgramLike, universe=None) -> set[frozenset]:
    """All consistent interpretations satisfying every rule."""
    u = _universe(program, universe)
    crules = compile_rules(_as_rules(program), u)
    return {u.interp(j) for j in u.interpretations() if all(rule_true(c, j) for c in crules)}


def reduct(program: Program, j: Iterable[ObjLit]) -> Program:
    """``P^J``: ``H⁺ <- B⁺`` for rules with ``B⁻ ∩ J = ∅`` and ``H⁻ ⊆ J``."""
    j = frozenset(j)
    occs = []
    for occ in program.rules:
        r = occ.rule
        if r.body_neg & j or not r.head_neg <= j:
            continue
        head = frozenset(Literal(l) for l in r.head_pos)
        body = frozenset(Literal(l) for l in r.body_pos)
        occs.append(RuleOccurrence(Rule(head, body), occ.id))
    return Program(tuple(occs), program.alphabet)


def stable_models(program: ProgramLike, universe=None) -> set[frozenset]:
    u = _universe(program, universe)
    crules = compile_rules(_as_rules(program), u)
    return {u.interp(j) for j in u.interpretations() if is_stable_mask(crules, j)}


def is_stable(program: ProgramLike, j: Iterable[ObjLit], universe=None) -> bool:
    j = frozenset(j)
    u = _universe([program, j], universe)
    if not u.consistent(u.mask(j)):
        return False
    return is_stable_mask(compile_rules(_as_rules(program), u), u.mask(j))


def is_coherent(program: ProgramLike, universe=None) -> bool:
    u = _universe(program, universe)
    crules = compile_rules(_as_rules(program), u)
    return any(is_stable_mask(crules, j) for j in u.interpretations())


class ModelSet:
    """An immutable set of three-valued interpretations over a universe."""

    __slots__ = ("universe", "pairs", "_hash")

    def __init__(self, universe: Universe, pairs: Iterable[tuple[int, int]]):
        self.universe = universe
        self.pairs = frozenset(pairs)
        self._hash = hash((universe, self.pairs))

    @classmethod
    def from_three_valued(cls, universe: Universe, items: Iterable[ThreeValued]) -> "ModelSet":
        return cls(universe, ((universe.mask(x.lower), universe.mask(x.upper)) for x in items))

    @classmethod
    def everything(cls, universe: Universe) -> "ModelSet":
        return cls(universe, universe.pairs())

    def __eq__(self, other) -> bool:
        if isinstance(other, ModelSet):
            return self.universe == other.universe and self.pairs == other.pairs
        if isinstance(other, (set, frozenset)):
            return set(self) == set(other)
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[ThreeValued]:
        u = self.universe
        for i, j in sorted(self.pairs, key=lambda p: (p[1], p[0])):
            yield ThreeValued(u.interp(i), u.interp(j))

    def __contains__(self, x) -> bool:
        if isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], int):
            return x in self.pairs
        u = self.universe
        return (u.mask(x.lower), u.mask(x.upper)) in self.pairs

    def _check(self, other: "ModelSet") -> None:
        if self.universe != other.universe:
            raise ValueError("model sets over different universes")

    def __or__(self, other: "ModelSet") -> "ModelSet":
        self._check(other)
        return ModelSet(self.universe, self.pairs | other.pairs)

    def __and__(self, other: "ModelSet") -> "ModelSet":
        self._check(other)
        return ModelSet(self.universe, self.pairs & other.pairs)

    def __sub__(self, other: "ModelSet") -> "ModelSet":
        self._check(other)
        return ModelSet(self.universe, self.pairs - other.pairs)

    def __le__(self, other: "ModelSet") -> bool:
        self._check(other)
        return self.pairs <= other.pairs

    def is_well_defined(self) -> bool:
        """``⟨I,J⟩ ∈ M`` implies ``⟨J,J⟩ ∈ M``."""
        return all((j, j) in self.pairs for _, j in self.pairs)

    def totals(self) -> set[frozenset]:
        """The J with ``⟨J,J⟩`` in the set."""
        return {self.universe.interp(j) for i, j in self.pairs if i == j}

    def __repr__(self) -> str:
        return "ModelSet{" + ", ".join(map(str, self)) + "}"


def _pair_models(target: ProgramLike, universe, here_there: bool) -> ModelSet:
    u = _universe(target, universe)
    crules = compile_rules(_as_rules(target), u)
    out = []
    for i, j in u.pairs():
        if here_there and not all(rule_true(c, j) for c in crules):
            continue
        if all(reduct_true(c, i, j) for c in crules):
            out.append((i, j))
    return ModelSet(u, out)


def ht_models(target: ProgramLike, universe=None) -> ModelSet:
    """``⟨I,J⟩`` with ``J ⊨ P`` and ``I ⊨ P^J``."""
    return _pair_models(target, universe, True)


def re_models(target: ProgramLike, universe=None) -> ModelSet:
    """``⟨I,J⟩`` with ``I ⊨ P^J`` (no requirement on J)."""
    return _pair_models(target, universe, False)


def least_model(program: ProgramLike) -> set[Literal]:
    """Least model reading every literal, default ones included, as an atom.

    Rules whose head is empty are ignored.
    """
    rules = _as_rules(program)
    known: set[Literal] = set()
    changed = True
    while changed:
        changed = False
        for r in rules:
            h = r.head_literal
            if h is not None and h not in known and r.body <= known:
                known.add(h)
                changed = True
    return known


TAUTOLOGY = Rule.make(TAU_ATOM, [TAU_ATOM])


def rule_re_sets(program: ProgramLike, universe: Universe) -> frozenset[ModelSet]:
    """``[[P]]_RE^r``: the set of per-rule RE-model sets."""
    return frozenset(re_models(r, universe) for r in _as_rules(program))


def equiv(kind: str, p: ProgramLike, q: ProgramLike, universe=None) -> bool:
    """HT-, RE- or RR-equivalence of two programs."""
    kind = kind.upper()
    u = Universe.of(_as_rules(p), _as_rules(q))
    if universe is not None:
        u = _universe(u, universe)
    if kind == "HT":
        return ht_models(p, u) == ht_models(q, u)
    if kind == "RE":
        return re_models(p, u) == re_models(q, u)
    if kind == "RR":
        u = u.extend(TAUTOLOGY)
        return (rule_re_sets(_as_rules(p) + [TAUTOLOGY], u)
                == rule_re_sets(_as_rules(q) + [TAUTOLOGY], u))
    raise ValueError(f"unknown equivalence kind {kind!r}")


def sort_interpretations(models: Iterable[Iterable[ObjLit]]) -> list[list[str]]:
    """Deterministic listing: each model as sorted strings, models sorted."""
    rows = [sorted(str(l) for l in m) for m in models]
    return sorted(rows, key=lambda r: (len(r), r))
