"""Ground rule syntax: literals, rules, programs and dynamic logic programs.

All values are immutable.  Rules inside a program are wrapped in
:class:`RuleOccurrence` objects carrying a positional id ``(layer, ordinal)``;
set operations on programs compare those ids, never rule structure, so the
same rule appearing in two layers stays two distinct occurrences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence

#: reserved atom of the canonical tautology used by RR-equivalence
TAU_ATOM = "__tau"

#: ordinals at or above this value are reserved for rules derived by expansion
DERIVED_OFFSET = 1_000_000


class ObjLit(NamedTuple):
    """An objective literal: an atom, optionally strongly negated."""

    atom: str
    negative: bool = False

    @property
    def complement(self) -> "ObjLit":
        return ObjLit(self.atom, not self.negative)

    def __str__(self) -> str:
        return "-" + self.atom if self.negative else self.atom

    @classmethod
    def parse(cls, text: str) -> "ObjLit":
        text = text.strip()
        if text.startswith("-"):
            return cls(text[1:].strip(), True)
        return cls(text, False)


def complement(lit: ObjLit) -> ObjLit:
    return lit.complement


class Literal(NamedTuple):
    """An objective literal or its default negation.

    Double default negation is absorbed by construction: only one flag exists,
    and :meth:`negate` of a default literal returns the objective one.
    """

    obj: ObjLit
    naf: bool = False

    def negate(self) -> "Literal":
        return Literal(self.obj, not self.naf)

    def __str__(self) -> str:
        return "not " + str(self.obj) if self.naf else str(self.obj)

    @classmethod
    def parse(cls, text: str) -> "Literal":
        text = text.strip()
        naf = False
        # each leading "not" flips the flag, so "not not p" is p
        while text.startswith("not ") or text.startswith("~"):
            naf = not naf
            text = text[1:] if text.startswith("~") else text[4:]
            text = text.lstrip()
        return cls(ObjLit.parse(text), naf)


def lit(text: str) -> Literal:
    """Shorthand: ``lit("not -p")``."""
    return Literal.parse(text)


def obj(text: str) -> ObjLit:
    return ObjLit.parse(text)


def interp(*items: str | Iterable[str]) -> frozenset[ObjLit]:
    """Build an interpretation from literal strings: ``interp("p", "-q")``.

    A single whitespace separated string also works: ``interp("p -q")``.
    """
    names: list[str] = []
    for item in items:
        if isinstance(item, str):
            names.extend(item.split())
        else:
            names.extend(item)
    return frozenset(ObjLit.parse(n) for n in names)


def _sorted_lits(lits: Iterable[Literal]) -> list[Literal]:
    return sorted(lits, key=lambda l: (l.obj.atom, l.obj.negative, l.naf))


@dataclass(frozen=True)
class Rule:
    """A non-disjunctive rule ``H <- B`` with ``|H| <= 1``."""

    head: frozenset[Literal] = frozenset()
    body: frozenset[Literal] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "head", frozenset(self.head))
        object.__setattr__(self, "body", frozenset(self.body))
        if len(self.head) > 1:
            raise ValueError(f"disjunctive head not supported: {sorted(map(str, self.head))}")

    @classmethod
    def make(cls, head: Literal | str | None, body: Iterable[Literal | str] = ()) -> "Rule":
        if isinstance(head, str):
            head = Literal.parse(head)
        hs = frozenset() if head is None else frozenset([head])
        bs = frozenset(Literal.parse(b) if isinstance(b, str) else b for b in body)
        return cls(hs, bs)

    @property
    def head_literal(self) -> Literal | None:
        for h in self.head:
            return h
        return None

    @property
    def is_constraint(self) -> bool:
        return not self.head

    @property
    def is_fact(self) -> bool:
        return len(self.head) == 1 and not self.body

    @property
    def body_pos(self) -> frozenset[ObjLit]:
        return frozenset(l.obj for l in self.body if not l.naf)

    @property
    def body_neg(self) -> frozenset[ObjLit]:
        return frozenset(l.obj for l in self.body if l.naf)

    @property
    def head_pos(self) -> frozenset[ObjLit]:
        return frozenset(l.obj for l in self.head if not l.naf)

    @property
    def head_neg(self) -> frozenset[ObjLit]:
        return frozenset(l.obj for l in self.head if l.naf)

    def objective_literals(self) -> frozenset[ObjLit]:
        return frozenset(l.obj for l in self.head | self.body)

    def atoms(self) -> frozenset[str]:
        return frozenset(l.obj.atom for l in self.head | self.body)

    def __str__(self) -> str:
        head = " ".join(str(h) for h in self.head)
        body = ", ".join(str(b) for b in _sorted_lits(self.body))
        if not body:
            return f"{head}." if head else ":- ."
        if not head:
            return f":- {body}."
        return f"{head} :- {body}."


class RuleOccurrence(NamedTuple):
    rule: Rule
    id: tuple[int, int]

    @property
    def layer(self) -> int:
        return self.id[0]

    @property
    def derived(self) -> bool:
        return self.id[1] >= DERIVED_OFFSET

    def __str__(self) -> str:
        return str(self.rule)


def format_id(rid: tuple[int, int]) -> str:
    layer, ordinal = rid
    if ordinal >= DERIVED_OFFSET:
        return f"{layer}:{ordinal - DERIVED_OFFSET}e"
    return f"{layer}:{ordinal}"


@dataclass(frozen=True)
class Program:
    """An ordered collection of rule occurrences over an alphabet of atoms."""

    rules: tuple[RuleOccurrence, ...] = ()
    alphabet: frozenset[str] = field(default=frozenset())

    def __post_init__(self) -> None:
        object.__setattr__(self, "rules", tuple(self.rules))
        mentioned = frozenset(a for occ in self.rules for a in occ.rule.atoms())
        object.__setattr__(self, "alphabet", frozenset(self.alphabet) | mentioned)

    @classmethod
    def of(cls, rules: Iterable[Rule | RuleOccurrence], layer: int = 0,
           alphabet: Iterable[str] = ()) -> "Program":
        occs: list[RuleOccurrence] = []
        for k, r in enumerate(rules):
            if isinstance(r, RuleOccurrence):
                occs.append(r)
            else:
                occs.append(RuleOccurrence(r, (layer, k)))
        return cls(tuple(occs), frozenset(alphabet))

    def __iter__(self) -> Iterator[RuleOccurrence]:
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def plain_rules(self) -> list[Rule]:
        return [occ.rule for occ in self.rules]

    def ids(self) -> frozenset[tuple[int, int]]:
        return frozenset(occ.id for occ in self.rules)

    def objective_literals(self) -> frozenset[ObjLit]:
        return frozenset(l for occ in self.rules for l in occ.rule.objective_literals())

    def with_alphabet(self, alphabet: Iterable[str]) -> "Program":
        return Program(self.rules, self.alphabet | frozenset(alphabet))

    def select(self, ids: Iterable[tuple[int, int]]) -> "Program":
        keep = set(ids)
        return Program(tuple(o for o in self.rules if o.id in keep), self.alphabet)

    def without(self, ids: Iterable[tuple[int, int]]) -> "Program":
        drop = set(ids)
        return Program(tuple(o for o in self.rules if o.id not in drop), self.alphabet)

    def union(self, other: "Program") -> "Program":
        seen = {o.id for o in self.rules}
        clash = [o.id for o in other.rules if o.id in seen]
        if clash:
            raise ValueError(f"occurrence ids collide: {clash}")
        return Program(self.rules + other.rules, self.alphabet | other.alphabet)

    def relayer(self, layer: int) -> "Program":
        """Renumber occurrences as ``(layer, 0..n-1)``."""
        return Program(tuple(RuleOccurrence(o.rule, (layer, k)) for k, o in enumerate(self.rules)),
                       self.alphabet)

    def has_constraints(self) -> bool:
        return any(o.rule.is_constraint for o in self.rules)

    def has_default_heads(self) -> bool:
        return any(o.rule.head_neg for o in self.rules)

    def structurally_equal(self, other: "Program") -> bool:
        """Id-insensitive comparison of the rule multisets."""
        return sorted(map(str, self.plain_rules())) == sorted(map(str, other.plain_rules()))

    def __str__(self) -> str:
        from .parser import render_program

        return render_program(self)


@dataclass(frozen=True)
class Dlp:
    """A dynamic logic program: a sequence of layers over a shared alphabet."""

    layers: tuple[Program, ...] = ()
    alphabet: frozenset[str] = field(default=frozenset())
    expanded: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "layers", tuple(self.layers))
        shared = frozenset(self.alphabet).union(*(p.alphabet for p in self.layers))
        object.__setattr__(self, "alphabet", shared)
        seen: set[tuple[int, int]] = set()
        for i, layer in enumerate(self.layers):
            for occ in layer.rules:
                if occ.id in seen:
                    raise ValueError(f"duplicate occurrence id {occ.id}")
                if occ.layer != i:
                    raise ValueError(f"occurrence {occ.id} placed in layer {i}")
                seen.add(occ.id)

    @classmethod
    def of(cls, programs: Sequence[Program | Iterable[Rule]], alphabet: Iterable[str] = ()) -> "Dlp":
        layers = []
        for i, p in enumerate(programs):
            if isinstance(p, Program):
                layers.append(p.relayer(i) if any(o.layer != i for o in p.rules) else p)
            else:
                layers.append(Program.of(p, layer=i))
        return cls(tuple(layers), frozenset(alphabet))

    def __len__(self) -> int:
        return len(self.layers)

    def __getitem__(self, i: int) -> Program:
        return self.layers[i]

    def all(self) -> Program:
        """``all(P)``: the disjoint union of all layers."""
        return Program(tuple(o for p in self.layers for o in p.rules), self.alphabet)

    def occurrences(self) -> list[RuleOccurrence]:
        return [o for p in self.layers for o in p.rules]

    def objective_literals(self) -> frozenset[ObjLit]:
        return frozenset().union(*(p.objective_literals() for p in self.layers))

    def append(self, rules: Iterable[Rule]) -> "Dlp":
        """The DLP with one more layer holding ``rules``."""
        n = len(self.layers)
        return Dlp(self.layers + (Program.of(rules, layer=n),), self.alphabet)

    def has_constraints(self) -> bool:
        return any(p.has_constraints() for p in self.layers)

    def has_default_heads(self) -> bool:
        return any(p.has_default_heads() for p in self.layers)

    def __str__(self) -> str:
        from .parser import render_dlp

        return render_dlp(self)
