"""Belief change over extensional propositional formulas and model-based rule updates.

A :class:`Formula` is its set of worlds over a strong-negation-free
alphabet.  Conjunction and disjunction are intersection and union of worlds;
``φ ⊨ ψ`` is world inclusion.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

from .models import Universe, classical_models, stable_models
from .syntax import ObjLit, Program


@dataclass(frozen=True)
class Formula:
    """A propositional theory represented by the worlds that satisfy it."""

    alphabet: tuple[str, ...]
    masks: frozenset[int]

    @classmethod
    def from_worlds(cls, worlds: Iterable[Iterable[str]], alphabet: Iterable[str] = ()) -> "Formula":
        worlds = [frozenset(str(a) for a in w) for w in worlds]
        letters = tuple(sorted(set(alphabet).union(*worlds) if worlds else set(alphabet)))
        index = {a: k for k, a in enumerate(letters)}
        return cls(letters, frozenset(sum(1 << index[a] for a in w) for w in worlds))

    @classmethod
    def from_interpretations(cls, interps: Iterable[Iterable[ObjLit]], alphabet: Iterable[str] = ()) -> "Formula":
        rows = []
        for m in interps:
            if any(l.negative for l in m):
                raise ValueError("formulas are over strong-negation-free alphabets")
            rows.append([l.atom for l in m])
        return cls.from_worlds(rows, alphabet)

    @classmethod
    def top(cls, alphabet: Sequence[str]) -> "Formula":
        letters = tuple(sorted(alphabet))
        return cls(letters, frozenset(range(1 << len(letters))))

    @property
    def worlds(self) -> frozenset[frozenset[str]]:
        return frozenset(self._world(m) for m in self.masks)

    def _world(self, mask: int) -> frozenset[str]:
        return frozenset(a for k, a in enumerate(self.alphabet) if mask >> k & 1)

    def _same(self, other: "Formula") -> None:
        if self.alphabet != other.alphabet:
            raise ValueError("formulas over different alphabets")

    def __and__(self, other: "Formula") -> "Formula":
        self._same(other)
        return Formula(self.alphabet, self.masks & other.masks)

    def __or__(self, other: "Formula") -> "Formula":
        self._same(other)
        return Formula(self.alphabet, self.masks | other.masks)

    def entails(self, other: "Formula") -> bool:
        self._same(other)
        return self.masks <= other.masks

    @property
    def satisfiable(self) -> bool:
        return bool(self.masks)

    @property
    def complete(self) -> bool:
        return len(self.masks) == 1

    def to_json(self) -> list[list[str]]:
        return sorted((sorted(self._world(m)) for m in self.masks), key=lambda r: (len(r), r))

    def __str__(self) -> str:
        return "{" + ", ".join("{" + ",".join(w) + "}" for w in self.to_json()) + "}"


def all_formulas(alphabet: Sequence[str]) -> list[Formula]:
    letters = tuple(sorted(alphabet))
    n_worlds = 1 << len(letters)
    return [Formula(letters, frozenset(w for w in range(n_worlds) if code >> w & 1))
            for code in range(1 << n_worlds)]


@lru_cache(maxsize=1 << 16)
def _closest(world: int, candidates: frozenset[int]) -> frozenset[int]:
    """Members of candidates whose difference to world is ⊆-minimal."""
    diffs = {c: c ^ world for c in candidates}
    return frozenset(
        c for c, d in diffs.items()
        if not any(e != d and e & d == e for e in diffs.values())
    )


def winslett_update(phi: Formula, mu: Formula) -> Formula:
    """``φ ◊_W μ``: for each world of φ the μ-worlds at ⊆-minimal distance."""
    phi._same(mu)
    out: set[int] = set()
    for w in phi.masks:
        out |= _closest(w, mu.masks)
    return Formula(phi.alphabet, frozenset(out))


# --- postulates ------------------------------------------------------------

Operator = Callable[[Formula, Formula], Formula]


def _equiv(a: Formula, b: Formula) -> bool:
    return a.masks == b.masks


def _u1(op, phi, mu, nu):
    return op(phi, mu).entails(mu)


def _u2(op, phi, mu, nu):
    return not phi.entails(mu) or _equiv(op(phi, mu), phi)


def _u3(op, phi, mu, nu):
    return not (phi.satisfiable and mu.satisfiable) or op(phi, mu).satisfiable


def _u4(op, phi, mu, nu):
    # with extensional formulas, φ1 ≡ φ2 and μ1 ≡ μ2 means identical world sets,
    # so syntax independence always holds; it is checked against a relabelled copy
    clone_phi = Formula(phi.alphabet, frozenset(phi.masks))
    clone_mu = Formula(mu.alphabet, frozenset(mu.masks))
    return _equiv(op(phi, mu), op(clone_phi, clone_mu))


def _u5(op, phi, mu, nu):
    return (op(phi, mu) & nu).entails(op(phi, mu & nu))


def _u6(op, phi, mu, nu):
    a, b = op(phi, mu), op(phi, nu)
    return not (a.entails(nu) and b.entails(mu)) or _equiv(a, b)


def _u7(op, phi, mu, nu):
    if not phi.complete:
        return True
    return (op(phi, mu) & op(phi, nu)).entails(op(phi, mu | nu))


def _u8(op, phi, psi, mu):
    return _equiv(op(phi | psi, mu), op(phi, mu) | op(psi, mu))


def _r1(op, phi, mu, nu):
    return op(phi, mu).entails(mu)


def _r2(op, phi, mu, nu):
    conj = phi & mu
    return not conj.satisfiable or _equiv(op(phi, mu), conj)


def _r3(op, phi, mu, nu):
    return not mu.satisfiable or op(phi, mu).satisfiable


_r4 = _u4


def _r5(op, phi, mu, nu):
    return (op(phi, mu) & nu).entails(op(phi, mu & nu))


def _r6(op, phi, mu, nu):
    left = op(phi, mu) & nu
    return not left.satisfiable or op(phi, mu & nu).entails(left)


UPDATE_POSTULATES: dict[str, Callable] = {
    "U1": _u1, "U2": _u2, "U3": _u3, "U4": _u4,
    "U5": _u5, "U6": _u6, "U7": _u7, "U8": _u8,
}
REVISION_POSTULATES: dict[str, Callable] = {
    "R1": _r1, "R2": _r2, "R3": _r3, "R4": _r4, "R5": _r5, "R6": _r6,
}


@dataclass
class PostulateReport:
    """Outcome of checking postulates on one operator.

    ``counterexamples`` maps each failed postulate to the first failing
    triple, in enumeration order.
    """

    alphabet: tuple[str, ...]
    mode: str
    triples: int
    seed: int | None
    results: dict[str, bool] = field(default_factory=dict)
    counterexamples: dict[str, tuple[Formula, Formula, Formula]] = field(default_factory=dict)

    def passed(self, name: str | None = None) -> bool:
        if name is not None:
            return self.results[name]
        return all(self.results.values())

    def failed(self) -> list[str]:
        return [k for k, v in self.results.items() if not v]

    def to_json(self) -> str:
        data = {
            "alphabet": list(self.alphabet),
            "mode": self.mode,
            "triples": self.triples,
            "seed": self.seed,
            "results": self.results,
            "counterexamples": {k: [f.to_json() for f in t] for k, t in self.counterexamples.items()},
        }
        return json.dumps(data, sort_keys=True, indent=2)

    def to_markdown(self) -> str:
        head = (f"Postulates over {{{', '.join(self.alphabet)}}}: {self.mode}, "
                f"{self.triples} triples" + (f", seed {self.seed}" if self.seed is not None else ""))
        lines = [head, "", "| postulate | verdict | counterexample |", "|---|---|---|"]
        for k, ok in self.results.items():
            ce = self.counterexamples.get(k)
            shown = " ; ".join(str(f) for f in ce) if ce else ""
            lines.append(f"| {k} | {'pass' if ok else 'FAIL'} | {shown} |")
        return "\n".join(lines) + "\n"


def _triples(formulas: list[Formula], mode: str, samples: int, seed: int) -> Iterator[tuple]:
    if mode == "exhaustive":
        yield from itertools.product(formulas, repeat=3)
    else:
        rng = random.Random(seed)
        for _ in range(samples):
            yield tuple(rng.choice(formulas) for _ in range(3))


def check_postulates(op: Operator, alphabet: Sequence[str], postulates: dict[str, Callable],
                     samples: int = 10_000, seed: int = 0, exhaustive: bool | None = None
                     ) -> PostulateReport:
    """Check the given postulates on every formula triple (or a seeded sample).

    Exhaustive enumeration is the default up to two letters; beyond that
    ``samples`` triples are drawn with ``random.Random(seed)``.
    """
    formulas = all_formulas(alphabet)
    if exhaustive is None:
        exhaustive = len(alphabet) <= 2
    mode = "exhaustive" if exhaustive else "sampled"
    report = PostulateReport(tuple(sorted(alphabet)), mode,
                             len(formulas) ** 3 if exhaustive else samples,
                             None if exhaustive else seed)
    report.results = {k: True for k in postulates}
    for triple in _triples(formulas, mode, samples, seed):
        for name, check in postulates.items():
            if report.results[name] and not check(op, *triple):
                report.results[name] = False
                report.counterexamples[name] = triple
        if not any(report.results.values()):
            break
    return report


def check_update_postulates(op: Operator, alphabet: Sequence[str], **kw) -> PostulateReport:
    return check_postulates(op, alphabet, UPDATE_POSTULATES, **kw)


def check_revision_postulates(op: Operator, alphabet: Sequence[str], **kw) -> PostulateReport:
    return check_postulates(op, alphabet, REVISION_POSTULATES, **kw)


# --- first-era rule updates -------------------------------------------------

def _closest_interpretations(i_mask: int, candidates: list[int]) -> list[int]:
    diffs = [(c, c ^ i_mask) for c in candidates]
    return [c for c, d in diffs if not any(e != d and e & d == e for _, e in diffs)]


def mt_justified_update(i: Iterable[ObjLit], u: Program, universe=None) -> set[frozenset]:
    """Models of ``U`` closest to ``I`` under symmetric difference."""
    i = frozenset(i)
    un = Universe.of(u, i) if universe is None else Universe.of(u, i, universe)
    models = [un.mask(m) for m in classical_models(u, un)]
    return {un.interp(m) for m in _closest_interpretations(un.mask(i), models)}


def alferes_model_update(p: Program, u: Program, universe=None) -> set[frozenset]:
    """Union over stable models of ``P`` of their justified updates by ``U``."""
    un = Universe.of(p, u) if universe is None else Universe.of(p, u, universe)
    models = [un.mask(m) for m in classical_models(u, un)]
    out: set[frozenset] = set()
    for j in stable_models(p, un):
        out |= {un.interp(m) for m in _closest_interpretations(un.mask(j), models)}
    return out
