"""Property checkers, random DLP generation and differential comparison of
rule update semantics."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from . import applicability
from .errors import ApplicabilityError
from .models import body_satisfied, satisfies
from .parser import parse_rule
from .registry import compute_models
from .syntax import Dlp, Literal, ObjLit, Program, Rule
from .transform import expand, is_acyclic, is_tautological

PROPERTIES = (
    "support",
    "language-conservation",
    "fact-update",
    "causal-rejection",
    "acyclic-ju",
    "tautology-immunity",
    "empty-immunity",
    "primacy",
)

CAUSAL_CHAIN = ("as", "ju", "ds", "rd")


def _show(models: Iterable[Iterable[ObjLit]]) -> list[list[str]]:
    return sorted((sorted(map(str, m)) for m in models), key=lambda r: (len(r), r))


# --- verdicts -----------------------------------------------------------------

@dataclass
class PropertyVerdict:
    """Outcome of checking one property of one semantics on one DLP.

    ``counterexample`` holds the offending model and, where it makes sense,
    the ids of the rules or the layer involved.
    """

    property: str
    semantics: str
    dlp: Dlp
    passed: bool
    counterexample: dict | None = None
    note: str = ""

    def to_json(self) -> dict:
        out = {"property": self.property, "semantics": self.semantics, "pass": self.passed,
               "dlp": str(self.dlp)}
        if self.counterexample is not None:
            cex = dict(self.counterexample)
            if "model" in cex:
                cex["model"] = sorted(map(str, cex["model"]))
            out["counterexample"] = cex
        if self.note:
            out["note"] = self.note
        return out


class _Models:
    """Memoised model computation for one DLP and its one-layer extensions."""

    def __init__(self, prx_op: int = 2, prx_strategy=None):
        self.prx_op = prx_op
        self.prx_strategy = prx_strategy
        self._cache: dict[tuple[str, str], set[frozenset]] = {}

    def __call__(self, semantics: str, dlp: Dlp) -> set[frozenset]:
        key = (semantics, str(dlp) + f"|{len(dlp)}|" + ",".join(sorted(dlp.alphabet)))
        got = self._cache.get(key)
        if got is None:
            got = compute_models(semantics, dlp, self.prx_op, self.prx_strategy)
            self._cache[key] = got
        return got


# --- per-model checks ----------------------------------------------------------

def supports(program: Program | Iterable[Rule], j: frozenset) -> ObjLit | None:
    """The first literal of ``J`` without support in ``program``, if any."""
    rules = program.plain_rules() if isinstance(program, Program) else list(program)
    for l in sorted(j):
        if not any(r.head_literal == Literal(l) and body_satisfied(j, r) for r in rules):
            return l
    return None


def unrejected_violation(dlp: Dlp, j: frozenset) -> tuple[int, int] | None:
    """Id of a rule violated in ``J`` with no later conflicting rule of the
    expanded DLP whose body holds in ``J``."""
    exp = expand(dlp)
    for i, layer in enumerate(dlp.layers):
        for occ in layer.rules:
            if satisfies(j, occ.rule):
                continue
            h = occ.rule.head_literal
            found = False
            if h is not None:
                for later in exp.layers[i + 1:]:
                    for s in later.rules:
                        g = s.rule.head_literal
                        if g is not None and g.obj == h.obj and g.naf != h.naf and body_satisfied(j, s.rule):
                            found = True
                            break
                    if found:
                        break
            if not found:
                return occ.id
    return None


def fact_update_expectation(dlp: Dlp) -> frozenset | None:
    """The literal-inertia interpretation, or None if some layer is not a
    consistent set of facts."""
    if not is_fact_sequence(dlp):
        return None
    out = set()
    for j, layer in enumerate(dlp.layers):
        for occ in layer.rules:
            h = occ.rule.head_literal
            if h.naf:
                continue
            l = h.obj
            overridden = any(
                s.rule.head_literal in (Literal(l.complement), Literal(l, True))
                for later in dlp.layers[j + 1:] for s in later.rules)
            if not overridden:
                out.add(l)
    return frozenset(out)


def is_fact_sequence(dlp: Dlp) -> bool:
    for layer in dlp.layers:
        heads = set()
        for occ in layer.rules:
            r = occ.rule
            if r.body or r.head_literal is None:
                return False
            heads.add(r.head_literal)
        for h in heads:
            if not h.naf and (Literal(h.obj.complement) in heads or Literal(h.obj, True) in heads):
                return False
    return True


def tautologies(dlp: Dlp) -> list[Rule]:
    """A small family of tautological rules over the atoms of ``dlp``."""
    out = []
    for a in sorted(dlp.alphabet):
        p = ObjLit(a)
        out.append(Rule.make(Literal(p), [Literal(p)]))
        out.append(Rule.make(Literal(p, True), [Literal(p, True)]))
        if ObjLit(a, True) in dlp.objective_literals():
            out.append(Rule.make(Literal(ObjLit(a, True)), [Literal(ObjLit(a, True))]))
    atoms = sorted(dlp.alphabet)
    if len(atoms) >= 2:
        p, q = ObjLit(atoms[0]), ObjLit(atoms[1])
        out.append(Rule.make(Literal(p), [Literal(q), Literal(q, True)]))
    return out


# --- property checks -------------------------------------------------------

def check_property(prop: str, semantics: str, dlp: Dlp, models=None,
                   tautology: Rule | None = None) -> PropertyVerdict:
    """Evaluate one property of one semantics on one DLP.

    Raises :class:`ApplicabilityError` when the semantics does not apply to
    the DLP.  ``models`` may be a memoising callable shared across checks.
    """
    s = semantics.lower()
    if prop not in PROPERTIES:
        raise ValueError(f"unknown property {prop!r}")
    compute = models if models is not None else _Models()
    if not (s == "prz" and prop == "empty-immunity"):
        applicability.require(s, dlp)
    verdict = lambda ok, cex=None, note="": PropertyVerdict(prop, s, dlp, ok, cex, note)

    if prop in ("support", "language-conservation", "causal-rejection", "primacy"):
        for j in sorted(compute(s, dlp), key=lambda m: sorted(map(str, m))):
            cex = _model_failure(prop, dlp, j)
            if cex is not None:
                return verdict(False, cex)
        return verdict(True)

    if prop == "fact-update":
        expected = fact_update_expectation(dlp)
        if expected is None:
            return verdict(True, note="not a sequence of consistent sets of facts")
        got = compute(s, dlp)
        if got == {expected}:
            return verdict(True)
        extra = sorted(got - {expected}, key=lambda m: sorted(map(str, m)))
        model = extra[0] if extra else expected
        return verdict(False, {"model": model, "expected": sorted(map(str, expected)),
                               "got": _show(got)})

    if prop == "acyclic-ju":
        if not is_acyclic(dlp)[0]:
            return verdict(True, note="not acyclic")
        return _compare(verdict, compute(s, dlp), compute("ju", dlp), {"against": "ju"})

    if prop == "tautology-immunity":
        candidates = [tautology] if tautology is not None else tautologies(dlp)
        for t in candidates:
            ext = dlp.append([t])
            if not applicability.is_applicable(s, ext):
                continue
            v = _compare(verdict, compute(s, dlp), compute(s, ext), {"tautology": str(t)})
            if not v.passed:
                return v
        return verdict(True)

    if prop == "empty-immunity":
        ext = dlp.append([])
        if not applicability.is_applicable(s, ext):
            return verdict(True, note="not applicable to the extended DLP")
        return _compare(verdict, compute(s, dlp), compute(s, ext), {"appended": "empty layer"})

    raise AssertionError(prop)


def _compare(verdict, before: set, after: set, info: dict) -> PropertyVerdict:
    if before == after:
        return verdict(True)
    diff = sorted(before ^ after, key=lambda m: sorted(map(str, m)))
    cex = {"model": diff[0], "before": _show(before), "after": _show(after)}
    cex.update(info)
    return verdict(False, cex)


def _model_failure(prop: str, dlp: Dlp, j: frozenset) -> dict | None:
    if prop == "support":
        l = supports(dlp.all(), j)
        return None if l is None else {"model": j, "unsupported": str(l)}
    if prop == "language-conservation":
        outside = sorted(l.atom for l in j if l.atom not in dlp.alphabet)
        return {"model": j, "atoms": outside} if outside else None
    if prop == "causal-rejection":
        rid = unrejected_violation(dlp, j)
        return None if rid is None else {"model": j, "rule": list(rid)}
    if prop == "primacy":
        if not dlp.layers:
            return None
        last = dlp.layers[-1]
        for occ in last.rules:
            if not satisfies(j, occ.rule):
                return {"model": j, "rule": list(occ.id), "layer": len(dlp) - 1}
        return None
    raise AssertionError(prop)


def recheck(v: PropertyVerdict, models=None) -> bool:
    """Re-verify a failing verdict from its counterexample alone.

    Returns True when the counterexample still witnesses the failure.
    """
    if v.passed or v.counterexample is None:
        return False
    compute = models if models is not None else _Models()
    j = v.counterexample.get("model")
    if v.property in ("support", "language-conservation", "causal-rejection", "primacy"):
        return j in compute(v.semantics, v.dlp) and _model_failure(v.property, v.dlp, j) is not None
    if v.property == "fact-update":
        got = compute(v.semantics, v.dlp)
        return got != {fact_update_expectation(v.dlp)}
    if v.property == "acyclic-ju":
        return (j in compute(v.semantics, v.dlp)) != (j in compute("ju", v.dlp))
    if v.property == "tautology-immunity":
        ext = v.dlp.append([parse_rule(v.counterexample["tautology"])])
        return (j in compute(v.semantics, v.dlp)) != (j in compute(v.semantics, ext))
    if v.property == "empty-immunity":
        ext = v.dlp.append([])
        return (j in compute(v.semantics, v.dlp)) != (j in compute(v.semantics, ext))
    return False


# --- random generation ---------------------------------------------------------

@dataclass(frozen=True)
class GenConfig:
    """Parameters of the random DLP generator.

    ``rules_per_layer`` is an upper bound: each layer gets between one and
    that many rules.  With ``acyclic`` set, atoms are ordered and every head
    atom comes strictly after its body atoms, which makes the DLP acyclic by
    construction.
    """

    atoms: int = 3
    layers: int = 2
    rules_per_layer: int = 3
    strong_negation: bool = True
    default_heads: bool = True
    tautology_free: bool = False
    constraints: bool = False
    facts_only: bool = False
    acyclic: bool = False
    max_body: int = 2
    seed: int = 0

    def with_seed(self, seed: int) -> "GenConfig":
        return replace(self, seed=seed)


def _atom_names(n: int) -> list[str]:
    return [chr(ord("p") + k) if k < 10 else f"a{k}" for k in range(n)]


def _random_objlit(rng: random.Random, atom: str, cfg: GenConfig) -> ObjLit:
    return ObjLit(atom, cfg.strong_negation and rng.random() < 0.3)


def _random_rule(rng: random.Random, names: list[str], cfg: GenConfig) -> Rule:
    if cfg.facts_only:
        l = _random_objlit(rng, rng.choice(names), cfg)
        return Rule.make(Literal(l, cfg.default_heads and rng.random() < 0.25))
    while True:
        if cfg.acyclic:
            k = rng.randrange(len(names))
            head_atom, pool = names[k], names[:k]
        else:
            head_atom, pool = rng.choice(names), names
        size = rng.randint(0, min(cfg.max_body, len(pool)))
        body = [Literal(_random_objlit(rng, a, cfg), rng.random() < 0.4)
                for a in rng.sample(pool, size)]
        if cfg.constraints and not cfg.acyclic and rng.random() < 0.1:
            head = None
        else:
            head = Literal(_random_objlit(rng, head_atom, cfg), cfg.default_heads and rng.random() < 0.25)
        rule = Rule.make(head, body)
        if cfg.tautology_free and is_tautological(rule):
            continue
        return rule


def _consistent_facts(rules: list[Rule]) -> list[Rule]:
    kept: list[Rule] = []
    heads: set[Literal] = set()
    for r in rules:
        h = r.head_literal
        clash = ({Literal(h.obj.complement), Literal(h.obj, True)} if not h.naf
                 else {Literal(h.obj)})
        if h in heads or clash & heads:
            continue
        kept.append(r)
        heads.add(h)
    return kept


def random_dlp(cfg: GenConfig) -> Dlp:
    """A reproducible random DLP over exactly ``cfg.atoms`` atoms."""
    rng = random.Random(cfg.seed)
    names = _atom_names(cfg.atoms)
    layers = []
    for i in range(cfg.layers):
        rules = [_random_rule(rng, names, cfg) for _ in range(rng.randint(1, cfg.rules_per_layer))]
        if cfg.facts_only:
            rules = _consistent_facts(rules)
        layers.append(Program.of(rules, layer=i, alphabet=names))
    return Dlp(tuple(layers), frozenset(names))


def random_dlps(cfg: GenConfig, n: int) -> list[Dlp]:
    """``n`` instances, instance ``k`` drawn with seed ``cfg.seed + k``."""
    return [random_dlp(cfg.with_seed(cfg.seed + k)) for k in range(n)]


# --- suites and differential comparison ----------------------------------------

@dataclass
class SuiteReport:
    """Aggregated verdicts of running properties over many DLPs."""

    header: dict
    counts: dict[str, dict[str, int]] = field(default_factory=dict)
    failures: list[PropertyVerdict] = field(default_factory=list)
    skipped: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"header": self.header, "counts": self.counts, "skipped": self.skipped,
                "failures": [v.to_json() for v in self.failures[:20]],
                "failure_count": len(self.failures)}

    def to_markdown(self) -> str:
        lines = ["| property | semantics | checked | failed |", "|---|---|---|---|"]
        for key in sorted(self.counts):
            prop, sem = key.split("/")
            c = self.counts[key]
            lines.append(f"| {prop} | {sem} | {c['checked']} | {c['failed']} |")
        head = ", ".join(f"{k}={v}" for k, v in sorted(self.header.items()))
        return f"Property suite ({head})\n\n" + "\n".join(lines) + "\n"


def run_suite(properties: Sequence[str], semantics: Sequence[str], dlps: Iterable[Dlp],
              header: dict | None = None, models=None) -> SuiteReport:
    """Check every property for every semantics on every applicable DLP."""
    report = SuiteReport(dict(header or {}))
    for dlp in dlps:
        compute = models if models is not None else _Models()
        for s in semantics:
            for prop in properties:
                key = f"{prop}/{s}"
                report.counts.setdefault(key, {"checked": 0, "failed": 0})
                try:
                    v = check_property(prop, s, dlp, compute)
                except ApplicabilityError:
                    report.skipped[key] = report.skipped.get(key, 0) + 1
                    continue
                report.counts[key]["checked"] += 1
                if not v.passed:
                    report.counts[key]["failed"] += 1
                    report.failures.append(v)
    return report


def has_strong_negation(dlp: Dlp) -> bool:
    return any(l.negative for l in dlp.objective_literals())


def has_tautologies(dlp: Dlp) -> bool:
    return any(is_tautological(o.rule) for o in dlp.occurrences())


def has_self_reference(dlp: Dlp) -> bool:
    """Some rule mentions its own head atom in its body (``p :- not p``, ``not q :- q``)."""
    for o in dlp.occurrences():
        h = o.rule.head_literal
        if h is not None and h.obj.atom in {l.obj.atom for l in o.rule.body}:
            return True
    return False


@dataclass
class DiffReport:
    """Model sets per DLP, pairwise agreement and violated containments."""

    semantics: list[str]
    rows: list[dict] = field(default_factory=list)
    agreement: dict[str, int] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)
    # differences that are known and expected, reported but not counted as violations
    notes: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"semantics": self.semantics, "instances": len(self.rows),
                "agreement": self.agreement, "violations": self.violations[:20],
                "violation_count": len(self.violations),
                "notes": self.notes[:20], "note_count": len(self.notes), "rows": self.rows[:50]}

    def to_markdown(self) -> str:
        lines = [f"Compared {', '.join(self.semantics)} on {len(self.rows)} DLPs.", "",
                 "| pair | agreeing instances |", "|---|---|"]
        for pair in sorted(self.agreement):
            lines.append(f"| {pair} | {self.agreement[pair]} |")
        lines.append("")
        lines.append(f"Violations of expected containments: {len(self.violations)}")
        for v in self.violations[:20]:
            lines.append(f"- {v['check']}: {v['dlp']!r}")
        if self.notes:
            lines.append("")
            lines.append(f"Known differences (not violations): {len(self.notes)}")
            for v in self.notes[:20]:
                lines.append(f"- {v['check']}: {v['dlp']!r}")
        return "\n".join(lines) + "\n"


def diff_semantics(semantics: Sequence[str], dlps: Iterable[Dlp], models=None) -> DiffReport:
    """Compare semantics on each DLP and flag broken containments.

    Checked containments: the chain AS ⊇ JU ⊇ DS ⊇ RD, coincidence of the
    four on acyclic DLPs, and ε_b ⊆ JU on DLPs without strong negation.
    Equality of ε_b and JU is required when, in addition, there are no
    tautologies and no rule mentions its head atom in its body.  Tautology-free
    DLPs outside that class that still differ are listed in ``notes``.
    """
    sems = [s.lower() for s in semantics]
    report = DiffReport(sems)
    for a, b in itertools.combinations(sems, 2):
        report.agreement[f"{a}={b}"] = 0
    for dlp in dlps:
        compute = models if models is not None else _Models()
        for s in sems:
            applicability.require(s, dlp)
        got = {s: compute(s, dlp) for s in sems}
        report.rows.append({"dlp": str(dlp), "models": {s: _show(m) for s, m in got.items()}})
        for a, b in itertools.combinations(sems, 2):
            if got[a] == got[b]:
                report.agreement[f"{a}={b}"] += 1
        chain = [s for s in CAUSAL_CHAIN if s in got]
        for hi, lo in zip(chain, chain[1:]):
            if not got[lo] <= got[hi]:
                report.violations.append({"check": f"{lo} ⊆ {hi}", "dlp": str(dlp)})
        if len(chain) > 1 and is_acyclic(dlp)[0]:
            if any(got[s] != got[chain[0]] for s in chain):
                report.violations.append({"check": "acyclic coincidence", "dlp": str(dlp)})
        if "eb" in got and "ju" in got and not has_strong_negation(dlp):
            if not got["eb"] <= got["ju"]:
                report.violations.append({"check": "eb ⊆ ju", "dlp": str(dlp)})
            elif not has_tautologies(dlp) and got["eb"] != got["ju"]:
                entry = {"check": "eb = ju without tautologies", "dlp": str(dlp)}
                if has_self_reference(dlp):
                    report.notes.append(entry)
                else:
                    report.violations.append(entry)
    return report
