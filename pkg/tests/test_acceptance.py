"""Acceptance criteria 1 to 15, one marked group per criterion.

``pytest`` prints an "acceptance criteria" section with one pass/fail line
per criterion at the end of the run.
"""

import time

import pytest

from dlplab import causal, semantic
from dlplab.classical import alferes_model_update, check_update_postulates, mt_justified_update, winslett_update
from dlplab.fixtures import DLPS, INTRO_P, INTRO_U, WEATHER_U
from dlplab.harness import (
    GenConfig,
    _Models,
    diff_semantics,
    has_self_reference,
    has_strong_negation,
    has_tautologies,
    random_dlps,
    run_suite,
)
from dlplab.models import ModelSet, Universe, equiv, re_models, three_valued
from dlplab.parser import parse_dlp, parse_program, parse_rule
from dlplab.prioritized import prz_models
from dlplab.revision import rvd_models, rvs_models
from dlplab.syntax import interp

N = 1000
CAUSAL = ["ju", "as", "ds", "rd"]


def dlp(name):
    return parse_dlp(DLPS[name])


def models(sem, name):
    return causal.models(sem, dlp(name))


@pytest.mark.criterion(1)
def test_intro_example(mods):
    assert models("ju", "intro") == models("as", "intro") == mods("robbed goHome")


@pytest.mark.criterion(2)
def test_justified_update(mods):
    got = mt_justified_update(interp("cold sun"), parse_program(WEATHER_U))
    assert got == mods("cold clouds rain")


@pytest.mark.criterion(3)
def test_model_update(mods):
    got = alferes_model_update(parse_program(INTRO_P), parse_program(INTRO_U))
    assert got == mods("robbed goRestaurant")


@pytest.mark.criterion(4)
def test_p1(mods):
    assert models("as", "P1") == mods("-p", "p")
    assert models("ju", "P1") == mods("-p")


@pytest.mark.criterion(5)
def test_p2(mods):
    assert models("ju", "P2") == models("as", "P2") == mods("", "p")
    assert models("ds", "P2") == models("rd", "P2") == mods("p")


@pytest.mark.criterion(6)
def test_p3(mods):
    assert models("ju", "P3") == models("as", "P3") == models("ds", "P3") == mods("p")
    assert models("rd", "P3") == set()


@pytest.mark.criterion(7)
def test_p4(mods):
    for sem in CAUSAL:
        assert models(sem, "P4") == mods("", "p q")


@pytest.mark.criterion(8)
def test_p5_sensitivity(mods):
    assert models("as", "P5") == set()
    assert models("as", "P5'") == mods("p", "-p")


@pytest.mark.criterion(9)
def test_prz(mods):
    assert prz_models(dlp("latent")) == set()
    assert prz_models(dlp("prz-tautology")) == mods("p")
    assert prz_models(dlp("cr-P1")) == mods("-p q", "p q")


@pytest.mark.criterion(10)
def test_rvs(mods):
    assert rvs_models(dlp("cr-P5")) == mods("")
    assert rvs_models(dlp("taut-P6")) == mods("")
    assert rvs_models(dlp("taut-P7")) == mods("p", "-p")


@pytest.mark.criterion(11)
def test_rvd(mods):
    assert rvd_models(dlp("rvd-3")) == mods("q r", "p r")
    assert rvd_models(dlp("cr-P6")) == mods("q")
    assert rvd_models(dlp("taut-P6")) == mods("")
    assert rvd_models(dlp("taut-P7")) == mods("p", "-p")


@pytest.mark.criterion(12)
def test_re_machinery(mods):
    u = Universe.of(atoms=["p", "q"])
    m0, m1, m2 = (re_models(parse_rule(t), u) for t in ("p.", "not p :- not q.", "q."))
    assert (semantic.forces(m0, "p", interp("")), semantic.forces(m1, "p", interp(""))) == ("T", "F")
    assert semantic.forces(m1, "p", interp("p q")) is None
    assert semantic.conflicts(m0, m1, interp("")) == set(interp("p"))
    assert semantic.conflicts(m0, m1, interp("p q")) == set()
    c = semantic.exception_fold("a", dlp("ea-iterated"))
    m0p = m0 | semantic.exception_fn("a", m0, m1)
    assert m0p == m0 | ModelSet.from_three_valued(u, [three_valued("", ""), three_valued("", "p")])
    m0pp = m0p | ModelSet.from_three_valued(u, [three_valued("", "q"), three_valued("q", "q")])
    assert c.sets == {m0pp, m1, m2}
    assert interp("q") in c.stable_models()
    assert semantic.eb_models(dlp("intro")) == mods("robbed goHome")
    assert semantic.eb_models(dlp("se-U")) == mods("q")
    assert semantic.eb_models(dlp("se-V")) == mods("p")


@pytest.mark.criterion(13)
def test_impossibility_demo(mods):
    assert equiv("HT", parse_program("p.\nq."), parse_program("p :- q.\nq."))
    assert semantic.eb_models(dlp("impossible-P")) == mods("p")
    assert semantic.eb_models(dlp("impossible-Q")) == mods("")


# --- criterion 14: property suites over 1000 seeded instances each -------------

@pytest.fixture(scope="module")
def cache():
    return _Models()


@pytest.fixture(scope="module")
def general():
    return random_dlps(GenConfig(atoms=3, layers=3, rules_per_layer=3, seed=1000), N)


def _assert_suite(report):
    assert not report.failures, [v.to_json() for v in report.failures[:3]]
    assert sum(c["checked"] for c in report.counts.values()) > 0


@pytest.mark.criterion(14)
def test_inclusion_chain(general, cache):
    report = diff_semantics(CAUSAL, general, cache)
    assert len(report.rows) == N
    assert not report.violations, report.violations[:3]


@pytest.mark.criterion(14)
def test_acyclic_coincidence():
    dlps = random_dlps(GenConfig(atoms=3, layers=3, acyclic=True, seed=2000), N)
    report = diff_semantics(CAUSAL, dlps)
    assert not report.violations
    assert report.agreement["ju=rd"] == report.agreement["as=ds"] == N


@pytest.mark.criterion(14)
def test_model_properties(general, cache):
    props = ["support", "language-conservation", "causal-rejection", "primacy", "fact-update"]
    _assert_suite(run_suite(props, CAUSAL, general, {"seed": 1000}, cache))


@pytest.mark.criterion(14)
def test_fact_update_on_fact_sequences():
    dlps = random_dlps(GenConfig(atoms=3, layers=3, facts_only=True, seed=3000), N)
    report = run_suite(["fact-update"], CAUSAL, dlps, {"seed": 3000})
    _assert_suite(report)
    assert all(c["checked"] == N for c in report.counts.values())


@pytest.mark.criterion(14)
def test_rd_tautology_immunity():
    dlps = random_dlps(GenConfig(atoms=3, layers=2, seed=4000), N)
    _assert_suite(run_suite(["tautology-immunity"], ["rd"], dlps, {"seed": 4000}))


@pytest.mark.criterion(14)
def test_empty_immunity(general, cache):
    _assert_suite(run_suite(["empty-immunity"], CAUSAL, general, {"seed": 1000}, cache))
    one_layer = random_dlps(GenConfig(atoms=3, layers=1, default_heads=False, seed=5000), N)
    report = run_suite(["empty-immunity"], CAUSAL + ["prz"], one_layer, {"seed": 5000})
    _assert_suite(report)
    assert report.counts["empty-immunity/prz"]["checked"] == N


@pytest.mark.criterion(14)
def test_eb_models_are_ju_models(general, cache):
    for d in general:
        assert cache("eb", d) <= cache("ju", d), str(d)


def _tautology_free():
    return random_dlps(GenConfig(atoms=3, layers=2, tautology_free=True, seed=6000), N)


@pytest.mark.criterion(14)
def test_eb_equals_ju_on_the_restricted_class():
    """Tautology-free, no strong negation, no rule mentioning its head atom in its body."""
    checked = 0
    cfg = GenConfig(atoms=3, layers=2, tautology_free=True, strong_negation=False, seed=7000)
    for d in random_dlps(cfg, N):
        if has_self_reference(d):
            continue
        assert semantic.eb_models(d) == causal.models("ju", d), str(d)
        checked += 1
    assert checked >= 200


@pytest.mark.criterion(14)
@pytest.mark.xfail(strict=True, reason=(
    "literal equality fails: rules such as p :- not p or not q :- q never force a value, "
    "so their rejection is invisible to eb, and RE-model conflicts do not see p against -p; "
    "minimal cases are <{p :- not p.}, {not p.}> and <{not q :- q.}, {q.}>"))
def test_eb_equals_ju_on_every_tautology_free_instance():
    mismatches = [str(d) for d in _tautology_free()
                  if semantic.eb_models(d) != causal.models("ju", d)]
    assert not mismatches, f"{len(mismatches)} of {N} differ, first: {mismatches[0]!r}"


@pytest.mark.criterion(14)
def test_literal_equality_counterexamples_are_tautology_free(mods):
    a = parse_dlp("p :- not p.\n#update.\nnot p.")
    b = parse_dlp("not q :- q.\n#update.\nq.")
    for d in (a, b):
        assert not has_tautologies(d)
    assert (semantic.eb_models(a), causal.models("ju", a)) == (set(), mods(""))
    assert (semantic.eb_models(b), causal.models("ju", b)) == (set(), mods("q"))


# --- criterion 15 ------------------------------------------------------------

@pytest.mark.criterion(15)
def test_winslett_update_postulates():
    start = time.perf_counter()
    report = check_update_postulates(winslett_update, ["p", "q"], exhaustive=True)
    elapsed = time.perf_counter() - start
    assert report.mode == "exhaustive" and report.triples == 16 ** 3
    assert report.passed(), report.failed()
    assert elapsed < 10
