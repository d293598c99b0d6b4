import pytest

from dlplab import causal, semantic
from dlplab.fixtures import DLPS
from dlplab.harness import GenConfig, has_self_reference, has_strong_negation, has_tautologies, random_dlps
from dlplab.models import ModelSet, Universe, equiv, ht_models, re_models, three_valued
from dlplab.parser import parse_dlp, parse_program, parse_rule
from dlplab.semantic import ExceptionCharacterisation as EC
from dlplab.syntax import interp

U2 = Universe.of(atoms=["p", "q"])


def re(text, u=U2):
    return re_models(parse_rule(text), u)


# --- cardinality revision ------------------------------------------------------

def test_revision_by_a_contradicting_fact():
    got = semantic.cardinality_revision(parse_program("p."), parse_program("not p."))
    assert set(got) == {three_valued("", "")}


def test_revision_is_conjunction_when_consistent():
    p, q = parse_program("p."), parse_program("q.")
    u = Universe.of(atoms=["p", "q"])
    assert semantic.cardinality_revision(p, q, u) == ht_models(p, u) & ht_models(q, u)


def test_revision_of_nothing_is_the_new_program():
    u = Universe.of(atoms=["p"])
    p, q = parse_program("p.\nnot p."), parse_program("p :- not p.")
    assert semantic.cardinality_revision(p, q, u) == ht_models(q, u)


def test_revision_postulates_one_to_five_hold():
    report = semantic.check_revision_postulates(samples=300, atoms=2, seed=3)
    for k in range(1, 6):
        assert report.passed(f"PRSE{k}"), report.counterexamples.get(f"PRSE{k}")


def test_revision_postulate_six_fails_for_this_operator():
    u = Universe.of(atoms=["p0", "p1"])
    ht = lambda text: ht_models(parse_program(text), u)
    p, upd, v = ht("p0 :- not p0.\np1 :- not p0.\nnot p1."), ht("p1 :- not p1."), ht("p1.")
    left = semantic.cardinality_revision_sets(p, upd) & v
    right = semantic.cardinality_revision_sets(p, upd & v)
    assert set(left) == {three_valued("p0 p1", "p0 p1")}
    assert set(right) == {three_valued("p1", "p0 p1"), three_valued("p0 p1", "p0 p1")}
    assert not right <= left


# --- forcing and conflicts -------------------------------------------------------

def test_forcing_values():
    m0, m1 = re("p."), re("not p :- not q.")
    assert len(m0) == 3 and len(m1) == 7
    assert semantic.forces(m0, "p", interp("")) == semantic.TRUE
    assert semantic.forces(m1, "p", interp("")) == semantic.FALSE
    assert semantic.forces(m1, "p", interp("p q")) is None


def test_undefined_can_be_forced():
    u = Universe.of(atoms=["p"])
    # both T and U substitutions are models, so nothing is forced
    assert semantic.forces(re_models(parse_rule("p :- not p."), u), "p", interp("")) is None
    assert semantic.forces(ModelSet(u, {(0, 1)}), "p", interp("")) == semantic.UNDEFINED


def test_conflicts_on_atoms():
    m0, m1 = re("p."), re("not p :- not q.")
    assert semantic.conflicts(m0, m1, interp("")) == set(interp("p"))
    assert semantic.conflicts(m0, m1, interp("p")) == set(interp("p"))
    assert semantic.conflicts(m0, m1, interp("p q")) == set()


def test_exception_kinds():
    m0, m1 = re("p."), re("not p :- not q.")
    ea = semantic.exception_fn("a", m0, m1)
    assert set(ea) == {three_valued("", ""), three_valued("", "p"), three_valued("p", "p")}
    eb = semantic.exception_fn("b", m0, m1)
    assert set(eb) == {three_valued("", ""), three_valued("", "q"), three_valued("", "p"),
                       three_valued("p", "p"), three_valued("p", "p q")}
    with pytest.raises(ValueError):
        semantic.exception_fn("c", m0, m1)


def test_no_exceptions_without_conflicts():
    assert not semantic.exception_fn("b", re("p."), re("q.")).pairs


# --- characterisations ---------------------------------------------------------

def test_empty_characterisation_is_everything():
    c = EC("b", U2, frozenset())
    assert c.intersection() == ModelSet.everything(U2)
    assert c.stable_models() == {frozenset()}


def test_iterated_ea_update():
    dlp = parse_dlp(DLPS["ea-iterated"])
    c = semantic.exception_fold("a", dlp)
    assert sorted(len(m) for m in c.sets) == [3, 7, 7]
    assert c.stable_models() == {interp("q"), interp("p q")}
    assert causal.models("ju", dlp) == {interp("p q")}


def test_eb_on_intro_and_its_rule_base(mods):
    c = semantic.exception_fold("b", parse_dlp(DLPS["intro"]))
    assert c.stable_models() == mods("goHome robbed")
    five = parse_program("goHome :- not money.\ngoRestaurant :- money.\nmoney :- not robbed.\n"
                         "not money :- robbed.\nrobbed.")
    assert c.rr_equivalent(five)
    assert not c.rr_equivalent(parse_program("goHome :- not money.\nrobbed."))
    assert sorted(c.render().splitlines()) == sorted(str(o) for o in five)


def test_updates_that_are_not_strongly_equivalent(mods):
    u, v = parse_rule("not p :- q."), parse_rule("not q :- p.")
    assert equiv("HT", u, v)
    assert semantic.eb_models(parse_dlp(DLPS["se-U"])) == mods("q")
    assert semantic.eb_models(parse_dlp(DLPS["se-V"])) == mods("p")


def test_impossibility_witness(mods):
    assert equiv("HT", parse_program("p.\nq."), parse_program("p :- q.\nq."))
    assert semantic.eb_models(parse_dlp(DLPS["impossible-P"])) == mods("p")
    assert semantic.eb_models(parse_dlp(DLPS["impossible-Q"])) == mods("")


def test_update_must_stay_in_the_universe():
    c = EC.of("b", parse_program("p."))
    with pytest.raises(ValueError, match="universe"):
        c.update(parse_program("q."))
    wide = semantic.exception_update("b", parse_program("p."), parse_program("q."))
    assert wide.universe == U2


def test_characterisation_json():
    c = EC.of("b", parse_program("p."), Universe.of(atoms=["p"]))
    assert c.to_json() == [[{"lower": ["p"], "upper": ["p"]}]]


def test_representative_rules():
    assert str(semantic.representative_rule(re("not p :- not q."))) == "not p :- not q."
    taut = semantic.representative_rule(ModelSet.everything(U2))
    assert re_models(taut, U2) == ModelSet.everything(U2)
    big = Universe.of(atoms="abcdef")
    assert semantic.representative_rule(ModelSet.everything(big)) is None


def test_ht_models_of_characterisation():
    c = semantic.exception_fold("b", parse_dlp(DLPS["impossible-P"]))
    assert c.ht_models().is_well_defined()
    assert c.ht_models().totals() >= c.stable_models()


# --- relation to JU --------------------------------------------------------------

CFG = GenConfig(atoms=3, layers=2, strong_negation=False, seed=11)


def test_eb_models_are_ju_models():
    for dlp in random_dlps(CFG, 300):
        assert semantic.eb_models(dlp) <= causal.models("ju", dlp), str(dlp)


def test_eb_equals_ju_without_tautologies_or_self_reference():
    cfg = GenConfig(atoms=3, layers=2, strong_negation=False, tautology_free=True, seed=12)
    checked = 0
    for dlp in random_dlps(cfg, 300):
        if has_self_reference(dlp):
            continue
        assert semantic.eb_models(dlp) == causal.models("ju", dlp), str(dlp)
        checked += 1
    assert checked > 100


@pytest.mark.parametrize("text, eb, ju", [
    ("p :- not p.\n#update.\nnot p.", [], [""]),
    ("not q :- q.\n#update.\nq.", [], ["q"]),
])
def test_self_referential_rules_separate_eb_from_ju(text, eb, ju, mods):
    dlp = parse_dlp(text)
    assert not has_tautologies(dlp) and not has_strong_negation(dlp)
    assert semantic.eb_models(dlp) == mods(*eb)
    assert causal.models("ju", dlp) == mods(*ju)


def test_update_postulate_report_is_informative():
    report = semantic.check_update_postulates("b", samples=100, seed=1)
    assert report.passed("PU1")
    assert not all(report.passed(f"PU{k}") for k in range(1, 7))
    data = report.to_json()
    assert data["operator"] == "eb" and set(data["postulates"]) == {f"PU{k}" for k in range(1, 7)}
