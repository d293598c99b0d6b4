import time

import pytest

from dlplab import interp
from dlplab.classical import (
    Formula,
    all_formulas,
    alferes_model_update,
    check_revision_postulates,
    check_update_postulates,
    mt_justified_update,
    winslett_update,
)
from dlplab.parser import parse_program

INTRO_P = "goHome :- not money.\ngoRestaurant :- money.\nmoney."
INTRO_U = "not money :- robbed.\nrobbed."


def f(*worlds, alphabet=("p", "q")):
    return Formula.from_worlds([w.split() for w in worlds], alphabet)


def dalal(phi, mu):
    """Revision by minimal Hamming distance, a textbook AGM operator."""
    if not phi.masks:
        return mu
    dist = {m: min(bin(m ^ w).count("1") for w in phi.masks) for m in mu.masks}
    best = min(dist.values(), default=0)
    return Formula(mu.alphabet, frozenset(m for m, d in dist.items() if d == best))


def test_formula_basics():
    phi = f("", "p q")
    assert phi.worlds == {frozenset(), frozenset({"p", "q"})}
    assert phi.to_json() == [[], ["p", "q"]]
    assert (phi & f("p q")).complete
    assert f("p").entails(f("p", "q"))
    assert not f().satisfiable
    assert len(all_formulas(["p", "q"])) == 16


def test_formulas_must_share_alphabets():
    with pytest.raises(ValueError):
        f("p") & Formula.from_worlds([["p"]])


def test_winslett_works_world_by_world():
    # p ∧ q updated by ¬p ∨ ¬q
    assert winslett_update(f("p q"), f("", "p", "q")) == f("p", "q")
    # the world ∅ already satisfies μ, {p,q} moves to both neighbours
    assert winslett_update(f("", "p q"), f("", "p", "q")) == f("", "p", "q")


def test_winslett_satisfies_update_postulates_exhaustively():
    start = time.perf_counter()
    report = check_update_postulates(winslett_update, ["p", "q"])
    assert report.mode == "exhaustive" and report.triples == 16 ** 3
    assert report.passed(), report.failed()
    assert time.perf_counter() - start < 10


def test_winslett_is_not_a_revision_operator():
    report = check_revision_postulates(winslett_update, ["p", "q"])
    assert "R2" in report.failed()
    phi, mu, _ = report.counterexamples["R2"]
    assert (phi & mu).satisfiable and winslett_update(phi, mu) != phi & mu


def test_dalal_revision_passes_revision_postulates():
    assert check_revision_postulates(dalal, ["p", "q"]).passed()


def test_replacing_with_new_information_breaks_u2():
    report = check_update_postulates(lambda phi, mu: mu, ["p", "q"])
    assert "U2" in report.failed()
    assert report.passed("U1")


def test_sampled_mode_for_larger_alphabets():
    report = check_update_postulates(winslett_update, ["p", "q", "r"], samples=300, seed=7)
    assert report.mode == "sampled" and report.seed == 7 and report.triples == 300
    assert report.passed()
    again = check_update_postulates(winslett_update, ["p", "q", "r"], samples=300, seed=7)
    assert report.to_json() == again.to_json()


def test_report_rendering():
    report = check_update_postulates(lambda phi, mu: mu, ["p"])
    assert "| U2 | FAIL |" in report.to_markdown()
    assert '"U2": false' in report.to_json()


def test_justified_update_weather(mods):
    u = parse_program("rain.\nclouds :- rain.\nnot sun :- clouds.")
    assert mt_justified_update(interp("cold sun"), u) == mods("cold clouds rain")


def test_justified_update_keeps_inertia(mods):
    u = parse_program("q.")
    assert mt_justified_update(interp("p"), u) == mods("p q")


def test_alferes_update_of_intro(mods):
    got = alferes_model_update(parse_program(INTRO_P), parse_program(INTRO_U))
    assert got == mods("goRestaurant robbed")


def test_alferes_update_without_stable_models():
    assert alferes_model_update(parse_program("p :- not p."), parse_program("q.")) == set()
