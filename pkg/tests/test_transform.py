from dlplab.parser import parse_dlp, parse_program, parse_rule
from dlplab.models import stable_models
from dlplab.transform import eliminate_constraints, expand, is_acyclic, is_tautological, source_id


def test_expansion_adds_default_complements():
    dlp = expand(parse_dlp(["p.", "-money :- robbed."]))
    shown = [str(o) for o in dlp[1]]
    assert shown == ["-money :- robbed.", "not money :- robbed."]
    derived = dlp[1].rules[1]
    assert derived.derived and source_id(derived.id) == (1, 0)


def test_expansion_skips_default_heads_and_constraints():
    dlp = expand(parse_dlp("not p :- q.\n:- q."))
    assert len(dlp[0]) == 2


def test_expansion_is_idempotent():
    dlp = expand(parse_dlp("p.\n-q."))
    assert expand(dlp) is dlp


def test_eliminate_constraints_keeps_stable_models():
    prog = parse_program("p :- not q.\nq :- not p.\n:- p.")
    out = eliminate_constraints(prog)
    assert not out.has_constraints()
    visible = {frozenset(l for l in m if l.atom != "aux0") for m in stable_models(out)}
    assert visible == stable_models(prog)


def test_eliminate_constraints_picks_fresh_names():
    out = eliminate_constraints(parse_program("aux0.\n:- aux0."))
    assert "aux1" in out.alphabet
    assert stable_models(out) == set()


def test_acyclic_witness():
    ok, level = is_acyclic(parse_dlp("q :- p.\n#update.\nr :- not q."))
    assert ok
    assert level["p"] < level["q"] < level["r"]


def test_self_dependency_is_cyclic():
    assert is_acyclic(parse_dlp("p :- p."))[0] is False
    assert is_acyclic(parse_dlp("-p :- not p."))[0] is False


def test_cycles_across_layers():
    assert is_acyclic(parse_dlp("p :- q.\n#update.\nq :- not p."))[0] is False


def test_constraints_are_cyclic():
    assert is_acyclic(parse_dlp(":- p."))[0] is False


def test_strong_negation_shares_a_level():
    ok, level = is_acyclic(parse_dlp("-p :- q.\nr :- p."))
    assert ok and level["q"] < level["p"] < level["r"]


def test_tautological_rules():
    assert is_tautological(parse_rule("p :- p."))
    assert is_tautological(parse_rule("not p :- not p."))
    assert is_tautological(parse_rule("q :- p, not p."))
    assert not is_tautological(parse_rule("p :- not p."))
    assert not is_tautological(parse_rule("p :- -p."))


def test_acyclic_programs_have_no_tautologies():
    dlp = parse_dlp("q :- p, not r.\n#update.\ns :- q.")
    assert is_acyclic(dlp)[0]
    assert not any(is_tautological(o.rule) for o in dlp.occurrences())
