import pytest

from dlplab.errors import ParseError
from dlplab.parser import parse_dlp, parse_program, parse_rule, render_dlp
from dlplab.syntax import Rule


def test_parse_intro_example():
    dlp = parse_dlp(["goHome :- not money.\ngoRestaurant :- money.\nmoney.\n",
                     "not money :- robbed.\nrobbed.\n"])
    assert len(dlp) == 2
    assert [str(o) for o in dlp[1]] == ["not money :- robbed.", "robbed."]
    assert dlp.alphabet == {"goHome", "goRestaurant", "money", "robbed"}


def test_update_separator_and_list_input_agree():
    a = parse_dlp("p.\n#update.\nq :- not p.\n")
    b = parse_dlp(["p.", "q :- not p."])
    assert str(a) == str(b)


@pytest.mark.parametrize("text, shown", [
    ("p.", "p."),
    ("-p :- q, not -r.", "-p :- q, not -r."),
    ("not p :- ~q.", "not p :- not q."),
    ("p <- q.", "p :- q."),
    (":- p, q.", ":- p, q."),
    ("not not p :- q.", "p :- q."),
])
def test_rule_syntax(text, shown):
    assert str(parse_rule(text)) == shown


def test_comments_are_ignored():
    prog = parse_program("% a comment\np. % trailing\n")
    assert [str(o) for o in prog] == ["p."]


def test_disjunction_is_refused():
    with pytest.raises(ParseError, match="disjunctive"):
        parse_program("p ; q.")


def test_error_position():
    with pytest.raises(ParseError) as info:
        parse_program("p.\nq :- r s.")
    assert info.value.line == 2


def test_missing_dot():
    with pytest.raises(ParseError):
        parse_program("p")


def test_program_refuses_separator():
    with pytest.raises(ParseError, match="parse_dlp"):
        parse_program("p.\n#update.\nq.")


def test_round_trip():
    text = "p :- not q.\n-q.\n#update.\nnot p :- -q.\n:- p, q.\n"
    dlp = parse_dlp(text)
    again = parse_dlp(render_dlp(dlp))
    assert str(again) == str(dlp)
    assert [o.id for o in again.occurrences()] == [o.id for o in dlp.occurrences()]


def test_empty_layers_survive():
    dlp = parse_dlp("p.\n#update.\n")
    assert len(dlp) == 2 and len(dlp[1]) == 0


def test_rule_make_matches_parser():
    assert Rule.make("p", ["q"]) == parse_rule("p :- q.")
