import pytest

from dlplab import applicability
from dlplab.errors import ApplicabilityError, ConstraintPresent
from dlplab.fixtures import DLPS
from dlplab.parser import parse_dlp
from dlplab.registry import NAMES, compute_models


@pytest.mark.parametrize("sem", ["ju", "as", "ds", "rd", "eb", "ea"])
def test_every_causal_and_exception_semantics_on_intro(sem, mods):
    assert compute_models(sem, parse_dlp(DLPS["intro"])) == mods("goHome robbed")


def test_unknown_name():
    with pytest.raises(ApplicabilityError):
        compute_models("zz", parse_dlp("p."))


@pytest.mark.parametrize("sem, text, fragment", [
    ("ju", "p.\n:- p.", "integrity constraint"),
    ("rvd", "not p.", "default negation"),
    ("prz", "p.", "length two"),
    ("rvs", "p.\n#update.\nq.\n#update.\nr.", "got 3 layers"),
])
def test_violations_name_the_restriction(sem, text, fragment):
    msg = applicability.violation(sem, parse_dlp(text))
    assert fragment in msg
    with pytest.raises(ApplicabilityError, match=fragment):
        applicability.require(sem, parse_dlp(text))


def test_exception_semantics_accept_everything(mods):
    dlp = parse_dlp("not p.\n:- q.\n#update.\nq :- not p.\n#update.\np.")
    assert applicability.is_applicable("eb", dlp)
    assert compute_models("eb", dlp) == mods("p")


def test_constraint_errors_are_applicability_errors():
    assert issubclass(ConstraintPresent, ApplicabilityError)


def test_all_names_are_listed():
    assert set(NAMES) == set(applicability.RESTRICTIONS)
