"""Which DLPs each semantics is defined for."""

from __future__ import annotations

from .errors import ApplicabilityError, ConstraintPresent
from .syntax import Dlp

ALL_SEMANTICS = ("ju", "as", "ds", "rd", "prz", "rvs", "rvd", "prx", "ea", "eb")

RESTRICTIONS = {
    "ju": "arbitrary DLPs without integrity constraints",
    "as": "arbitrary DLPs without integrity constraints",
    "ds": "arbitrary DLPs without integrity constraints",
    "rd": "arbitrary DLPs without integrity constraints",
    "prx": "DLPs without default negation in heads of rules and without integrity constraints",
    "rvd": "DLPs without default negation in heads of rules and without integrity constraints",
    "prz": "DLPs of length two without default negation in heads of rules and without integrity constraints",
    "rvs": "DLPs of length two without default negation in heads of rules and without integrity constraints",
    "ea": "arbitrary DLPs",
    "eb": "arbitrary DLPs",
}


def violation(semantics: str, dlp: Dlp) -> str | None:
    """A message naming the violated restriction, or None when applicable."""
    s = semantics.lower()
    if s not in RESTRICTIONS:
        return f"unknown semantics {semantics!r}"
    if s in ("ea", "eb"):
        return None
    if dlp.has_constraints():
        return f"{s.upper()} applies to {RESTRICTIONS[s]}: integrity constraint present"
    if s in ("prx", "rvd", "prz", "rvs") and dlp.has_default_heads():
        return f"{s.upper()} applies to {RESTRICTIONS[s]}: default negation in a rule head"
    if s in ("prz", "rvs") and len(dlp) != 2:
        return f"{s.upper()} applies to {RESTRICTIONS[s]}: got {len(dlp)} layers"
    return None


def is_applicable(semantics: str, dlp: Dlp) -> bool:
    return violation(semantics, dlp) is None


def require(semantics: str, dlp: Dlp) -> None:
    msg = violation(semantics, dlp)
    if msg is not None:
        if "integrity constraint" in msg:
            raise ConstraintPresent(msg)
        raise ApplicabilityError(msg)
