"""One entry point for every rule update semantics, keyed by short name."""

from __future__ import annotations

from . import applicability, causal, prioritized, revision, semantic
from .syntax import Dlp

NAMES = applicability.ALL_SEMANTICS


def compute_models(semantics: str, dlp: Dlp, prx_op: int = 2, prx_strategy=None) -> set[frozenset]:
    """S-models of ``dlp``, after checking that ``semantics`` applies to it."""
    s = semantics.lower()
    if s == "prz" and len(dlp) == 1:
        return prioritized.prz_models(dlp)
    applicability.require(s, dlp)
    if s in causal.SEMANTICS:
        return causal.models(s, dlp)
    if s == "prz":
        return prioritized.prz_models(dlp)
    if s == "rvs":
        return revision.rvs_models(dlp)
    if s == "rvd":
        return revision.rvd_models(dlp)
    if s == "prx":
        return prioritized.prx_models(dlp, prx_op, prx_strategy)
    if s in ("ea", "eb"):
        return semantic.exception_models(s[1], dlp)
    raise ValueError(f"unknown semantics {semantics!r}")
