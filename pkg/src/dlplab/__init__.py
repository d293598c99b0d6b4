"""dlplab: update and revision semantics for answer-set programs, by brute force."""

from .classical import Formula, alferes_model_update, mt_justified_update, winslett_update
from .errors import (
    AlphabetTooLarge,
    ApplicabilityError,
    ConstraintPresent,
    DlpLabError,
    NoStrategyConfigured,
    ParseError,
    PriorityCycle,
)
from .harness import GenConfig, PropertyVerdict, check_property, diff_semantics, random_dlp
from .models import (
    ModelSet,
    ThreeValued,
    Universe,
    classical_models,
    equiv,
    ht_models,
    re_models,
    stable_models,
)
from .parser import parse_dlp, parse_program, parse_rule, render_dlp
from .registry import compute_models
from .semantic import ExceptionCharacterisation, cardinality_revision, exception_fold
from .syntax import Dlp, Literal, ObjLit, Program, Rule, interp
from .transform import eliminate_constraints, expand, is_acyclic, is_tautological

__version__ = "0.1.0"

__all__ = [
    "AlphabetTooLarge", "ApplicabilityError", "ConstraintPresent", "Dlp", "DlpLabError",
    "ExceptionCharacterisation", "Formula", "GenConfig", "Literal", "ModelSet",
    "NoStrategyConfigured", "ObjLit", "ParseError", "PriorityCycle", "Program",
    "PropertyVerdict", "Rule", "ThreeValued", "Universe", "alferes_model_update",
    "cardinality_revision", "check_property", "classical_models", "compute_models",
    "diff_semantics", "eliminate_constraints", "equiv", "exception_fold", "expand",
    "ht_models", "interp", "is_acyclic", "is_tautological", "mt_justified_update",
    "parse_dlp", "parse_program", "parse_rule", "random_dlp", "re_models", "render_dlp",
    "stable_models", "winslett_update",
]
