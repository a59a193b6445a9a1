"""Sequential language-based decision toolkit.

Parse sequential actions over a propositional effect language, compute
canonical normal forms, check the cancellation condition on preference data,
and synthesize exact expected-utility representations over ordered labeled
tree state spaces.
"""

from seqsavage._core import (
    Action,
    ActionLibrary,
    BudgetError,
    Formula,
    ParseError,
    PropSet,
    ValidationError,
    atoms_of,
    canonical_action,
    canonical_map_json,
    check_prefs,
    equivalent,
    eval_olt,
    interpret,
    interpret_small_step,
    parse_action,
    parse_formula,
    synthesize,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "Action",
    "ActionLibrary",
    "BudgetError",
    "Formula",
    "ParseError",
    "PropSet",
    "ValidationError",
    "atoms_of",
    "canonical_action",
    "canonical_map_json",
    "check_prefs",
    "equivalent",
    "eval_olt",
    "interpret",
    "interpret_small_step",
    "parse_action",
    "parse_formula",
    "synthesize",
    "verify",
]
