"""Reasoning with numerical syllogistic formulas.

Formulas say "at most i" or "more than i" things are both ℓ and m, for
literals ℓ and m.  The package parses them, decides satisfiability and
entailment, searches for derivations under syllogistic rules, and builds the
counterexample family showing that no finite sound rule set is complete.
"""

from .errors import (
    BoundError,
    DocumentParseError,
    InputError,
    ParseError,
    ResourceLimitError,
    SyllogisticError,
    UnsoundRuleError,
)
from .parser import parse_formula, parse_rules, parse_structure, parse_theory, render
from .proof import (
    Rule,
    RuleSet,
    builtin_rulesets,
    check_rule_sound,
    derive_direct,
    derive_indirect,
    direct_closure,
    verify_derivation,
)
from .semantics import Structure, evaluate, models_set, theory_of
from .solver import countermodel, entails, satisfiable
from .syntax import Formula, LanguageId, Literal, S, Sdagger, at_most, more_than

__version__ = "0.1.0"

__all__ = [
    "BoundError", "DocumentParseError", "Formula", "InputError", "LanguageId", "Literal",
    "ParseError", "ResourceLimitError", "Rule", "RuleSet", "S", "Sdagger", "Structure",
    "SyllogisticError", "UnsoundRuleError", "at_most", "builtin_rulesets", "check_rule_sound",
    "countermodel", "derive_direct", "derive_indirect", "direct_closure", "entails", "evaluate",
    "models_set", "more_than", "parse_formula", "parse_rules", "parse_structure", "parse_theory",
    "render", "satisfiable", "theory_of", "verify_derivation",
]
