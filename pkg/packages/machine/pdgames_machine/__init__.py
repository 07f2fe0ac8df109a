"""Pushdown machines: model, formats, normal form, Steps and stair-parity acceptance."""

from .formats import check_format
from .models import (
    BOTTOM,
    EPSILON,
    FORMAT_FLAGS,
    Action,
    Condition,
    Configuration,
    FormatDescriptor,
    FormatVerdict,
    LassoRun,
    Player,
    PriorityFunction,
    PushdownMachine,
    Rule,
    VisiblyAlphabet,
    format_rule,
)
from .normalize import ConfigTranslation, Normalization, is_normal_form, normalize, padding_priority
from .semantics import apply_rule, enabled_rules, step, successors
from .stair import accepts_lasso_word, dpda_to_stdpda, run_on_lasso_word
from .steps import (
    LassoVerdict,
    StepsPattern,
    evaluate_lasso,
    lasso_verdict,
    steps_bruteforce,
    steps_positions,
    unrolled_heights,
)

__all__ = [
    "BOTTOM",
    "EPSILON",
    "FORMAT_FLAGS",
    "Action",
    "Condition",
    "ConfigTranslation",
    "Configuration",
    "FormatDescriptor",
    "FormatVerdict",
    "LassoRun",
    "LassoVerdict",
    "Normalization",
    "Player",
    "PriorityFunction",
    "PushdownMachine",
    "Rule",
    "StepsPattern",
    "VisiblyAlphabet",
    "accepts_lasso_word",
    "apply_rule",
    "check_format",
    "dpda_to_stdpda",
    "enabled_rules",
    "evaluate_lasso",
    "format_rule",
    "is_normal_form",
    "lasso_verdict",
    "normalize",
    "padding_priority",
    "run_on_lasso_word",
    "step",
    "steps_bruteforce",
    "steps_positions",
    "successors",
    "unrolled_heights",
]
