from .accuracy import evaluate_rule
from .predicates import match_coauthor, match_email, match_self_citation
from .rules import DEFAULT_RULES, Feature, MatchRule, RuleAccuracyReport, Scheme
from .units import FeatureSet

__all__ = [
    "DEFAULT_RULES",
    "Feature",
    "FeatureSet",
    "MatchRule",
    "RuleAccuracyReport",
    "Scheme",
    "evaluate_rule",
    "match_coauthor",
    "match_email",
    "match_self_citation",
]
