import logging
from typing import Iterable

from corpus.models import TruthLabels
from matching.rules import MatchRule, RuleAccuracyReport

logger = logging.getLogger(__name__)


def evaluate_rule(rule: MatchRule, matched_pairs: Iterable[tuple[str, str]], truth: TruthLabels) -> RuleAccuracyReport:
    """Share of truth-evaluable matched pairs whose two instances carry the same authority id."""
    matched_pairs = list(matched_pairs)
    evaluable = 0
    true_match = 0
    for a, b in matched_pairs:
        label_a, label_b = truth.get(a), truth.get(b)
        if label_a is None or label_b is None:
            continue
        evaluable += 1
        true_match += label_a == label_b

    report = RuleAccuracyReport(
        rule=rule,
        match_pairs=len(matched_pairs),
        evaluable_pairs=evaluable,
        true_match=true_match,
    )
    if evaluable:
        report.accuracy = true_match / evaluable
    else:
        report.flags.append("accuracy_undefined")
        logger.warning(f"{rule.label}: no matched pair has truth labels on both sides")
    return report
