import logging
from collections import Counter
from typing import Iterable, Mapping, Optional

import numpy as np
from sklearn.metrics.cluster import pair_confusion_matrix

from corpus.models import TruthLabels
from evaluation.models import EvaluationReport

logger = logging.getLogger(__name__)

Partition = Mapping[str, str] | Iterable[Iterable[str]]

_SINGLETON_PREFIX = "\x00singleton:"


def to_label_map(partition: Partition) -> dict[str, str]:
    """Accept either instance_id -> cluster_id or an iterable of member sets."""
    if isinstance(partition, Mapping):
        return dict(partition)
    labels = {}
    for index, members in enumerate(partition):
        for member in members:
            if member in labels:
                raise ValueError(f"Instance {member!r} appears in more than one cluster")
            labels[member] = f"c{index}"
    return labels


def evaluable_instances(truth: TruthLabels, scope: Iterable[str]) -> list[str]:
    """Truth-labeled instances in scope whose author has at least one other labeled instance in scope."""
    labeled = [instance_id for instance_id in set(scope) if truth.get(instance_id) is not None]
    per_author = Counter(truth.get(instance_id) for instance_id in labeled)
    return sorted(instance_id for instance_id in labeled if per_author[truth.get(instance_id)] >= 2)


def _pair_counts(truth_labels: list[str], predicted_labels: list[str]) -> tuple[int, int, int]:
    if len(truth_labels) < 2:
        return 0, 0, 0
    # Integer codes keep sklearn from warning about non-integer label types.
    _, truth_codes = np.unique(truth_labels, return_inverse=True)
    _, predicted_codes = np.unique(predicted_labels, return_inverse=True)
    matrix = pair_confusion_matrix(truth_codes, predicted_codes)
    # Ordered-pair counts; halve for unordered pairs.
    true_pairs = int(matrix[1, 1]) // 2
    predicted_pairs = (int(matrix[1, 1]) + int(matrix[0, 1])) // 2
    truth_pairs = (int(matrix[1, 1]) + int(matrix[1, 0])) // 2
    return true_pairs, predicted_pairs, truth_pairs


def pairwise_metrics(
    predicted: Partition,
    truth: TruthLabels,
    scope: Optional[Iterable[str]] = None,
    blocks: Optional[Mapping[str, str]] = None,
) -> EvaluationReport:
    """
    Pairwise precision, recall and F1 of a predicted partition against truth labels.

    Only evaluable instances take part (see evaluable_instances); scope defaults to the
    predicted instances. Evaluable instances the prediction does not cover count as
    singletons. When blocks (instance_id -> block key) is given, only same-block pairs
    are counted.
    """
    predicted_labels = to_label_map(predicted)
    evaluable = evaluable_instances(truth, predicted_labels.keys() if scope is None else scope)
    report = EvaluationReport(evaluable_instances=len(evaluable))

    predicted_of = {instance_id: predicted_labels.get(instance_id, _SINGLETON_PREFIX + instance_id) for instance_id in evaluable}
    report.predicted_clusters = len(set(predicted_of.values()))
    report.truth_clusters = len({truth.get(instance_id) for instance_id in evaluable})

    if blocks is None:
        groups = [evaluable]
    else:
        grouped: dict[str, list[str]] = {}
        for instance_id in evaluable:
            grouped.setdefault(blocks[instance_id], []).append(instance_id)
        groups = list(grouped.values())

    counts = np.zeros(3, dtype=np.int64)
    for group in groups:
        counts += _pair_counts([truth.get(i) for i in group], [predicted_of[i] for i in group])
    report.true_pairs, report.predicted_pairs, report.truth_pairs = (int(value) for value in counts)

    if report.predicted_pairs:
        report.precision = report.true_pairs / report.predicted_pairs
    else:
        report.flags.append("precision_undefined")
    if report.truth_pairs:
        report.recall = report.true_pairs / report.truth_pairs
    else:
        report.flags.append("recall_undefined")
    if report.precision is not None and report.recall is not None and report.precision + report.recall > 0:
        report.f1 = 2 * report.precision * report.recall / (report.precision + report.recall)
    else:
        report.flags.append("f1_undefined")

    if report.flags:
        logger.warning(f"Undefined pairwise metrics: {', '.join(report.flags)}")
    return report
