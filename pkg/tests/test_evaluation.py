"""Tests for pairwise metrics, block statistics and tag ratios.

Run with: uv run python tests/test_evaluation.py
"""

import random
import warnings
from itertools import combinations

from corpus.models import TruthLabels
from evaluation import (
    block_stats,
    cluster_size_distribution,
    cumulative_ratios,
    evaluable_instances,
    fit_power_law,
    pairwise_metrics,
    random_subset,
    tag_ratios,
    to_label_map,
)


def _close(a, b, tolerance=1e-12) -> bool:
    if a is None or b is None:
        return a is b
    return abs(a - b) <= tolerance


def test_metrics_hand_example():
    truth = TruthLabels(labels={"a": "X", "b": "X", "c": "Y", "d": "Y"})
    report = pairwise_metrics([{"a", "b", "c"}, {"d"}], truth)
    assert (report.true_pairs, report.predicted_pairs, report.truth_pairs) == (1, 3, 2)
    assert _close(report.precision, 1 / 3)
    assert _close(report.recall, 1 / 2)
    assert _close(report.f1, 0.4)
    assert report.flags == []


def test_metrics_on_string_labels_raise_no_warning():
    truth = TruthLabels(labels={"a": "A00001", "b": "A00001", "c": "A00002", "d": "A00002"})
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        report = pairwise_metrics({"a": "c0", "b": "c0", "c": "c0", "d": "c1"}, truth)
    assert (report.true_pairs, report.predicted_pairs, report.truth_pairs) == (1, 3, 2)


def test_metrics_perfect_partition():
    truth = TruthLabels(labels={"a": "X", "b": "X", "c": "Y", "d": "Y", "e": "Z"})
    report = pairwise_metrics({"a": "1", "b": "1", "c": "2", "d": "2", "e": "3"}, truth)
    assert report.precision == report.recall == report.f1 == 1.0


def _brute_force(predicted: dict[str, str], truth: TruthLabels):
    evaluable = evaluable_instances(truth, predicted)
    true_pairs = predicted_pairs = truth_pairs = 0
    for a, b in combinations(evaluable, 2):
        same_pred = predicted[a] == predicted[b]
        same_truth = truth.get(a) == truth.get(b)
        predicted_pairs += same_pred
        truth_pairs += same_truth
        true_pairs += same_pred and same_truth
    precision = true_pairs / predicted_pairs if predicted_pairs else None
    recall = true_pairs / truth_pairs if truth_pairs else None
    defined = precision is not None and recall is not None and precision + recall > 0
    f1 = 2 * precision * recall / (precision + recall) if defined else None
    return precision, recall, f1


def test_metrics_match_brute_force():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randint(2, 100)
        ids = [f"i{k:03d}" for k in range(n)]
        predicted = {i: f"p{rng.randint(0, max(1, n // 3))}" for i in ids}
        labeled = rng.sample(ids, rng.randint(1, n))
        truth = TruthLabels(labels={i: f"t{rng.randint(0, max(1, n // 4))}" for i in labeled})
        report = pairwise_metrics(predicted, truth)
        precision, recall, f1 = _brute_force(predicted, truth)
        assert _close(report.precision, precision)
        assert _close(report.recall, recall)
        assert _close(report.f1, f1)


def test_metrics_symmetry_and_relabeling():
    rng = random.Random(3)
    ids = [f"i{k:02d}" for k in range(40)]
    # Every label covers at least two instances, so both directions see the same evaluable set.
    a, b = {}, {}
    for k in range(20):
        a[ids[2 * k]] = a[ids[2 * k + 1]] = f"a{rng.randint(0, 8)}"
        b[ids[k]] = b[ids[k + 20]] = f"b{rng.randint(0, 8)}"
    ab = pairwise_metrics(a, TruthLabels(labels=b))
    ba = pairwise_metrics(b, TruthLabels(labels=a))
    assert _close(ab.precision, ba.recall) and _close(ab.recall, ba.precision) and _close(ab.f1, ba.f1)

    relabeled = {i: f"renamed-{label}" for i, label in a.items()}
    again = pairwise_metrics(relabeled, TruthLabels(labels=b))
    assert (again.precision, again.recall, again.f1) == (ab.precision, ab.recall, ab.f1)


def test_evaluable_filter_and_missing_instances():
    truth = TruthLabels(labels={"a": "X", "b": "X", "c": "Y", "d": "Z"})
    # c and d are the only labeled instances of their authors.
    assert evaluable_instances(truth, ["a", "b", "c", "d", "e"]) == ["a", "b"]
    # b is outside the prediction but inside the scope: it counts as a singleton.
    report = pairwise_metrics([{"a", "c"}], truth, scope=["a", "b", "c"])
    assert report.evaluable_instances == 2
    assert report.truth_pairs == 1 and report.predicted_pairs == 0
    assert report.precision is None and report.recall == 0.0
    assert "precision_undefined" in report.flags and "f1_undefined" in report.flags


def test_metrics_undefined_without_truth_pairs():
    report = pairwise_metrics([{"a", "b"}], TruthLabels(labels={"a": "X"}))
    assert report.precision is None and report.recall is None and report.f1 is None
    assert report.flags == ["precision_undefined", "recall_undefined", "f1_undefined"]


def test_metrics_same_block_pairs():
    truth = TruthLabels(labels={"a": "X", "b": "X", "c": "X", "d": "Y", "e": "Y"})
    predicted = [{"a", "b"}, {"c"}, {"d", "e"}]
    blocks = {"a": "m newman", "b": "m newman", "c": "mark newman", "d": "j kim", "e": "j kim"}
    report = pairwise_metrics(predicted, truth, blocks=blocks)
    # Only a-b and d-e are same-block pairs.
    assert (report.true_pairs, report.predicted_pairs, report.truth_pairs) == (2, 2, 2)
    assert report.recall == 1.0


def test_to_label_map_rejects_overlap():
    try:
        to_label_map([{"a", "b"}, {"b"}])
    except ValueError:
        return
    raise AssertionError("expected ValueError for overlapping clusters")


def test_cumulative_ratios():
    assert cumulative_ratios([1, 1, 2, 4]) == {1: 1.0, 2: 0.5, 4: 0.25}
    assert cumulative_ratios([3, 5])[1] == 1.0
    assert cumulative_ratios([]) == {}


def test_power_law_fit():
    ratios = {n: n ** -2.5 for n in range(1, 61)}
    fit = fit_power_law(ratios, (1, 60))
    assert abs(fit.slope + 2.5) < 1e-6
    assert fit.r_squared >= 1 - 1e-9
    assert abs(fit.intercept) < 1e-9
    assert fit.points == 60

    halved = {n: 0.5 * n ** -2.0 for n in range(1, 30)}
    fit = fit_power_law(halved, (1, 60))
    assert abs(fit.slope + 2.0) < 1e-6


def test_power_law_fit_skipped():
    fit = fit_power_law({1: 1.0}, (1, 60))
    assert fit.slope is None and fit.flags == ["fit_skipped"]
    fit = fit_power_law({1: 1.0, 2: 0.5, 100: 0.01}, (5, 60))
    assert fit.flags == ["fit_skipped"]


def test_block_stats():
    blocks = {f"i{k}": "m newman" for k in range(4)}
    blocks.update({"j0": "j kim", "j1": "j kim", "s0": "s strogatz"})
    blocks.update({f"x{k}": f"x solo{k}" for k in range(5)})
    stats = block_stats(blocks)
    assert stats.instances == 12 and stats.blocks == 8
    assert stats.ratios[1] == 1.0
    assert stats.ratios[2] == 2 / 8
    assert stats.ratios[4] == 1 / 8
    assert stats.fit.slope < 0


def test_cluster_size_distribution():
    labels = {f"a{k}": "big" for k in range(12)}
    labels.update({"b0": "pair", "b1": "pair", "c0": "solo", "d0": "solo2"})
    distribution = cluster_size_distribution(labels)
    rows = {row.bucket: (row.clusters, row.ratio) for row in distribution.rows}
    assert distribution.clusters == 4
    assert rows == {"1": (2, 0.5), "2": (1, 0.25), "10 <=": (1, 0.25)}


def test_random_subset():
    population = [f"i{k}" for k in range(50)]
    first = random_subset(population, 10, seed=4)
    assert first == random_subset(reversed(population), 10, seed=4)
    assert len(set(first)) == 10 and set(first) <= set(population)
    try:
        random_subset(population, 51, seed=0)
    except ValueError:
        return
    raise AssertionError("expected ValueError for an oversized subset")


def test_tag_ratios():
    tags = {"a": "Physics", "b": "Physics", "c": "Biology", "d": "Chemistry"}
    population = ["a", "b", "c", "d", "e"]
    report = tag_ratios(["a", "c"], population, tags)
    rows = {row.category: (row.subset_ratio, row.population_ratio) for row in report.rows}
    assert report.categories[0] == "Physics"
    assert rows["Physics"] == (0.5, 0.4)
    assert rows["Biology"] == (0.5, 0.2)
    assert rows["Null"] == (0.0, 0.2)
    assert abs(sum(row.population_ratio for row in report.rows) - 1.0) < 1e-12

    pooled = tag_ratios(["a", "c"], population, tags, top_k=1)
    assert pooled.categories == ["Physics", "Other"]
    assert {row.category: row.population_ratio for row in pooled.rows} == {"Physics": 0.4, "Other": 0.6}
    assert abs(pooled.rows[1].difference - 0.1) < 1e-12


def test_tag_ratios_with_a_real_other_category():
    kept = tag_ratios(["a", "d"], ["a", "b", "c", "d", "e", "f"],
                      {"a": "Other", "b": "Other", "c": "Other", "d": "Physics", "e": "Physics", "f": "Biology"}, top_k=1)
    assert kept.categories == ["Other"]
    assert kept.rows[0].population_ratio == 1.0 and kept.rows[0].subset_ratio == 1.0

    pooled = tag_ratios(["a", "d"], ["a", "b", "c", "d", "e"],
                        {"a": "Physics", "b": "Physics", "c": "Physics", "d": "Other", "e": "Biology"}, top_k=1)
    assert pooled.categories == ["Physics", "Other"]
    assert {row.category: row.population_ratio for row in pooled.rows} == {"Physics": 0.6, "Other": 0.4}
    assert abs(sum(row.subset_ratio for row in pooled.rows) - 1.0) < 1e-12


def test_tag_ratios_rejects_empty_input():
    for subset, population, tags in ((["a"], ["a"], {}), ([], ["a"], {"a": "X"})):
        try:
            tag_ratios(subset, population, tags)
        except ValueError:
            continue
        raise AssertionError("expected ValueError")


def main():
    test_metrics_hand_example()
    test_metrics_on_string_labels_raise_no_warning()
    test_metrics_perfect_partition()
    test_metrics_match_brute_force()
    test_metrics_symmetry_and_relabeling()
    test_evaluable_filter_and_missing_instances()
    test_metrics_undefined_without_truth_pairs()
    test_metrics_same_block_pairs()
    test_to_label_map_rejects_overlap()
    test_cumulative_ratios()
    test_power_law_fit()
    test_power_law_fit_skipped()
    test_block_stats()
    test_cluster_size_distribution()
    test_random_subset()
    test_tag_ratios()
    test_tag_ratios_with_a_real_other_category()
    test_tag_ratios_rejects_empty_input()
    print("All evaluation tests passed.")


if __name__ == "__main__":
    main()
