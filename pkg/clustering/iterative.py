import logging
from typing import Iterable, Optional

from clustering.closure import transitive_closure
from clustering.models import Cluster, ClusteringState, StageRecord
from clustering.pairs import generate_pairs
from corpus.models import Corpus, TruthLabels
from evaluation.pairwise import pairwise_metrics
from matching.predicates import match_self_citation
from matching.rules import Feature, MatchRule, Scheme
from matching.units import FeatureSet

logger = logging.getLogger(__name__)

# Guards against a rule list that never settles; a monotone rule list settles long before.
MAX_PASSES = 100


def select_in_scope(corpus: Corpus, rules: Iterable[MatchRule]) -> set[str]:
    """
    Instances carrying at least one feature used by the rules: an assigned email, a
    non-empty coauthor list, or a self-citation candidacy whose names agree under the
    self-citation rule's scheme.
    """
    rules = list(rules)
    features = {rule.feature for rule in rules}
    in_scope: set[str] = set()
    if Feature.EMAIL in features:
        in_scope.update(instance.instance_id for instance in corpus.instances if instance.email)
    if Feature.COAUTHOR in features:
        in_scope.update(instance.instance_id for instance in corpus.instances if instance.coauthors)
    if Feature.SELF_CITATION in features:
        schemes = {rule.scheme for rule in rules if rule.feature == Feature.SELF_CITATION}
        # first_initial is the looser scheme; it admits everything full_string admits.
        scheme = Scheme.FIRST_INITIAL if Scheme.FIRST_INITIAL in schemes else Scheme.FULL_STRING
        for candidate in corpus.candidates:
            if match_self_citation(candidate, scheme, corpus):
                in_scope.add(candidate.citing_instance)
                in_scope.add(candidate.cited_instance)
    return in_scope


def singleton_units(corpus: Corpus, instance_ids: Iterable[str]) -> list[Cluster]:
    return [
        Cluster.model_construct(
            cluster_id=instance_id,
            members=frozenset([instance_id]),
            features=FeatureSet.from_instance(corpus.instance(instance_id)),
        )
        for instance_id in sorted(instance_ids)
    ]


def per_feature_cluster(units: list[Cluster], rule: MatchRule, corpus: Corpus, email_within_block: bool = False) -> ClusteringState:
    """Merge every group of units connected by rule matches; unmatched units are kept as they are."""
    pairs = generate_pairs(units, rule, corpus, email_within_block)
    unit_map = {unit.cluster_id: unit for unit in units}
    components = transitive_closure(pairs.pairs, unit_map.keys())
    clusters = sorted((Cluster.merge([unit_map[unit_id] for unit_id in sorted(component)]) for component in components), key=lambda c: c.cluster_id)
    record = StageRecord(
        stage=0,
        pass_index=0,
        feature=rule.feature,
        scheme=rule.scheme,
        min_shared=rule.min_shared,
        pairs=len(pairs),
        merges=len(units) - len(clusters),
        clusters=len(clusters),
    )
    return ClusteringState(clusters=clusters, stage_log=[record])


def iterative_cluster(
    corpus: Corpus,
    rules: list[MatchRule],
    truth: Optional[TruthLabels] = None,
    email_within_block: bool = False,
    initial: Optional[list[Cluster]] = None,
) -> ClusteringState:
    """
    Apply the rules in order to clusters that accumulate their members' features, and
    repeat full passes over the rule list until a pass merges nothing.

    Starts from in-scope singletons unless initial clusters are given. With truth labels,
    every stage record carries pairwise metrics.
    """
    if not rules:
        raise ValueError("At least one match rule is required")
    units = list(initial) if initial is not None else singleton_units(corpus, select_in_scope(corpus, rules))
    logger.info(f"Clustering {len(units)} units with {len(rules)} rules: {', '.join(rule.label for rule in rules)}")

    stage_log: list[StageRecord] = []
    for pass_index in range(1, MAX_PASSES + 1):
        pass_merges = 0
        for rule in rules:
            state = per_feature_cluster(units, rule, corpus, email_within_block)
            units = state.clusters
            record = state.stage_log[0]
            record.stage = len(stage_log) + 1
            record.pass_index = pass_index
            if truth is not None:
                record.report = pairwise_metrics([unit.members for unit in units], truth)
            stage_log.append(record)
            pass_merges += record.merges
            logger.info(f"Pass {pass_index} {rule.label}: {record.pairs} pairs, {record.merges} merges, {record.clusters} clusters")
        if pass_merges == 0:
            break
    else:
        logger.warning(f"Stopped after {MAX_PASSES} passes without a quiescent pass")

    return ClusteringState(clusters=units, stage_log=stage_log)


def number_clusters(partition: Iterable[Iterable[str]]) -> dict[str, str]:
    """instance_id -> zero-padded cluster number, numbered in order of each cluster's smallest member."""
    clusters = sorted((sorted(members) for members in partition if members), key=lambda members: members[0])
    width = max(3, len(str(len(clusters))))
    labels = {}
    for number, members in enumerate(clusters, start=1):
        for member in members:
            labels[member] = f"{number:0{width}d}"
    return dict(sorted(labels.items()))


def emit_labels(state: ClusteringState) -> dict[str, str]:
    return number_clusters(cluster.members for cluster in state.clusters)
