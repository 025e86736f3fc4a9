import logging
from collections import defaultdict
from itertools import combinations
from typing import Hashable, Iterable

from clustering.models import Cluster, MatchPairList
from corpus.models import Corpus
from matching.predicates import coauthor_key, email_key, match_self_citation
from matching.rules import Feature, MatchRule, Scheme

logger = logging.getLogger(__name__)


def _bucket_pairs(index: dict[Hashable, set[str]]) -> Iterable[tuple[str, str]]:
    for unit_ids in index.values():
        if len(unit_ids) > 1:
            yield from combinations(sorted(unit_ids), 2)


def _email_pairs(units: list[Cluster], scheme: Scheme, within_block: bool) -> Iterable[tuple[str, str]]:
    index: dict[Hashable, set[str]] = defaultdict(set)
    for unit in units:
        for address in unit.features.emails:
            key = email_key(address, scheme)
            if within_block:
                for block in unit.features.block_keys:
                    index[(block, key)].add(unit.cluster_id)
            else:
                index[key].add(unit.cluster_id)
    return _bucket_pairs(index)


def _coauthor_pairs(units: list[Cluster], scheme: Scheme, min_shared: int) -> Iterable[tuple[str, str]]:
    index: dict[tuple[str, tuple[str, str]], set[str]] = defaultdict(set)
    for unit in units:
        keys = {coauthor_key(name, scheme) for name in unit.features.coauthors}
        for block in unit.features.block_keys:
            for key in keys:
                index[(block, key)].add(unit.cluster_id)

    # Distinct coauthor keys shared by each pair, across every block they share.
    shared: dict[tuple[str, str], set[tuple[str, str]]] = defaultdict(set)
    for (_, key), unit_ids in index.items():
        if len(unit_ids) > 1:
            for pair in combinations(sorted(unit_ids), 2):
                shared[pair].add(key)
    return (pair for pair, keys in shared.items() if len(keys) >= min_shared)


def _self_citation_pairs(units: list[Cluster], scheme: Scheme, corpus: Corpus) -> Iterable[tuple[str, str]]:
    unit_of = {member: unit.cluster_id for unit in units for member in unit.members}
    for candidate in corpus.candidates:
        citing = unit_of.get(candidate.citing_instance)
        cited = unit_of.get(candidate.cited_instance)
        if citing is None or cited is None or citing == cited:
            continue
        if match_self_citation(candidate, scheme, corpus):
            yield citing, cited


def generate_pairs(units: list[Cluster], rule: MatchRule, corpus: Corpus, email_within_block: bool = False) -> MatchPairList:
    """All unit pairs satisfying the rule, found through inverted indexes on feature values."""
    match rule.feature:
        case Feature.EMAIL:
            pairs = _email_pairs(units, rule.scheme, email_within_block)
        case Feature.COAUTHOR:
            pairs = _coauthor_pairs(units, rule.scheme, rule.min_shared)
        case Feature.SELF_CITATION:
            pairs = _self_citation_pairs(units, rule.scheme, corpus)
        case _:
            raise ValueError(f"Unsupported feature: {rule.feature}")
    result = MatchPairList.from_pairs(pairs)
    logger.debug(f"{rule.label}: {len(result)} matching unit pairs over {len(units)} units")
    return result
