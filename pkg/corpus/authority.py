import logging

from corpus.citations import normalize_doi
from corpus.models import AuthorityProfile, Corpus, TruthLabels
from corpus.names import block_key, display_name, normalize_name

logger = logging.getLogger(__name__)


def link_authority(corpus: Corpus, profiles: list[AuthorityProfile]) -> TruthLabels:
    """Link authority profiles to name instances through shared DOIs.

    On every DOI-matched paper, the single instance whose block key equals the profile
    owner's receives the authority id. Two or more block-matching instances on one paper
    link nothing, and an instance claimed by two different profiles is dropped.
    """
    paper_by_doi = {record.doi: record.paper_id for record in corpus.records if record.doi}
    claims: dict[str, set[str]] = {}
    ambiguous_papers = 0

    for profile in profiles:
        owner_block = block_key(*normalize_name(display_name(profile.surname, profile.forename)))
        for raw_doi in profile.dois:
            paper_id = paper_by_doi.get(normalize_doi(raw_doi) or "")
            if paper_id is None:
                continue
            matches = [
                instance_id
                for instance_id in corpus.paper_instances.get(paper_id, [])
                if corpus.instance(instance_id).block_key == owner_block
            ]
            if len(matches) != 1:
                ambiguous_papers += len(matches) > 1
                continue
            claims.setdefault(matches[0], set()).add(profile.authority_id)

    labels = {instance_id: next(iter(ids)) for instance_id, ids in sorted(claims.items()) if len(ids) == 1}
    logger.info(
        f"Linked {len(labels)} instances to {len(set(labels.values()))} authority ids "
        f"({ambiguous_papers} ambiguous paper matches, {len(claims) - len(labels)} conflicting claims)"
    )
    return TruthLabels(labels=labels)
