import logging
from typing import Iterable, Optional

from corpus.citations import build_self_citation_candidates, extract_citations
from corpus.coauthors import build_coauthor_lists
from corpus.emails import DEFAULT_PATTERNS, CandidatePattern, assign_emails, instance_id_for
from corpus.models import Corpus, CorpusStats, NameInstance, PublicationRecord
from corpus.names import block_key, normalize_name

logger = logging.getLogger(__name__)


def build_instances(
    record: PublicationRecord,
    patterns: Iterable[CandidatePattern] = DEFAULT_PATTERNS,
) -> tuple[list[NameInstance], CorpusStats]:
    """Extract one record's name instances with their email and coauthor features."""
    emails = assign_emails(record, patterns)
    email_of = dict(emails.assignments)
    coauthors = build_coauthor_lists(record)

    instances = []
    for position, raw_name in enumerate(record.authors):
        instance_id = instance_id_for(record.paper_id, position)
        surname, forename = normalize_name(raw_name)
        instances.append(NameInstance(
            instance_id=instance_id,
            paper_id=record.paper_id,
            position=position,
            raw_name=raw_name,
            surname=surname,
            forename=forename,
            email=email_of.get(instance_id),
            coauthors=coauthors[instance_id],
            block_key=block_key(surname, forename),
        ))
    return instances, CorpusStats(email=emails.stats)


def build_corpus(
    records: list[PublicationRecord],
    supplemental: Optional[list[tuple[str, str]]] = None,
    patterns: Iterable[CandidatePattern] = DEFAULT_PATTERNS,
) -> Corpus:
    """Assemble the immutable corpus: instances, citation edges and self-citation candidates."""
    patterns = tuple(patterns)
    stats = CorpusStats(records=len(records))
    instances: list[NameInstance] = []
    for record in records:
        record_instances, record_stats = build_instances(record, patterns)
        instances.extend(record_instances)
        stats.email.add(record_stats.email)

    edges = extract_citations(records, supplemental)
    paper_instances: dict[str, list[str]] = {}
    for instance in instances:
        paper_instances.setdefault(instance.paper_id, []).append(instance.instance_id)
    candidates = build_self_citation_candidates(edges, paper_instances)

    stats.instances = len(instances)
    stats.citation_edges = len(edges)
    stats.self_citation_candidates = len(candidates)
    stats.instances_with_coauthors = sum(1 for instance in instances if instance.coauthors)
    logger.info(
        f"Built corpus: {stats.records} records, {stats.instances} instances, "
        f"{stats.email.assigned}/{stats.email.emails_seen} emails assigned, "
        f"{stats.citation_edges} citation edges, {stats.self_citation_candidates} self-citation candidates"
    )
    return Corpus(records=records, instances=instances, edges=edges, candidates=candidates, stats=stats)
