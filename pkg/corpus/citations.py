import logging
from typing import Iterable, Mapping, Optional

from corpus.models import CitationEdge, PublicationRecord, SelfCitationCandidate

logger = logging.getLogger(__name__)

_DOI_PREFIXES = (
    "https://doi.org/",
    "http://doi.org/",
    "https://dx.doi.org/",
    "http://dx.doi.org/",
    "doi:",
)


def normalize_doi(raw: Optional[str]) -> Optional[str]:
    if raw is None:
        return None
    doi = raw.strip().lower()
    for prefix in _DOI_PREFIXES:
        if doi.startswith(prefix):
            doi = doi[len(prefix):].strip()
            break
    return doi or None


def _key_index(records: Iterable[PublicationRecord]) -> dict[str, str]:
    """citation key -> paper_id. DOIs win over paper ids when both collide."""
    index: dict[str, str] = {}
    records = list(records)
    for record in records:
        index.setdefault(record.paper_id, record.paper_id)
    for record in records:
        if record.doi:
            index[record.doi] = record.paper_id
    return index


def _resolve(index: Mapping[str, str], key: str) -> Optional[str]:
    return index.get(normalize_doi(key) or "") or index.get(key.strip())


def extract_citations(
    records: list[PublicationRecord],
    supplemental: Optional[list[tuple[str, str]]] = None,
) -> list[CitationEdge]:
    """Resolve cited keys against the corpus and merge supplemental edges.

    Unresolvable keys and self-loops are dropped; duplicates collapse to one edge.
    """
    index = _key_index(records)
    edges: set[tuple[str, str]] = set()
    unresolved = 0

    for record in records:
        for key in record.cited_keys:
            cited = _resolve(index, key)
            if cited is None:
                unresolved += 1
                continue
            if cited != record.paper_id:
                edges.add((record.paper_id, cited))

    for citing_key, cited_key in supplemental or []:
        citing, cited = _resolve(index, citing_key), _resolve(index, cited_key)
        if citing is None or cited is None:
            unresolved += 1
            continue
        if citing != cited:
            edges.add((citing, cited))

    logger.debug(f"Resolved {len(edges)} citation edges, {unresolved} keys outside the corpus")
    return [CitationEdge(citing_paper=citing, cited_paper=cited) for citing, cited in sorted(edges)]


def build_self_citation_candidates(
    edges: list[CitationEdge],
    paper_instances: Mapping[str, list[str]],
) -> list[SelfCitationCandidate]:
    """Every (citing-paper instance, cited-paper instance) pair over every edge."""
    candidates: list[SelfCitationCandidate] = []
    for edge in edges:
        for citing_instance in paper_instances.get(edge.citing_paper, []):
            for cited_instance in paper_instances.get(edge.cited_paper, []):
                candidates.append(
                    SelfCitationCandidate(citing_instance=citing_instance, cited_instance=cited_instance)
                )
    return candidates
