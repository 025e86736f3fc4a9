from .authority import link_authority
from .builder import build_corpus
from .citations import build_self_citation_candidates, extract_citations, normalize_doi
from .coauthors import build_coauthor_lists
from .emails import CandidatePattern, assign_emails
from .models import (
    AuthorityProfile,
    CitationEdge,
    Corpus,
    NameInstance,
    PublicationRecord,
    SelfCitationCandidate,
    TruthLabels,
)
from .names import block_key, normalize_name
from .reader import CorpusFormat, parse_corpus

__all__ = [
    "AuthorityProfile",
    "CandidatePattern",
    "CitationEdge",
    "Corpus",
    "CorpusFormat",
    "NameInstance",
    "PublicationRecord",
    "SelfCitationCandidate",
    "TruthLabels",
    "assign_emails",
    "block_key",
    "build_coauthor_lists",
    "build_corpus",
    "build_self_citation_candidates",
    "extract_citations",
    "link_authority",
    "normalize_doi",
    "normalize_name",
    "parse_corpus",
]
