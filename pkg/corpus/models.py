from functools import cached_property
from typing import Optional

from pydantic import BaseModel, Field


class PublicationRecord(BaseModel):
    paper_id: str
    doi: Optional[str] = None
    title: str = ""
    year: Optional[int] = None
    authors: list[str]
    emails: list[str] = Field(default_factory=list)
    cited_keys: list[str] = Field(default_factory=list)


class NameInstance(BaseModel):
    instance_id: str
    paper_id: str
    position: int
    raw_name: str
    surname: str
    forename: str
    email: Optional[str] = None
    coauthors: list[tuple[str, str]] = Field(default_factory=list)
    block_key: str


class CitationEdge(BaseModel):
    citing_paper: str
    cited_paper: str


class SelfCitationCandidate(BaseModel):
    citing_instance: str
    cited_instance: str


class TruthLabels(BaseModel):
    """Partial map of instance_id -> authority_id (e.g. an ORCID id)."""
    labels: dict[str, str] = Field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.labels)

    def get(self, instance_id: str) -> Optional[str]:
        return self.labels.get(instance_id)


class AuthorityProfile(BaseModel):
    authority_id: str
    surname: str
    forename: str = ""
    dois: list[str] = Field(default_factory=list)


class ParseDiagnostic(BaseModel):
    line: int
    reason: str


class ParseResult(BaseModel):
    records: list[PublicationRecord] = Field(default_factory=list)
    skipped_anonymous: int = 0
    diagnostics: list[ParseDiagnostic] = Field(default_factory=list)

    @property
    def skipped(self) -> int:
        return self.skipped_anonymous + len(self.diagnostics)


class EmailAssignmentStats(BaseModel):
    emails_seen: int = 0
    assigned: int = 0
    unmatched: int = 0
    tied: int = 0
    multi_email_instances: int = 0

    def add(self, other: "EmailAssignmentStats") -> None:
        self.emails_seen += other.emails_seen
        self.assigned += other.assigned
        self.unmatched += other.unmatched
        self.tied += other.tied
        self.multi_email_instances += other.multi_email_instances


class CorpusStats(BaseModel):
    records: int = 0
    instances: int = 0
    citation_edges: int = 0
    self_citation_candidates: int = 0
    instances_with_coauthors: int = 0
    email: EmailAssignmentStats = Field(default_factory=EmailAssignmentStats)


class Corpus(BaseModel):
    """An ingested corpus: records plus every extracted feature. Immutable by convention."""
    records: list[PublicationRecord] = Field(default_factory=list)
    instances: list[NameInstance] = Field(default_factory=list)
    edges: list[CitationEdge] = Field(default_factory=list)
    candidates: list[SelfCitationCandidate] = Field(default_factory=list)
    stats: CorpusStats = Field(default_factory=CorpusStats)

    @cached_property
    def instance_map(self) -> dict[str, NameInstance]:
        return {instance.instance_id: instance for instance in self.instances}

    @cached_property
    def record_map(self) -> dict[str, PublicationRecord]:
        return {record.paper_id: record for record in self.records}

    @cached_property
    def paper_instances(self) -> dict[str, list[str]]:
        # paper_id -> instance ids in byline order
        grouped: dict[str, list[str]] = {}
        for instance in self.instances:
            grouped.setdefault(instance.paper_id, []).append(instance.instance_id)
        return grouped

    def instance(self, instance_id: str) -> NameInstance:
        return self.instance_map[instance_id]

    def title_of(self, instance_id: str) -> str:
        return self.record_map[self.instance_map[instance_id].paper_id].title
