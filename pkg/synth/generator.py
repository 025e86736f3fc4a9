import json
import logging
from collections import Counter, defaultdict
from functools import lru_cache
from pathlib import Path
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field

from corpus.emails import instance_id_for
from corpus.models import Corpus, PublicationRecord, TruthLabels
from evaluation.blocks import block_stats
from evaluation.models import BlockStats
from matching.predicates import match_self_citation
from matching.rules import Scheme
from synth.config import SynthConfig

logger = logging.getLogger(__name__)

POOLS_PATH = Path(__file__).parent / "data" / "pools.json"


class SynthAuthor(BaseModel):
    author_id: str
    surname: str
    forename: str
    email: str
    topic: int
    homonym: bool = False
    synonym: bool = False
    collaborators: list[int] = Field(default_factory=list)


class SynthResult(BaseModel):
    records: list[PublicationRecord]
    truth: TruthLabels
    authors: list[SynthAuthor]

    @property
    def homonym_authors(self) -> list[str]:
        return [author.author_id for author in self.authors if author.homonym]

    @property
    def synonym_authors(self) -> list[str]:
        return [author.author_id for author in self.authors if author.synonym]


class SynthSummary(BaseModel):
    papers: int = 0
    instances: int = 0
    authors: int = 0
    sole_author_papers: int = 0
    mean_team_size: Optional[float] = None
    email_coverage: Optional[float] = None
    self_citation_instances: int = 0
    self_citation_coverage: Optional[float] = None
    coauthor_coverage: Optional[float] = None
    homonym_authors: int = 0
    synonym_authors: int = 0
    blocks: Optional[BlockStats] = None


@lru_cache(maxsize=1)
def load_pools() -> dict:
    with POOLS_PATH.open("r", encoding="utf-8") as f:
        return json.load(f)


class _Generator:
    def __init__(self, config: SynthConfig) -> None:
        self.config = config
        self.rng = np.random.default_rng(config.seed)
        pools = load_pools()
        self.surnames = [name for name, _ in pools["surnames"]]
        weights = np.array([weight for _, weight in pools["surnames"]], dtype=float)
        self.surname_weights = weights / weights.sum()
        self.forenames = pools["forenames"]
        self.topics = pools["topics"]
        self.generic = pools["generic"]
        self.domains = pools["domains"]

    def _forename_with_initial(self, initial: str) -> str:
        options = [name for name in self.forenames if name[0] == initial]
        return options[self.rng.integers(len(options))]

    def _draw_authors(self) -> list[SynthAuthor]:
        authors: list[SynthAuthor] = []
        blocks: dict[tuple[str, str], list[int]] = defaultdict(list)
        for index in range(self.config.n_authors):
            homonym = bool(authors) and self.rng.random() < self.config.homonym_rate
            if homonym:
                base = authors[self.rng.integers(len(authors))]
                surname, forename = base.surname, self._forename_with_initial(base.forename[0])
            else:
                for _ in range(100):
                    surname = self.surnames[self.rng.choice(len(self.surnames), p=self.surname_weights)]
                    forename = self.forenames[self.rng.integers(len(self.forenames))]
                    if (surname, forename[0]) not in blocks:
                        break
                else:
                    # Pools exhausted: the collision is recorded as a homonym.
                    homonym = True
            blocks[(surname, forename[0])].append(index)
            domain = self.domains[self.rng.integers(len(self.domains))]
            authors.append(SynthAuthor(
                author_id=f"A{index + 1:05d}",
                surname=surname,
                forename=forename,
                email=f"{forename[0].lower()}.{surname.lower()}{index + 1}@{domain}",
                topic=int(self.rng.integers(len(self.topics))),
                homonym=homonym,
                synonym=bool(self.rng.random() < self.config.synonym_rate),
            ))

        self._assign_groups(authors)
        return authors

    def _assign_groups(self, authors: list[SynthAuthor]) -> None:
        """
        Split authors into research groups of collaborators_per_author + 1 members; each
        author's collaborators are the rest of their group. Two authors of one block never
        share a group, so homonyms never share a byline.
        """
        size = self.config.collaborators_per_author + 1
        groups: list[list[int]] = []
        group_blocks: list[set[tuple[str, str]]] = []
        open_groups: list[int] = []
        for index in (int(i) for i in self.rng.permutation(len(authors))):
            key = (authors[index].surname, authors[index].forename[0])
            target = next((g for g in open_groups if key not in group_blocks[g]), None)
            if target is None:
                target = len(groups)
                groups.append([])
                group_blocks.append(set())
                open_groups.append(target)
            groups[target].append(index)
            group_blocks[target].add(key)
            if len(groups[target]) == size:
                open_groups.remove(target)

        for members in groups:
            for index in members:
                authors[index].collaborators = sorted(other for other in members if other != index)

    def _title(self, author: SynthAuthor) -> str:
        low, high = self.config.title_words
        length = int(self.rng.integers(low, high + 1))
        topic = self.topics[author.topic]
        words = [topic[self.rng.integers(len(topic))] if self.rng.random() < 0.75 else self.generic[self.rng.integers(len(self.generic))]
                 for _ in range(length)]
        return " ".join(words).capitalize()

    def generate(self) -> SynthResult:
        authors = self._draw_authors()
        appearances: Counter[int] = Counter()
        papers_of: dict[int, list[str]] = defaultdict(list)
        records: list[PublicationRecord] = []
        labels: dict[str, str] = {}

        schedule = []
        for index in range(len(authors)):
            mean = self.config.papers_per_author_mean
            count = 0 if mean == 0 else 1 + int(self.rng.poisson(mean - 1))
            schedule.extend([index] * count)
        self.rng.shuffle(schedule)

        for paper_number, lead in enumerate(schedule, start=1):
            paper_id = f"P{paper_number:06d}"
            pool = authors[lead].collaborators
            team_size = min(1 + int(self.rng.poisson(self.config.team_size_mean - 1)), self.config.max_team_size, len(pool) + 1)
            team = [lead] + [int(i) for i in self.rng.choice(pool, size=team_size - 1, replace=False)] if team_size > 1 else [lead]
            team = [team[0]] + [team[i] for i in self.rng.permutation(len(team) - 1) + 1]

            byline, emails, cited = [], [], set()
            for position, member in enumerate(team):
                author = authors[member]
                # Synonym authors alternate between the full forename and its initial.
                initial_form = author.synonym and appearances[member] % 2 == 1
                byline.append(f"{author.forename[0]}. {author.surname}" if initial_form else f"{author.forename} {author.surname}")
                appearances[member] += 1
                labels[instance_id_for(paper_id, position)] = author.author_id
                if self.rng.random() < self.config.email_coverage:
                    emails.append(author.email)
                if papers_of[member] and self.rng.random() < self.config.self_cite_prob:
                    earlier = papers_of[member]
                    cited.add(earlier[self.rng.integers(len(earlier))])
            if records and self.rng.random() < self.config.background_cite_prob:
                cited.add(records[self.rng.integers(len(records))].doi)

            records.append(PublicationRecord(
                paper_id=paper_id,
                doi=f"10.5555/synth.{paper_number}",
                title=self._title(authors[lead]),
                year=2000 + paper_number % 20,
                authors=byline,
                emails=emails,
                cited_keys=sorted(cited),
            ))
            for member in team:
                papers_of[member].append(records[-1].doi)

        logger.info(f"Generated {len(records)} papers, {len(labels)} instances, {len(authors)} authors (seed {self.config.seed})")
        return SynthResult(records=records, truth=TruthLabels(labels=labels), authors=authors)


def generate(config: SynthConfig) -> SynthResult:
    return _Generator(config).generate()


def summarize(corpus: Corpus, truth: TruthLabels) -> SynthSummary:
    """Realized feature coverage and ambiguity of a generated corpus."""
    summary = SynthSummary(papers=len(corpus.records), instances=len(corpus.instances))
    if not corpus.instances:
        return summary

    instances = corpus.instances
    summary.authors = len({truth.get(instance.instance_id) for instance in instances})
    summary.sole_author_papers = sum(1 for record in corpus.records if len(record.authors) == 1)
    summary.mean_team_size = len(instances) / len(corpus.records)
    summary.email_coverage = sum(1 for instance in instances if instance.email) / len(instances)
    summary.coauthor_coverage = sum(1 for instance in instances if instance.coauthors) / len(instances)

    self_citing = set()
    for candidate in corpus.candidates:
        if match_self_citation(candidate, Scheme.FULL_STRING, corpus):
            self_citing.update((candidate.citing_instance, candidate.cited_instance))
    summary.self_citation_instances = len(self_citing)
    summary.self_citation_coverage = len(self_citing) / len(instances)

    authors_per_block: dict[str, set[str]] = defaultdict(set)
    forms_per_author: dict[str, set[tuple[str, str]]] = defaultdict(set)
    for instance in instances:
        author = truth.get(instance.instance_id)
        authors_per_block[instance.block_key].add(author)
        forms_per_author[author].add((instance.surname, instance.forename))
    summary.homonym_authors = sum(len(authors) - 1 for authors in authors_per_block.values())
    summary.synonym_authors = sum(1 for forms in forms_per_author.values() if len(forms) > 1)
    summary.blocks = block_stats({instance.instance_id: instance.block_key for instance in instances})
    return summary
