"""Fixture builders shared by the test scripts."""

from corpus.builder import build_corpus
from corpus.models import Corpus, NameInstance, PublicationRecord, SelfCitationCandidate
from corpus.names import block_key, normalize_name
from synth.config import SynthConfig
from synth.generator import SynthResult, generate


def _instance(instance_id: str, paper_id: str, raw_name: str, email: str | None, coauthors: list[str]) -> NameInstance:
    surname, forename = normalize_name(raw_name)
    return NameInstance(
        instance_id=instance_id,
        paper_id=paper_id,
        position=0,
        raw_name=raw_name,
        surname=surname,
        forename=forename,
        email=email,
        coauthors=[normalize_name(name) for name in coauthors],
        block_key=block_key(surname, forename),
    )


def newman_corpus() -> Corpus:
    """
    Five Newman instances: #1, #3, #4 share one email and #2, #5 another; #4 and #5
    share a coauthor; #2 cites #1.
    """
    instances = [
        _instance("#1", "p1", "Mark Newman", "mejn@umich.edu", ["D. J. Watts"]),
        _instance("#2", "p2", "M. Newman", "newman@santafe.edu", ["J. Park"]),
        _instance("#3", "p3", "M.E.J. Newman", "mejn@umich.edu", ["M. Girvan"]),
        _instance("#4", "p4", "Newman M.", "mejn@umich.edu", ["S. H. Strogatz"]),
        _instance("#5", "p5", "M. Newman", "newman@santafe.edu", ["S. H. Strogatz"]),
    ]
    records = [
        PublicationRecord(paper_id=instance.paper_id, title=f"Network paper {index}", authors=[instance.raw_name])
        for index, instance in enumerate(instances, start=1)
    ]
    return Corpus(
        records=records,
        instances=instances,
        candidates=[SelfCitationCandidate(citing_instance="#2", cited_instance="#1")],
    )


def synthetic(seed: int = 0, **overrides) -> tuple[SynthResult, Corpus]:
    config = SynthConfig(seed=seed, **overrides)
    result = generate(config)
    return result, build_corpus(result.records)


def all_feature_config() -> dict:
    """Synthetic settings under which nearly every instance carries email, coauthors and self-citations."""
    return dict(
        n_authors=40,
        papers_per_author_mean=3.0,
        team_size_mean=3.0,
        collaborators_per_author=3,
        email_coverage=1.0,
        self_cite_prob=0.9,
        homonym_rate=0.2,
        synonym_rate=0.2,
    )


def moderate_config(n_authors: int = 300) -> dict:
    """Roughly 2,000 instances with partial feature coverage and moderate name ambiguity."""
    return dict(
        n_authors=n_authors,
        team_size_mean=3.0,
        email_coverage=0.6,
        self_cite_prob=0.3,
        homonym_rate=0.1,
        synonym_rate=0.1,
    )
