"""Tests for the synthetic corpus generator.

Run with: uv run python tests/test_synth.py
"""

import math
import tempfile
from collections import defaultdict
from pathlib import Path

from pydantic import ValidationError

from corpus.names import normalize_name
from corpus.reader import parse_corpus, write_corpus_tsv
from synth import SynthConfig, generate, summarize
from factories import synthetic


def test_generate_is_seeded():
    first = generate(SynthConfig(n_authors=50, seed=9))
    second = generate(SynthConfig(n_authors=50, seed=9))
    other = generate(SynthConfig(n_authors=50, seed=10))
    assert first.model_dump() == second.model_dump()
    assert first.records != other.records


def test_truth_covers_every_instance():
    result, corpus = synthetic(2, n_authors=80)
    assert len(result.truth) == sum(len(record.authors) for record in result.records) == len(corpus.instances)
    assert set(result.truth.labels) == {instance.instance_id for instance in corpus.instances}
    # Every author leads at least one paper.
    assert {author.author_id for author in result.authors} == set(result.truth.labels.values())


def test_bylines_have_distinct_authors():
    result, _ = synthetic(3, n_authors=80)
    for record in result.records:
        ids = [result.truth.get(f"{record.paper_id}#{position}") for position in range(len(record.authors))]
        assert len(ids) == len(set(ids))
        assert len(record.authors) <= SynthConfig().max_team_size


def test_collaborators_form_groups_without_homonyms():
    result, _ = synthetic(11, n_authors=200, homonym_rate=0.3)
    size = SynthConfig().collaborators_per_author + 1
    for index, author in enumerate(result.authors):
        group = sorted(author.collaborators + [index])
        assert len(group) <= size
        for member in author.collaborators:
            assert sorted(result.authors[member].collaborators + [member]) == group
        blocks = [(result.authors[m].surname, result.authors[m].forename[0]) for m in group]
        assert len(blocks) == len(set(blocks))

    # Teams come from the lead's group, so no byline holds two authors of one block.
    by_id = {author.author_id: author for author in result.authors}
    for record in result.records:
        ids = [result.truth.get(f"{record.paper_id}#{position}") for position in range(len(record.authors))]
        blocks = [(by_id[i].surname, by_id[i].forename[0]) for i in ids]
        assert len(blocks) == len(set(blocks))


def test_homonyms_share_blocks_and_synonyms_vary_forms():
    result, corpus = synthetic(4, n_authors=200, homonym_rate=0.2, synonym_rate=0.3)
    authors_per_block = defaultdict(set)
    forms = defaultdict(set)
    for instance in corpus.instances:
        author = result.truth.get(instance.instance_id)
        authors_per_block[instance.block_key].add(author)
        forms[author].add((instance.surname, instance.forename))
    assert sum(len(a) - 1 for a in authors_per_block.values()) == len(result.homonym_authors)
    assert {author for author, f in forms.items() if len(f) > 1} <= set(result.synonym_authors)

    summary = summarize(corpus, result.truth)
    assert summary.homonym_authors == len(result.homonym_authors)
    assert summary.synonym_authors <= len(result.synonym_authors)
    assert summary.blocks.instances == len(corpus.instances)


def test_email_coverage_within_noise():
    result, corpus = synthetic(5, n_authors=300, email_coverage=0.6)
    instances = len(corpus.instances)
    emitted = sum(len(record.emails) for record in result.records) / instances
    assert abs(emitted - 0.6) < 4 * math.sqrt(0.6 * 0.4 / instances)

    summary = summarize(corpus, result.truth)
    assert summary.email_coverage <= emitted
    assert summary.papers == len(result.records)
    assert 1.0 <= summary.mean_team_size <= SynthConfig().max_team_size


def test_self_citations_follow_probability():
    result, corpus = synthetic(6, n_authors=100, self_cite_prob=0.0)
    assert all(not record.cited_keys for record in result.records)
    assert summarize(corpus, result.truth).self_citation_instances == 0

    result, corpus = synthetic(6, n_authors=100, self_cite_prob=1.0)
    assert summarize(corpus, result.truth).self_citation_instances > 0


def test_no_papers_and_invalid_configs():
    empty = generate(SynthConfig(papers_per_author_mean=0.0, n_authors=10))
    assert empty.records == [] and len(empty.truth) == 0

    for overrides in ({"n_authors": 0}, {"papers_per_author_mean": 0.5}, {"title_words": (5, 2)}, {"email_coverage": 1.5}):
        try:
            SynthConfig(**overrides)
        except ValidationError:
            continue
        raise AssertionError(f"{overrides} should be rejected")


def test_names_survive_the_corpus_format():
    result, _ = synthetic(7, n_authors=60)
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "corpus.tsv"
        write_corpus_tsv(result.records, path)
        parsed = parse_corpus(path)
    assert parsed.records == result.records
    assert parsed.skipped == 0
    for author in result.authors:
        assert normalize_name(f"{author.forename} {author.surname}") == (author.surname.lower(), author.forename.lower())


def main():
    test_generate_is_seeded()
    test_truth_covers_every_instance()
    test_bylines_have_distinct_authors()
    test_collaborators_form_groups_without_homonyms()
    test_homonyms_share_blocks_and_synonyms_vary_forms()
    test_email_coverage_within_noise()
    test_self_citations_follow_probability()
    test_no_papers_and_invalid_configs()
    test_names_survive_the_corpus_format()
    print("All synth tests passed.")


if __name__ == "__main__":
    main()
