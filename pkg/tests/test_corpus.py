"""Tests for corpus parsing and feature extraction.

Run with: uv run python tests/test_corpus.py
"""

import json
import tempfile
from pathlib import Path

from corpus.authority import link_authority
from corpus.builder import build_corpus
from corpus.citations import extract_citations, normalize_doi
from corpus.emails import CandidateRank, assign_emails, name_candidates
from corpus.models import AuthorityProfile, PublicationRecord
from corpus.names import block_key, display_name, normalize_name
from corpus.reader import parse_corpus, read_authority_profiles, write_corpus_tsv
from factories import synthetic


def test_normalize_name_orders():
    assert normalize_name("Newman, M.E.J.") == ("newman", "m e j")
    assert normalize_name("Mark Newman") == ("newman", "mark")
    assert normalize_name("M. Newman") == ("newman", "m")
    assert normalize_name("Newman M.") == ("newman", "m")
    assert normalize_name("José García") == ("garcia", "jose")
    assert block_key(*normalize_name("Mark E. J. Newman")) == "m newman"


def test_display_name_normalizes_to_itself():
    for raw in ("Newman, M.E.J.", "Mark Newman", "Kim, Jinseok", "Plato"):
        name = normalize_name(raw)
        assert normalize_name(display_name(*name)) == name, raw


def test_trailing_initial_reads_surname_first():
    # A lone trailing letter marks "Surname Initials" order, even when it is a whole name.
    assert normalize_name("Newman M E J") == ("newman", "m e j")
    assert normalize_name("Malcolm X") == ("malcolm", "x")
    assert normalize_name("Wei Li A") == ("wei", "li a")
    assert normalize_name("X, Malcolm") == ("x", "malcolm")
    assert normalize_name("J. Park") == ("park", "j")


def test_normalize_name_rejects_empty():
    try:
        normalize_name("  ")
    except ValueError:
        return
    raise AssertionError("expected ValueError for an empty name")


def test_name_candidates_cover_local_part_forms():
    candidates = name_candidates("newman", "mark e j")
    for local in ("markejnewman", "marknewman", "markn", "mark"):
        assert candidates[local] == CandidateRank.FULL_STRING, local
    for local in ("mnewman", "mejnewman", "mejn"):
        assert candidates[local] == CandidateRank.INITIALS, local


def test_email_prefers_full_string_owner():
    record = PublicationRecord(paper_id="p", authors=["Mark Newman", "M. Newman"], emails=["mark.newman@x.org"])
    result = assign_emails(record)
    assert result.assignments == [("p#0", "mark.newman@x.org")], result.assignments


def test_email_tie_left_unassigned():
    record = PublicationRecord(paper_id="p", authors=["M. Newman", "Mike Newman"], emails=["mnewman@x.org"])
    result = assign_emails(record)
    assert result.assignments == []
    assert result.stats.tied == 1


def test_instance_with_two_emails_is_excluded():
    record = PublicationRecord(
        paper_id="p",
        authors=["Mark Newman", "Steven Strogatz"],
        emails=["mnewman@a.edu", "mark.newman@b.edu", "sstrogatz@c.edu"],
    )
    result = assign_emails(record)
    assert result.assignments == [("p#1", "sstrogatz@c.edu")], result.assignments
    assert result.stats.multi_email_instances == 1
    assert result.stats.emails_seen == 3


def test_unmatched_email_is_counted():
    record = PublicationRecord(paper_id="p", authors=["Mark Newman"], emails=["office@dept.edu"])
    result = assign_emails(record)
    assert result.assignments == []
    assert result.stats.unmatched == 1


def test_parse_tsv_skips_and_reports():
    rows = [
        "paper_id\tdoi\tyear\ttitle\tbyline\temails\tcited_keys",
        "p1\thttps://doi.org/10.1/A\t2001\tFirst\tMark Newman|Steven Strogatz\tmejn@umich.edu\t10.1/b",
        "p2\t10.1/B\t2002\tSecond\tM. Newman\t\t",
        "p3\t\t2003\tThird\tAnonymous\t\t",
        "p4\t\tnineteen\tFourth\tA. Author\t\t",
        "p5\ttoo few columns",
        "p2\t\t2002\tDuplicate\tM. Newman\t\t",
    ]
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "corpus.tsv"
        path.write_text("\n".join(rows) + "\n", encoding="utf-8")
        result = parse_corpus(path)

    assert [r.paper_id for r in result.records] == ["p1", "p2"]
    assert result.records[0].doi == "10.1/a"
    assert result.records[0].authors == ["Mark Newman", "Steven Strogatz"]
    assert result.skipped_anonymous == 1
    assert sorted(d.line for d in result.diagnostics) == [5, 6, 7], result.diagnostics
    assert result.skipped == 4


def test_parse_empty_file():
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "corpus.tsv"
        path.write_text("", encoding="utf-8")
        result = parse_corpus(path)
    assert result.records == [] and result.diagnostics == []
    assert result.skipped == 0


def test_parse_json_string_lists():
    rows = [
        {"paper_id": "p1", "doi": "10.1/a", "authors": "Mark Newman|Steven Strogatz", "emails": "mejn@umich.edu", "cited_keys": "10.1/b|p2"},
        {"paper_id": "p2", "byline": "J. Park"},
        {"paper_id": "p3", "authors": {"name": "J. Park"}},
    ]
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "corpus.json"
        path.write_text(json.dumps(rows), encoding="utf-8")
        result = parse_corpus(path, "json")
    assert result.records[0].authors == ["Mark Newman", "Steven Strogatz"]
    assert result.records[0].emails == ["mejn@umich.edu"]
    assert result.records[0].cited_keys == ["10.1/b", "p2"]
    assert result.records[1].authors == ["J. Park"]
    assert [d.line for d in result.diagnostics] == [3]
    assert result.diagnostics[0].reason.startswith("authors: expected a list")


def test_tsv_writer_flattens_breaks_inside_fields():
    record = PublicationRecord(paper_id="p1", doi="10.1/a", year=2001, title="Graph\tmethods\nfor names",
                               authors=["Mark\tNewman", "J. Park"], emails=["mejn@umich.edu"])
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "corpus.tsv"
        write_corpus_tsv([record], path)
        result = parse_corpus(path)
    assert result.diagnostics == []
    assert result.records == [record.model_copy(update={"title": "Graph methods for names", "authors": ["Mark Newman", "J. Park"]})]


def test_parse_missing_file_names_path():
    try:
        parse_corpus("/nonexistent/corpus.tsv")
    except FileNotFoundError as e:
        assert "/nonexistent/corpus.tsv" in str(e)
        return
    raise AssertionError("expected FileNotFoundError")


def test_parse_json_matches_tsv():
    records = [
        PublicationRecord(paper_id="p1", doi="10.1/a", year=2001, title="First", authors=["Mark Newman"], emails=[], cited_keys=["10.1/b"]),
        PublicationRecord(paper_id="p2", doi="10.1/b", year=2002, title="Second", authors=["M. Newman", "J. Park"]),
    ]
    with tempfile.TemporaryDirectory() as tmp:
        tsv = Path(tmp) / "corpus.tsv"
        write_corpus_tsv(records, tsv)
        js = Path(tmp) / "corpus.json"
        js.write_text(json.dumps([r.model_dump() for r in records]), encoding="utf-8")
        assert parse_corpus(tsv).records == records
        assert parse_corpus(js, "json").records == records


def test_citations_resolve_by_doi_and_drop_self_loops():
    assert normalize_doi("https://doi.org/10.1/ABC") == "10.1/abc"
    assert normalize_doi("doi:10.1/x") == "10.1/x"
    records = [
        PublicationRecord(paper_id="p1", doi="10.1/a", authors=["Mark Newman"], cited_keys=["10.1/B", "10.1/a", "10.9/outside"]),
        PublicationRecord(paper_id="p2", doi="10.1/b", authors=["M. Newman"], cited_keys=["p1"]),
    ]
    edges = extract_citations(records, supplemental=[("p1", "p2")])
    assert [(e.citing_paper, e.cited_paper) for e in edges] == [("p1", "p2"), ("p2", "p1")]


def test_build_corpus_features():
    records = [
        PublicationRecord(paper_id="p1", doi="10.1/a", authors=["Mark Newman", "Steven Strogatz"], emails=["mark.newman@umich.edu"]),
        PublicationRecord(paper_id="p2", doi="10.1/b", authors=["M. Newman"], cited_keys=["10.1/a"]),
    ]
    corpus = build_corpus(records)
    newman = corpus.instance("p1#0")
    assert newman.email == "mark.newman@umich.edu"
    assert newman.coauthors == [("strogatz", "steven")]
    assert corpus.instance("p2#0").coauthors == []
    pairs = {(c.citing_instance, c.cited_instance) for c in corpus.candidates}
    assert pairs == {("p2#0", "p1#0"), ("p2#0", "p1#1")}
    assert corpus.stats.instances == 3
    assert corpus.stats.email.assigned == 1
    assert corpus.stats.self_citation_candidates == 2


def test_self_citation_candidates_cover_every_cross_pair():
    result, corpus = synthetic(12, n_authors=120, self_cite_prob=0.5, background_cite_prob=0.3)
    by_doi = {record.doi: record for record in result.records}
    expected = set()
    total = 0
    for record in result.records:
        for key in set(record.cited_keys):
            cited = by_doi[key]
            if cited.paper_id == record.paper_id:
                continue
            total += len(record.authors) * len(cited.authors)
            expected |= {(f"{record.paper_id}#{i}", f"{cited.paper_id}#{j}")
                         for i in range(len(record.authors)) for j in range(len(cited.authors))}
    assert total > 0
    assert len(corpus.candidates) == total == corpus.stats.self_citation_candidates
    assert {(c.citing_instance, c.cited_instance) for c in corpus.candidates} == expected


def test_coauthors_are_the_rest_of_the_byline():
    _, corpus = synthetic(13, n_authors=120)
    for instance in corpus.instances:
        byline = corpus.record_map[instance.paper_id].authors
        assert len(instance.coauthors) == len(byline) - 1

    # Identical names on one byline still see each other.
    twins = build_corpus([PublicationRecord(paper_id="p1", authors=["J. Park", "J. Park", "Mark Newman"])])
    assert twins.instance("p1#0").coauthors == [("park", "j"), ("newman", "mark")]


def test_link_authority():
    records = [
        PublicationRecord(paper_id="p1", doi="10.1/a", authors=["Mark Newman", "Steven Strogatz"]),
        PublicationRecord(paper_id="p2", doi="10.1/b", authors=["M. Newman", "Mike Newman"]),
    ]
    corpus = build_corpus(records)
    profiles = [AuthorityProfile(authority_id="0000-0001", surname="Newman", forename="Mark", dois=["10.1/A", "10.1/b"])]
    truth = link_authority(corpus, profiles)
    # p2 has two block matches and links nothing.
    assert truth.labels == {"p1#0": "0000-0001"}


def test_read_authority_profiles():
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "profiles.json"
        path.write_text(json.dumps([{"authority_id": "x", "surname": "Kim", "forename": "Jinseok", "dois": ["10.1/a"]}]), encoding="utf-8")
        profiles = read_authority_profiles(path)
    assert profiles[0].authority_id == "x" and profiles[0].dois == ["10.1/a"]


def main():
    test_normalize_name_orders()
    test_display_name_normalizes_to_itself()
    test_normalize_name_rejects_empty()
    test_trailing_initial_reads_surname_first()
    test_name_candidates_cover_local_part_forms()
    test_email_prefers_full_string_owner()
    test_email_tie_left_unassigned()
    test_instance_with_two_emails_is_excluded()
    test_unmatched_email_is_counted()
    test_parse_tsv_skips_and_reports()
    test_parse_missing_file_names_path()
    test_parse_empty_file()
    test_parse_json_string_lists()
    test_tsv_writer_flattens_breaks_inside_fields()
    test_parse_json_matches_tsv()
    test_citations_resolve_by_doi_and_drop_self_loops()
    test_build_corpus_features()
    test_self_citation_candidates_cover_every_cross_pair()
    test_coauthors_are_the_rest_of_the_byline()
    test_link_authority()
    test_read_authority_profiles()
    print("All corpus tests passed.")


if __name__ == "__main__":
    main()
