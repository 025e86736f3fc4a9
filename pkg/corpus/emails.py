import logging
from enum import Enum, IntEnum
from typing import Iterable, Optional

from pydantic import BaseModel, Field

from corpus.models import EmailAssignmentStats, PublicationRecord
from corpus.names import initials, letters_only, normalize_name

logger = logging.getLogger(__name__)


class CandidateRank(IntEnum):
    FULL_STRING = 0
    INITIALS = 1


class CandidatePattern(Enum):
    FORENAME_SURNAME = "forename_surname"                  # markejnewman
    FIRST_FORENAME_SURNAME = "first_forename_surname"      # marknewman
    FORENAME_SURNAME_INITIAL = "forename_surname_initial"  # markn
    FORENAME_ALONE = "forename_alone"                      # mark (>= 4 letters)
    FIRST_INITIAL_SURNAME = "first_initial_surname"        # mnewman
    INITIALS_SURNAME = "initials_surname"                  # mejnewman
    INITIALS_SURNAME_INITIAL = "initials_surname_initial"  # mejn
    ALL_INITIALS = "all_initials"                          # mejn, or mejos for "owen smith"


DEFAULT_PATTERNS: tuple[CandidatePattern, ...] = tuple(CandidatePattern)

_FULL_STRING_PATTERNS = {
    CandidatePattern.FORENAME_SURNAME,
    CandidatePattern.FIRST_FORENAME_SURNAME,
    CandidatePattern.FORENAME_SURNAME_INITIAL,
    CandidatePattern.FORENAME_ALONE,
}

MIN_FORENAME_ALONE = 4
MIN_CANDIDATE_LENGTH = 2


class EmailAssignmentResult(BaseModel):
    assignments: list[tuple[str, str]] = Field(default_factory=list)
    stats: EmailAssignmentStats = Field(default_factory=EmailAssignmentStats)


def instance_id_for(paper_id: str, position: int) -> str:
    return f"{paper_id}#{position}"


def normalize_email(raw: str) -> Optional[str]:
    address = raw.strip().lower()
    local, at, domain = address.partition("@")
    if not at or not local or not domain:
        return None
    return address


def local_part(address: str) -> str:
    return address.partition("@")[0]


def name_candidates(
    surname: str,
    forename: str,
    patterns: Iterable[CandidatePattern] = DEFAULT_PATTERNS,
) -> dict[str, CandidateRank]:
    """Candidate local-part strings for a normalized name, each with its best rank."""
    patterns = set(patterns)
    surname_letters = letters_only(surname)
    tokens = [letters_only(token) for token in forename.split()]
    tokens = [token for token in tokens if token]
    candidates: dict[str, CandidateRank] = {}

    def add(candidate: str, pattern: CandidatePattern, rank: CandidateRank) -> None:
        if pattern not in patterns or len(candidate) < MIN_CANDIDATE_LENGTH:
            return
        candidates[candidate] = min(candidates.get(candidate, rank), rank)

    if not surname_letters:
        return candidates
    if not tokens:
        candidates[surname_letters] = CandidateRank.FULL_STRING
        return candidates

    first = tokens[0]
    # A forename written only as initials cannot produce a full-string match.
    full_rank = CandidateRank.FULL_STRING if len(first) > 1 else CandidateRank.INITIALS
    forename_initials = initials(" ".join(tokens))
    surname_initials = initials(surname)

    add("".join(tokens) + surname_letters, CandidatePattern.FORENAME_SURNAME, full_rank)
    add(first + surname_letters, CandidatePattern.FIRST_FORENAME_SURNAME, full_rank)
    add(first + surname_letters[0], CandidatePattern.FORENAME_SURNAME_INITIAL, full_rank)
    if len(first) >= MIN_FORENAME_ALONE:
        add(first, CandidatePattern.FORENAME_ALONE, full_rank)
    add(first[0] + surname_letters, CandidatePattern.FIRST_INITIAL_SURNAME, CandidateRank.INITIALS)
    add(forename_initials + surname_letters, CandidatePattern.INITIALS_SURNAME, CandidateRank.INITIALS)
    add(forename_initials + surname_letters[0], CandidatePattern.INITIALS_SURNAME_INITIAL, CandidateRank.INITIALS)
    add(forename_initials + surname_initials, CandidatePattern.ALL_INITIALS, CandidateRank.INITIALS)
    return candidates


def assign_emails(
    record: PublicationRecord,
    patterns: Iterable[CandidatePattern] = DEFAULT_PATTERNS,
) -> EmailAssignmentResult:
    """Assign a record's unowned email addresses to byline instances.

    Each address's letters-only local part is compared to every author's candidate
    strings. Full-string matches outrank initial-based ones; an address whose best
    rank is shared by two or more instances stays unassigned, and an instance that
    wins two or more addresses keeps none of them.
    """
    patterns = tuple(patterns)
    result = EmailAssignmentResult()
    addresses = sorted({address for address in (normalize_email(raw) for raw in record.emails) if address})
    result.stats.emails_seen = len(addresses)
    if not addresses:
        return result

    author_candidates: list[tuple[str, dict[str, CandidateRank]]] = []
    for position, raw_name in enumerate(record.authors):
        surname, forename = normalize_name(raw_name)
        author_candidates.append(
            (instance_id_for(record.paper_id, position), name_candidates(surname, forename, patterns))
        )

    owner_of: dict[str, str] = {}
    for address in addresses:
        target = letters_only(local_part(address))
        ranked = [
            (candidates[target], instance_id)
            for instance_id, candidates in author_candidates
            if target in candidates
        ]
        if not ranked:
            result.stats.unmatched += 1
            continue
        best_rank = min(rank for rank, _ in ranked)
        winners = [instance_id for rank, instance_id in ranked if rank == best_rank]
        if len(winners) > 1:
            result.stats.tied += 1
            logger.debug(f"{record.paper_id}: {address} tied between {winners}, left unassigned")
            continue
        owner_of[address] = winners[0]

    won: dict[str, list[str]] = {}
    for address, instance_id in owner_of.items():
        won.setdefault(instance_id, []).append(address)

    for instance_id, owned in sorted(won.items()):
        if len(owned) > 1:
            result.stats.multi_email_instances += 1
            logger.debug(f"{instance_id} matched {len(owned)} emails, excluded")
            continue
        result.assignments.append((instance_id, owned[0]))
    result.stats.assigned = len(result.assignments)
    return result
