import re

from corpus.models import Corpus, NameInstance, SelfCitationCandidate
from matching.rules import Scheme
from matching.units import FeatureSet

_NON_ALNUM_RE = re.compile(r"[^a-z0-9]")


def email_key(address: str, scheme: Scheme) -> str:
    local = address.partition("@")[0]
    if scheme == Scheme.FULL_STRING:
        return address
    if scheme == Scheme.PRE_AT:
        return local
    if scheme == Scheme.ALNUM_ONLY:
        return _NON_ALNUM_RE.sub("", local)
    raise ValueError(f"Scheme {scheme.value!r} does not apply to email addresses")


def coauthor_key(name: tuple[str, str], scheme: Scheme) -> tuple[str, str]:
    surname, forename = name
    if scheme == Scheme.FULL_STRING:
        return surname, forename
    if scheme == Scheme.FIRST_INITIAL:
        return surname, forename[:1]
    raise ValueError(f"Scheme {scheme.value!r} does not apply to names")


def match_email(a: FeatureSet, b: FeatureSet, scheme: Scheme, within_block: bool = False) -> bool:
    if not a.emails or not b.emails:
        return False
    if within_block and not a.block_keys & b.block_keys:
        return False
    keys = {email_key(address, scheme) for address in a.emails}
    return any(email_key(address, scheme) in keys for address in b.emails)


def shared_coauthors(a: FeatureSet, b: FeatureSet, scheme: Scheme) -> set[tuple[str, str]]:
    return {coauthor_key(name, scheme) for name in a.coauthors} & {coauthor_key(name, scheme) for name in b.coauthors}


def match_coauthor(a: FeatureSet, b: FeatureSet, scheme: Scheme, min_shared: int = 1) -> bool:
    # Only co-disambiguating names (same block) are compared.
    if not a.block_keys & b.block_keys:
        return False
    return len(shared_coauthors(a, b, scheme)) >= min_shared


def names_match(a: NameInstance, b: NameInstance, scheme: Scheme) -> bool:
    if scheme == Scheme.FIRST_INITIAL:
        return a.block_key == b.block_key
    if scheme == Scheme.FULL_STRING:
        return (a.surname, a.forename) == (b.surname, b.forename)
    raise ValueError(f"Scheme {scheme.value!r} does not apply to names")


def match_self_citation(candidate: SelfCitationCandidate, scheme: Scheme, corpus: Corpus) -> bool:
    return names_match(corpus.instance(candidate.citing_instance), corpus.instance(candidate.cited_instance), scheme)
