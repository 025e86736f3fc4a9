from typing import Iterable

from pydantic import BaseModel, ConfigDict

from corpus.models import NameInstance


class FeatureSet(BaseModel):
    """Matching features of an instance, or the union over a cluster's members."""
    model_config = ConfigDict(frozen=True)

    emails: frozenset[str] = frozenset()
    coauthors: frozenset[tuple[str, str]] = frozenset()
    block_keys: frozenset[str] = frozenset()
    names: frozenset[tuple[str, str]] = frozenset()

    @classmethod
    def from_instance(cls, instance: NameInstance) -> "FeatureSet":
        return cls.model_construct(
            emails=frozenset([instance.email]) if instance.email else frozenset(),
            coauthors=frozenset(tuple(name) for name in instance.coauthors),
            block_keys=frozenset([instance.block_key]),
            names=frozenset([(instance.surname, instance.forename)]),
        )

    @classmethod
    def union(cls, feature_sets: Iterable["FeatureSet"]) -> "FeatureSet":
        emails, coauthors, block_keys, names = set(), set(), set(), set()
        for features in feature_sets:
            emails |= features.emails
            coauthors |= features.coauthors
            block_keys |= features.block_keys
            names |= features.names
        return cls.model_construct(
            emails=frozenset(emails),
            coauthors=frozenset(coauthors),
            block_keys=frozenset(block_keys),
            names=frozenset(names),
        )
