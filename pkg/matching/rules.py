from enum import Enum
from typing import Optional, Self

from pydantic import BaseModel, Field, model_validator


class Feature(Enum):
    EMAIL = "email"
    SELF_CITATION = "self_citation"
    COAUTHOR = "coauthor"


class Scheme(Enum):
    FULL_STRING = "full_string"
    PRE_AT = "pre_at"
    ALNUM_ONLY = "alnum_only"
    FIRST_INITIAL = "first_initial"


ALLOWED_SCHEMES: dict[Feature, set[Scheme]] = {
    Feature.EMAIL: {Scheme.FULL_STRING, Scheme.PRE_AT, Scheme.ALNUM_ONLY},
    Feature.SELF_CITATION: {Scheme.FIRST_INITIAL, Scheme.FULL_STRING},
    Feature.COAUTHOR: {Scheme.FIRST_INITIAL, Scheme.FULL_STRING},
}


class MatchRule(BaseModel):
    feature: Feature
    scheme: Scheme
    # Coauthor threshold k; ignored by the other features.
    min_shared: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _check_scheme(self) -> Self:
        if self.scheme not in ALLOWED_SCHEMES[self.feature]:
            allowed = ", ".join(sorted(s.value for s in ALLOWED_SCHEMES[self.feature]))
            raise ValueError(f"Scheme {self.scheme.value!r} is not valid for {self.feature.value} (allowed: {allowed})")
        return self

    @property
    def label(self) -> str:
        if self.feature == Feature.COAUTHOR:
            return f"{self.feature.value}/{self.scheme.value}/k>={self.min_shared}"
        return f"{self.feature.value}/{self.scheme.value}"


# Order and schemes chosen for production labeling.
DEFAULT_RULES: tuple[MatchRule, ...] = (
    MatchRule(feature=Feature.SELF_CITATION, scheme=Scheme.FULL_STRING),
    MatchRule(feature=Feature.COAUTHOR, scheme=Scheme.FULL_STRING, min_shared=1),
    MatchRule(feature=Feature.EMAIL, scheme=Scheme.FULL_STRING),
)


def candidate_rules(feature: Feature, thresholds: tuple[int, ...] = (1, 2, 3)) -> list[MatchRule]:
    """Every scheme (and coauthor threshold) worth validating for one feature."""
    rules = []
    for scheme in sorted(ALLOWED_SCHEMES[feature], key=lambda s: list(Scheme).index(s)):
        if feature == Feature.COAUTHOR:
            rules.extend(MatchRule(feature=feature, scheme=scheme, min_shared=k) for k in thresholds)
        else:
            rules.append(MatchRule(feature=feature, scheme=scheme))
    return rules


class RuleAccuracyReport(BaseModel):
    rule: MatchRule
    match_pairs: int
    evaluable_pairs: int
    true_match: int
    accuracy: Optional[float] = None
    flags: list[str] = Field(default_factory=list)
