from typing import Optional

from pydantic import BaseModel, Field

from corpus.models import Corpus, NameInstance
from corpus.names import display_name
from disambiguator.ngrams import DEFAULT_N_SET, cosine, ngram_profile
from disambiguator.preprocess import TextKind, preprocess

FEATURE_NAMES = ("sim_name", "sim_coauthor", "sim_title")


class FeatureVector(BaseModel):
    sim_name: float = Field(ge=0.0, le=1.0)
    sim_coauthor: float = Field(ge=0.0, le=1.0)
    sim_title: float = Field(ge=0.0, le=1.0)

    def as_list(self) -> list[float]:
        return [self.sim_name, self.sim_coauthor, self.sim_title]


class InstanceText(BaseModel):
    """Preprocessed text of one name instance."""
    instance_id: str
    name: str
    coauthors: list[str]
    title: str

    @classmethod
    def from_instance(cls, instance: NameInstance, title: str, stopwords: Optional[frozenset[str]] = None) -> "InstanceText":
        return cls(
            instance_id=instance.instance_id,
            name=preprocess(instance.raw_name, TextKind.NAME),
            coauthors=[preprocess(display_name(*coauthor), TextKind.NAME) for coauthor in instance.coauthors],
            title=preprocess(title, TextKind.TITLE, stopwords),
        )


class InstanceProfiles(BaseModel):
    name: dict[str, int]
    coauthors: dict[str, int]
    title: dict[str, int]

    @classmethod
    def from_text(cls, text: InstanceText, n_set: tuple[int, ...] = DEFAULT_N_SET) -> "InstanceProfiles":
        return cls.model_construct(
            name=ngram_profile(text.name, n_set),
            coauthors=ngram_profile(" ".join(text.coauthors), n_set),
            title=ngram_profile(text.title, n_set),
        )


def pair_features(a: InstanceProfiles, b: InstanceProfiles) -> FeatureVector:
    return FeatureVector(
        sim_name=cosine(a.name, b.name),
        sim_coauthor=cosine(a.coauthors, b.coauthors),
        sim_title=cosine(a.title, b.title),
    )


class FeatureExtractor:
    """Caches preprocessed text and n-gram profiles per instance of one corpus."""

    def __init__(self, corpus: Corpus, stopwords: Optional[frozenset[str]] = None, n_set: tuple[int, ...] = DEFAULT_N_SET) -> None:
        self.corpus = corpus
        self.stopwords = stopwords
        self.n_set = n_set
        self._texts: dict[str, InstanceText] = {}
        self._profiles: dict[str, InstanceProfiles] = {}

    def text(self, instance_id: str) -> InstanceText:
        if instance_id not in self._texts:
            instance = self.corpus.instance(instance_id)
            self._texts[instance_id] = InstanceText.from_instance(instance, self.corpus.title_of(instance_id), self.stopwords)
        return self._texts[instance_id]

    def profiles(self, instance_id: str) -> InstanceProfiles:
        if instance_id not in self._profiles:
            self._profiles[instance_id] = InstanceProfiles.from_text(self.text(instance_id), self.n_set)
        return self._profiles[instance_id]

    def features(self, a: str, b: str) -> FeatureVector:
        return pair_features(self.profiles(a), self.profiles(b))
