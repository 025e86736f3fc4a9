from typing import Iterable, Optional

from pydantic import BaseModel, Field

from evaluation.models import EvaluationReport
from matching.rules import Feature, Scheme
from matching.units import FeatureSet


class Cluster(BaseModel):
    # Smallest member instance_id while clustering; relabeled by emit_labels.
    cluster_id: str
    members: frozenset[str]
    features: FeatureSet

    @classmethod
    def merge(cls, clusters: list["Cluster"]) -> "Cluster":
        if len(clusters) == 1:
            return clusters[0]
        members = frozenset().union(*(cluster.members for cluster in clusters))
        return cls.model_construct(
            cluster_id=min(members),
            members=members,
            features=FeatureSet.union(cluster.features for cluster in clusters),
        )


class StageRecord(BaseModel):
    stage: int
    pass_index: int
    feature: Feature
    scheme: Scheme
    min_shared: int = 1
    pairs: int
    merges: int
    clusters: int
    report: Optional[EvaluationReport] = None


class ClusteringState(BaseModel):
    clusters: list[Cluster] = Field(default_factory=list)
    stage_log: list[StageRecord] = Field(default_factory=list)

    @property
    def partition(self) -> list[frozenset[str]]:
        return [cluster.members for cluster in self.clusters]

    @property
    def instance_ids(self) -> set[str]:
        return {member for cluster in self.clusters for member in cluster.members}


class MatchPairList(BaseModel):
    """Unordered unit pairs, each stored once as (smaller, larger)."""
    pairs: list[tuple[str, str]] = Field(default_factory=list)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]]) -> "MatchPairList":
        normalized = {(a, b) if a < b else (b, a) for a, b in pairs if a != b}
        return cls(pairs=sorted(normalized))

    def __len__(self) -> int:
        return len(self.pairs)
