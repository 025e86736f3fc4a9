from .closure import transitive_closure
from .iterative import emit_labels, iterative_cluster, number_clusters, per_feature_cluster, select_in_scope, singleton_units
from .models import Cluster, ClusteringState, MatchPairList, StageRecord
from .pairs import generate_pairs

__all__ = [
    "Cluster",
    "ClusteringState",
    "MatchPairList",
    "StageRecord",
    "emit_labels",
    "generate_pairs",
    "iterative_cluster",
    "number_clusters",
    "per_feature_cluster",
    "select_in_scope",
    "singleton_units",
    "transitive_closure",
]
