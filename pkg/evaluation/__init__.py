from .blocks import block_stats, cluster_size_distribution, cumulative_ratios, fit_power_law, random_subset
from .models import BlockStats, ClusterSizeDistribution, EvaluationReport, PowerLawFit, TagRatioReport
from .pairwise import evaluable_instances, pairwise_metrics, to_label_map
from .tags import tag_ratios

__all__ = [
    "BlockStats",
    "ClusterSizeDistribution",
    "EvaluationReport",
    "PowerLawFit",
    "TagRatioReport",
    "block_stats",
    "cluster_size_distribution",
    "cumulative_ratios",
    "evaluable_instances",
    "fit_power_law",
    "pairwise_metrics",
    "random_subset",
    "tag_ratios",
    "to_label_map",
]
