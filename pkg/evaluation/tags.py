import logging
from collections import Counter
from typing import Iterable, Mapping, Optional

from evaluation.models import TagRatioReport, TagRatioRow

logger = logging.getLogger(__name__)

NULL_CATEGORY = "Null"
OTHER_CATEGORY = "Other"


def tag_ratios(
    subset: Iterable[str],
    population: Iterable[str],
    tags: Mapping[str, str],
    top_k: Optional[int] = None,
) -> TagRatioReport:
    """
    Category shares of a subset next to those of the population.

    Untagged instances fall under "Null". Rows are sorted by population frequency; with
    top_k, the remaining categories are pooled into "Other" so shares still sum to one.
    """
    if not tags:
        raise ValueError("Tag map is empty")
    subset, population = list(subset), list(population)
    if not subset or not population:
        raise ValueError("Cannot compute tag ratios over an empty instance set")

    subset_counts = Counter(tags.get(instance_id, NULL_CATEGORY) for instance_id in subset)
    population_counts = Counter(tags.get(instance_id, NULL_CATEGORY) for instance_id in population)
    categories = sorted(set(subset_counts) | set(population_counts), key=lambda c: (-population_counts[c], c))

    if top_k is not None and len(categories) > top_k:
        kept, pooled = categories[:top_k], categories[top_k:]
        # A real "Other" category absorbs the pooled counts instead of getting a second row.
        categories = kept if OTHER_CATEGORY in kept else kept + [OTHER_CATEGORY]
        for counts in (subset_counts, population_counts):
            rest = sum(counts.pop(c, 0) for c in pooled if c != OTHER_CATEGORY)
            counts[OTHER_CATEGORY] += rest

    rows = [
        TagRatioRow(
            category=category,
            subset_ratio=subset_counts[category] / len(subset),
            population_ratio=population_counts[category] / len(population),
        )
        for category in categories
    ]
    logger.info(f"Tag ratios over {len(categories)} categories ({len(subset)} vs {len(population)} instances)")
    return TagRatioReport(subset_size=len(subset), population_size=len(population), rows=rows)
