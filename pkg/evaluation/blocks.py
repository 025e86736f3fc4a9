import logging
from collections import Counter
from typing import Iterable, Mapping

import numpy as np
from scipy import stats

from evaluation.models import BlockStats, ClusterSizeDistribution, ClusterSizeRow, PowerLawFit

logger = logging.getLogger(__name__)


def cumulative_ratios(sizes: Iterable[int]) -> dict[int, float]:
    """r(n) = share of blocks with n or more instances, for n = 1 and every observed size."""
    sizes = np.asarray(sorted(sizes), dtype=np.int64)
    if sizes.size == 0:
        return {}
    points = sorted(set(sizes.tolist()) | {1})
    # searchsorted on the sorted sizes counts blocks strictly smaller than n.
    smaller = np.searchsorted(sizes, points, side="left")
    return {int(n): float((sizes.size - below) / sizes.size) for n, below in zip(points, smaller)}


def fit_power_law(ratios: Mapping[int, float], fit_range: tuple[int, int] = (1, 60)) -> PowerLawFit:
    """Least-squares line through (log10 n, log10 r(n)) for n inside fit_range."""
    low, high = fit_range
    points = sorted((n, r) for n, r in ratios.items() if low <= n <= high and r > 0)
    fit = PowerLawFit(points=len(points), fit_range=fit_range)
    if len(points) < 2:
        fit.flags.append("fit_skipped")
        logger.warning(f"Power-law fit skipped: {len(points)} distinct block size(s) in range {low}..{high}")
        return fit

    x = np.log10([n for n, _ in points])
    y = np.log10([r for _, r in points])
    result = stats.linregress(x, y)
    fit.slope = float(result.slope)
    fit.intercept = float(result.intercept)
    if np.ptp(y) == 0:
        fit.flags.append("r_squared_undefined")
    else:
        fit.r_squared = float(result.rvalue ** 2)
    return fit


def block_stats(blocks: Mapping[str, str], fit_range: tuple[int, int] = (1, 60)) -> BlockStats:
    """Block sizes, cumulative ratios and power-law fit for a map of instance_id -> block key."""
    block_sizes = Counter(blocks.values())
    ratios = cumulative_ratios(block_sizes.values())
    fit = fit_power_law(ratios, fit_range)
    logger.info(f"{len(blocks)} instances in {len(block_sizes)} blocks; slope={fit.slope}, r2={fit.r_squared}")
    return BlockStats(
        instances=len(blocks),
        blocks=len(block_sizes),
        block_sizes=dict(sorted(block_sizes.items())),
        ratios=ratios,
        fit=fit,
    )


def cluster_size_distribution(labels: Mapping[str, str], open_bucket: int = 10) -> ClusterSizeDistribution:
    """Clusters counted by how many instances they hold; sizes >= open_bucket share one bucket."""
    sizes = Counter(Counter(labels.values()).values())
    total = sum(sizes.values())
    rows = []
    for size in range(1, open_bucket):
        if sizes.get(size):
            rows.append(ClusterSizeRow(bucket=str(size), clusters=sizes[size], ratio=sizes[size] / total))
    open_count = sum(count for size, count in sizes.items() if size >= open_bucket)
    if open_count:
        rows.append(ClusterSizeRow(bucket=f"{open_bucket} <=", clusters=open_count, ratio=open_count / total))
    return ClusterSizeDistribution(clusters=total, rows=rows)


def random_subset(instance_ids: Iterable[str], size: int, seed: int) -> list[str]:
    population = sorted(instance_ids)
    if size > len(population):
        raise ValueError(f"Cannot draw {size} instances from a population of {len(population)}")
    rng = np.random.default_rng(seed)
    chosen = rng.choice(len(population), size=size, replace=False)
    return sorted(population[index] for index in chosen)
