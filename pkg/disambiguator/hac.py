import logging
from enum import Enum
from itertools import combinations
from typing import Iterable, Mapping, Optional

import numpy as np
from pydantic import BaseModel, Field
from scipy.cluster.hierarchy import fcluster, linkage

from clustering.iterative import number_clusters
from corpus.models import TruthLabels
from disambiguator.classifiers import Classifier
from disambiguator.features import FeatureExtractor
from disambiguator.pairs import group_by_block
from evaluation.pairwise import pairwise_metrics

logger = logging.getLogger(__name__)

# Makes the cut inclusive: a linkage exactly at the threshold still merges.
_CUT_EPSILON = 1e-12


class GridMode(Enum):
    UNIFORM = "uniform"
    BLOCK_MEANS = "block_means"


class HacConfig(BaseModel):
    threshold: float = Field(default=0.5, ge=0.0, le=1.0)
    linkage: str = "average"
    dev_f1: Optional[float] = None


class ScoredBlock(BaseModel):
    """Block members (sorted) with their pair probabilities in condensed (i < j) order."""
    members: list[str]
    probabilities: list[float]

    def linkage_matrix(self) -> Optional[np.ndarray]:
        if len(self.members) < 2:
            return None
        return linkage(1.0 - np.asarray(self.probabilities, dtype=float), method="average")

    def cut(self, threshold: float, matrix: Optional[np.ndarray] = None) -> list[frozenset[str]]:
        if len(self.members) < 2:
            return [frozenset(self.members)]
        matrix = self.linkage_matrix() if matrix is None else matrix
        assignments = fcluster(matrix, t=1.0 - threshold + _CUT_EPSILON, criterion="distance")
        clusters: dict[int, set[str]] = {}
        for member, assignment in zip(self.members, assignments):
            clusters.setdefault(int(assignment), set()).add(member)
        return sorted((frozenset(c) for c in clusters.values()), key=min)


def uniform_grid(step: float = 0.01) -> list[float]:
    steps = round(1.0 / step)
    return [round(i * step, 10) for i in range(steps + 1)]


def hac_cluster(instance_ids: Iterable[str], probabilities: Mapping[tuple[str, str], float], config: HacConfig) -> list[frozenset[str]]:
    """
    Average-linkage clustering of one block with pair probability as similarity.

    Merging stops once the best average linkage drops below config.threshold. Probabilities
    may be keyed by either ordering of a pair.
    """
    members = sorted(set(instance_ids))
    scores = []
    for a, b in combinations(members, 2):
        score = probabilities[(a, b)] if (a, b) in probabilities else probabilities[(b, a)]
        scores.append(float(score))
    return ScoredBlock(members=members, probabilities=scores).cut(config.threshold)


def score_blocks(model: Classifier, extractor: FeatureExtractor, blocks: Mapping[str, str]) -> list[ScoredBlock]:
    """Pair probabilities for every block of a map of instance_id -> block key."""
    scored = []
    for members in group_by_block(blocks).values():
        pairs = list(combinations(members, 2))
        if pairs:
            X = np.array([extractor.features(a, b).as_list() for a, b in pairs], dtype=float)
            probabilities = model.predict_proba(X).tolist()
        else:
            probabilities = []
        scored.append(ScoredBlock(members=members, probabilities=probabilities))
    return scored


def block_mean_grid(scored: list[ScoredBlock]) -> list[float]:
    means = {round(float(np.mean(block.probabilities)), 6) for block in scored if block.probabilities}
    return sorted(means)


def select_threshold(scored: list[ScoredBlock], dev_labels: Mapping[str, str], grid: list[float]) -> HacConfig:
    """Grid threshold with the best development pairwise F1; ties go to the higher threshold."""
    if not grid:
        raise ValueError("Threshold grid is empty")
    truth = TruthLabels(labels=dict(dev_labels))
    matrices = [block.linkage_matrix() for block in scored]

    best: Optional[HacConfig] = None
    for threshold in sorted(set(grid)):
        partition = [cluster for block, matrix in zip(scored, matrices) for cluster in block.cut(threshold, matrix)]
        report = pairwise_metrics(partition, truth)
        f1 = report.f1 if report.f1 is not None else -1.0
        logger.debug(f"threshold={threshold:.4f}: pF1={report.f1}")
        if best is None or f1 >= (best.dev_f1 if best.dev_f1 is not None else -1.0):
            best = HacConfig(threshold=threshold, dev_f1=report.f1)
    logger.info(f"Selected HAC threshold {best.threshold:.4f} (dev pF1 {best.dev_f1})")
    return best


def disambiguate(model: Classifier, extractor: FeatureExtractor, blocks: Mapping[str, str], config: HacConfig) -> dict[str, str]:
    """Cluster each block with HAC and return instance_id -> cluster number."""
    partition = [cluster for block in score_blocks(model, extractor, blocks) for cluster in block.cut(config.threshold)]
    logger.info(f"Disambiguated {len(blocks)} instances into {len(partition)} clusters")
    return number_clusters(partition)
