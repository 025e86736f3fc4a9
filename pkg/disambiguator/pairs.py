import csv
import logging
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping, Optional

import numpy as np
from pydantic import BaseModel, Field

from corpus.models import Corpus
from corpus.names import full_forename_block_key
from disambiguator.features import FEATURE_NAMES, FeatureExtractor, FeatureVector

logger = logging.getLogger(__name__)

PAIR_COLUMNS = ("instance_a", "instance_b", *FEATURE_NAMES, "label")


class TrainingPair(BaseModel):
    instance_a: str
    instance_b: str
    features: FeatureVector
    label: bool


class PairSplit(BaseModel):
    train: list[TrainingPair] = Field(default_factory=list)
    dev: list[TrainingPair] = Field(default_factory=list)
    train_labels: dict[str, str] = Field(default_factory=dict)
    dev_labels: dict[str, str] = Field(default_factory=dict)


class PairSummary(BaseModel):
    split: str
    instances: int
    clusters: int
    positives: int
    negatives: int


def block_map(corpus: Corpus, instance_ids: Iterable[str], full_forename: bool = False) -> dict[str, str]:
    """instance_id -> block key (first-initial blocking unless full_forename is set)."""
    blocks = {}
    for instance_id in instance_ids:
        instance = corpus.instance(instance_id)
        blocks[instance_id] = full_forename_block_key(instance.surname, instance.forename) if full_forename else instance.block_key
    return blocks


def group_by_block(blocks: Mapping[str, str]) -> dict[str, list[str]]:
    grouped: dict[str, list[str]] = {}
    for instance_id in sorted(blocks):
        grouped.setdefault(blocks[instance_id], []).append(instance_id)
    return dict(sorted(grouped.items()))


def block_pairs(labels: Mapping[str, str], blocks: Mapping[str, str], extractor: FeatureExtractor) -> list[TrainingPair]:
    """Every within-block pair of labeled instances; positive when both share a cluster."""
    pairs = []
    for members in group_by_block({i: blocks[i] for i in labels}).values():
        for a, b in combinations(members, 2):
            pairs.append(TrainingPair(instance_a=a, instance_b=b, features=extractor.features(a, b), label=labels[a] == labels[b]))
    return pairs


def split_by_cluster(labels: Mapping[str, str], train_ratio: float = 0.5, seed: int = 0) -> tuple[dict[str, str], dict[str, str]]:
    """Seeded split of the labeled instances that keeps every cluster on one side."""
    if not 0.0 < train_ratio < 1.0:
        raise ValueError(f"train_ratio must lie strictly between 0 and 1, got {train_ratio}")
    clusters = sorted(set(labels.values()))
    order = np.random.default_rng(seed).permutation(len(clusters))
    train_clusters = {clusters[index] for index in order[:round(train_ratio * len(clusters))]}
    train = {i: label for i, label in sorted(labels.items()) if label in train_clusters}
    dev = {i: label for i, label in sorted(labels.items()) if label not in train_clusters}
    return train, dev


def build_pairs(
    labels: Mapping[str, str],
    corpus: Corpus,
    extractor: Optional[FeatureExtractor] = None,
    train_ratio: float = 0.5,
    seed: int = 0,
    full_forename_blocks: bool = False,
) -> PairSplit:
    extractor = extractor or FeatureExtractor(corpus)
    train_labels, dev_labels = split_by_cluster(labels, train_ratio, seed)
    blocks = block_map(corpus, labels, full_forename_blocks)
    split = PairSplit(
        train=block_pairs(train_labels, blocks, extractor),
        dev=block_pairs(dev_labels, blocks, extractor),
        train_labels=train_labels,
        dev_labels=dev_labels,
    )
    for summary in summarize_pairs(split):
        logger.info(
            f"{summary.split}: {summary.instances} instances, {summary.clusters} clusters, "
            f"{summary.positives} positive / {summary.negatives} negative pairs"
        )
    return split


def summarize_pairs(split: PairSplit) -> list[PairSummary]:
    summaries = []
    for name, pairs, labels in (("train", split.train, split.train_labels), ("dev", split.dev, split.dev_labels)):
        positives = sum(1 for pair in pairs if pair.label)
        summaries.append(PairSummary(
            split=name,
            instances=len(labels),
            clusters=len(set(labels.values())),
            positives=positives,
            negatives=len(pairs) - positives,
        ))
    return summaries


def write_pair_features(pairs: list[TrainingPair], path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, delimiter="\t", lineterminator="\n")
        writer.writerow(PAIR_COLUMNS)
        for pair in pairs:
            writer.writerow([
                pair.instance_a,
                pair.instance_b,
                *(f"{value:.6f}" for value in pair.features.as_list()),
                int(pair.label),
            ])


def read_pair_features(path: str | Path) -> list[TrainingPair]:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"Pair feature file not found: {path}")
    with path.open("r", encoding="utf-8", newline="") as f:
        rows = list(csv.DictReader(f, delimiter="\t"))
    return [
        TrainingPair(
            instance_a=row["instance_a"],
            instance_b=row["instance_b"],
            features=FeatureVector(**{name: float(row[name]) for name in FEATURE_NAMES}),
            label=row["label"] == "1",
        )
        for row in rows
    ]


def write_instance_records(labels: Mapping[str, str], extractor: FeatureExtractor, path: str | Path) -> None:
    """author_id, instance_id, name, "|"-joined coauthors and title words, one instance per line."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        for instance_id, author_id in sorted(labels.items(), key=lambda item: (item[1], item[0])):
            text = extractor.text(instance_id)
            f.write(f"{author_id}\t{instance_id}\t{text.name}\t{'|'.join(text.coauthors)}\t{text.title}\n")
