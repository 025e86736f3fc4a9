from .features import FeatureExtractor, FeatureVector, InstanceText, pair_features
from .ngrams import cosine, ngram_profile
from .preprocess import TextKind, load_stopwords, porter_stem, preprocess
from .pairs import (
    PairSplit,
    PairSummary,
    TrainingPair,
    block_map,
    build_pairs,
    read_pair_features,
    summarize_pairs,
    write_instance_records,
    write_pair_features,
)
from .classifiers import ClassifierKind, ConvergenceError, TrainingConfig, load_model, predict, save_model, train
from .hac import GridMode, HacConfig, ScoredBlock, disambiguate, hac_cluster, score_blocks, select_threshold, uniform_grid

__all__ = [
    "ClassifierKind",
    "ConvergenceError",
    "FeatureExtractor",
    "FeatureVector",
    "GridMode",
    "HacConfig",
    "InstanceText",
    "PairSplit",
    "PairSummary",
    "ScoredBlock",
    "TextKind",
    "TrainingConfig",
    "TrainingPair",
    "block_map",
    "build_pairs",
    "cosine",
    "disambiguate",
    "hac_cluster",
    "load_model",
    "load_stopwords",
    "ngram_profile",
    "pair_features",
    "porter_stem",
    "predict",
    "preprocess",
    "read_pair_features",
    "save_model",
    "score_blocks",
    "select_threshold",
    "summarize_pairs",
    "train",
    "uniform_grid",
    "write_instance_records",
    "write_pair_features",
]
