import json
import logging
from pathlib import Path
from typing import Iterable

import numpy as np

from disambiguator.features import FeatureVector
from .classifier import Classifier, ConvergenceError
from .logistic import LogisticRegression
from .models import MODEL_FILE_VERSION, ClassifierKind, ClassifierModel, TrainingConfig
from .naive_bayes import GaussianNaiveBayes
from .random_forest import RandomForest

logger = logging.getLogger(__name__)

CLASSIFIERS: dict[ClassifierKind, type[Classifier]] = {
    ClassifierKind.LOGISTIC_REGRESSION: LogisticRegression,
    ClassifierKind.GAUSSIAN_NAIVE_BAYES: GaussianNaiveBayes,
    ClassifierKind.RANDOM_FOREST: RandomForest,
}


def pair_matrix(pairs: Iterable) -> tuple[np.ndarray, np.ndarray]:
    """Feature matrix and 0/1 labels of TrainingPair objects."""
    pairs = list(pairs)
    X = np.array([pair.features.as_list() for pair in pairs], dtype=float).reshape(len(pairs), 3)
    y = np.array([int(pair.label) for pair in pairs], dtype=int)
    return X, y


def train(kind: ClassifierKind, pairs: Iterable, training: TrainingConfig | None = None) -> Classifier:
    training = training or TrainingConfig()
    X, y = pair_matrix(pairs)
    positives = int(y.sum())
    if positives == 0 or positives == len(y):
        raise ValueError(f"Training {kind.value} needs positive and negative pairs (got {positives} positive of {len(y)})")
    logger.info(f"Training {kind.value} on {len(y)} pairs ({positives} positive)")
    return CLASSIFIERS[kind].fit(X, y, training)


def predict(model: Classifier, features: FeatureVector) -> float:
    return model.predict(features)


def save_model(model: Classifier, path: str | Path, config_hash: str | None = None) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        f.write(model.to_model(config_hash).model_dump_json())


def load_model(path: str | Path) -> Classifier:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"Model file not found: {path}")
    with path.open("r", encoding="utf-8") as f:
        stored = ClassifierModel.model_validate(json.load(f))
    if stored.version != MODEL_FILE_VERSION:
        raise ValueError(f"Unsupported model file version {stored.version} in {path}")
    model = CLASSIFIERS[stored.kind].from_parameters(stored.parameters, stored.training)
    model.hac_threshold = stored.hac_threshold
    return model


__all__ = [
    "CLASSIFIERS",
    "Classifier",
    "ClassifierKind",
    "ClassifierModel",
    "ConvergenceError",
    "GaussianNaiveBayes",
    "LogisticRegression",
    "RandomForest",
    "TrainingConfig",
    "load_model",
    "pair_matrix",
    "predict",
    "save_model",
    "train",
]
