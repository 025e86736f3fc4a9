# Abstract base class for pairwise same-author classifiers
from abc import ABC, abstractmethod
from typing import Any, Self

import numpy as np

from disambiguator.classifiers.models import ClassifierKind, ClassifierModel, TrainingConfig
from disambiguator.features import FeatureVector


class ConvergenceError(RuntimeError):
    pass


class Classifier(ABC):
    kind: ClassifierKind

    def __init__(self, training: TrainingConfig) -> None:
        self.training = training
        self.hac_threshold: float | None = None

    @classmethod
    @abstractmethod
    def fit(cls, X: np.ndarray, y: np.ndarray, training: TrainingConfig) -> Self:
        ...

    @classmethod
    @abstractmethod
    def from_parameters(cls, parameters: dict[str, Any], training: TrainingConfig) -> Self:
        ...

    @abstractmethod
    def parameters(self) -> dict[str, Any]:
        ...

    @abstractmethod
    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        """Probability that each row's pair belongs to one author."""
        ...

    def predict(self, features: FeatureVector) -> float:
        return float(self.predict_proba(np.array([features.as_list()]))[0])

    def to_model(self, config_hash: str | None = None) -> ClassifierModel:
        return ClassifierModel(
            kind=self.kind,
            parameters=self.parameters(),
            seed=self.training.seed,
            config_hash=config_hash,
            hac_threshold=self.hac_threshold,
            training=self.training,
        )
