from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, Field

MODEL_FILE_VERSION = 1


class ClassifierKind(Enum):
    LOGISTIC_REGRESSION = "logistic_regression"
    GAUSSIAN_NAIVE_BAYES = "gaussian_naive_bayes"
    RANDOM_FOREST = "random_forest"


class TrainingConfig(BaseModel):
    seed: int = 0
    # Logistic regression: L2 strength on the weights (not the bias), gradient-norm tolerance.
    l2: float = Field(default=1.0, ge=0.0)
    tolerance: float = Field(default=1e-6, gt=0.0)
    max_iterations: int = Field(default=10_000, ge=1)
    # Gaussian naive Bayes
    variance_floor: float = Field(default=1e-9, gt=0.0)
    # Random forest
    trees: int = Field(default=500, ge=1)
    max_features: str | int | float = "sqrt"
    max_depth: Optional[int] = None
    min_samples_leaf: int = Field(default=1, ge=1)
    bootstrap: bool = True


class ClassifierModel(BaseModel):
    """Serialized form of a trained classifier (the JSON model file)."""
    version: int = MODEL_FILE_VERSION
    kind: ClassifierKind
    parameters: dict[str, Any]
    seed: int
    config_hash: Optional[str] = None
    # Selected on development data after training.
    hac_threshold: Optional[float] = None
    training: TrainingConfig
