import logging
from typing import Any, Self

import numpy as np
from sklearn.ensemble import RandomForestClassifier

from disambiguator.classifiers.classifier import Classifier
from disambiguator.classifiers.models import ClassifierKind, TrainingConfig

logger = logging.getLogger(__name__)


class Tree:
    """One fitted decision tree as flat node arrays; a leaf has children -1."""

    def __init__(self, left: np.ndarray, right: np.ndarray, feature: np.ndarray, threshold: np.ndarray, positive: np.ndarray) -> None:
        self.left = np.asarray(left, dtype=np.int64)
        self.right = np.asarray(right, dtype=np.int64)
        self.feature = np.asarray(feature, dtype=np.int64)
        self.threshold = np.asarray(threshold, dtype=float)
        self.positive = np.asarray(positive, dtype=bool)

    @classmethod
    def from_estimator(cls, estimator) -> "Tree":
        tree = estimator.tree_
        # value[:, 0, :] holds per-class weights (or fractions); the leaf votes its majority class.
        positive_index = list(estimator.classes_).index(1)
        positive = tree.value[:, 0, :].argmax(axis=1) == positive_index
        return cls(tree.children_left, tree.children_right, tree.feature, tree.threshold, positive)

    def to_dict(self) -> dict[str, list]:
        return {
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "feature": self.feature.tolist(),
            "threshold": self.threshold.tolist(),
            "positive": self.positive.tolist(),
        }

    def vote(self, X: np.ndarray) -> np.ndarray:
        nodes = np.zeros(X.shape[0], dtype=np.int64)
        rows = np.arange(X.shape[0])
        internal = self.left[nodes] != -1
        while internal.any():
            current = nodes[internal]
            go_left = X[rows[internal], self.feature[current]] <= self.threshold[current]
            nodes[internal] = np.where(go_left, self.left[current], self.right[current])
            internal = self.left[nodes] != -1
        return self.positive[nodes]


class RandomForest(Classifier):
    """Bagged Gini trees; the probability is the share of trees voting positive."""
    kind = ClassifierKind.RANDOM_FOREST

    def __init__(self, trees: list[Tree], training: TrainingConfig) -> None:
        super().__init__(training)
        self.trees = trees

    @classmethod
    def fit(cls, X: np.ndarray, y: np.ndarray, training: TrainingConfig) -> Self:
        forest = RandomForestClassifier(
            n_estimators=training.trees,
            criterion="gini",
            max_features=training.max_features,
            max_depth=training.max_depth,
            min_samples_leaf=training.min_samples_leaf,
            bootstrap=training.bootstrap,
            random_state=training.seed,
        ).fit(np.asarray(X, dtype=float), np.asarray(y, dtype=int))
        logger.debug(f"Random forest: {training.trees} trees, {sum(e.tree_.node_count for e in forest.estimators_)} nodes")
        return cls([Tree.from_estimator(estimator) for estimator in forest.estimators_], training)

    @classmethod
    def from_parameters(cls, parameters: dict[str, Any], training: TrainingConfig) -> Self:
        return cls([Tree(**tree) for tree in parameters["trees"]], training)

    def parameters(self) -> dict[str, Any]:
        return {"trees": [tree.to_dict() for tree in self.trees]}

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        votes = np.zeros(X.shape[0])
        for tree in self.trees:
            votes += tree.vote(X)
        return votes / len(self.trees)
