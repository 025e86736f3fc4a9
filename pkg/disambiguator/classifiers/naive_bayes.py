from typing import Any, Self

import numpy as np
from scipy.special import softmax
from scipy.stats import norm
from sklearn.naive_bayes import GaussianNB

from disambiguator.classifiers.classifier import Classifier
from disambiguator.classifiers.models import ClassifierKind, TrainingConfig


class GaussianNaiveBayes(Classifier):
    kind = ClassifierKind.GAUSSIAN_NAIVE_BAYES

    def __init__(self, priors: np.ndarray, means: np.ndarray, variances: np.ndarray, training: TrainingConfig) -> None:
        super().__init__(training)
        # Row 0 is the negative class, row 1 the positive class.
        self.priors = np.asarray(priors, dtype=float)
        self.means = np.asarray(means, dtype=float)
        self.variances = np.maximum(np.asarray(variances, dtype=float), training.variance_floor)

    @classmethod
    def fit(cls, X: np.ndarray, y: np.ndarray, training: TrainingConfig) -> Self:
        estimator = GaussianNB(var_smoothing=0.0).fit(np.asarray(X, dtype=float), np.asarray(y, dtype=int))
        return cls(estimator.class_prior_, estimator.theta_, estimator.var_, training)

    @classmethod
    def from_parameters(cls, parameters: dict[str, Any], training: TrainingConfig) -> Self:
        return cls(np.array(parameters["priors"]), np.array(parameters["means"]), np.array(parameters["variances"]), training)

    def parameters(self) -> dict[str, Any]:
        return {"priors": self.priors.tolist(), "means": self.means.tolist(), "variances": self.variances.tolist()}

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        # (n, classes): log prior + summed per-feature Gaussian log densities
        joint = np.log(self.priors) + norm.logpdf(X[:, None, :], self.means[None], np.sqrt(self.variances)[None]).sum(axis=2)
        return softmax(joint, axis=1)[:, 1]
