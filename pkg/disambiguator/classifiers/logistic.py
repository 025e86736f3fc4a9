import logging
from typing import Any, Self

import numpy as np
from scipy.optimize import minimize
from scipy.special import expit

from disambiguator.classifiers.classifier import Classifier, ConvergenceError
from disambiguator.classifiers.models import ClassifierKind, TrainingConfig

logger = logging.getLogger(__name__)


class LogisticRegression(Classifier):
    """
    L2-regularized logistic regression.

    Minimizes the mean log-loss plus l2 / (2n) * ||w||^2 (the bias is not penalized) with
    a trust-region Newton method, stopping once the gradient norm falls under the tolerance.
    """
    kind = ClassifierKind.LOGISTIC_REGRESSION

    def __init__(self, weights: np.ndarray, bias: float, training: TrainingConfig) -> None:
        super().__init__(training)
        self.weights = np.asarray(weights, dtype=float)
        self.bias = float(bias)
        self.loss_history: list[float] = []
        self.gradient_norm: float | None = None
        self.iterations: int = 0

    @staticmethod
    def _objective(theta: np.ndarray, X: np.ndarray, y: np.ndarray, l2: float):
        n = X.shape[0]
        w, b = theta[:-1], theta[-1]
        z = X @ w + b
        p = expit(z)
        loss = (np.logaddexp(0.0, z) - y * z).mean() + l2 / (2 * n) * (w @ w)

        residual = p - y
        grad = np.append(X.T @ residual / n + l2 / n * w, residual.mean())

        Xa = np.hstack([X, np.ones((n, 1))])
        hess = (Xa.T * (p * (1 - p))) @ Xa / n
        hess[:-1, :-1] += l2 / n * np.eye(X.shape[1])
        return loss, grad, hess

    @classmethod
    def fit(cls, X: np.ndarray, y: np.ndarray, training: TrainingConfig) -> Self:
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=float)

        def loss(theta):
            return cls._objective(theta, X, y, training.l2)[0]

        def grad(theta):
            return cls._objective(theta, X, y, training.l2)[1]

        def hess(theta):
            return cls._objective(theta, X, y, training.l2)[2]

        theta0 = np.zeros(X.shape[1] + 1)
        history = [float(loss(theta0))]
        result = minimize(
            loss,
            theta0,
            jac=grad,
            hess=hess,
            method="trust-exact",
            callback=lambda theta: history.append(float(loss(theta))),
            options={"gtol": training.tolerance, "maxiter": training.max_iterations},
        )
        gradient_norm = float(np.linalg.norm(grad(result.x)))
        if not result.success or gradient_norm > training.tolerance:
            raise ConvergenceError(
                f"Logistic regression did not converge after {result.nit} iterations "
                f"(gradient norm {gradient_norm:.3g}, tolerance {training.tolerance:g}): {result.message}"
            )
        logger.debug(f"Logistic regression converged in {result.nit} iterations, loss {result.fun:.6f}")

        model = cls(result.x[:-1], result.x[-1], training)
        model.loss_history = history
        model.gradient_norm = gradient_norm
        model.iterations = int(result.nit)
        return model

    @classmethod
    def from_parameters(cls, parameters: dict[str, Any], training: TrainingConfig) -> Self:
        model = cls(np.array(parameters["weights"]), parameters["bias"], training)
        model.gradient_norm = parameters.get("gradient_norm")
        model.iterations = parameters.get("iterations", 0)
        return model

    def parameters(self) -> dict[str, Any]:
        return {
            "weights": self.weights.tolist(),
            "bias": self.bias,
            "gradient_norm": self.gradient_norm,
            "iterations": self.iterations,
        }

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        return expit(np.asarray(X, dtype=float) @ self.weights + self.bias)
