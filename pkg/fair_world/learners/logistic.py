import logging
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import minimize

from ..data.encoding import EncodedMatrix
from ..exceptions import LearnerError
from .model import TrainedModel, fitted_model, training_rows
from .params import LearnerKind, LogisticParams

logger = logging.getLogger(__name__)


def logistic_objective(
    theta: np.ndarray, values: np.ndarray, labels: np.ndarray, weights: np.ndarray, l2: float
) -> Tuple[float, np.ndarray]:
    """
    Weighted mean log-loss plus an L2 ridge on the coefficients (not the intercept),
    and its gradient. ``theta[0]`` is the intercept.
    """
    z = theta[0] + values @ theta[1:]
    total = weights.sum()
    # log(1 + exp(z)) - y z, computed stably
    loss = np.sum(weights * (np.logaddexp(0, z) - labels * z)) / total + 0.5 * l2 * np.dot(theta[1:], theta[1:])
    residual = weights * (0.5 * (1 + np.tanh(0.5 * z)) - labels) / total
    gradient = np.concatenate([[residual.sum()], values.T @ residual + l2 * theta[1:]])
    return float(loss), gradient


def fit_logistic(
    matrix: EncodedMatrix,
    labels: np.ndarray,
    weights: Optional[np.ndarray] = None,
    params: LogisticParams = LogisticParams(),
) -> TrainedModel:
    """
    Fit a weighted, ridge-penalized logistic scorer with L-BFGS.

    Stops when the projected gradient max-norm drops below ``params.tol`` or after
    ``params.max_iter`` iterations; zero iterations leave every coefficient at zero.
    """
    values, labels, weights = training_rows(matrix, labels, weights)
    theta = np.zeros(matrix.width + 1)
    if params.max_iter > 0:
        result = minimize(
            logistic_objective,
            theta,
            args=(values, labels.astype(float), weights, params.l2),
            jac=True,
            method='L-BFGS-B',
            options={'maxiter': params.max_iter, 'gtol': params.tol},
        )
        if not np.isfinite(result.fun) or not np.all(np.isfinite(result.x)):
            raise LearnerError("Logistic fit diverged")
        if not result.success:
            logger.debug("Logistic fit stopped before convergence: %s", result.message)
        theta = result.x
    return fitted_model(LearnerKind.LOGISTIC, (float(theta[0]), theta[1:]), matrix)
