from typing import Optional, Union

import numpy as np

from ..data.encoding import EncodedMatrix
from .logistic import fit_logistic
from .model import TrainedModel
from .params import ForestParams, LearnerKind, LogisticParams, TreeParams
from .trees import fit_forest, fit_tree

LearnerParams = Union[TreeParams, ForestParams, LogisticParams]


class LearnerFactory:
    """Fits the learner named by a run configuration."""

    @staticmethod
    def default_params(kind: LearnerKind) -> LearnerParams:
        kind = LearnerKind(kind)
        if kind == LearnerKind.TREE:
            return TreeParams()
        elif kind == LearnerKind.FOREST:
            return ForestParams()
        return LogisticParams()

    @staticmethod
    def fit(
        kind: LearnerKind,
        matrix: EncodedMatrix,
        labels: np.ndarray,
        weights: Optional[np.ndarray] = None,
        params: Optional[LearnerParams] = None,
        seed: int = 0,
    ) -> TrainedModel:
        kind = LearnerKind(kind)
        params = params or LearnerFactory.default_params(kind)

        if kind == LearnerKind.TREE and isinstance(params, TreeParams):
            return fit_tree(matrix, labels, weights, params, seed)
        elif kind == LearnerKind.FOREST and isinstance(params, ForestParams):
            return fit_forest(matrix, labels, weights, params, seed)
        elif kind == LearnerKind.LOGISTIC and isinstance(params, LogisticParams):
            return fit_logistic(matrix, labels, weights, params)
        else:
            raise ValueError(f'Parameters {type(params).__name__} do not fit learner {kind.value}')
