import json
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from sklearn.tree import DecisionTreeClassifier

from ..data.encoding import EncodedMatrix
from ..exceptions import LearnerError
from ..metrics.report import Prediction
from .params import LearnerKind

DECISION_THRESHOLD = 0.5


def positive_proba(tree: DecisionTreeClassifier, values: np.ndarray) -> np.ndarray:
    """
    Probability of class 1, also for trees fitted on a single class.
    """
    classes = list(tree.classes_)
    if 1 not in classes:
        return np.zeros(len(values))
    return tree.predict_proba(values)[:, classes.index(1)]


@dataclass(frozen=True, eq=False)
class TrainedModel:
    """
    Fitted classifier over a fixed encoded column layout.

    Attributes:
        kind: Learner kind
        structure: Fitted trees for tree learners, ``(intercept, coefficients)`` for logistic
        columns: Encoded columns the model was fitted on
        manifest: Encoded column -> source feature
        includes_sensitive: Whether a sensitive-derived column was visible
        sensitive_name: Sensitive source feature name
    """

    kind: LearnerKind
    structure: Any
    columns: Tuple[str, ...]
    manifest: Dict[str, str]
    includes_sensitive: bool
    sensitive_name: str

    @property
    def trees(self) -> List[DecisionTreeClassifier]:
        if self.kind == LearnerKind.LOGISTIC:
            raise LearnerError("A logistic model has no trees")
        return list(self.structure)

    def sensitive_columns(self) -> List[int]:
        return [i for i, c in enumerate(self.columns) if self.manifest[c] == self.sensitive_name]

    def predict_scores(self, matrix: EncodedMatrix) -> np.ndarray:
        """
        Scores in [0, 1] for every row of ``matrix``.
        """
        if tuple(matrix.columns) != self.columns:
            raise LearnerError("Encoded columns differ from the ones the model was fitted on")
        values = matrix.values
        if self.kind == LearnerKind.LOGISTIC:
            intercept, coefficients = self.structure
            return _sigmoid(intercept + values @ coefficients)
        return np.mean([positive_proba(tree, values) for tree in self.structure], axis=0)

    def predict(self, matrix: EncodedMatrix) -> Prediction:
        scores = self.predict_scores(matrix)
        return Prediction(matrix.instance_ids, (scores >= DECISION_THRESHOLD).astype(int), np.clip(scores, 0, 1))


def _sigmoid(z: np.ndarray) -> np.ndarray:
    return 0.5 * (1 + np.tanh(0.5 * z))


def _tree_to_dict(tree: DecisionTreeClassifier, columns: Tuple[str, ...]) -> Dict:
    structure = tree.tree_
    positive = list(tree.classes_).index(1) if 1 in tree.classes_ else None

    def node(i: int) -> Dict:
        counts = structure.value[i][0]
        score = float(counts[positive] / counts.sum()) if positive is not None and counts.sum() > 0 else 0.0
        if structure.children_left[i] == -1:
            return {'leaf': True, 'score': score}
        return {
            'leaf': False,
            'feature': columns[structure.feature[i]],
            'threshold': float(structure.threshold[i]),
            'left': node(structure.children_left[i]),
            'right': node(structure.children_right[i]),
        }

    return node(0)


def model_to_dict(model: TrainedModel) -> Dict:
    """
    Nested-record view of a fitted model, for debugging.
    """
    dump: Dict[str, Any] = {
        'kind': model.kind.value,
        'columns': list(model.columns),
        'includes_sensitive': model.includes_sensitive,
    }
    if model.kind == LearnerKind.LOGISTIC:
        intercept, coefficients = model.structure
        dump['intercept'] = float(intercept)
        dump['coefficients'] = dict(zip(model.columns, map(float, coefficients)))
    else:
        dump['trees'] = [_tree_to_dict(tree, model.columns) for tree in model.structure]
    return dump


def dump_model(model: TrainedModel, path: str) -> str:
    with open(path, 'w') as f:
        json.dump(model_to_dict(model), f, indent=2)
    return path


def training_rows(matrix: EncodedMatrix, labels: np.ndarray, weights: Optional[np.ndarray]):
    """
    Validate the training inputs and return (values, labels, weights) in instance-id order,
    so fitted models do not depend on the order rows were given in.
    """
    labels = np.asarray(labels, dtype=int)
    weights = np.ones(len(labels)) if weights is None else np.asarray(weights, dtype=float)
    if len(labels) == 0:
        raise LearnerError("Cannot fit a learner on zero rows")
    if len(labels) != len(matrix.instance_ids) or len(weights) != len(labels):
        raise LearnerError("Labels and weights must be aligned with the encoded rows")
    if np.any(weights <= 0):
        raise LearnerError("Instance weights must be positive")
    order = np.argsort(matrix.instance_ids, kind='stable')
    return matrix.values[order], labels[order], weights[order]


def fitted_model(kind: LearnerKind, structure: Any, matrix: EncodedMatrix) -> TrainedModel:
    return TrainedModel(
        kind=kind,
        structure=structure,
        columns=tuple(matrix.columns),
        manifest=dict(matrix.manifest),
        includes_sensitive=matrix.includes_sensitive,
        sensitive_name=matrix.sensitive_name,
    )
