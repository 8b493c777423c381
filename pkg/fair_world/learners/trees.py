import logging
from typing import Optional

import numpy as np
from joblib import Parallel, delayed
from sklearn.tree import DecisionTreeClassifier

from ..data.encoding import EncodedMatrix
from ..exceptions import LearnerError
from ..seeds import derive_seed
from .model import TrainedModel, fitted_model, training_rows
from .params import ForestParams, LearnerKind, TreeParams

logger = logging.getLogger(__name__)


def _build_tree(params: TreeParams, seed: int) -> DecisionTreeClassifier:
    # Equal-gain splits go to the feature sklearn visits first in its seeded feature
    # permutation, not to the lowest column index. The seed makes that choice repeatable.
    return DecisionTreeClassifier(
        criterion='gini',
        max_depth=params.max_depth,
        min_samples_split=params.min_samples_split,
        min_samples_leaf=params.min_samples_leaf,
        max_features=params.max_features,
        random_state=seed,
    )


def fit_tree(
    matrix: EncodedMatrix,
    labels: np.ndarray,
    weights: Optional[np.ndarray] = None,
    params: TreeParams = TreeParams(),
    seed: int = 0,
) -> TrainedModel:
    """
    Fit one weighted-Gini classification tree; leaf scores are weighted positive fractions.

    :param matrix: Encoded training rows
    :param labels: Binary labels aligned with the rows
    :param weights: Positive instance weights, all ones when omitted
    :param params: Tree hyperparameters
    :param seed: Seed of the feature permutation that breaks equal-gain split ties
    """
    values, labels, weights = training_rows(matrix, labels, weights)
    tree = _build_tree(params, seed).fit(values, labels, sample_weight=weights)
    return fitted_model(LearnerKind.TREE, (tree,), matrix)


def _fit_bootstrap_tree(values, labels, probabilities, params: TreeParams, seed: int) -> DecisionTreeClassifier:
    rng = np.random.default_rng(seed)
    sample = rng.choice(len(labels), size=len(labels), replace=True, p=probabilities)
    return _build_tree(params, seed).fit(values[sample], labels[sample])


def fit_forest(
    matrix: EncodedMatrix,
    labels: np.ndarray,
    weights: Optional[np.ndarray] = None,
    params: ForestParams = ForestParams(),
    seed: int = 0,
) -> TrainedModel:
    """
    Fit a random forest. Each tree is grown on a bootstrap sample of the training size drawn
    with probability proportional to the instance weights, so reweighing reaches the forest
    through sampling. The score is the mean of the tree leaf scores.
    """
    values, labels, weights = training_rows(matrix, labels, weights)
    probabilities = weights / weights.sum()
    trees = Parallel(n_jobs=params.n_jobs)(
        delayed(_fit_bootstrap_tree)(values, labels, probabilities, params.tree, derive_seed(seed, 'tree', t))
        for t in range(params.n_trees)
    )
    return fitted_model(LearnerKind.FOREST, tuple(trees), matrix)


def sensitive_usage(model: TrainedModel) -> float:
    """
    Fraction of the forest's trees with at least one split on a sensitive-derived column.
    """
    if model.kind != LearnerKind.FOREST:
        raise LearnerError(f"Sensitive usage is only defined for forests, got {model.kind.value}")
    if not model.includes_sensitive:
        raise LearnerError("The forest was trained without the sensitive attribute")
    sensitive = set(model.sensitive_columns())
    using = sum(1 for tree in model.trees if sensitive & set(tree.tree_.feature[tree.tree_.feature >= 0].tolist()))
    return using / len(model.trees)
