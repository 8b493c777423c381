from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union


class LearnerKind(str, Enum):
    TREE = 'tree'
    FOREST = 'forest'
    LOGISTIC = 'logistic'


@dataclass(frozen=True)
class TreeParams:
    """
    Hyperparameters of a weighted-Gini classification tree.

    Attributes:
        max_depth: Maximum depth
        min_samples_split: Minimum rows needed to split a node
        min_samples_leaf: Minimum rows in a leaf
        max_features: Split candidates per node; None means every column
    """

    max_depth: int = 6
    min_samples_split: int = 2
    min_samples_leaf: int = 1
    max_features: Optional[Union[str, int]] = None

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        if self.min_samples_split < 2 or self.min_samples_leaf < 1:
            raise ValueError("min_samples_split must be at least 2 and min_samples_leaf at least 1")


def _forest_tree() -> TreeParams:
    return TreeParams(max_depth=6, min_samples_split=10, min_samples_leaf=10, max_features='sqrt')


@dataclass(frozen=True)
class ForestParams:
    """
    Hyperparameters of a random forest whose bootstrap samples rows with probability
    proportional to their weight.
    """

    n_trees: int = 100
    tree: TreeParams = field(default_factory=_forest_tree)
    n_jobs: int = 1

    def __post_init__(self):
        if self.n_trees < 1:
            raise ValueError("n_trees must be at least 1")


@dataclass(frozen=True)
class LogisticParams:
    l2: float = 1.0
    max_iter: int = 200
    tol: float = 1e-6

    def __post_init__(self):
        if self.l2 < 0 or self.max_iter < 0 or self.tol <= 0:
            raise ValueError("l2 and max_iter must be non-negative, tol positive")
