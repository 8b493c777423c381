import dataclasses
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
import pandas as pd

from ..exceptions import DatasetError

logger = logging.getLogger(__name__)

UNPRIVILEGED = 1
PRIVILEGED = 0


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Canonical in-memory dataset: one row per individual.

    Attributes:
        name: Dataset name, e.g. ``student`` or ``oulad_stem``
        instance_ids: Stable unique integer id per row
        features: Non-sensitive feature columns; numeric dtypes are continuous, others categorical
        sensitive: Binary sensitive attribute, 1 marks the unprivileged group
        score: Numeric score the label is derived from
        label: Binary label, 1 is the desirable outcome
        weight: Positive instance weights
        threshold: ``label == 1`` iff ``score >= threshold`` for unflipped rows
        sensitive_name: Name of the sensitive column in the source data
        feature_manifest: All feature names in source order, sensitive column included
        noise_intensity: Default label-bias noise intensity for this dataset
        group_removed: Set when one group is allowed to be empty
        sensitive_visible: Whether learners may see the sensitive column
    """

    name: str
    instance_ids: np.ndarray
    features: pd.DataFrame
    sensitive: np.ndarray
    score: np.ndarray
    label: np.ndarray
    threshold: float
    sensitive_name: str
    feature_manifest: Tuple[str, ...] = ()
    weight: Optional[np.ndarray] = None
    noise_intensity: float = 0.0
    group_removed: bool = False
    sensitive_visible: bool = True
    metadata: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        ids = np.asarray(self.instance_ids, dtype=np.int64)
        n = len(ids)
        features = self.features.reset_index(drop=True)
        weight = np.ones(n) if self.weight is None else np.asarray(self.weight, dtype=float)

        # frozen: normalise through object.__setattr__
        object.__setattr__(self, 'instance_ids', ids)
        object.__setattr__(self, 'features', features)
        object.__setattr__(self, 'sensitive', np.asarray(self.sensitive, dtype=np.int8))
        object.__setattr__(self, 'score', np.asarray(self.score, dtype=float))
        object.__setattr__(self, 'label', np.asarray(self.label, dtype=np.int8))
        object.__setattr__(self, 'weight', weight)
        if not self.feature_manifest:
            object.__setattr__(self, 'feature_manifest', tuple(features.columns) + (self.sensitive_name,))

        for column, values in (
            ('sensitive', self.sensitive),
            ('score', self.score),
            ('label', self.label),
            ('weight', self.weight),
        ):
            if len(values) != n:
                raise DatasetError(f"Column '{column}' has {len(values)} rows, expected {n}")
        if len(features) != n:
            raise DatasetError(f"Feature table has {len(features)} rows, expected {n}")
        if len(np.unique(ids)) != n:
            raise DatasetError("Instance ids must be unique")
        if np.any(self.weight <= 0):
            raise DatasetError("Instance weights must be positive")
        if not np.isin(self.sensitive, (0, 1)).all() or not np.isin(self.label, (0, 1)).all():
            raise DatasetError("Sensitive attribute and label must be binary")
        if self.sensitive_name in features.columns:
            raise DatasetError(f"Sensitive column '{self.sensitive_name}' must not be part of the feature table")

    def __len__(self) -> int:
        return len(self.instance_ids)

    @property
    def feature_names(self) -> List[str]:
        """Feature names in source order, sensitive column included."""
        return list(self.feature_manifest)

    @property
    def numeric_columns(self) -> List[str]:
        return [c for c in self.features.columns if pd.api.types.is_numeric_dtype(self.features[c])]

    @property
    def categorical_columns(self) -> List[str]:
        return [c for c in self.features.columns if not pd.api.types.is_numeric_dtype(self.features[c])]

    def group_mask(self, group: int) -> np.ndarray:
        return self.sensitive == group

    def group_size(self, group: int) -> int:
        return int(np.sum(self.group_mask(group)))

    def has_both_groups(self) -> bool:
        return self.group_size(UNPRIVILEGED) > 0 and self.group_size(PRIVILEGED) > 0

    def require_both_groups(self) -> None:
        """
        Raise unless both groups are present or the dataset is flagged as group-removed.
        """
        if not self.group_removed and not self.has_both_groups():
            raise DatasetError(f"Dataset '{self.name}' has an empty group but is not flagged group-removed")

    def positive_rate(self) -> float:
        return float(np.mean(self.label)) if len(self) else float('nan')

    def select(self, ids: Iterable[int]) -> 'Dataset':
        """
        Keep the rows whose instance id is in ``ids``, preserving this dataset's row order.
        """
        mask = np.isin(self.instance_ids, np.fromiter(ids, dtype=np.int64))
        return self._take(mask)

    def drop(self, ids: Iterable[int]) -> 'Dataset':
        """
        Remove the rows whose instance id is in ``ids``.
        """
        mask = ~np.isin(self.instance_ids, np.fromiter(ids, dtype=np.int64))
        return self._take(mask)

    def positions(self, ids: Iterable[int]) -> np.ndarray:
        """
        Row positions of the given instance ids, in the order given.
        """
        lookup = pd.Series(np.arange(len(self)), index=self.instance_ids)
        ids = np.fromiter(ids, dtype=np.int64)
        missing = np.setdiff1d(ids, self.instance_ids)
        if len(missing):
            raise DatasetError(f"{len(missing)} instance ids are not part of dataset '{self.name}'")
        return lookup.loc[ids].to_numpy()

    def replace(self, **changes) -> 'Dataset':
        return dataclasses.replace(self, **changes)

    def equals(self, other: 'Dataset') -> bool:
        """
        Value equality of every column and flag.
        """
        return (
            self.name == other.name
            and np.array_equal(self.instance_ids, other.instance_ids)
            and self.features.equals(other.features)
            and np.array_equal(self.sensitive, other.sensitive)
            and np.array_equal(self.score, other.score)
            and np.array_equal(self.label, other.label)
            and np.array_equal(self.weight, other.weight)
            and self.threshold == other.threshold
            and self.feature_manifest == other.feature_manifest
            and self.group_removed == other.group_removed
            and self.sensitive_visible == other.sensitive_visible
        )

    def to_frame(self) -> pd.DataFrame:
        """
        Flatten to a single table: features, sensitive, score, label, weight and ``instance_id``.
        """
        frame = self.features.copy()
        frame[self.sensitive_name] = self.sensitive
        frame = frame[[c for c in self.feature_manifest if c in frame.columns]]
        frame.insert(0, 'instance_id', self.instance_ids)
        frame['score'] = self.score
        frame['label'] = self.label
        frame['weight'] = self.weight
        return frame

    def _take(self, mask: np.ndarray) -> 'Dataset':
        return dataclasses.replace(
            self,
            instance_ids=self.instance_ids[mask],
            features=self.features.loc[mask].reset_index(drop=True),
            sensitive=self.sensitive[mask],
            score=self.score[mask],
            label=self.label[mask],
            weight=self.weight[mask],
        )


@dataclass(frozen=True, eq=False)
class FoldPlan:
    """
    Assignment of instance ids to folds, plus the rotation currently in use.

    Attributes:
        n_folds: Number of folds
        assignment: Mapping instance id -> fold index
        validation_fold: Fold reserved for post-processing
        test_fold: Fold reserved for evaluation
        seed: Seed the assignment was drawn with
        stratified: Whether the assignment was stratified by (A, Y)
    """

    n_folds: int
    assignment: Dict[int, int]
    validation_fold: int = 1
    test_fold: int = 0
    seed: int = 0
    stratified: bool = True

    def __post_init__(self):
        if self.validation_fold == self.test_fold:
            raise DatasetError("Validation and test folds must differ")
        for fold in (self.validation_fold, self.test_fold):
            if not 0 <= fold < self.n_folds:
                raise DatasetError(f"Fold index {fold} out of range for {self.n_folds} folds")

    def rotation(self, iteration: int) -> 'FoldPlan':
        """
        Plan for iteration ``i``: fold ``i`` tests, fold ``i + 1 mod k`` validates.
        """
        return dataclasses.replace(
            self, test_fold=iteration % self.n_folds, validation_fold=(iteration + 1) % self.n_folds
        )

    def fold_ids(self, fold: int) -> np.ndarray:
        return np.array(sorted(i for i, f in self.assignment.items() if f == fold), dtype=np.int64)

    def fold_sizes(self) -> List[int]:
        counts = np.bincount(np.fromiter(self.assignment.values(), dtype=np.int64), minlength=self.n_folds)
        return counts.tolist()

    def test_ids(self) -> np.ndarray:
        return self.fold_ids(self.test_fold)

    def validation_ids(self) -> np.ndarray:
        return self.fold_ids(self.validation_fold)

    def train_ids(self) -> np.ndarray:
        held_out = (self.test_fold, self.validation_fold)
        return np.array(sorted(i for i, f in self.assignment.items() if f not in held_out), dtype=np.int64)


def make_fold_plan(dataset: Dataset, n_folds: int, seed: int, stratified: bool = True) -> FoldPlan:
    """
    Split a dataset into folds, stratified by the joint (A, Y) cell.

    Assignment only depends on the instance ids and the seed, so the same plan is
    obtained for every biased view sharing the ids of the fair dataset.

    :param dataset: Dataset to split
    :param n_folds: Number of folds, at least 3
    :param seed: Seed for the permutation
    :param stratified: Stratify by (A, Y); falls back to plain random when a cell is too small
    :return: The fold plan, rotation 0
    """
    if n_folds < 3:
        raise DatasetError("At least 3 folds are required (train, validation and test)")
    if len(dataset) == 0:
        raise DatasetError("Cannot split an empty dataset")

    order = np.argsort(dataset.instance_ids, kind='stable')
    ids = dataset.instance_ids[order]
    cells = dataset.sensitive[order] * 2 + dataset.label[order]
    rng = np.random.default_rng(seed)

    if stratified:
        cell_sizes = [int(np.sum(cells == c)) for c in range(4) if np.any(cells == c)]
        if n_folds > min(cell_sizes):
            logger.warning(
                "Smallest (A, Y) cell of '%s' has %d rows for %d folds, using plain random folds",
                dataset.name,
                min(cell_sizes),
                n_folds,
            )
            stratified = False

    if stratified:
        ordered = np.concatenate([rng.permutation(ids[cells == c]) for c in range(4)])
    else:
        ordered = rng.permutation(ids)

    assignment = {int(i): int(position % n_folds) for position, i in enumerate(ordered)}
    return FoldPlan(n_folds=n_folds, assignment=assignment, seed=seed, stratified=stratified)
