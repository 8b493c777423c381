import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

import numpy as np

from ..exceptions import DatasetError
from .dataset import Dataset

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class EncodedMatrix:
    """
    Numeric design matrix aligned to instance ids.

    Attributes:
        instance_ids: Row ids, aligned with ``values``
        values: Encoded feature values, one row per instance
        columns: Encoded column names (``feature`` or ``feature=category``)
        manifest: Encoded column name -> source feature name
        includes_sensitive: Whether a sensitive-derived column is present
        sensitive_name: Name of the sensitive source feature
    """

    instance_ids: np.ndarray
    values: np.ndarray
    columns: Tuple[str, ...]
    manifest: Dict[str, str]
    includes_sensitive: bool
    sensitive_name: str

    @property
    def width(self) -> int:
        return self.values.shape[1]

    def source_features(self) -> List[str]:
        """
        Decode the manifest back to the ordered list of source features.
        """
        seen: List[str] = []
        for column in self.columns:
            source = self.manifest[column]
            if source not in seen:
                seen.append(source)
        return seen

    def sensitive_columns(self) -> List[int]:
        """
        Indices of the encoded columns derived from the sensitive attribute.
        """
        return [i for i, c in enumerate(self.columns) if self.manifest[c] == self.sensitive_name]

    def rows(self, ids: Iterable[int]) -> np.ndarray:
        lookup = {int(i): p for p, i in enumerate(self.instance_ids)}
        try:
            positions = [lookup[int(i)] for i in ids]
        except KeyError as e:
            raise DatasetError(f"Instance id {e.args[0]} is not part of the encoded matrix")
        return self.values[positions]


class FeatureEncoder:
    """
    Standardizes numeric columns and one-hot expands categorical ones.

    Statistics and category domains come from the training rows only; categories
    unseen at fit time encode as an all-zeros block.
    """

    def __init__(self, include_sensitive: bool = True):
        self.include_sensitive = include_sensitive
        self.stats: Dict[str, Tuple[float, float]] = {}
        self.categories: Dict[str, List[str]] = {}
        self.order: List[str] = []
        self.sensitive_name = ''
        self._fitted = False

    def fit(self, dataset: Dataset, train_ids: Iterable[int]) -> 'FeatureEncoder':
        train = dataset.select(train_ids)
        if len(train) == 0:
            raise DatasetError("Cannot fit an encoder on zero training rows")

        self.sensitive_name = dataset.sensitive_name
        self.order = [
            f for f in dataset.feature_manifest if f != dataset.sensitive_name or self.include_sensitive
        ]
        numeric = set(train.numeric_columns)
        for name in self.order:
            if name == dataset.sensitive_name:
                values = train.sensitive.astype(float)
                self.stats[name] = self._standardization(name, values)
            elif name in numeric:
                values = train.features[name].to_numpy(dtype=float)
                self.stats[name] = self._standardization(name, values)
            else:
                self.categories[name] = sorted(train.features[name].astype(str).unique().tolist())
        self._fitted = True
        return self

    def transform(self, dataset: Dataset) -> EncodedMatrix:
        if not self._fitted:
            raise DatasetError("Encoder must be fitted before transform")

        blocks: List[np.ndarray] = []
        columns: List[str] = []
        manifest: Dict[str, str] = {}
        for name in self.order:
            if name in self.stats:
                mean, std = self.stats[name]
                raw = dataset.sensitive.astype(float) if name == self.sensitive_name else dataset.features[name]
                values = np.asarray(raw, dtype=float)
                block = np.zeros((len(dataset), 1)) if std == 0 else ((values - mean) / std)[:, None]
                blocks.append(block)
                columns.append(name)
                manifest[name] = name
            else:
                values = dataset.features[name].astype(str).to_numpy()
                categories = np.array(self.categories[name], dtype=object)
                blocks.append((values[:, None] == categories[None, :]).astype(float))
                for category in self.categories[name]:
                    column = f"{name}={category}"
                    columns.append(column)
                    manifest[column] = name

        matrix = np.hstack(blocks) if blocks else np.zeros((len(dataset), 0))
        return EncodedMatrix(
            instance_ids=dataset.instance_ids.copy(),
            values=matrix,
            columns=tuple(columns),
            manifest=manifest,
            includes_sensitive=self.include_sensitive and self.sensitive_name in self.order,
            sensitive_name=self.sensitive_name,
        )

    @staticmethod
    def _standardization(name: str, values: np.ndarray) -> Tuple[float, float]:
        mean = float(np.mean(values))
        std = float(np.std(values))
        if std == 0:
            logger.warning("Column '%s' has zero variance on the training rows, encoded as constant 0", name)
        return mean, std


def encode(dataset: Dataset, train_ids: Iterable[int], include_sensitive: bool) -> EncodedMatrix:
    """
    Fit an encoder on ``train_ids`` and encode every row of ``dataset``.

    :param dataset: Dataset to encode
    :param train_ids: Ids of the rows used for standardization statistics and category domains
    :param include_sensitive: Whether to append the sensitive column
    :return: The encoded matrix of all rows
    """
    train_ids = list(train_ids)
    missing = set(train_ids).difference(dataset.instance_ids.tolist())
    if missing:
        raise DatasetError(f"{len(missing)} training ids are not part of dataset '{dataset.name}'")
    return FeatureEncoder(include_sensitive).fit(dataset, train_ids).transform(dataset)
