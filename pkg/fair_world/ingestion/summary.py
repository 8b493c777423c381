from dataclasses import asdict, dataclass
from typing import Dict, List, Optional

import numpy as np

from ..data.dataset import UNPRIVILEGED, Dataset
from ..data.encoding import FeatureEncoder
from ..metrics import bcc, spd

SUMMARY_COLUMNS = ('name', 'size', 'unprivileged_proportion', 'spd', 'bcc', 'base_rate')


@dataclass(frozen=True)
class DatasetSummary:
    """
    Headline characteristics of a dataset, with labels taken as predictions.
    """

    name: str
    size: int
    unprivileged_proportion: Optional[float]
    spd: Optional[float]
    bcc: Optional[float]
    base_rate: Optional[float]
    n_features: int = 0

    def to_dict(self) -> Dict:
        return asdict(self)

    def to_row(self) -> str:
        """
        Comma separated summary row, three decimals, ``NA`` for undefined values.
        """
        return ",".join(_format(getattr(self, column)) for column in SUMMARY_COLUMNS)


def _format(value) -> str:
    if value is None:
        return 'NA'
    if isinstance(value, float):
        return f"{value:.3f}"
    return str(value)


def summarize(dataset: Dataset, k: int = 5, delta: float = 0.8) -> DatasetSummary:
    """
    Size, unprivileged proportion, label SPD, label BCC and base rate.

    BCC uses the dataset's features without the sensitive column, standardized over the
    whole dataset.
    """
    n = len(dataset)
    if n == 0:
        return DatasetSummary(dataset.name, 0, None, None, None, None, len(dataset.feature_manifest))

    encoder = FeatureEncoder(include_sensitive=False).fit(dataset, dataset.instance_ids)
    features = encoder.transform(dataset).values
    return DatasetSummary(
        name=dataset.name,
        size=n,
        unprivileged_proportion=float(np.mean(dataset.sensitive == UNPRIVILEGED)),
        spd=spd(dataset.label, dataset.sensitive),
        bcc=bcc(dataset.label, features, dataset.instance_ids, k=k, delta=delta),
        base_rate=float(np.mean(dataset.label)),
        n_features=len(dataset.feature_manifest),
    )


def summary_table(summaries: List[DatasetSummary]) -> str:
    """
    Header plus one row per dataset.
    """
    return "\n".join([",".join(SUMMARY_COLUMNS)] + [s.to_row() for s in summaries]) + "\n"
