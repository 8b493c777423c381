from typing import Optional, Sequence

import numpy as np
import pandas as pd

from fair_world.data.dataset import Dataset


def toy_dataset(
    sensitive: Sequence[int],
    label: Sequence[int],
    score: Optional[Sequence[float]] = None,
    features: Optional[pd.DataFrame] = None,
    instance_ids: Optional[Sequence[int]] = None,
    name: str = 'toy',
    threshold: float = 0.5,
) -> Dataset:
    """
    Small dataset for hand-checked tests. Scores default to the labels and the single
    feature to the row position.
    """
    n = len(label)
    if score is None:
        score = np.asarray(label, dtype=float)
    if features is None:
        features = pd.DataFrame({'x': np.arange(n, dtype=float)})
    if instance_ids is None:
        instance_ids = np.arange(n)
    return Dataset(
        name=name,
        instance_ids=np.asarray(instance_ids),
        features=features,
        sensitive=np.asarray(sensitive),
        score=np.asarray(score, dtype=float),
        label=np.asarray(label),
        threshold=threshold,
        sensitive_name='a',
    )
