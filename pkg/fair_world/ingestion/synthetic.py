import numpy as np
import pandas as pd

from ..data.dataset import Dataset


def make_synthetic(
    n: int = 5000,
    n_features: int = 6,
    unprivileged_share: float = 0.5,
    noise: float = 0.5,
    seed: int = 0,
    name: str = 'synthetic',
    noise_intensity: float = 0.1,
) -> Dataset:
    """
    Generate a fair-world dataset where both groups share the same feature and score
    distributions.

    Features are standard normal, the score is a fixed random linear combination of the
    features plus gaussian noise, and the threshold is the score median so the base
    rate is one half in both groups up to sampling noise.

    :param n: Number of rows
    :param n_features: Number of informative numeric features
    :param unprivileged_share: Expected share of the unprivileged group
    :param noise: Standard deviation of the score noise
    :param seed: Generator seed
    :param name: Dataset name
    :param noise_intensity: Default label-bias noise intensity carried by the dataset
    """
    rng = np.random.default_rng(seed)
    values = rng.standard_normal((n, n_features))
    coefficients = rng.uniform(0.5, 1.5, size=n_features)
    score = values @ coefficients + rng.normal(0.0, noise, size=n)
    threshold = float(np.median(score))
    sensitive = (rng.random(n) < unprivileged_share).astype(int)

    features = pd.DataFrame(values, columns=[f"x{i}" for i in range(n_features)])
    return Dataset(
        name=name,
        instance_ids=np.arange(n),
        features=features,
        sensitive=sensitive,
        score=score,
        label=(score >= threshold).astype(int),
        threshold=threshold,
        sensitive_name='group',
        noise_intensity=noise_intensity,
        metadata={'generator': 'synthetic', 'seed': str(seed)},
    )
