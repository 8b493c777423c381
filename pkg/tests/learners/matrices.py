from typing import Optional, Sequence

import numpy as np

from fair_world.data.encoding import EncodedMatrix


def matrix(values, columns: Sequence[str], sensitive: Optional[str] = None, instance_ids=None) -> EncodedMatrix:
    """
    Encoded matrix built straight from raw values; ``sensitive`` names the column derived
    from the sensitive attribute, if any.
    """
    values = np.asarray(values, dtype=float)
    if instance_ids is None:
        instance_ids = np.arange(len(values))
    return EncodedMatrix(
        instance_ids=np.asarray(instance_ids, dtype=np.int64),
        values=values,
        columns=tuple(columns),
        manifest={c: c for c in columns},
        includes_sensitive=sensitive is not None,
        sensitive_name=sensitive or 'a',
    )
