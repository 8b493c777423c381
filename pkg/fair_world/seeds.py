from hashlib import sha256
from typing import Union

import numpy as np

SeedPart = Union[int, float, str]

SEED_BITS = 32


def derive_seed(master_seed: int, *parts: SeedPart) -> int:
    """
    Derive a child seed from a master seed and a sequence of key parts.

    The derivation only depends on the string form of the parts, so the same cell
    (dataset, kind, level, fold, method) always receives the same seed, whatever
    order cells are executed in.

    :param master_seed: The run's master seed
    :param parts: Key parts identifying the consumer of the seed
    :return: A non-negative integer seed below 2**32
    """
    hash_input = "|".join([str(master_seed)] + [_canonical(part) for part in parts])
    hashed_value = sha256(hash_input.encode('utf-8')).hexdigest()
    return int(hashed_value, 16) % (1 << SEED_BITS)


def make_rng(master_seed: int, *parts: SeedPart) -> np.random.Generator:
    """
    Build a numpy generator seeded with :func:`derive_seed`.
    """
    return np.random.default_rng(derive_seed(master_seed, *parts))


def _canonical(part: SeedPart) -> str:
    # levels such as 0.1 + 0.2 must hash like 0.3
    if isinstance(part, float):
        return f"{part:.6f}"
    return str(part)
