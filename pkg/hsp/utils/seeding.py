import zlib
from typing import Union

import numpy as np


def _key_to_int(key: Union[int, str]) -> int:
    if isinstance(key, str):
        return zlib.crc32(key.encode("utf-8"))
    return int(key)


def derive_seed(base_seed: int, *keys: Union[int, str]) -> int:
    """
    Derive a reproducible 32-bit seed from a base seed and a tuple of keys.

    Args:
        base_seed (int): The experiment-level seed.
        *keys: Identifying parts of a run (instance id, algorithm name, k, replicate index).

    Returns:
        int: Seed that depends only on ``base_seed`` and ``keys``.
    """
    entropy = [int(base_seed)] + [_key_to_int(key) for key in keys]
    return int(np.random.SeedSequence(entropy).generate_state(1)[0])


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)
