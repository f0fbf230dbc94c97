from typing import Iterable, Sequence

import numpy as np


def lower_median(values: Sequence[float]) -> float:
    """Median using the lower middle element for even counts"""
    ordered = sorted(values)
    if not ordered:
        return float('nan')
    return float(ordered[(len(ordered) - 1) // 2])


def derive_seed(*keys: int) -> int:
    """Deterministic 32-bit seed from a tuple of integer keys"""
    state = np.random.SeedSequence([int(k) & 0xFFFFFFFF for k in keys]).generate_state(1)
    return int(state[0])


def derive_rng(*keys: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(k) & 0xFFFFFFFF for k in keys]))


def format_float(value: float) -> str:
    """Round-trip safe text for a 64-bit float"""
    return f"{value:.17g}"


def format_row(values: Iterable[float]) -> str:
    return ",".join(format_float(float(v)) for v in values)
