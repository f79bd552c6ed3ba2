"""Small helpers for sets of indices encoded as Python ints."""
from __future__ import annotations

from typing import Iterable, Iterator


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def bits(mask: int) -> list[int]:
    return list(iter_bits(mask))


def popcount(mask: int) -> int:
    return mask.bit_count()


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1
