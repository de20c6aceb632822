# app/utils/bands.py
from __future__ import annotations

from typing import List, Sequence, Tuple


def stack_bands(sizes: Sequence[Tuple[int, int]], margin: int) -> List[Tuple[int, int]]:
    """
    Return the (x, y) origin of each box when the boxes are stacked as
    horizontal bands, bottom to top, with `margin` grid units between them.
    """
    if margin < 0:
        raise ValueError(f"margin must be nonnegative, got {margin}")
    origins = []
    y = 0
    for _, h in sizes:
        origins.append((0, y))
        y += h + margin
    return origins


def band_rows(count: int, per_row: int) -> List[Tuple[int, int]]:
    """(row, column) slot of each of `count` items laid out `per_row` to a row."""
    if per_row <= 0:
        raise ValueError(f"per_row must be positive, got {per_row}")
    return [divmod(i, per_row) for i in range(count)]
