"""Zone boundary rows of a word image and longest-run fields.

Rows r1..r5 are, top to bottom: first ink row, top of the middle zone (the
headline row), mid line of the middle zone, bottom of the middle zone and
last ink row.
"""

from __future__ import annotations

import warnings
from dataclasses import asdict, dataclass

import numpy as np

from .errors import EmptyImageError
from .raster import as_binary


@dataclass(frozen=True)
class ZoneBoundaries:
    r1: int
    r2: int
    r3: int
    r4: int
    r5: int
    clamped: bool = False

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.r1, self.r2, self.r3, self.r4, self.r5)

    def to_dict(self) -> dict:
        return asdict(self)

    def shifted(self, k: int) -> "ZoneBoundaries":
        return ZoneBoundaries(self.r1 + k, self.r2 + k, self.r3 + k, self.r4 + k, self.r5 + k, self.clamped)


def _require_ink(mask: np.ndarray) -> None:
    if not mask.any():
        raise EmptyImageError("empty image at zone stage", stage="zones")


def _row_runs(mask: np.ndarray) -> np.ndarray:
    """Length of the maximal horizontal run through each pixel (0 on background)."""
    h, w = mask.shape
    padded = np.zeros((h, w + 2), dtype=np.int8)
    padded[:, 1:-1] = mask
    edges = np.diff(padded, axis=1)
    starts = np.argwhere(edges == 1)
    ends = np.argwhere(edges == -1)
    # argwhere is row-major so starts and ends pair up in order
    lengths = ends[:, 1] - starts[:, 1]
    out = np.zeros((h, w), dtype=np.int64)
    rows = np.repeat(starts[:, 0], lengths)
    offsets = np.arange(lengths.sum()) - np.repeat(np.cumsum(lengths) - lengths, lengths)
    cols = np.repeat(starts[:, 1], lengths) + offsets
    out[rows, cols] = np.repeat(lengths, lengths)
    return out


def horizontal_runs(img) -> np.ndarray:
    """Per-pixel horizontal longest-run field."""
    mask = as_binary(img)
    _require_ink(mask)
    return _row_runs(mask)


def vertical_runs(img) -> np.ndarray:
    """Per-pixel vertical longest-run field."""
    mask = as_binary(img)
    _require_ink(mask)
    return _row_runs(mask.T).T


def row_run_sums(runs: np.ndarray) -> list[int]:
    """Sum of run lengths over the foreground pixels of each row."""
    return [int(v) for v in np.asarray(runs).sum(axis=1)]


def detect_r1_r5(img) -> tuple[int, int]:
    mask = as_binary(img)
    _require_ink(mask)
    rows = np.flatnonzero(mask.any(axis=1))
    return int(rows[0]), int(rows[-1])


def detect_r2(sums) -> int:
    """Row of maximal run sum, smallest index on ties."""
    arr = np.asarray(sums)
    if arr.size == 0 or arr.max() <= 0:
        raise EmptyImageError("all row run sums are zero", stage="zones")
    return int(np.argmax(arr))


def row_transitions(img, row: int) -> int:
    """Ink/background flips along ``row`` with virtual background at both ends."""
    mask = as_binary(img)
    if not 0 <= row < mask.shape[0]:
        raise IndexError(f"row {row} out of bounds for height {mask.shape[0]}")
    line = np.concatenate(([False], mask[row], [False]))
    return int(np.count_nonzero(line[1:] != line[:-1]))


def _all_transitions(mask: np.ndarray) -> np.ndarray:
    h = mask.shape[0]
    framed = np.zeros((h, mask.shape[1] + 2), dtype=bool)
    framed[:, 1:-1] = mask
    return np.count_nonzero(framed[:, 1:] != framed[:, :-1], axis=1)


def detect_r4(img, r2: int, r5: int) -> int:
    """Scan upward from ``r5`` for the first row whose transitions exceed the band mean.

    The mean is taken over rows ``r2..r5``. Falls back to ``r5`` when no row
    strictly exceeds it.
    """
    mask = as_binary(img)
    trans = _all_transitions(mask)[r2 : r5 + 1]
    if trans.size == 0:
        return r5
    # trans > sum/size, compared exactly
    total, count = int(trans.sum()), trans.size
    for offset in range(count - 1, -1, -1):
        if int(trans[offset]) * count > total:
            return r2 + offset
    return r5


def compute_zones(img) -> ZoneBoundaries:
    mask = as_binary(img)
    r1, r5 = detect_r1_r5(mask)
    r2 = detect_r2(row_run_sums(_row_runs(mask)))
    r4 = detect_r4(mask, r2, r5) if r2 <= r5 else r5
    clamped = False
    if not r1 <= r2 <= r5:
        r2 = min(max(r2, r1), r5)
        clamped = True
    if not r2 <= r4 <= r5:
        r4 = min(max(r4, r2), r5)
        clamped = True
    if clamped:
        warnings.warn("zone detections out of order; clamped", RuntimeWarning, stacklevel=2)
    return ZoneBoundaries(r1, r2, (r2 + r4) // 2, r4, r5, clamped)
