"""Headline (Matra) estimation with a generalized bell membership.

Each ink pixel gets a horizontalness value (its horizontal longest run over
the image maximum). Weighting that by a bell curve centred near the headline
row and keeping pixels at or above the mean over rows r1..r3 yields the
headline mask. Vertical stems only move the bell centre; see
:func:`refine_center`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._mean import compare_to_mean
from .errors import EmptyImageError, NoMatraError
from .raster import as_binary, binary_to_gray
from .zones import ZoneBoundaries


@dataclass(frozen=True)
class BellParams:
    a: float = 2.0
    b: float = 1.0
    c: float = 0.0

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError(f"bell width a must be positive, got {self.a}")
        if not self.b > 0:
            raise ValueError(f"bell slope b must be positive, got {self.b}")


def bell(x, p: BellParams):
    """Generalized bell ``1 / (1 + |(x - c) / a| ** (2b))``.

    Accepts scalars or arrays; scalars come back as ``float``.
    """
    val = 1.0 / (1.0 + np.abs((np.asarray(x, dtype=float) - p.c) / p.a) ** (2.0 * p.b))
    return float(val) if np.ndim(val) == 0 else val


def _normalize(runs: np.ndarray) -> np.ndarray:
    runs = np.asarray(runs)
    peak = runs.max(initial=0)
    if peak <= 0:
        raise EmptyImageError("run field has no foreground", stage="features")
    return runs / float(peak)


def horizontalness(hr: np.ndarray) -> np.ndarray:
    """Horizontal run field normalized to [0, 1] by its maximum."""
    return _normalize(hr)


def verticalness(vr: np.ndarray) -> np.ndarray:
    """Vertical run field normalized to [0, 1] by its maximum."""
    return _normalize(vr)


def stripe_extents(img, vf: np.ndarray) -> list[tuple[int, int, int]]:
    """``(col, top, bottom)`` of the longest vertical run in each prominent stripe column.

    A column is a stripe column when its peak verticalness strictly exceeds
    the mean peak over all columns holding ink. Ties between equally long
    runs in one column go to the topmost.
    """
    mask = as_binary(img)
    vf = np.asarray(vf, dtype=float)
    inked = np.flatnonzero(mask.any(axis=0))
    if inked.size == 0:
        return []
    peaks = vf[:, inked].max(axis=0)
    stripe = inked[compare_to_mean(peaks, strict=True)]
    out = []
    for col in stripe.tolist():
        column = vf[:, col]
        top = int(np.argmax(column == column.max()))
        bottom = top
        while bottom + 1 < column.size and mask[bottom + 1, col]:
            bottom += 1
        out.append((col, top, bottom))
    return out


def stripe_top_mean(img, vf: np.ndarray) -> Optional[float]:
    """Mean top row of the prominent vertical stripes, or ``None`` if there are none."""
    extents = stripe_extents(img, vf)
    if not extents:
        return None
    return sum(top for _, top, _ in extents) / len(extents)


def refine_center(r2: int, stripe_mean: Optional[float]) -> float:
    # equal-weight blend of the headline row and the mean stem top
    if stripe_mean is None:
        return float(r2)
    return (r2 + stripe_mean) / 2.0


def headline_membership(hf: np.ndarray, p: BellParams) -> np.ndarray:
    """Per-pixel product of horizontalness and the bell value of the pixel's row."""
    hf = np.asarray(hf, dtype=float)
    rows = np.arange(hf.shape[0], dtype=float)
    return hf * bell(rows, p)[:, None]


@dataclass(frozen=True)
class MatraMask:
    is_matra: np.ndarray
    band_top: int
    band_bottom: int
    cols: tuple[int, ...]

    @property
    def thickness(self) -> int:
        return self.band_bottom - self.band_top + 1

    @classmethod
    def from_pixels(cls, is_matra: np.ndarray) -> "MatraMask":
        is_matra = np.asarray(is_matra, dtype=bool)
        rows = np.flatnonzero(is_matra.any(axis=1))
        if rows.size == 0:
            raise NoMatraError("no headline pixels", stage="headline")
        cols = tuple(int(c) for c in np.flatnonzero(is_matra.any(axis=0)))
        return cls(is_matra, int(rows[0]), int(rows[-1]), cols)

    def to_dict(self) -> dict:
        return {"band_top": self.band_top, "band_bottom": self.band_bottom, "cols": list(self.cols)}


def extract_matra(fh: np.ndarray, z: ZoneBoundaries, fg: Optional[np.ndarray] = None) -> MatraMask:
    """Keep ink pixels in rows r1..r3 whose membership is at least the region mean.

    ``fg`` defaults to ``fh > 0``; pass the ink mask explicitly if memberships
    may underflow to zero.
    """
    fh = np.asarray(fh, dtype=float)
    fg = fh > 0 if fg is None else as_binary(fg)
    region = np.zeros(fh.shape, dtype=bool)
    region[z.r1 : z.r3 + 1] = True
    region &= fg
    if not region.any():
        raise NoMatraError(f"no ink in rows {z.r1}..{z.r3}", stage="headline")
    keep = compare_to_mean(fh[region], strict=False)
    is_matra = np.zeros(fh.shape, dtype=bool)
    is_matra[region] = keep
    return MatraMask.from_pixels(is_matra)


def matra_overlay(img, mask: MatraMask) -> np.ndarray:
    """Gray rendering: headline pixels 0, other ink 128, background 255."""
    out = binary_to_gray(img)
    out[as_binary(img)] = 128
    out[mask.is_matra] = 0
    return out
