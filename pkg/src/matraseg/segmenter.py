"""Cut-column selection on the headline and the end-to-end pipeline.

Every headline column is scored by two bell memberships centred at zero:

* ``mu1`` falls with the ink count inside the headline band,
* ``mu2`` falls with the amount of character body hanging below the band
  down to the mid line r3.

Columns whose mean membership beats the word average form runs; each run
yields one cut at its middle column.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import headline as hl
from ._mean import compare_to_mean
from .errors import NoMatraError
from .raster import as_binary, binary_to_gray, denoise_open
from .zones import ZoneBoundaries, compute_zones, horizontal_runs, vertical_runs


@dataclass(frozen=True)
class SegmentParams:
    """Bell width/slope for headline membership (b is reused by mu1/mu2)."""

    a: float = 2.0
    b: float = 1.0
    denoise: bool = True

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise ValueError(f"bell parameters must be positive, got a={self.a} b={self.b}")


@dataclass(frozen=True)
class ColumnScore:
    col: int
    mu1: float
    mu2: float

    @property
    def avg(self) -> float:
        return (self.mu1 + self.mu2) / 2.0

    def to_dict(self) -> dict:
        return {"col": self.col, "mu1": self.mu1, "mu2": self.mu2, "avg": self.avg}


@dataclass(frozen=True)
class CutSet:
    cuts: tuple[int, ...] = ()
    runs: tuple[tuple[int, int], ...] = ()

    def __len__(self):
        return len(self.cuts)


def band_count(img, mask: hl.MatraMask, col: int) -> int:
    fg = as_binary(img)
    return int(fg[mask.band_top : mask.band_bottom + 1, col].sum())


def mu1_value(count, thickness: int, b: float = 1.0):
    """Bell centred at zero with half-width equal to the band thickness."""
    return hl.bell(count, hl.BellParams(a=max(1, thickness), b=b, c=0.0))


def mu2_value(depth, gap: float, b: float = 1.0):
    """Bell centred at zero with half-width half the band-to-mid-line gap."""
    return hl.bell(depth, hl.BellParams(a=max(1.0, gap / 2.0), b=b, c=0.0))


def mu1(img, mask: hl.MatraMask, col: int, b: float = 1.0) -> float:
    return mu1_value(band_count(img, mask, col), mask.thickness, b)


def f2_depth(img, mask: hl.MatraMask, z: ZoneBoundaries, col: int) -> int:
    """Ink pixels in ``col`` strictly below the band and no lower than r3."""
    fg = as_binary(img)
    return int(fg[mask.band_bottom + 1 : z.r3 + 1, col].sum())


def mu2(depth: int, z: ZoneBoundaries, mask: hl.MatraMask, b: float = 1.0) -> float:
    return mu2_value(depth, z.r3 - mask.band_bottom, b)


def score_columns(img, mask: hl.MatraMask, z: ZoneBoundaries, params: SegmentParams = SegmentParams()) -> list[ColumnScore]:
    if not mask.cols:
        raise NoMatraError("headline mask has no columns", stage="segment")
    fg = as_binary(img)
    cols = np.asarray(mask.cols)
    counts = fg[mask.band_top : mask.band_bottom + 1][:, cols].sum(axis=0)
    depths = fg[mask.band_bottom + 1 : z.r3 + 1][:, cols].sum(axis=0)
    m1 = mu1_value(counts, mask.thickness, params.b)
    m2 = mu2_value(depths, z.r3 - mask.band_bottom, params.b)
    return [ColumnScore(int(c), float(u), float(v)) for c, u, v in zip(cols, np.atleast_1d(m1), np.atleast_1d(m2))]


def select_terminal_points(scores: list[ColumnScore]) -> CutSet:
    """One cut per maximal run of consecutive columns scoring above the mean."""
    if not scores:
        return CutSet()
    above = compare_to_mean([s.avg for s in scores], strict=True)
    runs = []
    start = prev = None
    for s, hit in zip(scores, above):
        if hit and start is not None and s.col == prev + 1:
            prev = s.col
            continue
        if start is not None:
            runs.append((start, prev))
            start = None
        if hit:
            start = prev = s.col
    if start is not None:
        runs.append((start, prev))
    return CutSet(tuple((lo + hi) // 2 for lo, hi in runs), tuple(runs))


@dataclass
class SegmentationResult:
    image: np.ndarray
    zones: ZoneBoundaries
    center: float
    matra: hl.MatraMask
    scores: list[ColumnScore] = field(default_factory=list)
    cutset: CutSet = field(default_factory=CutSet)

    @property
    def cuts(self) -> tuple[int, ...]:
        return self.cutset.cuts

    def to_dict(self) -> dict:
        return {
            "zones": self.zones.to_dict(),
            "bell_center": self.center,
            "matra": self.matra.to_dict(),
            "scores": [s.to_dict() for s in self.scores],
            "cuts": list(self.cutset.cuts),
            "runs": [list(r) for r in self.cutset.runs],
        }


def segment_word(img, params: SegmentParams = SegmentParams()) -> SegmentationResult:
    """Run denoise -> zones -> features -> headline -> column scores -> cuts."""
    fg = as_binary(img)
    if params.denoise:
        fg = denoise_open(fg)
    z = compute_zones(fg)
    hf = hl.horizontalness(horizontal_runs(fg))
    vf = hl.verticalness(vertical_runs(fg))
    c = hl.refine_center(z.r2, hl.stripe_top_mean(fg, vf))
    fh = hl.headline_membership(hf, hl.BellParams(params.a, params.b, c))
    matra = hl.extract_matra(fh, z, fg)
    scores = score_columns(fg, matra, z, params)
    return SegmentationResult(fg, z, c, matra, scores, select_terminal_points(scores))


def segmentation_overlay(result: SegmentationResult) -> np.ndarray:
    """Gray rendering: headline pixels in cut runs 0, other headline 96, ink 176, background 255."""
    out = binary_to_gray(result.image)
    out[result.image] = 176
    out[result.matra.is_matra] = 96
    for lo, hi in result.cutset.runs:
        cols = result.matra.is_matra[:, lo : hi + 1]
        out[:, lo : hi + 1][cols] = 0
    return out
