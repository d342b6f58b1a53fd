"""Deterministic synthetic Devanagari-like word images with known cut intervals.

Layout scheme ``matraseg-synth/1``: a row of glyphs hangs from a common
headline. Every glyph has a left and a right vertical stroke plus a shoulder
bar just beneath the headline; the lower body varies by glyph kind. The
headline drifts in piecewise-constant steps of one row (at most ``wobble``
rows either side of its base row) and may be broken for a few columns over
a glyph without a headline. Optional marks float above glyphs and
descenders hang below them.

The acceptable cut interval between two neighbouring glyphs is the run of
columns where only the headline is inked.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace
from typing import Optional

import numpy as np

from .errors import LayoutError

GENERATOR_VERSION = "matraseg-synth/1"
GLYPH_KINDS = ("pa", "ba", "ka", "ma")


@dataclass(frozen=True)
class LayoutSpec:
    n_glyphs: int = 3
    height: int = 48
    min_width: int = 40
    margin: int = 4
    stroke: int = 3
    headline_thickness: tuple[int, int] = (3, 3)
    wobble: int = 2
    wobble_weights: tuple[float, ...] = (0.5, 0.35, 0.15)
    min_plateau: int = 8
    glyph_width: tuple[int, int] = (11, 16)
    gap_width: tuple[int, int] = (3, 6)
    body_height: tuple[int, int] = (15, 18)
    p_upper_mark: float = 0.3
    p_descender: float = 0.25
    p_headline_break: float = 0.1

    def validate(self) -> None:
        if not 1 <= self.n_glyphs <= 8:
            raise LayoutError(f"n_glyphs must be in 1..8, got {self.n_glyphs}")
        if self.height < 24 or self.min_width < 40:
            raise LayoutError(f"canvas must be at least 40x24, got {self.min_width}x{self.height}")
        if not 0 <= self.wobble <= 2:
            raise LayoutError(f"wobble must be in 0..2 rows, got {self.wobble}")
        if self.gap_width[0] < 2:
            raise LayoutError("gaps must be at least 2 columns wide")
        if self.glyph_width[0] < 3 * self.stroke + 2:
            raise LayoutError("glyphs too narrow for their strokes")
        needed = 2 * self.wobble + 9 + max(self.headline_thickness) + max(self.body_height) + 8
        if needed > self.height:
            raise LayoutError(f"height {self.height} too small for the layout (needs {needed})")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class GroundTruth:
    word_id: str
    intervals: list[tuple[int, int]] = field(default_factory=list)
    headline_rows: Optional[tuple[int, int]] = None

    def to_dict(self, image: str) -> dict:
        return {
            "id": self.word_id,
            "image": image,
            "intervals": [list(iv) for iv in self.intervals],
            "headline_rows": list(self.headline_rows) if self.headline_rows else None,
        }


@dataclass
class SyntheticWord:
    image: np.ndarray
    truth: GroundTruth
    headline: np.ndarray
    body_rows: tuple[int, int]
    glyph_cols: list[tuple[int, int]]
    kinds: list[str]


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed))


def word_seed(corpus_seed: int, index: int) -> int:
    """Per-word seed derived from a corpus seed; stable across platforms."""
    return int(np.random.SeedSequence([corpus_seed, index]).generate_state(1)[0])


def _wobble_profile(rng: np.random.Generator, n: int, amp: int, min_plateau: int) -> np.ndarray:
    off = np.zeros(n, dtype=int)
    if amp == 0:
        return off
    level = int(rng.integers(-amp, amp + 1))
    c = 0
    while c < n:
        run = int(rng.integers(min_plateau, 3 * min_plateau + 1))
        if n - (c + run) < min_plateau:
            run = n - c  # no stub plateau at the right end
        off[c : c + run] = level
        c += run
        step = int(rng.choice((-1, 1)))
        if abs(level + step) > amp:
            step = -step
        level += step
    return off


def generate_word(seed: int, spec: LayoutSpec = LayoutSpec(), word_id: Optional[str] = None) -> SyntheticWord:
    spec.validate()
    rng = _rng(seed)
    s = spec.stroke

    widths = [int(rng.integers(spec.glyph_width[0], spec.glyph_width[1] + 1)) for _ in range(spec.n_glyphs)]
    gaps = [int(rng.integers(spec.gap_width[0], spec.gap_width[1] + 1)) for _ in range(spec.n_glyphs - 1)]
    kinds = [GLYPH_KINDS[int(rng.integers(len(GLYPH_KINDS)))] for _ in range(spec.n_glyphs)]
    thick = int(rng.integers(spec.headline_thickness[0], spec.headline_thickness[1] + 1))
    weights = np.asarray(spec.wobble_weights[: spec.wobble + 1], dtype=float)
    amp = int(rng.choice(spec.wobble + 1, p=weights / weights.sum()))
    body_h = int(rng.integers(spec.body_height[0], spec.body_height[1] + 1))

    glyph_cols = []
    x = spec.margin
    for i, w in enumerate(widths):
        glyph_cols.append((x, x + w - 1))
        x += w + (gaps[i] if i < len(gaps) else 0)
    width = max(spec.min_width, x + spec.margin)

    img = np.zeros((spec.height, width), dtype=bool)
    headline = np.zeros_like(img)

    # rows: marks above, headline base y0, body below
    y0 = spec.margin + 5 + spec.wobble
    body_top = y0 + amp + thick
    body_bottom = y0 + thick + body_h
    left, right = glyph_cols[0][0], glyph_cols[-1][1]
    off = _wobble_profile(rng, right - left + 1, amp, spec.min_plateau)
    tops = np.full(width, -1, dtype=int)
    for i, c in enumerate(range(left, right + 1)):
        tops[c] = y0 + int(off[i])
        headline[tops[c] : tops[c] + thick, c] = True

    def stem_top(x0):
        return int(tops[x0 : x0 + s].min())

    def vstroke(x0, y_from, y_to):
        img[y_from : y_to + 1, x0 : x0 + s] = True

    def hstroke(y, x_from, x_to):
        img[y : y + s, x_from : x_to + 1] = True

    shoulder = body_top
    waist = shoulder + s + 1
    for (g0, g1), kind in zip(glyph_cols, kinds):
        mid = body_top + (body_bottom - body_top) // 2
        vstroke(g0, stem_top(g0), mid if kind in ("pa", "ka") else body_bottom - s + 1)
        vstroke(g1 - s + 1, stem_top(g1 - s + 1), body_bottom)
        hstroke(shoulder, g0, g1)
        if kind == "ka":
            cm = (g0 + g1) // 2 - 1
            vstroke(cm, shoulder, body_bottom)
            hstroke(waist, g0, cm)
            hstroke(waist, cm, g1)
        else:
            hstroke(waist, g0, g1)
        if kind == "ba":
            hstroke(body_bottom - s + 1, g0, g1)
        elif kind == "ma":
            hstroke(mid + 2, g0, g1)

        if rng.random() < spec.p_upper_mark:
            mw = int(rng.integers(s, min(g1 - g0, 2 * s) + 1))
            mx = int(rng.integers(g0, g1 - mw + 2))
            my = y0 - spec.wobble - 2 - s
            img[my : my + s, mx : mx + mw] = True
        if rng.random() < spec.p_descender:
            dlen = int(rng.integers(4, 7))
            dx = g1 - s + 1 if rng.random() < 0.5 else (g0 + g1) // 2 - 1
            vstroke(dx, body_bottom, body_bottom + dlen)
            hstroke(body_bottom + dlen - s + 1, dx - s, dx)

    for g0, g1 in glyph_cols:
        if rng.random() < spec.p_headline_break:
            bw = int(rng.integers(1, 4))
            # keep a flat stroke-wide shoulder on each side so the pieces survive opening
            spots = [x for x in range(g0 + s + 1, g1 - s - bw + 1) if np.ptp(tops[x - s : x + bw + s]) == 0]
            if spots:
                bx = spots[int(rng.integers(len(spots)))]
                headline[:, bx : bx + bw] = False

    img |= headline
    hl_rows = np.flatnonzero(headline.any(axis=1))
    intervals = [(glyph_cols[i][1] + 1, glyph_cols[i + 1][0] - 1) for i in range(len(glyph_cols) - 1)]
    truth = GroundTruth(
        word_id if word_id is not None else f"w{seed}",
        intervals,
        (int(hl_rows[0]), int(hl_rows[-1])),
    )
    return SyntheticWord(img, truth, headline, (body_top, body_bottom), glyph_cols, kinds)


def generate_corpus(count: int, seed: int, spec: LayoutSpec = LayoutSpec(), glyph_range=(2, 6)) -> list[SyntheticWord]:
    """``count`` words; glyph count per word drawn from ``glyph_range`` (inclusive)."""
    if count < 1:
        raise LayoutError(f"count must be positive, got {count}")
    rng = _rng([seed, 0x5EED])
    words = []
    for i in range(count):
        n = int(rng.integers(glyph_range[0], glyph_range[1] + 1))
        words.append(generate_word(word_seed(seed, i), replace(spec, n_glyphs=n), word_id=f"word_{i:04d}"))
    return words
