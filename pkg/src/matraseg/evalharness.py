"""Ground-truth matching, success rate and corpus evaluation.

A truth interval counts as a true segmentation (``ct``) when at least one
cut lands inside it and as an under-segmentation (``cu``) otherwise. Cuts
outside every interval are over-segmentations; they are reported but, like
the published metric, left out of the success rate.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import MatrasegError, MetricUndefinedError
from .raster import binarize_otsu, binary_to_gray, load_pgm, save_pgm
from .segmenter import SegmentParams, segment_word
from .synth import GENERATOR_VERSION, GroundTruth, LayoutSpec, generate_corpus


def match_cuts(cuts: Iterable[int], intervals: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """Return ``(ct, cu, over)`` for one word."""
    cuts = list(cuts)
    hit = [any(lo <= c <= hi for c in cuts) for lo, hi in intervals]
    over = sum(1 for c in cuts if not any(lo <= c <= hi for lo, hi in intervals))
    ct = sum(hit)
    return ct, len(hit) - ct, over


def success_rate(ct: int, cu: int) -> float:
    if ct + cu <= 0:
        raise MetricUndefinedError("success rate undefined with no truth intervals")
    return 100.0 * ct / (ct + cu)


@dataclass
class EvalReport:
    ct: int = 0
    cu: int = 0
    over: int = 0
    per_word: list[dict] = field(default_factory=list)

    @property
    def success_rate(self) -> float:
        return success_rate(self.ct, self.cu)

    @property
    def intervals(self) -> int:
        return self.ct + self.cu

    def to_dict(self) -> dict:
        return {
            "ct": self.ct,
            "cu": self.cu,
            "over": self.over,
            "success_rate": self.success_rate,
            "per_word": self.per_word,
        }


def _evaluate_one(word_id: str, image: np.ndarray, truth: GroundTruth, params: SegmentParams) -> dict:
    entry = {"id": word_id, "cuts": [], "ct": 0, "cu": len(truth.intervals), "over": 0}
    try:
        result = segment_word(image, params)
    except MatrasegError as exc:
        entry["error"] = {"stage": exc.stage, "message": str(exc)}
        return entry
    ct, cu, over = match_cuts(result.cuts, truth.intervals)
    entry.update(cuts=list(result.cuts), ct=ct, cu=cu, over=over)
    return entry


def run_corpus(words: Sequence[tuple[str, np.ndarray, GroundTruth]], params: SegmentParams = SegmentParams(), workers: int = 1) -> EvalReport:
    """Segment and score every ``(id, binary image, truth)``; per-word rows are ordered by id.

    A word whose segmentation fails counts all of its intervals as missed.
    """
    if not words:
        raise MetricUndefinedError("empty corpus")
    ordered = sorted(words, key=lambda w: w[0])
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda w: _evaluate_one(w[0], w[1], w[2], params), ordered))
    else:
        rows = [_evaluate_one(wid, img, truth, params) for wid, img, truth in ordered]
    report = EvalReport(per_word=rows)
    for row in rows:
        report.ct += row["ct"]
        report.cu += row["cu"]
        report.over += row["over"]
    return report


# ---------------------------------------------------------------- corpus files

TRUTH_FILE = "truth.json"


def dump_json(obj, fh) -> None:
    json.dump(obj, fh, indent=2)
    fh.write("\n")


def write_corpus(outdir: os.PathLike, count: int, seed: int, spec: LayoutSpec = LayoutSpec()) -> Path:
    """Generate a synthetic corpus as PGM files plus ``truth.json``."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    entries = []
    for word in generate_corpus(count, seed, spec):
        name = f"{word.truth.word_id}.pgm"
        save_pgm(outdir / name, binary_to_gray(word.image))
        entries.append(word.truth.to_dict(name))
    doc = {
        "generator_version": GENERATOR_VERSION,
        "seed": seed,
        "count": count,
        "layout": spec.to_dict(),
        "words": entries,
    }
    path = outdir / TRUTH_FILE
    with open(path, "w") as fh:
        dump_json(doc, fh)
    return path


def validate_truth_doc(doc: dict) -> None:
    """Raise ``ValueError`` if a truth document is malformed."""
    if not isinstance(doc, dict) or "generator_version" not in doc or not isinstance(doc.get("words"), list):
        raise ValueError("truth file needs 'generator_version' and a 'words' list")
    for w in doc["words"]:
        for key in ("id", "image", "intervals"):
            if key not in w:
                raise ValueError(f"word entry missing '{key}': {w}")
        prev_hi = -1
        for iv in w["intervals"]:
            if len(iv) != 2 or not all(isinstance(v, int) for v in iv):
                raise ValueError(f"bad interval {iv} in {w['id']}")
            lo, hi = iv
            if lo > hi or lo <= prev_hi or lo < 0:
                raise ValueError(f"intervals of {w['id']} must be sorted, disjoint and non-empty")
            prev_hi = hi


def load_corpus(corpusdir: os.PathLike) -> list[tuple[str, np.ndarray, GroundTruth]]:
    corpusdir = Path(corpusdir)
    with open(corpusdir / TRUTH_FILE) as fh:
        doc = json.load(fh)
    validate_truth_doc(doc)
    words = []
    for w in doc["words"]:
        gray = load_pgm(corpusdir / w["image"])
        rows = w.get("headline_rows")
        truth = GroundTruth(w["id"], [tuple(iv) for iv in w["intervals"]], tuple(rows) if rows else None)
        words.append((w["id"], binarize_otsu(gray), truth))
    return words


def evaluate_synthetic(count: int = 300, seed: int = 42, params: SegmentParams = SegmentParams(), spec: Optional[LayoutSpec] = None) -> EvalReport:
    """In-memory shortcut: generate a corpus and evaluate it."""
    corpus = generate_corpus(count, seed, spec or LayoutSpec())
    return run_corpus([(w.truth.word_id, w.image, w.truth) for w in corpus], params)
