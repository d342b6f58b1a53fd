"""Segment the default synthetic corpus and print the headline numbers.

    python3 scripts/run_synthetic_benchmark.py --count 300 --seed 42
"""

import argparse
import json
import time

from matraseg.evalharness import run_corpus
from matraseg.segmenter import SegmentParams
from matraseg.synth import LayoutSpec, generate_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=300)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--bell-a", type=float, default=2.0)
    ap.add_argument("--bell-b", type=float, default=1.0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    corpus = generate_corpus(args.count, args.seed, LayoutSpec())
    words = [(w.truth.word_id, w.image, w.truth) for w in corpus]
    t0 = time.perf_counter()
    rep = run_corpus(words, SegmentParams(args.bell_a, args.bell_b), workers=args.workers)
    elapsed = time.perf_counter() - t0
    summary = {
        "words": len(words),
        "intervals": rep.intervals,
        "ct": rep.ct,
        "cu": rep.cu,
        "over": rep.over,
        "over_per_interval": round(rep.over / rep.intervals, 4),
        "success_rate": round(rep.success_rate, 2),
        "errors": sum("error" in row for row in rep.per_word),
        "seconds": round(elapsed, 3),
    }
    print(json.dumps(summary, indent=2))


if __name__ == "__main__":
    main()
