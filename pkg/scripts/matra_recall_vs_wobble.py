"""Headline recall and cut quality as the headline wobble amplitude changes.

Prints one row per wobble mix. Recall is the share of generator-marked
headline pixels that end up in the extracted matra mask.
"""

import argparse
from dataclasses import replace

import numpy as np

from matraseg.evalharness import run_corpus
from matraseg.segmenter import segment_word
from matraseg.synth import LayoutSpec, generate_corpus

MIXES = {
    "straight": (1.0, 0.0, 0.0),
    "amp1": (0.0, 1.0, 0.0),
    "amp2": (0.0, 0.0, 1.0),
    "default": LayoutSpec().wobble_weights,
}


def measure(spec, count, seed):
    corpus = generate_corpus(count, seed, spec)
    hit = marked = outside = matra = 0
    for w in corpus:
        r = segment_word(w.image)
        marked += int(w.headline.sum())
        hit += int((w.headline & r.matra.is_matra).sum())
        lo, hi = w.truth.headline_rows
        rows = np.nonzero(r.matra.is_matra)[0]
        matra += rows.size
        outside += int(((rows < lo - 2) | (rows > hi + 2)).sum())
    rep = run_corpus([(w.truth.word_id, w.image, w.truth) for w in corpus])
    return hit / marked, outside / matra, rep.success_rate, rep.over / rep.intervals


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=300)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--no-breaks", action="store_true", help="disable headline breaks")
    args = ap.parse_args()

    base = LayoutSpec()
    if args.no_breaks:
        base = replace(base, p_headline_break=0.0)
    print(f"{'mix':<10} {'recall':>8} {'outside':>8} {'rate':>7} {'over/iv':>8}")
    for name, weights in MIXES.items():
        recall, outside, rate, over = measure(replace(base, wobble_weights=weights), args.count, args.seed)
        print(f"{name:<10} {recall:8.4f} {outside:8.4f} {rate:7.2f} {over:8.3f}")


if __name__ == "__main__":
    main()
