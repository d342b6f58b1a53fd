"""Command line entry point: ``matraseg {segment,zones,synth,eval}``.

Failures exit nonzero and print one JSON object on stderr with ``code``,
``stage`` and ``message`` keys.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Optional, Sequence

from .errors import MatrasegError
from .evalharness import dump_json, load_corpus, run_corpus, write_corpus
from .raster import binarize_otsu, denoise_open, load_pgm, save_pgm
from .segmenter import SegmentParams, segment_word, segmentation_overlay
from .zones import compute_zones

EXIT_IO = 3
EXIT_CONFIG = 2
FORMATS = ("json", "pgm-overlay", "both")


@dataclass(frozen=True)
class RunConfig:
    bell_a: float = 2.0
    bell_b: float = 1.0
    denoise: bool = True
    output_format: str = "json"
    seed: int = 42
    count: int = 300
    workers: int = 1

    def __post_init__(self):
        if not (self.bell_a > 0 and self.bell_b > 0):
            raise ValueError(f"bell parameters must be positive, got a={self.bell_a} b={self.bell_b}")
        if self.output_format not in FORMATS:
            raise ValueError(f"output format must be one of {FORMATS}, got {self.output_format!r}")

    @property
    def params(self) -> SegmentParams:
        return SegmentParams(a=self.bell_a, b=self.bell_b, denoise=self.denoise)


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Defaults < ``--config`` JSON file < explicit flags."""
    cfg = RunConfig()
    known = {f.name for f in fields(RunConfig)}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            doc = json.load(fh)
        unknown = set(doc) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        cfg = replace(cfg, **doc)
    overrides = {}
    for name in known:
        value = getattr(args, name, None)
        if value is not None:
            overrides[name] = value
    if getattr(args, "no_denoise", False):
        overrides["denoise"] = False
    return replace(cfg, **overrides)


def _write_json(obj, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            dump_json(obj, fh)
    else:
        dump_json(obj, sys.stdout)


def cmd_segment(args) -> int:
    cfg = resolve_config(args)
    fmt = cfg.output_format
    if args.out and args.overlay:
        fmt = "both"
    elif args.overlay and not args.out:
        fmt = "pgm-overlay"
    image = Path(args.image)
    result = segment_word(binarize_otsu(load_pgm(image)), cfg.params)
    if fmt in ("json", "both"):
        out = args.out or (None if fmt == "json" else str(image.with_suffix(".seg.json")))
        _write_json(result.to_dict(), out)
    if fmt in ("pgm-overlay", "both"):
        save_pgm(args.overlay or image.with_suffix(".overlay.pgm"), segmentation_overlay(result))
    return 0


def cmd_zones(args) -> int:
    mask = binarize_otsu(load_pgm(args.image))
    if args.denoise:
        mask = denoise_open(mask)
    _write_json(compute_zones(mask).to_dict(), args.out)
    return 0


def cmd_synth(args) -> int:
    cfg = resolve_config(args)
    path = write_corpus(args.outdir, cfg.count, cfg.seed)
    print(path)
    return 0


def cmd_eval(args) -> int:
    cfg = resolve_config(args)
    report = run_corpus(load_corpus(args.corpusdir), cfg.params, workers=cfg.workers)
    _write_json(report.to_dict(), args.out)
    return 0


def _add_bell_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--bell-a", dest="bell_a", type=float, default=None, help="bell width (default 2)")
    p.add_argument("--bell-b", dest="bell_b", type=float, default=None, help="bell slope (default 1)")
    p.add_argument("--no-denoise", action="store_true", help="skip the morphological opening")
    p.add_argument("--config", help="JSON file with RunConfig keys; flags override it")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matraseg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("segment", help="segment one word image")
    p.add_argument("image")
    p.add_argument("--out", help="SegmentationResult JSON path (stdout if omitted)")
    p.add_argument("--overlay", help="overlay PGM path")
    p.add_argument("--format", dest="output_format", choices=FORMATS, default=None)
    _add_bell_flags(p)
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("zones", help="print zone boundary rows of a word image")
    p.add_argument("image")
    p.add_argument("--out")
    p.add_argument("--denoise", action="store_true", help="apply the opening before zoning")
    p.set_defaults(func=cmd_zones)

    p = sub.add_parser("synth", help="write a synthetic corpus")
    p.add_argument("outdir")
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--config")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("eval", help="evaluate a corpus directory, report JSON on stdout")
    p.add_argument("corpusdir")
    p.add_argument("--out")
    p.add_argument("--workers", type=int, default=None)
    _add_bell_flags(p)
    p.set_defaults(func=cmd_eval)
    return parser


def _fail(code: int, stage: str, message: str) -> int:
    print(json.dumps({"code": code, "stage": stage, "message": message}), file=sys.stderr)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MatrasegError as exc:
        return _fail(exc.code, exc.stage, str(exc))
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        return _fail(EXIT_CONFIG, "config", str(exc))
    except OSError as exc:
        return _fail(EXIT_IO, "io", str(exc))


if __name__ == "__main__":
    sys.exit(main())
