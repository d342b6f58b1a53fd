"""Image ingestion, Otsu binarization and 3x3 binary morphology.

Images are plain numpy arrays indexed ``[row, col]``:

* gray images are ``uint8`` with 0 = darkest,
* binary images are ``bool`` with ``True`` = foreground (ink).
"""

from __future__ import annotations

import os
from typing import Union

import numpy as np

from .errors import PGMError, PGMHeaderError, PGMMaxvalError, PGMTruncatedError

PathLike = Union[str, os.PathLike]

_WHITESPACE = b" \t\r\n\v\f"


def as_gray(img) -> np.ndarray:
    arr = np.asarray(img)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"gray image must be a non-empty 2-D array, got shape {arr.shape}")
    if arr.min() < 0 or arr.max() > 255:
        raise ValueError("gray intensities must lie in 0..255")
    return arr.astype(np.uint8, copy=False)


def as_binary(img) -> np.ndarray:
    arr = np.asarray(img)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"binary image must be a non-empty 2-D array, got shape {arr.shape}")
    return arr.astype(bool, copy=False)


# --------------------------------------------------------------------------- PGM


class _HeaderReader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def _skip_space_and_comments(self):
        data = self.data
        while self.pos < len(data):
            ch = data[self.pos : self.pos + 1]
            if ch in (b"#",):
                nl = data.find(b"\n", self.pos)
                self.pos = len(data) if nl < 0 else nl + 1
            elif ch and ch in _WHITESPACE:
                self.pos += 1
            else:
                break

    def token(self, field: str) -> bytes:
        self._skip_space_and_comments()
        start = self.pos
        data = self.data
        while self.pos < len(data) and data[self.pos : self.pos + 1] not in _WHITESPACE and data[self.pos : self.pos + 1] != b"#":
            self.pos += 1
        if start == self.pos:
            raise PGMHeaderError(f"missing header field '{field}' at byte offset {start}")
        return data[start : self.pos]

    def integer(self, field: str) -> int:
        start = self.pos
        tok = self.token(field)
        if not tok.isdigit():
            raise PGMHeaderError(
                f"header field '{field}' is not a non-negative integer: {tok!r} (near byte offset {start})"
            )
        return int(tok)


def load_pgm(path: PathLike) -> np.ndarray:
    """Read a P2 (ASCII) or P5 (binary) PGM file with maxval <= 255.

    Returns a ``uint8`` array of shape ``(height, width)``. Raises
    ``FileNotFoundError`` for a missing file and a ``PGMError`` subclass for
    malformed content.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    return parse_pgm(data)


def parse_pgm(data: bytes) -> np.ndarray:
    reader = _HeaderReader(data)
    magic = reader.token("magic")
    if magic not in (b"P2", b"P5"):
        raise PGMHeaderError(f"header field 'magic' must be P2 or P5, got {magic!r} at byte offset 0")
    width = reader.integer("width")
    height = reader.integer("height")
    maxval = reader.integer("maxval")
    if width < 1 or height < 1:
        raise PGMHeaderError(f"header fields 'width'/'height' must be >= 1, got {width}x{height}")
    if maxval < 1 or maxval > 255:
        raise PGMMaxvalError(f"header field 'maxval' must be in 1..255, got {maxval}")
    n = width * height

    if magic == b"P5":
        # exactly one whitespace byte separates maxval from the raster
        if reader.pos >= len(data) or data[reader.pos : reader.pos + 1] not in _WHITESPACE:
            raise PGMHeaderError(f"expected whitespace after 'maxval' at byte offset {reader.pos}")
        start = reader.pos + 1
        raster = data[start : start + n]
        if len(raster) < n:
            raise PGMTruncatedError(
                f"truncated pixel data: expected {n} bytes from byte offset {start}, got {len(raster)}"
            )
        pixels = np.frombuffer(raster, dtype=np.uint8).copy()
    else:
        values = []
        for i in range(n):
            reader._skip_space_and_comments()
            offset = reader.pos
            if offset >= len(data):
                raise PGMTruncatedError(
                    f"truncated pixel data: expected {n} values, got {i} (end of file at byte offset {offset})"
                )
            tok = reader.token("pixel")
            if not tok.isdigit():
                raise PGMError(f"non-numeric pixel value {tok!r} at byte offset {offset}")
            values.append(int(tok))
        pixels = np.asarray(values, dtype=np.int64)

    if pixels.max(initial=0) > maxval:
        raise PGMError(f"pixel value {int(pixels.max())} exceeds maxval {maxval}")
    return pixels.astype(np.uint8).reshape(height, width)


def save_pgm(path: PathLike, img, binary: bool = True) -> None:
    """Write a gray image as P5 (``binary=True``) or P2."""
    arr = as_gray(img)
    height, width = arr.shape
    header = f"P{5 if binary else 2}\n{width} {height}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        if binary:
            fh.write(arr.tobytes())
        else:
            for row in arr:
                fh.write((" ".join(str(int(v)) for v in row) + "\n").encode("ascii"))


def binary_to_gray(mask) -> np.ndarray:
    """Foreground -> 0, background -> 255."""
    return np.where(as_binary(mask), 0, 255).astype(np.uint8)


# -------------------------------------------------------------------- thresholds


def otsu_threshold(img) -> int | None:
    """Lowest threshold maximizing Otsu's between-class variance.

    Class 0 is ``intensity <= t``. Returns ``None`` when no threshold
    separates two non-empty classes with positive variance (uniform image).
    Comparisons are done in exact integer arithmetic, so ties resolve
    deterministically to the smallest ``t``.
    """
    arr = as_gray(img)
    hist = np.bincount(arr.ravel(), minlength=256).tolist()
    total_n = arr.size
    total_s = sum(v * c for v, c in enumerate(hist))

    # sigma_b^2 * N^2 = (N*S0 - n0*S)^2 / (n0 * n1)
    best_t = None
    best_num, best_den = 0, 1
    n0 = s0 = 0
    for t in range(256):
        n0 += hist[t]
        s0 += t * hist[t]
        n1 = total_n - n0
        if n0 == 0 or n1 == 0:
            continue
        num = (total_n * s0 - n0 * total_s) ** 2
        den = n0 * n1
        if num * best_den > best_num * den:
            best_t, best_num, best_den = t, num, den
    return best_t


def binarize_otsu(img) -> np.ndarray:
    """Foreground where intensity <= Otsu threshold; uniform images are all background."""
    arr = as_gray(img)
    t = otsu_threshold(arr)
    if t is None:
        return np.zeros(arr.shape, dtype=bool)
    return arr <= t


# -------------------------------------------------------------------- morphology


def _neighborhoods(mask: np.ndarray):
    padded = np.pad(mask, 1, mode="constant", constant_values=False)
    h, w = mask.shape
    for dy in range(3):
        for dx in range(3):
            yield padded[dy : dy + h, dx : dx + w]


def erode(img) -> np.ndarray:
    """3x3 square erosion; pixels outside the image count as background."""
    mask = as_binary(img)
    out = np.ones(mask.shape, dtype=bool)
    for shifted in _neighborhoods(mask):
        out &= shifted
    return out


def dilate(img) -> np.ndarray:
    """3x3 square dilation."""
    mask = as_binary(img)
    out = np.zeros(mask.shape, dtype=bool)
    for shifted in _neighborhoods(mask):
        out |= shifted
    return out


def denoise_open(img) -> np.ndarray:
    """One morphological opening: ``dilate(erode(img))``."""
    return dilate(erode(img))
