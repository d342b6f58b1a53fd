from __future__ import annotations

import math
from fractions import Fraction

import numpy as np


def compare_to_mean(values, strict: bool) -> np.ndarray:
    """Elementwise ``v > mean(values)`` (``strict``) or ``v >= mean(values)``.

    Float rounding in the mean would break ties between equal values, so
    elements within a relative 1e-9 of the float mean are re-decided with
    exact rational arithmetic.
    """
    vals = np.asarray(values, dtype=float).ravel()
    n = vals.size
    if n == 0:
        return np.zeros(0, dtype=bool)
    m = math.fsum(vals.tolist()) / n
    tol = 1e-9 * max(abs(m), 1e-300)
    out = vals > m + tol
    near = np.flatnonzero(np.abs(vals - m) <= tol)
    if near.size:
        total = sum(Fraction(v) for v in vals.tolist())
        for i in near.tolist():
            scaled = Fraction(float(vals[i])) * n
            out[i] = scaled > total if strict else scaled >= total
    return out
