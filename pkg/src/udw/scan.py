"""Peak location on smooth response curves: coarse grid scan + golden refinement."""

from __future__ import annotations

import math
from typing import Callable, Sequence

__all__ = ["golden_max", "argmax_scan", "local_maxima"]

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_max(
    f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-10
) -> tuple[float, float]:
    """Golden-section search for the maximum of a unimodal f on [lo, hi]."""
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol * max(1.0, abs(a) + abs(b)):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def argmax_scan(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    step: float,
    tol: float = 1e-8,
) -> tuple[float, float]:
    """Locate the global maximum of f on [lo, hi]: grid at ``step`` then golden."""
    count = max(int(math.ceil((hi - lo) / step)), 2)
    xs = [lo + (hi - lo) * i / count for i in range(count + 1)]
    ys = [f(x) for x in xs]
    i = max(range(len(ys)), key=ys.__getitem__)
    a = xs[max(i - 1, 0)]
    b = xs[min(i + 1, len(xs) - 1)]
    return golden_max(f, a, b, tol)


def local_maxima(xs: Sequence[float], ys: Sequence[float]) -> list[int]:
    """Indices of strict interior local maxima of the sampled curve."""
    return [
        i
        for i in range(1, len(ys) - 1)
        if ys[i] > ys[i - 1] and ys[i] > ys[i + 1]
    ]
