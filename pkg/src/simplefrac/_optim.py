"""Deterministic grid-scan + golden-section refinement on [-1, 1].

Shared by the sup-norm engines, the alternance detectors, and the minimax
solver.  Everything works on a fixed caller-supplied grid with ascending
refinement order, so results are reproducible bit for bit.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .errors import ToleranceNotMetError

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_INVPHI2 = (3.0 - math.sqrt(5.0)) / 2.0


def golden_max(fn: Callable[[float], float], lo: float, hi: float,
               xtol: float, maxiter: int = 500) -> tuple[float, float]:
    """Golden-section maximization of a scalar function on [lo, hi].

    Returns (x, fn(x)).  Raises ToleranceNotMetError (carrying the best pair
    seen) if the bracket fails to shrink below xtol within maxiter steps.
    """
    a, b = float(lo), float(hi)
    h = b - a
    if h <= xtol:
        x = 0.5 * (a + b)
        return x, fn(x)
    c = a + _INVPHI2 * h
    d = a + _INVPHI * h
    fc, fd = fn(c), fn(d)
    for _ in range(maxiter):
        if fc > fd:
            b, d, fd = d, c, fc
            h = b - a
            c = a + _INVPHI2 * h
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INVPHI * h
            fd = fn(d)
        if h <= xtol:
            return (c, fc) if fc > fd else (d, fd)
    best = (c, fc) if fc > fd else (d, fd)
    raise ToleranceNotMetError(
        f"golden-section bracket stuck at width {h:.3e} > xtol {xtol:.3e}", best=best
    )


def supremum_on_grid(fn: Callable, grid: np.ndarray, xtol: float,
                     maxiter: int = 500) -> tuple[float, float]:
    """Maximize fn over the interval spanned by ``grid``.

    fn must accept both an ndarray and a float scalar.  Every strict or flat
    local maximum of the grid values is refined by golden section in its
    neighbor bracket; grid values themselves (including the exact endpoints)
    also compete.  Returns (value, location); ties resolve to the leftmost.
    """
    ys = np.asarray(fn(grid), dtype=float)
    m = len(grid)
    best_val, best_x = -math.inf, grid[0]

    def consider(x: float, v: float):
        nonlocal best_val, best_x
        if v > best_val:
            best_val, best_x = v, x

    for i in range(m):
        left_ok = i == 0 or ys[i] >= ys[i - 1]
        right_ok = i == m - 1 or ys[i] >= ys[i + 1]
        consider(float(grid[i]), float(ys[i]))
        if left_ok and right_ok:
            lo = grid[max(i - 1, 0)]
            hi = grid[min(i + 1, m - 1)]
            x, v = golden_max(fn, lo, hi, xtol, maxiter)
            consider(float(x), float(v))
    return best_val, best_x


def local_extrema(fn: Callable, grid: np.ndarray, xtol: float,
                  maxiter: int = 500) -> list[tuple[float, float]]:
    """Refined local extrema (maxima and minima) of a signed function.

    Returns (x, fn(x)) pairs sorted by x, endpoints included, with refined
    points closer than 10*xtol merged (larger magnitude wins).
    """
    ys = np.asarray(fn(grid), dtype=float)
    m = len(grid)
    found: list[tuple[float, float]] = []
    for i in range(m):
        left = ys[i] - (ys[i - 1] if i > 0 else ys[i])
        right = (ys[i + 1] if i < m - 1 else ys[i]) - ys[i]
        is_max = left >= 0.0 and right <= 0.0
        is_min = left <= 0.0 and right >= 0.0
        if not (is_max or is_min):
            continue
        lo = grid[max(i - 1, 0)]
        hi = grid[min(i + 1, m - 1)]
        if is_max:
            x, v = golden_max(fn, lo, hi, xtol, maxiter)
        else:
            x, v = golden_max(lambda t: -fn(t), lo, hi, xtol, maxiter)
            v = -v
        # an exact grid endpoint may beat the interior refinement
        gi = float(grid[i])
        gv = float(ys[i])
        if (abs(gv) > abs(v)) if is_max == is_min else (gv > v if is_max else gv < v):
            x, v = gi, gv
        found.append((float(x), float(v)))

    found.sort(key=lambda p: p[0])
    merged: list[tuple[float, float]] = []
    for x, v in found:
        if merged and abs(x - merged[-1][0]) <= 10.0 * xtol:
            if abs(v) > abs(merged[-1][1]):
                merged[-1] = (x, v)
        else:
            merged.append((x, v))
    return merged
