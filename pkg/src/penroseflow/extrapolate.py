"""Tail extrapolation and decay fitting.

Asymptotic limits (total energy, angular momentum, flow mass) are computed
from samples at a handful of tail radii by polynomial extrapolation to the
point at infinity, with the spread across extrapolation orders serving as
the convergence diagnostic.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import AsymptoticsError

NEG_INF = float("-inf")
POS_INF = float("inf")


def neville_to_zero(xs, ys):
    """Neville tableau evaluated at x=0.

    Returns (limit, spread) where ``limit`` is the highest-order extrapolant
    and ``spread`` the absolute difference between the two highest orders of
    the tableau diagonal.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.size != ys.size or xs.size == 0:
        raise ValueError("need equally many sample points and values")
    col = ys.astype(float).copy()
    diagonal = [float(col[0])]
    for m in range(1, xs.size):
        nxt = np.empty(xs.size - m)
        for i in range(xs.size - m):
            dx = xs[i] - xs[i + m]
            nxt[i] = (xs[i] * col[i + 1] - xs[i + m] * col[i]) / dx
        col = nxt
        diagonal.append(float(col[0]))
    if len(diagonal) == 1:
        return diagonal[0], 0.0
    return diagonal[-1], abs(diagonal[-1] - diagonal[-2])


def extrapolated_limit(sample, xs, rel_spread_tol=1e-3, what="limit"):
    """Extrapolate ``sample(x)`` to x=0 from tail abscissas ``xs``.

    ``xs`` are small positive numbers (a decaying function of the radius).
    Raises AsymptoticsError when the extrapolation orders disagree by more
    than ``rel_spread_tol`` relative to the limit scale.
    """
    xs = np.asarray(sorted(xs, reverse=True), dtype=float)
    ys = np.array([sample(x) for x in xs], dtype=float)
    value, spread = neville_to_zero(xs, ys)
    scale = max(1.0, abs(value))
    if not np.isfinite(value) or spread > rel_spread_tol * scale:
        raise AsymptoticsError(
            f"non-convergent tail extrapolation for {what}: "
            f"value={value!r} spread={spread:.3e}"
        )
    return value, spread


def richardson_sequence(values, ratio):
    """Classic Richardson for values at steps h, h/ratio, h/ratio^2, ...

    The error order is estimated from the sample differences, so the caller
    does not need to know it a priori.  Returns (limit, last_jump).
    """
    vals = [float(v) for v in values]
    if len(vals) < 2:
        return vals[0], 0.0
    d1 = abs(vals[-2] - vals[-3]) if len(vals) >= 3 else abs(vals[-1] - vals[-2])
    d2 = abs(vals[-1] - vals[-2])
    if d2 < 1e-15:
        return vals[-1], d2
    if len(vals) >= 3 and d1 > 0:
        order = math.log(d1 / d2) / math.log(ratio) if d1 / d2 > 1 else 1.0
    else:
        order = 1.0
    factor = ratio ** order
    limit = vals[-1] + (vals[-1] - vals[-2]) / (factor - 1.0)
    prev = vals[-2] + (vals[-2] - vals[-3]) / (factor - 1.0) if len(vals) >= 3 else vals[-1]
    return limit, abs(limit - prev)


def fit_power_decay(s, y, floor=1e-300):
    """Least-squares exponent p of |y| ~ C s^p over the given window.

    An identically (numerically) vanishing profile yields -inf: the quantity
    decays faster than any power that matters.
    """
    s = np.asarray(s, dtype=float)
    y = np.abs(np.asarray(y, dtype=float))
    scale = y.max(initial=0.0)
    if scale <= 1e-13:
        return NEG_INF
    keep = y > max(floor, 1e-8 * scale)
    if keep.sum() < 3:
        return NEG_INF
    slope, _ = np.polyfit(np.log(s[keep]), np.log(y[keep]), 1)
    return float(slope)


def fit_exponential_rate(s, y):
    """Least-squares rate q of |y| ~ C e^{-q s}; +inf for a vanishing profile."""
    s = np.asarray(s, dtype=float)
    y = np.abs(np.asarray(y, dtype=float))
    scale = y.max(initial=0.0)
    if scale <= 1e-13:
        return POS_INF
    keep = y > 1e-8 * scale
    if keep.sum() < 3:
        return POS_INF
    slope, _ = np.polyfit(s[keep], np.log(y[keep]), 1)
    return float(-slope)
