"""Radial scalar fields on [0, s_max] with two derivatives.

Closed-form profiles wrap analytic callables; sampled profiles interpolate a
strictly increasing grid with monotone-safe cubic Hermite pieces, so that
interpolated slopes never oscillate between nodes.
"""

from __future__ import annotations

from typing import Callable, Optional

import numpy as np
from scipy.interpolate import CubicHermiteSpline, PchipInterpolator

from .errors import DomainError

MIN_SAMPLED_NODES = 256


class ClosedFormProfile:
    """Profile defined by analytic value/derivative callables."""

    kind = "closed-form"

    def __init__(self, fun: Callable, d1: Callable, d2: Callable, s_max: float):
        if not (s_max > 0):
            raise DomainError("profile domain endpoint must be positive")
        self._fun, self._d1, self._d2 = fun, d1, d2
        self.s_max = float(s_max)

    def _check(self, s):
        s = np.asarray(s, dtype=float)
        if np.any(s < -1e-12) or np.any(s > self.s_max * (1 + 1e-12)):
            raise DomainError(f"radial coordinate outside [0, {self.s_max}]")
        return np.clip(s, 0.0, self.s_max)

    def value(self, s):
        return self._fun(self._check(s))

    def deriv(self, s):
        return self._d1(self._check(s))

    def deriv2(self, s):
        return self._d2(self._check(s))


class SampledProfile:
    """Profile from strictly increasing samples, optionally with stored
    derivative data.

    With stored first derivatives the value interpolant is the cubic Hermite
    matching them exactly; without, a monotone cubic (PCHIP) is fitted.  The
    second derivative comes from stored data when available and from the
    slope interpolant otherwise.
    """

    kind = "sampled"

    def __init__(self, s, values, deriv=None, deriv2=None, min_nodes=MIN_SAMPLED_NODES):
        s = np.asarray(s, dtype=float)
        values = np.asarray(values, dtype=float)
        if s.ndim != 1 or s.size < min_nodes:
            raise DomainError(f"sampled profiles need >= {min_nodes} nodes")
        if np.any(np.diff(s) <= 0):
            raise DomainError("sample grid must be strictly increasing")
        if s[0] < 0:
            raise DomainError("sample grid must start at s >= 0")
        self.nodes = s
        self.node_values = values
        self.s_max = float(s[-1])
        if deriv is not None:
            deriv = np.asarray(deriv, dtype=float)
            self._val = CubicHermiteSpline(s, values, deriv)
            if deriv2 is not None:
                deriv2 = np.asarray(deriv2, dtype=float)
                self._d1 = CubicHermiteSpline(s, deriv, deriv2)
                self._d2 = PchipInterpolator(s, deriv2)
            else:
                self._d1 = PchipInterpolator(s, deriv)
                self._d2 = self._d1.derivative()
        else:
            self._val = PchipInterpolator(s, values)
            self._d1 = self._val.derivative()
            self._d2 = self._val.derivative(2)
        self.node_deriv = deriv
        self.node_deriv2 = deriv2

    def _check(self, s):
        s = np.asarray(s, dtype=float)
        if np.any(s < -1e-12) or np.any(s > self.s_max * (1 + 1e-12)):
            raise DomainError(f"radial coordinate outside [0, {self.s_max}]")
        return np.clip(s, self.nodes[0], self.s_max)

    def value(self, s):
        return self._val(self._check(s))

    def deriv(self, s):
        return self._d1(self._check(s))

    def deriv2(self, s):
        return self._d2(self._check(s))

    def derivative_consistency(self) -> float:
        """Worst relative mismatch between stored slopes and centered finite
        differences of the stored values at interior nodes."""
        if self.node_deriv is None:
            return 0.0
        s, f, d = self.nodes, self.node_values, self.node_deriv
        hl = s[1:-1] - s[:-2]
        hr = s[2:] - s[1:-1]
        # three-point nonuniform centered difference, exact on quadratics
        fd = (
            -hr / (hl * (hl + hr)) * f[:-2]
            + (hr - hl) / (hl * hr) * f[1:-1]
            + hl / (hr * (hl + hr)) * f[2:]
        )
        scale = np.maximum(np.abs(d[1:-1]), np.max(np.abs(d)) * 1e-3 + 1e-30)
        return float(np.max(np.abs(fd - d[1:-1]) / scale))


def zero_profile(s_max: float) -> ClosedFormProfile:
    z = lambda s: np.zeros_like(np.asarray(s, dtype=float))
    return ClosedFormProfile(z, z, z, s_max)


def constant_profile(value: float, s_max: float) -> ClosedFormProfile:
    z = lambda s: np.zeros_like(np.asarray(s, dtype=float))
    f = lambda s: np.full_like(np.asarray(s, dtype=float), value)
    return ClosedFormProfile(f, z, z, s_max)


def callable_profile(fun, d1=None, d2=None, s_max: float = 1.0, h: Optional[float] = None):
    """Closed-form profile; missing derivatives are filled by high-order
    central differences (for synthetic test data, not production paths)."""
    if d1 is None or d2 is None:
        step = h if h is not None else 1e-5 * max(1.0, s_max) ** 0.5

        def _d1(s, fun=fun, step=step):
            s = np.asarray(s, dtype=float)
            hh = np.minimum(step, np.maximum(s / 2, step * 1e-3))
            return (fun(s + hh) - fun(np.maximum(s - hh, 0.0))) / (hh + np.minimum(hh, s))

        def _d2(s, fun=fun, step=step):
            s = np.asarray(s, dtype=float)
            hh = np.minimum(step, np.maximum(s / 2, step * 1e-3))
            lo = np.maximum(s - hh, 0.0)
            return (fun(s + hh) - 2 * fun(s) + fun(lo)) / (hh * hh)

        d1 = d1 or _d1
        d2 = d2 or _d2
    return ClosedFormProfile(fun, d1, d2, s_max)


def geometric_grid(s_min: float, s_max: float, n: int, include_zero: bool = True):
    """Log-spaced radial grid, optionally anchored at the boundary s=0."""
    if not (0 < s_min < s_max):
        raise DomainError("need 0 < s_min < s_max")
    g = np.geomspace(s_min, s_max, n)
    if include_zero:
        g = np.concatenate(([0.0], g))
    return g
