"""Inverse-mean-curvature flow bookkeeping on radial manifolds.

In the reduced setting the flow leaves are the level spheres themselves, so
the flow is a change of clock, t = (d-1) log(rv / rv(0)), under which areas
grow exactly exponentially.  The quasi-local (Hawking) mass along the leaves,

    m_H = 1/2 rv^{d-2} (1 - (drv/ds)^2)            (flat)
    m_H = 1/2 rv^{d-2} (1 + rv^2 - (drv/ds)^2)     (hyperbolic)

starts at the horizon bound and converges to the total energy; the defect
column records the orbit's scalar-curvature deficit driving monotonicity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .data import Hyperbolic, InitialDataSet, hawking_radial
from .errors import AsymptoticsError, FlowError, PreconditionError
from .extrapolate import neville_to_zero
from .orbits import unit_sphere_volume

_GL_X, _GL_W = np.polynomial.legendre.leggauss(8)


@dataclass
class FlowGeometry:
    """Minimal radial-manifold interface consumed by the flow sweep.

    ``rv``/``drv`` give the volume radius and its derivative with respect to
    the base coordinate; ``weight`` is d(arclength)/d(base coordinate), so a
    plain data set has weight 1 while a conformally flowed manifold carries
    the conformal stretch.
    """

    d: int
    hyperbolic: bool
    s_start: float
    s_max: float
    s_scale: float
    rv: Callable
    drv: Callable
    weight: Callable
    defect: Callable

    @classmethod
    def from_data(cls, data: InitialDataSet) -> "FlowGeometry":
        one = lambda s: np.ones_like(np.asarray(s, dtype=float))
        return cls(
            d=data.d,
            hyperbolic=isinstance(data.asymptotic, Hyperbolic),
            s_start=0.0,
            s_max=data.s_max,
            s_scale=data.s_scale,
            rv=data.vol_radius,
            drv=data.vol_radius_d1,
            weight=one,
            defect=data.defect,
        )


@dataclass
class FlowTrace:
    d: int
    hyperbolic: bool
    s: np.ndarray
    sbar: np.ndarray
    t: np.ndarray
    area: np.ndarray
    mean_curv: np.ndarray
    hawking: np.ndarray
    defect: np.ndarray
    rv: np.ndarray
    area_law_error: float
    min_increment: float
    energy_estimate: float = math.nan

    def horizon_mass(self) -> float:
        return float(self.hawking[0])

    def rigidity_gap(self) -> float:
        """max over the flow of the normalized defect times the area power
        entering the monotonicity integrand; zero iff every leaf is round."""
        p = (self.d - 3) / (self.d - 1)
        return float(np.max(self.defect / (self.d - 1) ** 2 * self.area**p))


def hawking_mass(data: InitialDataSet, s, mode: Optional[str] = None):
    """Hawking mass of the level sphere at arclength s.

    ``mode`` overrides the data's asymptotic class ("flat" | "hyperbolic").
    """
    if mode is None:
        return hawking_radial(data, s)
    rv = data.vol_radius(s)
    rv1 = data.vol_radius_d1(s)
    val = 1.0 - rv1**2
    if mode == "hyperbolic":
        val = val + rv**2
    elif mode != "flat":
        raise ValueError(f"unknown mode {mode!r}")
    return 0.5 * rv ** (data.d - 2) * val


def hawking_mass_from_area(d: int, area: float, H: float, hyperbolic: bool = False) -> float:
    """Hawking mass from the leaf area and (constant) mean curvature."""
    omega = unit_sphere_volume(d - 1)
    rv = (area / omega) ** (1.0 / (d - 1))
    val = 1.0 - (H * rv / (d - 1)) ** 2
    if hyperbolic:
        val = val + rv * rv
    return 0.5 * rv ** (d - 2) * val


def monotonicity_defect(data: InitialDataSet, s):
    """Normalized scalar-curvature deficit of the leaf; nonnegative exactly
    when the mass cannot decrease through the leaf geometry."""
    return data.defect(s) / (data.d - 1) ** 2


def flow_trace(source, n_nodes: int = 1600) -> FlowTrace:
    """Sweep the radial flow, recording area, mean curvature, Hawking mass,
    and defect, and validating the exponential area law by quadrature."""
    geom = FlowGeometry.from_data(source) if isinstance(source, InitialDataSet) else source
    if isinstance(source, InitialDataSet) and not source.time_symmetric:
        raise PreconditionError("flow traces need time-symmetric data")
    d = geom.d
    omega = unit_sphere_volume(d - 1)
    span = geom.s_max - geom.s_start
    grid = geom.s_start + np.concatenate(
        ([0.0], np.geomspace(1e-4 * min(geom.s_scale, span), span, n_nodes))
    )
    rv = geom.rv(grid)
    drv = geom.drv(grid)
    w = geom.weight(grid)
    drv_dsbar = drv / w
    H = (d - 1) * drv_dsbar / rv
    if np.any(H[1:] <= 0.0):
        raise FlowError("mean curvature is not positive away from the horizon")
    area = omega * rv ** (d - 1)
    t = (d - 1) * np.log(rv / rv[0])
    val = 1.0 - drv_dsbar**2
    if geom.hyperbolic:
        val = val + rv**2
    m_h = 0.5 * rv ** (d - 2) * val
    defect = np.asarray(geom.defect(grid), dtype=float)

    # arclength in the flow manifold and the area-law residual
    mid = 0.5 * (grid[:-1] + grid[1:])
    half = 0.5 * np.diff(grid)
    pts = mid[:, None] + half[:, None] * _GL_X[None, :]
    flat = pts.ravel()
    w_pts = geom.weight(flat).reshape(pts.shape)
    sbar = np.concatenate(([0.0], np.cumsum(half * (w_pts @ _GL_W))))
    # d(log area)/ds_base = H * weight = (d-1) drv/rv, so the area-law
    # quadrature needs only the base-coordinate radius profile
    h_pts = (d - 1) * (geom.drv(flat) / geom.rv(flat)).reshape(pts.shape)
    t_quad = np.concatenate(([0.0], np.cumsum(half * (h_pts @ _GL_W))))
    area_law_error = float(np.max(np.abs(t_quad - t) / np.maximum(1.0, np.abs(t))))

    return FlowTrace(
        d=d,
        hyperbolic=geom.hyperbolic,
        s=grid,
        sbar=sbar,
        t=t,
        area=area,
        mean_curv=H,
        hawking=m_h,
        defect=defect,
        rv=rv,
        area_law_error=area_law_error,
        min_increment=float(np.min(np.diff(m_h))),
    )


def energy_limit(trace: FlowTrace, n_points: int = 5, rel_spread_tol: float = 1e-3) -> float:
    """Extrapolated limit of the Hawking mass along the trace.

    Sample radii are capped where 1 - (drv/ds)^2 still carries enough digits
    under the rv^{d-2} amplification; beyond that the column is pure roundoff.
    """
    scale = max(1.0, abs(float(trace.hawking[-1])), abs(float(trace.hawking[len(trace.s) // 2])))
    power = trace.d if trace.hyperbolic else trace.d - 2
    rv_cap = (2.0e7 * scale) ** (1.0 / power)
    rv_hi = min(float(trace.rv[-1]), rv_cap)
    rv_lo = 3.0 * float(trace.rv[0])
    if rv_hi <= rv_lo:
        raise AsymptoticsError("trace too short to reach the asymptotic regime")
    ratio = 0.55 if trace.hyperbolic else 0.62
    ratio = max(ratio, (rv_lo / rv_hi) ** (1.0 / (n_points - 1)))
    xs, ys = [], []
    for target in rv_hi * ratio ** np.arange(n_points):
        i = int(np.searchsorted(trace.rv, target))
        i = min(max(i, 0), len(trace.rv) - 1)
        xs.append(1.0 / trace.rv[i] ** (2 if trace.hyperbolic else 1))
        ys.append(trace.hawking[i])
    value, spread = neville_to_zero(np.array(xs), np.array(ys))
    if not np.isfinite(value) or spread > rel_spread_tol * max(1.0, abs(value)):
        raise AsymptoticsError(
            f"non-convergent Hawking-mass limit: value={value!r} spread={spread:.2e}"
        )
    trace.energy_estimate = float(value)
    return float(value)
