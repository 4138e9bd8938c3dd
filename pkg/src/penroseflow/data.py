"""Rotationally reduced initial data sets on [0, s_max] x S^{d-1}.

Every data set exposes one uniform geometric API keyed on arclength s from
the inner boundary: the volume radius (radius of the round sphere with the
same orbit volume) with two derivatives, orbit area, mean curvature of the
level spheres, the full scalar curvature, the extrinsic-curvature scalars
entering the constraints, and the null expansions.  The scalar curvature is
assembled from the orbit's intrinsic curvature and the radial shape operator

    R(s) = R_orbit - sum_i mult_i lam_i^2 - H^2 - 2 H',

where lam_i are the logarithmic stretch rates of the metric coefficients and
H = sum mult_i lam_i, which reduces to the familiar closed forms in each
symmetry class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import orbits
from .errors import AsymptoticsError, DomainError
from .extrapolate import (
    NEG_INF,
    extrapolated_limit,
    fit_exponential_rate,
    fit_power_decay,
)
from .profiles import geometric_grid, zero_profile


@dataclass(frozen=True)
class Flat:
    """Asymptotically flat end with metric decay rate tau > (d-2)/2."""

    tau: float

    kind = "flat"


@dataclass(frozen=True)
class Hyperbolic:
    """Asymptotically hyperbolic end with exponential decay rate q > d/2."""

    q: float

    kind = "hyperbolic"


def _logderivs(profile, s):
    """(f'/f, (f'/f)') for a positive profile."""
    f = profile.value(s)
    f1 = profile.deriv(s)
    f2 = profile.deriv2(s)
    lam = f1 / f
    return lam, f2 / f - lam * lam


class InitialDataSet:
    """Common radial-geometry machinery; concrete classes fill in the orbit."""

    orbit_kind = "abstract"

    def __init__(self, n, asymptotic, s_max):
        self.n = int(n)
        self.asymptotic = asymptotic
        self.s_max = float(s_max)
        if isinstance(asymptotic, Flat) and not asymptotic.tau > (self.d - 2) / 2:
            raise DomainError(
                f"flat decay rate tau={asymptotic.tau} must exceed (d-2)/2={(self.d-2)/2}"
            )
        if isinstance(asymptotic, Hyperbolic) and not asymptotic.q > self.d / 2:
            raise DomainError(
                f"hyperbolic decay rate q={asymptotic.q} must exceed d/2={self.d/2}"
            )

    # -- orbit geometry -------------------------------------------------

    @property
    def d(self) -> int:
        raise NotImplementedError

    def vol_radius(self, s):
        raise NotImplementedError

    def vol_radius_d1(self, s):
        raise NotImplementedError

    def vol_radius_d2(self, s):
        raise NotImplementedError

    def orbit_at(self, s):
        raise NotImplementedError

    def defect(self, s):
        raise NotImplementedError

    def sigma_scalar_curvature(self, s):
        raise NotImplementedError

    def _shape(self, s):
        """(H, H', sum_i mult_i lam_i^2) of the level spheres."""
        raise NotImplementedError

    def area(self, s):
        dim = self.d - 1
        return orbits.unit_sphere_volume(dim) * self.vol_radius(s) ** dim

    def mean_curvature(self, s):
        return (self.d - 1) * self.vol_radius_d1(s) / self.vol_radius(s)

    def scalar_curvature(self, s):
        H, Hp, lam2 = self._shape(s)
        return self.sigma_scalar_curvature(s) - lam2 - H * H - 2.0 * Hp

    # -- extrinsic curvature (zero unless a subclass овerrides) ---------

    @property
    def time_symmetric(self) -> bool:
        return True

    def k_rad(self, s):
        return np.zeros_like(np.asarray(s, dtype=float))

    def tr_sigma_k(self, s):
        return np.zeros_like(np.asarray(s, dtype=float))

    def tr_k(self, s):
        return self.k_rad(s) + self.tr_sigma_k(s)

    def k_norm2(self, s):
        return np.zeros_like(np.asarray(s, dtype=float))

    def momentum_density_raw(self, s):
        """(div(k - (tr k) g))(normal), (...)(fiber); without the 8*pi."""
        z = np.zeros_like(np.asarray(s, dtype=float))
        return z, z

    def twist(self, s):
        return np.zeros_like(np.asarray(s, dtype=float))

    # -- derived fields --------------------------------------------------

    def theta(self, s):
        """Null expansions (theta_plus, theta_minus) of the level sphere."""
        H = self.mean_curvature(s)
        trs = self.tr_sigma_k(s)
        return H + trs, H - trs

    def energy_density(self, s):
        """mu from the Hamiltonian constraint (includes the 1/16pi)."""
        base = self.scalar_curvature(s) + self.tr_k(s) ** 2 - self.k_norm2(s)
        if isinstance(self.asymptotic, Hyperbolic):
            base = base + self.d * (self.d - 1)
        return base / (16.0 * math.pi)

    def momentum_density(self, s):
        """(J1, J2) frame components of the momentum density (с the 1/8pi)."""
        j1, j2 = self.momentum_density_raw(s)
        return j1 / (8.0 * math.pi), j2 / (8.0 * math.pi)

    # -- default evaluation grid ------------------------------------------

    @property
    def s_scale(self) -> float:
        return float(self.vol_radius(0.0))

    def default_grid(self, n_nodes=1200, include_zero=True):
        return geometric_grid(
            1e-3 * min(self.s_scale, self.s_max / 10.0),
            self.s_max,
            n_nodes,
            include_zero=include_zero,
        )


class BergerData(InitialDataSet):
    """Squashed-sphere invariant data in dimension d = 2(n+1).

    Profiles: ``rho`` (overall radius, equal to the volume radius), ``squash``
    (log of the fiber/base ratio to the power -1/(2n+1)), and the four
    extrinsic scalars ``k_rad`` (normal-normal), ``k_fib`` (fiber), ``k_base``
    (projective base), ``k_twist`` (normal-fiber cross term).
    """

    orbit_kind = "berger"

    def __init__(self, n, rho, squash=None, k_rad=None, k_fib=None, k_base=None,
                 k_twist=None, asymptotic=None):
        if n < 1:
            raise DomainError("berger data require n >= 1")
        s_max = rho.s_max
        z = zero_profile(s_max)
        self.rho = rho
        self.squash = squash if squash is not None else z
        self._k_rad = k_rad if k_rad is not None else z
        self._k_fib = k_fib if k_fib is not None else z
        self._k_base = k_base if k_base is not None else z
        self._k_twist = k_twist if k_twist is not None else z
        super().__init__(n, asymptotic or Flat(tau=2 * n), s_max)

    @property
    def d(self) -> int:
        return 2 * (self.n + 1)

    def vol_radius(self, s):
        return self.rho.value(s)

    def vol_radius_d1(self, s):
        return self.rho.deriv(s)

    def vol_radius_d2(self, s):
        return self.rho.deriv2(s)

    def orbit_at(self, s):
        return orbits.Berger(self.n, float(self.squash.value(s)))

    def defect(self, s):
        rt = np.exp(-2.0 * self.squash.value(s))
        return orbits.berger_defect_polynomial(self.n, rt)

    def sigma_scalar_curvature(self, s):
        n = self.n
        rho = self.rho.value(s)
        e2b = np.exp(-2.0 * self.squash.value(s))
        return -(2.0 * n / rho**2) * (e2b ** (2 * (n + 1)) - 2.0 * (n + 1) * e2b)

    def _shape(self, s):
        n = self.n
        lr, lrp = _logderivs(self.rho, s)
        b1 = self.squash.deriv(s)
        b2 = self.squash.deriv2(s)
        lam_f, lam_fp = lr - 2 * n * b1, lrp - 2 * n * b2
        lam_b, lam_bp = lr + b1, lrp + b2
        H = lam_f + 2 * n * lam_b
        Hp = lam_fp + 2 * n * lam_bp
        lam2 = lam_f**2 + 2 * n * lam_b**2
        return H, Hp, lam2

    @property
    def time_symmetric(self) -> bool:
        fields = (self._k_rad, self._k_fib, self._k_base, self._k_twist)
        probe = np.linspace(0.0, self.s_max, 17)
        return all(np.max(np.abs(f.value(probe))) < 1e-14 for f in fields)

    def k_rad(self, s):
        return self._k_rad.value(s)

    def tr_sigma_k(self, s):
        return self._k_fib.value(s) + 2 * self.n * self._k_base.value(s)

    def k_norm2(self, s):
        return (
            self._k_rad.value(s) ** 2
            + 2.0 * self._k_twist.value(s) ** 2
            + self._k_fib.value(s) ** 2
            + 2 * self.n * self._k_base.value(s) ** 2
        )

    def twist(self, s):
        return self._k_twist.value(s)

    def fiber_radius(self, s):
        """Metric radius of the Hopf circles."""
        return self.rho.value(s) * np.exp(-2 * self.n * self.squash.value(s))

    def momentum_density_raw(self, s):
        n = self.n
        lr = self.rho.deriv(s) / self.rho.value(s)
        b1 = self.squash.deriv(s)
        ka = self._k_rad.value(s)
        kb, kc = self._k_fib.value(s), self._k_base.value(s)
        j1 = (
            -(self._k_fib.deriv(s) + 2 * n * self._k_base.deriv(s))
            + (2 * n + 1) * lr * ka
            - lr * (kb + 2 * n * kc)
            + 2 * n * b1 * (kb - kc)
        )
        ks = self._k_twist.value(s)
        j2 = self._k_twist.deriv(s) + ks * ((2 * n + 2) * lr - 2 * n * b1)
        return j1, j2

    def replace_k(self, **kw):
        return BergerData(
            self.n, self.rho, self.squash,
            k_rad=kw.get("k_rad", self._k_rad),
            k_fib=kw.get("k_fib", self._k_fib),
            k_base=kw.get("k_base", self._k_base),
            k_twist=kw.get("k_twist", self._k_twist),
            asymptotic=self.asymptotic,
        )


class SU2Data(InitialDataSet):
    """Generic left-invariant data on [0, s_max] x S^3 with axis profiles
    c1, c2, c3; the extrinsic part carries the normal-normal scalar, a
    diagonal tangential part, and the normal/third-axis cross term."""

    orbit_kind = "su2"

    def __init__(self, c1, c2, c3, k_rad=None, k_diag=None, k_twist=None,
                 asymptotic=None):
        s_max = c1.s_max
        z = zero_profile(s_max)
        self.c = (c1, c2, c3)
        self._k_rad = k_rad if k_rad is not None else z
        self._k_diag = tuple(k_diag) if k_diag is not None else (z, z, z)
        self._k_twist = k_twist if k_twist is not None else z
        super().__init__(1, asymptotic or Flat(tau=2.0), s_max)

    @property
    def d(self) -> int:
        return 4

    def _cvals(self, s):
        return [c.value(s) for c in self.c]

    def vol_radius(self, s):
        c1, c2, c3 = self._cvals(s)
        return (c1 * c2 * c3) ** (1.0 / 3.0)

    def vol_radius_d1(self, s):
        lam = sum(c.deriv(s) / c.value(s) for c in self.c) / 3.0
        return self.vol_radius(s) * lam

    def vol_radius_d2(self, s):
        pieces = [_logderivs(c, s) for c in self.c]
        lam = sum(p[0] for p in pieces) / 3.0
        lamp = sum(p[1] for p in pieces) / 3.0
        return self.vol_radius(s) * (lam * lam + lamp)

    def orbit_at(self, s):
        c1, c2, c3 = (float(c.value(s)) for c in self.c)
        return orbits.SU2(c1, c2, c3)

    def defect(self, s):
        c1, c2, c3 = self._cvals(s)
        prod = c1 * c2 * c3
        sq = [c * c for c in (c1, c2, c3)]
        pairs = sq[0] * sq[1] + sq[1] * sq[2] + sq[2] * sq[0]
        rsu = 2.0 * (2.0 * pairs - (sq[0] ** 2 + sq[1] ** 2 + sq[2] ** 2)) / prod**2
        return 3.0 - prod ** (2.0 / 3.0) * rsu / 2.0

    def sigma_scalar_curvature(self, s):
        c1, c2, c3 = self._cvals(s)
        sq = [c * c for c in (c1, c2, c3)]
        pairs = sq[0] * sq[1] + sq[1] * sq[2] + sq[2] * sq[0]
        return 2.0 * (2.0 * pairs - (sq[0] ** 2 + sq[1] ** 2 + sq[2] ** 2)) / (c1 * c2 * c3) ** 2

    def _shape(self, s):
        pieces = [_logderivs(c, s) for c in self.c]
        H = sum(p[0] for p in pieces)
        Hp = sum(p[1] for p in pieces)
        lam2 = sum(p[0] ** 2 for p in pieces)
        return H, Hp, lam2

    @property
    def time_symmetric(self) -> bool:
        fields = (self._k_rad, *self._k_diag, self._k_twist)
        probe = np.linspace(0.0, self.s_max, 17)
        return all(np.max(np.abs(f.value(probe))) < 1e-14 for f in fields)

    def k_rad(self, s):
        return self._k_rad.value(s)

    def tr_sigma_k(self, s):
        return sum(k.value(s) for k in self._k_diag)

    def k_norm2(self, s):
        return (
            self._k_rad.value(s) ** 2
            + 2.0 * self._k_twist.value(s) ** 2
            + sum(k.value(s) ** 2 for k in self._k_diag)
        )

    def twist(self, s):
        return self._k_twist.value(s)

    def fiber_radius(self, s):
        return self.c[2].value(s)

    def momentum_density_raw(self, s):
        lams = [c.deriv(s) / c.value(s) for c in self.c]
        ka = self._k_rad.value(s)
        kd = [k.value(s) for k in self._k_diag]
        j1 = -sum(k.deriv(s) for k in self._k_diag) + sum(
            lam * (ka - kv) for lam, kv in zip(lams, kd)
        )
        H = sum(lams)
        ks = self._k_twist.value(s)
        j2 = self._k_twist.deriv(s) + ks * (H + lams[2])
        return j1, j2


class SpData(InitialDataSet):
    """Time-symmetric quaternionic-invariant data in dimension d = 4(n+1):
    radius profile rho and fiber weights c1, c2, c3."""

    orbit_kind = "sp"

    def __init__(self, n, rho, c1, c2, c3, asymptotic=None):
        if n < 0:
            raise DomainError("quaternionic data require n >= 0")
        self.rho = rho
        self.c = (c1, c2, c3)
        self._n_sp = int(n)
        super().__init__(n, asymptotic or Flat(tau=float(4 * n + 3)), rho.s_max)

    @property
    def d(self) -> int:
        return 4 * (self._n_sp + 1)

    def vol_radius(self, s):
        c1, c2, c3 = (c.value(s) for c in self.c)
        dim = self.d - 1
        return self.rho.value(s) * (c1 * c2 * c3) ** (1.0 / (2.0 * dim))

    def vol_radius_d1(self, s):
        dim = self.d - 1
        lam = self.rho.deriv(s) / self.rho.value(s) + sum(
            c.deriv(s) / c.value(s) for c in self.c
        ) / (2.0 * dim)
        return self.vol_radius(s) * lam

    def vol_radius_d2(self, s):
        dim = self.d - 1
        lr, lrp = _logderivs(self.rho, s)
        pieces = [_logderivs(c, s) for c in self.c]
        lam = lr + sum(p[0] for p in pieces) / (2.0 * dim)
        lamp = lrp + sum(p[1] for p in pieces) / (2.0 * dim)
        return self.vol_radius(s) * (lam * lam + lamp)

    def orbit_at(self, s):
        c1, c2, c3 = (float(c.value(s)) for c in self.c)
        return orbits.SpTriple(self._n_sp, c1, c2, c3)

    def defect(self, s):
        s = np.asarray(s, dtype=float)
        flat = np.atleast_1d(s)
        out = np.array([orbits.hawking_defect(self.orbit_at(x)) for x in flat])
        return out.reshape(s.shape) if s.shape else float(out[0])

    def sigma_scalar_curvature(self, s):
        n = self._n_sp
        c1, c2, c3 = (c.value(s) for c in self.c)
        quad = (
            c1**2 + c2**2 + c3**2
            - (c2 - c3) ** 2 - (c3 - c1) ** 2 - (c1 - c2) ** 2
        )
        rc = 2.0 * quad / (c1 * c2 * c3) - 4.0 * n * (c1 + c2 + c3) + 16.0 * n**2 + 32.0 * n
        return rc / self.rho.value(s) ** 2

    def _shape(self, s):
        n = self._n_sp
        lr, lrp = _logderivs(self.rho, s)
        pieces = [_logderivs(c, s) for c in self.c]
        lam_f = [lr + p[0] / 2.0 for p in pieces]
        lam_fp = [lrp + p[1] / 2.0 for p in pieces]
        H = sum(lam_f) + 4 * n * lr
        Hp = sum(lam_fp) + 4 * n * lrp
        lam2 = sum(x * x for x in lam_f) + 4 * n * lr**2
        return H, Hp, lam2


class Spin9Data(InitialDataSet):
    """Time-symmetric octonionic-invariant data on [0, s_max] x S^15."""

    orbit_kind = "spin9"

    def __init__(self, rho, c, asymptotic=None):
        self.rho = rho
        self.cprof = c
        super().__init__(1, asymptotic or Flat(tau=8.0), rho.s_max)

    @property
    def d(self) -> int:
        return 16

    def vol_radius(self, s):
        return self.rho.value(s) * self.cprof.value(s) ** (7.0 / 30.0)

    def vol_radius_d1(self, s):
        lam = self.rho.deriv(s) / self.rho.value(s) + (7.0 / 30.0) * self.cprof.deriv(
            s
        ) / self.cprof.value(s)
        return self.vol_radius(s) * lam

    def vol_radius_d2(self, s):
        lr, lrp = _logderivs(self.rho, s)
        lc, lcp = _logderivs(self.cprof, s)
        lam = lr + (7.0 / 30.0) * lc
        lamp = lrp + (7.0 / 30.0) * lcp
        return self.vol_radius(s) * (lam * lam + lamp)

    def orbit_at(self, s):
        return orbits.Spin9(float(self.cprof.value(s)))

    def defect(self, s):
        c = self.cprof.value(s)
        rc = 42.0 / c - 56.0 * c + 224.0
        return 210.0 - c ** (7.0 / 15.0) * rc

    def sigma_scalar_curvature(self, s):
        c = self.cprof.value(s)
        return (42.0 / c - 56.0 * c + 224.0) / self.rho.value(s) ** 2

    def _shape(self, s):
        lr, lrp = _logderivs(self.rho, s)
        lc, lcp = _logderivs(self.cprof, s)
        lam_f, lam_fp = lr + lc / 2.0, lrp + lcp / 2.0
        H = 7 * lam_f + 8 * lr
        Hp = 7 * lam_fp + 8 * lrp
        lam2 = 7 * lam_f**2 + 8 * lr**2
        return H, Hp, lam2


# -- operations on data sets -------------------------------------------------


def null_expansions(data: InitialDataSet, s):
    """(theta_plus, theta_minus) at arclength s; errors outside [0, s_max]."""
    return data.theta(s)


def energy_momentum_density(data: InitialDataSet, s):
    """(mu, J1, J2) at arclength s."""
    mu = data.energy_density(s)
    j1, j2 = data.momentum_density(s)
    return mu, j1, j2


def dec_margin(data: InitialDataSet, grid=None) -> float:
    """min over the grid of mu - |J|; >= -1e-7 signals the dominant energy
    condition holds numerically."""
    s = data.default_grid()[1:] if grid is None else np.asarray(grid, dtype=float)
    mu = data.energy_density(s)
    j1, j2 = data.momentum_density(s)
    return float(np.min(mu - np.hypot(j1, j2)))


def hawking_radial(data: InitialDataSet, s):
    """Hawking mass of the level sphere evaluated from the radial profile."""
    rv = data.vol_radius(s)
    rv1 = data.vol_radius_d1(s)
    val = 1.0 - rv1**2
    if isinstance(data.asymptotic, Hyperbolic):
        val = val + rv**2
    return 0.5 * rv ** (data.d - 2) * val


def s_at_radius(data: InitialDataSet, target: float) -> float:
    """Arclength where the volume radius reaches ``target`` (monotone tail)."""
    from scipy.optimize import brentq

    if target >= data.vol_radius(data.s_max):
        return data.s_max
    if target <= data.vol_radius(0.0):
        return 0.0
    return brentq(
        lambda s: data.vol_radius(s) - target, 0.0, data.s_max, xtol=1e-12 * data.s_max
    )


def _tail_points(data: InitialDataSet, n_points: int, scale: float):
    """Tail abscissas for mass extrapolation, capped where the mass aspect is
    still well-conditioned: evaluating 1 - (drho/ds)^2 loses the digits hidden
    under rho^{d-2}, so the outermost usable radius keeps that loss below 1e-9
    of the limit value."""
    d = data.d
    hyperbolic = isinstance(data.asymptotic, Hyperbolic)
    power = d if hyperbolic else d - 2
    rho_cap = (2.0e7 * max(1.0, scale)) ** (1.0 / power)
    rho_hi = min(float(data.vol_radius(data.s_max)), rho_cap)
    rho_lo_floor = 3.0 * data.s_scale
    ratio = 0.55 if hyperbolic else 0.62
    if rho_hi <= rho_lo_floor:
        raise AsymptoticsError("domain too short for a tail fit")
    ratio = max(ratio, (rho_lo_floor / rho_hi) ** (1.0 / (n_points - 1)))
    targets = rho_hi * ratio ** np.arange(n_points)
    return np.array([s_at_radius(data, t) for t in targets])


def adm_energy(data: InitialDataSet, n_points=5, rel_spread_tol=1e-3) -> float:
    """Total energy as the extrapolated tail limit of the radial Hawking mass.

    Flat data extrapolate in 1/rho, hyperbolic data in 1/rho^2 (the natural
    correction variable for exponential ends).
    """
    scale = abs(float(hawking_radial(data, 0.7 * data.s_max))) + abs(
        float(hawking_radial(data, data.s_max))
    )
    pts = _tail_points(data, n_points, scale)
    if isinstance(data.asymptotic, Flat):
        xs = 1.0 / data.vol_radius(pts)
    else:
        xs = 1.0 / data.vol_radius(pts) ** 2
    samples = {float(x): float(hawking_radial(data, s)) for x, s in zip(xs, pts)}
    value, _ = extrapolated_limit(
        lambda x: samples[float(x)], xs, rel_spread_tol, what="total energy"
    )
    return value


def horizon_area(data: InitialDataSet) -> float:
    return float(data.area(0.0))


def momentum_decay_exponents(data: InitialDataSet, n_points=160):
    """Fitted tail decay exponents (p_a, p_s) of the normal-normal and twist
    components over [s_max/2, s_max]; identically-zero profiles report -inf."""
    if not isinstance(data.asymptotic, Flat):
        raise DomainError("momentum decay exponents are defined for flat data")
    s = np.geomspace(0.5 * data.s_max, data.s_max, n_points)
    p_a = fit_power_decay(s, data.k_rad(s))
    p_s = fit_power_decay(s, data.twist(s))
    return p_a, p_s


def vanishing_momentum(data: InitialDataSet, slack=0.3) -> bool:
    """Vanishing-linear-momentum verdict from the fitted decay exponents."""
    tau = data.asymptotic.tau
    p_a, p_s = momentum_decay_exponents(data)
    bar = -(2.0 * tau + 2.0) + slack
    return p_a <= bar and p_s <= bar


def angular_momentum(data: InitialDataSet, n_points=4, rel_spread_tol=1e-3) -> float:
    """Total angular momentum about the fiber direction, from the tail limit
    of the twist flux through level spheres."""
    if not hasattr(data, "fiber_radius"):
        raise DomainError("angular momentum requires a fibered (berger/su2) orbit")
    n = data.n

    def flux(s):
        return (
            data.twist(s)
            * data.fiber_radius(s)
            * data.vol_radius(s) ** (2 * n + 1)
            / (2.0 * (n + 1))
        )

    rho_hi = float(data.vol_radius(data.s_max))
    targets = rho_hi * 0.6 ** np.arange(n_points)
    pts = np.array([s_at_radius(data, t) for t in targets])
    xs = 1.0 / data.vol_radius(pts) ** 2
    samples = {float(x): float(flux(s)) for x, s in zip(xs, pts)}
    value, _ = extrapolated_limit(
        lambda x: samples[float(x)], xs, rel_spread_tol, what="angular momentum"
    )
    return value


@dataclass
class BoundaryType:
    h0: float
    theta_plus0: float
    theta_minus0: float
    outermost: bool
    future_horizon: bool
    past_horizon: bool


def classify_boundary(data: InitialDataSet, tol=1e-7) -> BoundaryType:
    """Boundary horizon type plus the outermost check theta_{+-} > 0 outside."""
    h0 = float(data.mean_curvature(0.0))
    tp0, tm0 = (float(x) for x in data.theta(0.0))
    grid = data.default_grid()[1:]
    tp, tm = data.theta(grid)
    scale = max(1.0, 1.0 / data.s_scale)
    outermost = bool(np.min(tp) > -tol * scale and np.min(tm) > -tol * scale)
    return BoundaryType(
        h0=h0,
        theta_plus0=tp0,
        theta_minus0=tm0,
        outermost=outermost,
        future_horizon=abs(tp0) <= tol * scale,
        past_horizon=abs(tm0) <= tol * scale,
    )
