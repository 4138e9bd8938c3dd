"""Closed-form rotating black-hole data sets.

Four families: static (Schwarzschild) and equal-angular-momenta rotating
(Myers-Perry) black holes, each with an asymptotically flat and an
asymptotically hyperbolic (negative cosmological constant) variant.  The
spatial slice is written in an area-type radius r with

    g = U(r)^2 dr^2 + P(r)^2 (fiber)^2 + r^2 (base),      U^-2 = V(r),

and the builder converts everything to arclength s from the horizon r_plus
(the largest root of V).  U blows up like (r - r_plus)^{-1/2} at the horizon,
so the conversion integrates in the regularizing variable xi = sqrt(r - r_plus)
where the arclength density 2 xi U is smooth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.interpolate import CubicHermiteSpline
from scipy.optimize import brentq

from .data import BergerData, Flat, Hyperbolic
from .errors import ConstructionError, DomainError
from .orbits import unit_sphere_volume
from .profiles import ClosedFormProfile

FAMILY_KINDS = ("schwarzschild", "schwarzschild-ads", "myers-perry", "myers-perry-ads")

_GAUSS_ORDER = 12
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(_GAUSS_ORDER)


@dataclass(frozen=True)
class BlackHoleFamily:
    kind: str
    n: int
    m: float
    a: float
    r_plus: float

    @property
    def hyperbolic(self) -> bool:
        return self.kind.endswith("-ads")

    @property
    def d(self) -> int:
        return 2 * (self.n + 1)


def _v_poly(kind, n, m, a):
    """V(r) = U^-2 and its first two derivatives."""
    ads = kind.endswith("-ads")
    c0 = 2.0 * m * (1.0 - a * a) if ads else 2.0 * m
    c1 = 2.0 * m * a * a

    def V(r):
        out = 1.0 - c0 * r ** (-2 * n) + c1 * r ** (-2 * n - 2)
        return out + r * r if ads else out

    def Vp(r):
        out = 2 * n * c0 * r ** (-2 * n - 1) - (2 * n + 2) * c1 * r ** (-2 * n - 3)
        return out + 2.0 * r if ads else out

    def Vpp(r):
        out = -2 * n * (2 * n + 1) * c0 * r ** (-2 * n - 2) + (2 * n + 2) * (
            2 * n + 3
        ) * c1 * r ** (-2 * n - 4)
        return out + 2.0 if ads else out

    return V, Vp, Vpp


def _largest_root(V, lo, hi, samples=4000):
    r = np.geomspace(lo, hi, samples)
    vals = V(r)
    sign = np.signbit(vals)
    idx = np.nonzero(sign[:-1] & ~sign[1:])[0]
    if idx.size == 0:
        return None
    i = idx[-1]
    return brentq(V, r[i], r[i + 1], xtol=1e-15, rtol=8.9e-16)


def resolve_family(kind: str, n: int, m: Optional[float] = None, a: float = 0.0,
                   r_plus: Optional[float] = None) -> BlackHoleFamily:
    """Fill in the horizon radius from (m, a) or the mass from (r_plus, a),
    validating subextremality."""
    if kind not in FAMILY_KINDS:
        raise DomainError(f"unknown family kind {kind!r}")
    if n < 1:
        raise DomainError("family index n must be >= 1")
    if (m is None) == (r_plus is None):
        raise DomainError("specify exactly one of m, r_plus")
    ads = kind.endswith("-ads")
    if kind in ("schwarzschild", "schwarzschild-ads") and a != 0.0:
        raise DomainError("static families take a = 0")
    if a < 0.0:
        raise DomainError("spin parameter must be nonnegative")
    if ads and not a < 1.0:
        raise ConstructionError("hyperbolic rotating family requires a < 1")

    if r_plus is not None:
        rp2 = r_plus**2
        if ads:
            denom = rp2 * (1.0 - a * a) - a * a
            if denom <= 0:
                raise ConstructionError("no horizon: r_plus^2 (1-a^2) <= a^2")
            m = (1.0 + rp2) * r_plus ** (2 * (n + 1)) / (2.0 * denom)
        else:
            if rp2 <= a * a:
                raise ConstructionError("no horizon: r_plus <= a")
            m = r_plus ** (2 * (n + 1)) / (2.0 * (rp2 - a * a))
    if not m > 0:
        raise ConstructionError("mass parameter must be positive")

    V, Vp, _ = _v_poly(kind, n, m, a)
    if r_plus is None:
        if a == 0.0 and not ads:
            r_plus = (2.0 * m) ** (1.0 / (2 * n))
        else:
            scale = max((2.0 * m) ** (1.0 / (2 * n)), (2.0 * m) ** (1.0 / (2 * n + 2)), a, 1e-2)
            r_plus = _largest_root(V, 1e-3 * scale, 50.0 * scale + 10.0)
            if r_plus is None:
                raise ConstructionError("extremal or naked parameters: V has no root")
    if not Vp(r_plus) > 1e-12:
        raise ConstructionError("degenerate horizon: V'(r_plus) ~ 0")
    if not ads and a > 0.0 and not r_plus**2 > (n + 1) * a * a / n:
        raise ConstructionError("subextremality violated: r_plus^2 <= (n+1)a^2/n")
    if ads:
        nondeg = r_plus**2 * (n + (n + 1) * r_plus**2) - a * a * (n + 1) * (1 + r_plus**2) ** 2
        if not nondeg > 0:
            raise ConstructionError("degenerate rotating hyperbolic horizon")
    return BlackHoleFamily(kind, n, float(m), float(a), float(r_plus))


class ArclengthMap:
    """Bidirectional map between the area radius r and horizon arclength s."""

    def __init__(self, V, Vp, Vpp, r_plus, r_max, n_table=8192):
        self.V, self.Vp, self.r_plus = V, Vp, r_plus
        vp0, vpp0 = Vp(r_plus), Vpp(r_plus)

        def density(xi):
            xi = np.asarray(xi, dtype=float)
            r = r_plus + xi * xi
            small = xi < 1e-5 * math.sqrt(r_plus)
            out = np.empty_like(xi)
            # series in xi^2 avoids the 0/0 at the horizon
            vv = vp0 + 0.5 * vpp0 * xi[small] ** 2
            out[small] = 2.0 / np.sqrt(vv)
            out[~small] = 2.0 * xi[~small] / np.sqrt(V(r[~small]))
            return out

        xi_max = math.sqrt(r_max - r_plus)
        xi = np.linspace(0.0, xi_max, n_table)
        # cumulative per-segment Gauss-Legendre of the smooth density
        mid = 0.5 * (xi[:-1] + xi[1:])
        half = 0.5 * np.diff(xi)
        pts = mid[:, None] + half[:, None] * _GL_NODES[None, :]
        seg = half * (density(pts.ravel()).reshape(pts.shape) @ _GL_WEIGHTS)
        s = np.concatenate(([0.0], np.cumsum(seg)))
        self._xi = xi
        self._s = s
        self.s_max = float(s[-1])
        self._s_of_xi = CubicHermiteSpline(xi, s, density(xi))
        self._xi_of_s = CubicHermiteSpline(s, xi, 1.0 / density(xi))

    def r_of_s(self, s):
        s = np.clip(np.asarray(s, dtype=float), 0.0, self.s_max)
        xi = np.clip(self._xi_of_s(s), 0.0, None)
        return self.r_plus + xi * xi

    def s_of_r(self, r):
        r = np.asarray(r, dtype=float)
        return self._s_of_xi(np.sqrt(np.maximum(r - self.r_plus, 0.0)))


class _FamilyProfile(ClosedFormProfile):
    """Profile of s defined through closed forms in r, with exact chain rules
    d/ds = sqrt(V) d/dr.  At the horizon sqrt(V) = 0, so first derivatives
    vanish and second derivatives reduce to V' f_r / 2.  V is re-anchored so
    that it vanishes exactly at the computed horizon radius, which keeps the
    boundary mean curvature at floating-point zero."""

    def __init__(self, fam_map, V, Vp, fr, fr1, fr2):
        self._map, self._Vp = fam_map, Vp
        self._v0 = float(V(fam_map.r_plus))
        self._V = lambda r: np.maximum(V(r) - self._v0, 0.0)
        self._fr, self._fr1, self._fr2 = fr, fr1, fr2
        super().__init__(None, None, None, fam_map.s_max)

    def value(self, s):
        return self._fr(self._map.r_of_s(self._check(s)))

    def deriv(self, s):
        r = self._map.r_of_s(self._check(s))
        return self._fr1(r) * np.sqrt(self._V(r))

    def deriv2(self, s):
        r = self._map.r_of_s(self._check(s))
        return self._V(r) * self._fr2(r) + 0.5 * self._Vp(r) * self._fr1(r)


def build_family(family: BlackHoleFamily, tail_factor: Optional[float] = None,
                 n_table: int = 8192) -> BergerData:
    """Construct the exact radial data set for a black-hole family.

    The outer cutoff reaches a radius of ``tail_factor`` horizons: far enough
    for double-precision tail extrapolation, by default 1e3 (flat) or 1e2
    (hyperbolic, where the end is exponential and asymptotics arrive sooner).
    """
    kind, n, m, a, rp = family.kind, family.n, family.m, family.a, family.r_plus
    if tail_factor is None:
        tail_factor = 100.0 if family.hyperbolic else 1000.0
    V, Vp, Vpp = _v_poly(kind, n, m, a)
    amap = ArclengthMap(V, Vp, Vpp, rp, tail_factor * rp, n_table)
    beta = 1.0 / (2 * n + 1)

    def p(r):
        return r * r + 2 * m * a * a * r ** (-2 * n)

    def pp(r):
        return 2.0 * r - 4 * n * m * a * a * r ** (-2 * n - 1)

    def ppp(r):
        return 2.0 + 4 * n * (2 * n + 1) * m * a * a * r ** (-2 * n - 2)

    def rho(r):
        return p(r) ** (beta / 2.0) * r ** (2 * n * beta)

    def Lrho(r):
        return (beta / 2.0) * pp(r) / p(r) + 2 * n * beta / r

    def Lrho_p(r):
        return (beta / 2.0) * (ppp(r) * p(r) - pp(r) ** 2) / p(r) ** 2 - 2 * n * beta / r**2

    def rho_r(r):
        return rho(r) * Lrho(r)

    def rho_rr(r):
        return rho(r) * (Lrho(r) ** 2 + Lrho_p(r))

    def squash(r):
        return -(beta / 2.0) * np.log(p(r) / (r * r))

    def squash_r(r):
        return -(beta / 2.0) * (pp(r) / p(r) - 2.0 / r)

    def squash_rr(r):
        return -(beta / 2.0) * (ppp(r) / p(r) - (pp(r) / p(r)) ** 2 + 2.0 / r**2)

    def D(r):
        return r ** (2 * n + 2) + 2 * m * a * a

    def twist(r):
        return 2 * (n + 1) * m * a / D(r)

    def twist_r(r):
        return -2 * (n + 1) * (2 * n + 2) * m * a * r ** (2 * n + 1) / D(r) ** 2

    def twist_rr(r):
        return (
            -2 * (n + 1) * (2 * n + 2) * m * a
            * ((2 * n + 1) * r ** (2 * n) * D(r) - 2 * (2 * n + 2) * r ** (4 * n + 2))
            / D(r) ** 3
        )

    prof = lambda f, f1, f2: _FamilyProfile(amap, V, Vp, f, f1, f2)
    rho_prof = prof(rho, rho_r, rho_rr)
    squash_prof = prof(squash, squash_r, squash_rr)
    twist_prof = prof(twist, twist_r, twist_rr) if a > 0.0 else None
    asym = Hyperbolic(q=float(2 * n + 2)) if family.hyperbolic else Flat(tau=float(2 * n))
    data = BergerData(
        n, rho_prof, squash_prof, k_twist=twist_prof, asymptotic=asym
    )
    data.family = family
    data.arclength_map = amap
    return data


def closed_forms(family: BlackHoleFamily) -> dict:
    """Exact reference values for cross-checking the numeric pipelines."""
    n, m, a, rp = family.n, family.m, family.a, family.r_plus
    d = family.d
    omega = unit_sphere_volume(d - 1)
    p_h = rp * math.sqrt(1.0 + 2 * m * a * a * rp ** (-2 * n - 2))
    area = omega * p_h * rp ** (2 * n)
    ratio = area / omega
    bound = 0.5 * ratio ** ((d - 2) / (d - 1))
    if family.hyperbolic:
        energy = m * (1.0 + a * a / (2 * n + 1))
        bound += 0.5 * ratio ** (d / (d - 1))
    else:
        energy = m
    out = {
        "kind": family.kind,
        "n": n,
        "d": d,
        "m": m,
        "a": a,
        "r_plus": rp,
        "energy": energy,
        "area": area,
        "bound": bound,
        "margin": energy - bound,
        "angular_momentum": m * a,
        "angular_velocity": 2.0 * m * a / (rp ** (2 * (n + 1)) + 2 * m * a * a),
    }
    if not family.hyperbolic:
        out["margin_over_bound"] = (rp**2 / (rp**2 - a * a)) ** ((n + 1) / (2 * n + 1)) - 1.0
    return out
