"""Radial generalized Jang equation coupled to inverse mean curvature flow.

The slope variable v in (-1, 1) satisfies the first-order equation

    (1 - v^2) v' + (1 - v^2) F_-(s, v) + theta_- = 0,
    F_-(s, v) = -(d-1)/(1+v) * rho'/rho + v rho''/rho' - k_a,

algebraically identical to the twin rearrangement in (F_+, theta_+).  Four
boundary regimes are supported at s=0: an interior value |v(0)| < 1, the unit
values v(0) = +1 (past-horizon boundary) and v(0) = -1 (future-horizon
boundary), both entered through the substitution w = v - v^2/2 that removes
the degeneracy of the principal part, and v(0) = 0 when the boundary mean
curvature vanishes, approached through solutions started at s = eps with a
Richardson limit in eps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp

from .data import BergerData, Flat, Hyperbolic, InitialDataSet, SU2Data, classify_boundary
from .errors import DomainError, PreconditionError, SolverBlowupError, StiffnessError
from .extrapolate import fit_exponential_rate, fit_power_decay
from .profiles import SampledProfile, geometric_grid

V_CLAMP = 1.0 - 1e-12
MAX_CLAMP_EVENTS = 10


@dataclass(frozen=True)
class Interior:
    """v(0) = alpha with |alpha| < 1; requires H(0) != 0."""

    alpha: float

    def __post_init__(self):
        if not -1.0 < self.alpha < 1.0:
            raise DomainError("interior boundary value must lie in (-1, 1)")


@dataclass(frozen=True)
class PastHorizonUnit:
    """v(0) = +1; valid when theta_-(0) = 0 and H(0) != 0."""


@dataclass(frozen=True)
class FutureHorizonUnit:
    """v(0) = -1; valid when theta_+(0) = 0 and H(0) != 0."""


@dataclass(frozen=True)
class DegenerateZero:
    """v(0) = 0 at a minimal boundary (H(0) = 0)."""


def bc_for_boundary(data: InitialDataSet, tol=1e-7):
    """Canonical boundary-condition rule: past horizon -> +1, future -> -1,
    minimal boundary -> 0."""
    b = classify_boundary(data, tol)
    scale = max(1.0, 1.0 / data.s_scale)
    if abs(b.h0) <= tol * scale:
        return DegenerateZero()
    if b.past_horizon:
        return PastHorizonUnit()
    if b.future_horizon:
        return FutureHorizonUnit()
    raise PreconditionError(
        "boundary is not an apparent horizon: theta_+(0)={:.2e} theta_-(0)={:.2e}".format(
            b.theta_plus0, b.theta_minus0
        )
    )


def _require_su_type(data):
    if not isinstance(data, (BergerData, SU2Data)):
        raise DomainError("the Jang reduction needs a fibered SU-type data set")


def jang_rhs(data: InitialDataSet, s, v, branch: int = -1):
    """Slope v' from the selected algebraic rearrangement (branch -1 or +1).

    Both branches are the same equation; they differ only in which null
    expansion carries the inhomogeneity, and agree wherever |v| <= 1.
    """
    _require_su_type(data)
    if branch not in (-1, +1):
        raise DomainError("branch must be -1 or +1")
    s = float(s)
    if s <= 0.0:
        raise DomainError("the slope equation is evaluated at s > 0")
    if abs(v) > 1.0:
        raise DomainError("|v| <= 1 required")
    dm1 = data.d - 1
    rho = float(data.vol_radius(s))
    rho1 = float(data.vol_radius_d1(s))
    rho2 = float(data.vol_radius_d2(s))
    if rho1 == 0.0:
        raise DomainError("rho'(s) = 0 away from the boundary: singular slope term")
    ka = float(data.k_rad(s))
    tp, tm = (float(x) for x in data.theta(s))
    one_minus = max(1.0 - v * v, 1e-300)
    if branch == -1:
        f = -dm1 / (1.0 + v) * rho1 / rho + v * rho2 / rho1 - ka
        return -f - tm / one_minus
    f = dm1 / (1.0 - v) * rho1 / rho + v * rho2 / rho1 - ka
    return -f + tp / one_minus


class _MirrorK:
    """View of a data set with the sign of k flipped; maps the v(0) = -1
    problem onto the v(0) = +1 machinery."""

    def __init__(self, base):
        self._base = base

    def __getattr__(self, name):
        return getattr(self._base, name)

    def k_rad(self, s):
        return -self._base.k_rad(s)

    def tr_sigma_k(self, s):
        return -self._base.tr_sigma_k(s)

    def theta(self, s):
        tp, tm = self._base.theta(s)
        return tm, tp


@dataclass
class JangSolution:
    data: InitialDataSet
    bc: object
    v: SampledProfile
    sbar: SampledProfile
    phi: SampledProfile
    decay_exponent: float = math.nan
    decay_rate: float = math.nan
    clamp_events: int = 0
    v0_deriv: float = math.nan
    eps_richardson_jump: float = math.nan

    @property
    def s_grid(self):
        return self.v.nodes

    def sup_v(self) -> float:
        return float(np.max(np.abs(self.v.node_values)))


def _rhs_factory(data, clamp_counter):
    dm1 = data.d - 1

    def rhs(s, y):
        v = y[0]
        if abs(v) > V_CLAMP:
            clamp_counter[0] += 1
            v = math.copysign(V_CLAMP, v)
        rho = float(data.vol_radius(s))
        rho1 = float(data.vol_radius_d1(s))
        rho2 = float(data.vol_radius_d2(s))
        ka = float(data.k_rad(s))
        trs = float(data.tr_sigma_k(s))
        H = dm1 * rho1 / rho
        one_minus = 1.0 - v * v
        if v >= 0.0:
            f = -dm1 / (1.0 + v) * rho1 / rho + v * rho2 / rho1 - ka
            vp = -f - (H - trs) / one_minus
        else:
            f = dm1 / (1.0 - v) * rho1 / rho + v * rho2 / rho1 - ka
            vp = -f + (H + trs) / one_minus
        return (vp, 1.0 / math.sqrt(one_minus))

    return rhs


def _integrate(data, s0, v0, sbar0, s_grid, rtol, atol, max_step):
    """March (v, sbar) from (s0, v0) across the output grid."""
    clamp = [0]
    rhs = _rhs_factory(data, clamp)
    out = s_grid[s_grid > s0]
    sol = solve_ivp(
        rhs,
        (s0, data.s_max),
        (v0, sbar0),
        method="RK45",
        rtol=rtol,
        atol=atol,
        dense_output=True,
        max_step=max_step if max_step else np.inf,
    )
    if not sol.success:
        raise StiffnessError(f"slope integration failed: {sol.message}")
    vals = sol.sol(out)
    return out, vals[0], vals[1], clamp[0], rhs


def _unit_start(data, s_switch, rtol, atol):
    """Integrate the nondegenerate w = v - v^2/2 form from w(0) = 1/2.

    Returns a callable v(s) on [0, s_switch], a callable sbar(s) obtained by
    quadrature of 1/sqrt(1-v^2) in the regularizing variable u = sqrt(s)
    (1 - v^2 vanishes linearly at the boundary, so the deformed arclength has
    a square-root profile there), and the one-sided boundary slope from the
    nonpositive root of 2 v'^2 + 2 F(0) v' - theta_-'(0) = 0.
    """
    dm1 = data.d - 1

    def vw(w):
        return 1.0 - math.sqrt(max(1.0 - 2.0 * w, 0.0))

    def rhs(s, y):
        w = min(y[0], 0.5)
        v = vw(w)
        rho = float(data.vol_radius(s))
        rho1 = float(data.vol_radius_d1(s))
        rho2 = float(data.vol_radius_d2(s))
        ka = float(data.k_rad(s))
        H = dm1 * rho1 / rho
        tm = H - float(data.tr_sigma_k(s))
        f = -dm1 / (1.0 + v) * rho1 / rho + v * rho2 / rho1 - ka
        bracket = 1.0 - 2.0 * w - 2.0 * math.sqrt(max(1.0 - 2.0 * w, 0.0))
        return ((-tm + f * bracket) / (1.0 + v),)

    sol = solve_ivp(
        rhs,
        (0.0, s_switch),
        (0.5,),
        method="RK45",
        rtol=rtol,
        atol=atol,
        first_step=s_switch * 1e-6,
        dense_output=True,
    )
    if not sol.success:
        raise StiffnessError(f"unit-boundary start failed: {sol.message}")

    def v_of_s(s):
        w = np.minimum(sol.sol(np.asarray(s, dtype=float))[0], 0.5)
        return 1.0 - np.sqrt(np.maximum(1.0 - 2.0 * w, 0.0))

    # one-sided slope at s=0
    rho0 = float(data.vol_radius(0.0))
    rho1 = float(data.vol_radius_d1(0.0))
    rho2 = float(data.vol_radius_d2(0.0))
    f0 = -dm1 / 2.0 * rho1 / rho0 + rho2 / rho1 - float(data.k_rad(0.0))
    h = 1e-6 * data.s_scale
    tmd = (float(data.theta(h)[1]) - float(data.theta(0.0)[1])) / h
    disc = f0 * f0 + 2.0 * tmd
    v0d = 0.5 * (-f0 - math.sqrt(disc)) if disc >= 0.0 else math.nan

    gl_x, gl_w = np.polynomial.legendre.leggauss(24)

    def sbar_of_s(s_targets):
        # cumulative Gauss-Legendre in u = sqrt(s); the integrand
        # 2u / sqrt(1 - v(u^2)^2) is bounded at u = 0
        us = np.sqrt(np.asarray(s_targets, dtype=float))
        knots = np.concatenate(([0.0], us))
        mid = 0.5 * (knots[:-1] + knots[1:])
        half = 0.5 * np.diff(knots)
        pts = mid[:, None] + half[:, None] * gl_x[None, :]
        vv = v_of_s(pts.ravel() ** 2).reshape(pts.shape)
        integ = 2.0 * pts / np.sqrt(np.maximum(1.0 - vv * vv, 1e-32))
        return np.cumsum(half * (integ @ gl_w))

    return v_of_s, sbar_of_s, v0d


def solve_jang(
    data: InitialDataSet,
    bc,
    rtol: float = 1e-10,
    atol: float = 1e-12,
    n_out: int = 1600,
    max_step: Optional[float] = None,
    eps_ladder=(1e-3, 1e-4, 1e-5),
) -> JangSolution:
    """Solve the coupled slope equation with the requested boundary regime."""
    _require_su_type(data)
    b = classify_boundary(data)
    if not b.outermost:
        raise PreconditionError("null expansions change sign away from the boundary")
    scale = max(1.0, 1.0 / data.s_scale)
    h_zero = abs(b.h0) <= 1e-7 * scale
    s_lo = 1e-4 * data.s_scale
    s_grid = geometric_grid(s_lo, data.s_max, n_out, include_zero=True)
    clamp_total = 0
    v0_deriv = math.nan
    eps_jump = math.nan

    if isinstance(bc, Interior):
        if h_zero:
            raise PreconditionError("interior boundary values need H(0) != 0")
        out, v_arr, sb_arr, clamp_total, _ = _integrate(
            data, 0.0, bc.alpha, 0.0, s_grid, rtol, atol, max_step
        )
        s_nodes = np.concatenate(([0.0], out))
        v_nodes = np.concatenate(([bc.alpha], v_arr))
        sb_nodes = np.concatenate(([0.0], sb_arr))
        v0 = bc.alpha

    elif isinstance(bc, (PastHorizonUnit, FutureHorizonUnit)):
        if h_zero:
            raise PreconditionError("unit boundary values need H(0) != 0")
        mirrored = isinstance(bc, FutureHorizonUnit)
        work = _MirrorK(data) if mirrored else data
        bb = classify_boundary(work)
        if not bb.past_horizon:
            raise PreconditionError(
                "unit boundary value incompatible with the boundary horizon type"
            )
        s_switch = 1e-2 * data.s_scale
        v_of_s, sbar_of_s, v0_deriv = _unit_start(work, s_switch, rtol, atol)
        head = s_grid[(s_grid > 0.0) & (s_grid <= s_switch)]
        if head.size == 0 or head[-1] < s_switch:
            head = np.concatenate((head, [s_switch]))
        v_head = v_of_s(head)
        sb_head = sbar_of_s(head)
        out, v_arr, sb_arr, clamp_total, _ = _integrate(
            work, head[-1], float(v_head[-1]), float(sb_head[-1]), s_grid, rtol, atol, max_step
        )
        s_nodes = np.concatenate(([0.0], head, out))
        v_nodes = np.concatenate(([1.0], v_head, v_arr))
        sb_nodes = np.concatenate(([0.0], sb_head, sb_arr))
        if mirrored:
            v_nodes = -v_nodes
            v0_deriv = -v0_deriv
        v0 = -1.0 if mirrored else 1.0

    elif isinstance(bc, DegenerateZero):
        if not h_zero:
            raise PreconditionError("v(0) = 0 regime needs a minimal boundary H(0) = 0")
        runs = []
        for eps_rel in eps_ladder:
            eps = eps_rel * data.s_scale
            out, v_arr, sb_arr, clamp, _ = _integrate(
                data, eps, 0.0, eps, s_grid, rtol, atol, max_step
            )
            keep = s_grid[s_grid > eps_ladder[0] * data.s_scale]
            runs.append((eps, np.interp(keep, out, v_arr), np.interp(keep, out, sb_arr)))
            clamp_total = max(clamp_total, clamp)
        keep = s_grid[s_grid > eps_ladder[0] * data.s_scale]
        v_fine, sb_fine = runs[-1][1], runs[-1][2]
        d12 = float(np.max(np.abs(runs[0][1] - runs[1][1])))
        d23 = float(np.max(np.abs(runs[1][1] - runs[2][1])))
        if d23 < 1e-12:
            v_ex, sb_ex, eps_jump = v_fine, sb_fine, d23
        else:
            ratio = runs[0][0] / runs[1][0]
            order = math.log(max(d12 / d23, 1.0 + 1e-9)) / math.log(ratio)
            fac = ratio**order - 1.0
            v_ex = v_fine + (runs[2][1] - runs[1][1]) / fac
            sb_ex = sb_fine + (runs[2][2] - runs[1][2]) / fac
            prev = runs[1][1] + (runs[1][1] - runs[0][1]) / fac
            eps_jump = float(np.max(np.abs(v_ex - prev)))
            if eps_jump > 1e-8:
                raise SolverBlowupError(
                    f"eps-scheme did not converge: extrapolant jump {eps_jump:.2e}"
                )
        v0 = 0.0
        ka0 = float(data.k_rad(0.0))
        v0_deriv = 0.5 * (ka0 + float(data.tr_sigma_k(0.0)))
        s_nodes = np.concatenate(([0.0], keep))
        v_nodes = np.concatenate(([0.0], v_ex))
        sb_nodes = np.concatenate(([0.0], sb_ex))
    else:
        raise DomainError(f"unknown boundary condition {bc!r}")

    interior = np.abs(v_nodes[1:]) >= 1.0 - 1e-9
    if np.any(interior):
        worst = float(np.max(np.abs(v_nodes[1:])))
        raise SolverBlowupError(f"slope reached |v| = {worst:.15f} at interior nodes")
    n_clamped_nodes = int(np.sum(np.abs(v_nodes[1:]) > V_CLAMP))
    if n_clamped_nodes > MAX_CLAMP_EVENTS:
        raise SolverBlowupError(f"{n_clamped_nodes} clamped nodes exceed the roundoff budget")

    # slopes at the nodes from the equation itself; very near the unit values
    # the algebraic slope is ill-conditioned, so difference the solution there
    vp_nodes = np.empty_like(v_nodes)
    for i, (s, v) in enumerate(zip(s_nodes, v_nodes)):
        if s == 0.0:
            vp_nodes[i] = v0_deriv if np.isfinite(v0_deriv) else 0.0
        elif abs(v) > 0.99:
            lo = s_nodes[max(i - 1, 0)]
            hi = s_nodes[min(i + 1, len(s_nodes) - 1)]
            vp_nodes[i] = (
                np.interp(hi, s_nodes, v_nodes) - np.interp(lo, s_nodes, v_nodes)
            ) / (hi - lo)
        else:
            branch = -1 if v >= 0.0 else +1
            vp_nodes[i] = jang_rhs(data, s, float(np.clip(v, -V_CLAMP, V_CLAMP)), branch)
    sbp_nodes = 1.0 / np.sqrt(np.maximum(1.0 - v_nodes**2, 1e-32))

    rho1 = data.vol_radius_d1(s_nodes)
    phi_nodes = np.sqrt(np.maximum(1.0 - v_nodes**2, 0.0)) * rho1

    v_prof = SampledProfile(s_nodes, v_nodes, vp_nodes)
    sb_prof = SampledProfile(s_nodes, sb_nodes, sbp_nodes)
    phi_prof = SampledProfile(s_nodes, phi_nodes)

    sol = JangSolution(
        data=data,
        bc=bc,
        v=v_prof,
        sbar=sb_prof,
        phi=phi_prof,
        clamp_events=n_clamped_nodes,
        v0_deriv=v0_deriv,
        eps_richardson_jump=eps_jump,
    )
    tail = s_nodes[s_nodes >= 0.3 * data.s_max]
    vt = v_prof.value(tail)
    if isinstance(data.asymptotic, Flat):
        sol.decay_exponent = fit_power_decay(tail, vt)
    else:
        sol.decay_rate = fit_exponential_rate(tail, vt)
    return sol


def jang_metric(data: InitialDataSet, sol: JangSolution) -> InitialDataSet:
    """Time-symmetric data set carrying the graph-deformed metric, with
    profiles reparameterized by the deformed arclength."""
    _require_su_type(data)
    s = sol.s_grid
    v = sol.v.node_values
    vp = sol.v.node_deriv
    sb = sol.sbar.node_values
    omv = 1.0 - v**2
    root = np.sqrt(np.maximum(omv, 0.0))

    def push(profile):
        f = profile.value(s)
        f1 = profile.deriv(s)
        f2 = profile.deriv2(s)
        g1 = root * f1
        g2 = omv * f2 - v * vp * f1
        return SampledProfile(sb, f, g1, g2)

    if isinstance(data, BergerData):
        return BergerData(
            data.n,
            push(data.rho),
            push(data.squash),
            asymptotic=data.asymptotic,
        )
    out = SU2Data(*(push(c) for c in data.c), asymptotic=data.asymptotic)
    return out


def boundary_flux(data: InitialDataSet, sol: JangSolution, s):
    """Flux density of the deformation vector through the level sphere:
    v rho' (tr_Sigma k - v H); vanishes at the boundary under the canonical
    boundary rule and decays at the outer end."""
    v = sol.v.value(s)
    rho1 = data.vol_radius_d1(s)
    H = data.mean_curvature(s)
    return v * rho1 * (data.tr_sigma_k(s) - v * H)
