"""Homogeneous sphere metrics arising as principal orbits.

Four families cover every transitive-on-spheres isometry class beyond the
round one: squashed odd spheres fibered over complex projective space, the
generic left-invariant 3-sphere metrics, the quaternionic Hopf family on
S^{4n+3}, and the octonionic family on S^15.  Each orbit knows its volume,
intrinsic scalar curvature, and the scale-invariant defect that measures how
far its total scalar curvature sits below the round-sphere value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError


def unit_sphere_volume(dim: int) -> float:
    """Volume of the unit round sphere S^dim."""
    if dim < 1:
        raise DomainError("sphere dimension must be >= 1")
    return 2.0 * math.pi ** ((dim + 1) / 2.0) / math.gamma((dim + 1) / 2.0)


@dataclass(frozen=True)
class RoundSphere:
    dim: int


@dataclass(frozen=True)
class Berger:
    """Squashed S^{2n+1}: Hopf circle fibers scaled by e^{-2n*squash} relative
    to the projective base.  squash=0 is the unit round sphere."""

    n: int
    squash: float


@dataclass(frozen=True)
class SU2:
    """Left-invariant metric on S^3 with principal axes c1, c2, c3; the unit
    round metric is c1=c2=c3=1."""

    c1: float
    c2: float
    c3: float


@dataclass(frozen=True)
class SpTriple:
    """Quaternionic Hopf metric on S^{4n+3}: the three fiber directions carry
    weights c1, c2, c3 over the canonical quaternionic-projective base."""

    n: int
    c1: float
    c2: float
    c3: float


@dataclass(frozen=True)
class Spin9:
    """Octonionic Hopf metric on S^15 with fiber weight c over the round S^8."""

    c: float


OrbitClass = Union[RoundSphere, Berger, SU2, SpTriple, Spin9]


def _check_positive(*vals):
    for v in vals:
        if not (v > 0.0) or not np.isfinite(v):
            raise DomainError(f"scale parameters must be positive, got {v!r}")


def orbit_dimension(orbit: OrbitClass) -> int:
    if isinstance(orbit, RoundSphere):
        return orbit.dim
    if isinstance(orbit, Berger):
        if orbit.n < 1:
            raise DomainError("squashed-sphere index n must be >= 1")
        return 2 * orbit.n + 1
    if isinstance(orbit, SU2):
        return 3
    if isinstance(orbit, SpTriple):
        if orbit.n < 0:
            raise DomainError("quaternionic index n must be >= 0")
        return 4 * orbit.n + 3
    if isinstance(orbit, Spin9):
        return 15
    raise DomainError(f"unknown orbit class {orbit!r}")


def su2_unit_scalar_curvature(c1: float, c2: float, c3: float) -> float:
    """Scalar curvature of the diagonal left-invariant S^3 metric."""
    _check_positive(c1, c2, c3)
    sq = np.array([c1, c2, c3], dtype=float) ** 2
    pairs = sq[0] * sq[1] + sq[1] * sq[2] + sq[2] * sq[0]
    return float(2.0 * (2.0 * pairs - np.sum(sq**2)) / (c1 * c2 * c3) ** 2)


def sp_unit_scalar_curvature(n: int, c1: float, c2: float, c3: float) -> float:
    """Scalar curvature of the quaternionic Hopf metric at unit overall scale."""
    _check_positive(c1, c2, c3)
    quad = (
        c1**2 + c2**2 + c3**2
        - (c2 - c3) ** 2 - (c3 - c1) ** 2 - (c1 - c2) ** 2
    )
    return float(
        2.0 * quad / (c1 * c2 * c3)
        - 4.0 * n * (c1 + c2 + c3)
        + 16.0 * n**2 + 32.0 * n
    )


def spin9_unit_scalar_curvature(c: float) -> float:
    """Scalar curvature of the octonionic Hopf metric at unit overall scale."""
    _check_positive(c)
    return float(42.0 / c - 56.0 * c + 224.0)


def orbit_scalar_curvature(orbit: OrbitClass, rho: float = 1.0) -> float:
    """Intrinsic scalar curvature of the orbit scaled by overall radius rho."""
    _check_positive(rho)
    dim = orbit_dimension(orbit)
    if isinstance(orbit, RoundSphere):
        return dim * (dim - 1) / rho**2
    if isinstance(orbit, Berger):
        n = orbit.n
        e2b = math.exp(-2.0 * orbit.squash)
        return -(2.0 * n / rho**2) * (e2b ** (2 * (n + 1)) - 2.0 * (n + 1) * e2b)
    if isinstance(orbit, SU2):
        return su2_unit_scalar_curvature(orbit.c1, orbit.c2, orbit.c3) / rho**2
    if isinstance(orbit, SpTriple):
        return sp_unit_scalar_curvature(orbit.n, orbit.c1, orbit.c2, orbit.c3) / rho**2
    if isinstance(orbit, Spin9):
        return spin9_unit_scalar_curvature(orbit.c) / rho**2
    raise DomainError(f"unknown orbit class {orbit!r}")


def orbit_volume(orbit: OrbitClass, rho: float = 1.0) -> float:
    """Volume of the orbit at overall radius rho.

    Squashing a fibered sphere preserves its volume element, so only the SU2,
    quaternionic, and octonionic weights enter beyond the rho power.
    """
    _check_positive(rho)
    dim = orbit_dimension(orbit)
    omega = unit_sphere_volume(dim)
    if isinstance(orbit, (RoundSphere, Berger)):
        return rho**dim * omega
    if isinstance(orbit, SU2):
        _check_positive(orbit.c1, orbit.c2, orbit.c3)
        return rho**3 * orbit.c1 * orbit.c2 * orbit.c3 * omega
    if isinstance(orbit, SpTriple):
        _check_positive(orbit.c1, orbit.c2, orbit.c3)
        return rho**dim * math.sqrt(orbit.c1 * orbit.c2 * orbit.c3) * omega
    if isinstance(orbit, Spin9):
        _check_positive(orbit.c)
        return rho**dim * orbit.c ** 3.5 * omega
    raise DomainError(f"unknown orbit class {orbit!r}")


def volume_radius(orbit: OrbitClass, rho: float = 1.0) -> float:
    """Radius of the round sphere with the same volume."""
    dim = orbit_dimension(orbit)
    return (orbit_volume(orbit, rho) / unit_sphere_volume(dim)) ** (1.0 / dim)


def hawking_defect(orbit: OrbitClass) -> float:
    """Scale-invariant deficit of total orbit scalar curvature.

    Nonnegative with a zero exactly at the round point for the squashed and
    SU2 families; for the quaternionic and octonionic families the round
    point is only a local isolated minimum and the defect goes negative when
    the Hopf fibers collapse.
    """
    if isinstance(orbit, RoundSphere):
        return 0.0
    if isinstance(orbit, Berger):
        n = orbit.n
        if n < 1:
            raise DomainError("squashed-sphere index n must be >= 1")
        rt = math.exp(-2.0 * orbit.squash)
        return (2 * n + 1) + rt ** (2 * (n + 1)) - 2 * (n + 1) * rt
    if isinstance(orbit, SU2):
        _check_positive(orbit.c1, orbit.c2, orbit.c3)
        prod = orbit.c1 * orbit.c2 * orbit.c3
        rsu = su2_unit_scalar_curvature(orbit.c1, orbit.c2, orbit.c3)
        return 3.0 - prod ** (2.0 / 3.0) * rsu / 2.0
    if isinstance(orbit, SpTriple):
        n = orbit.n
        dim = 4 * n + 3
        prod = orbit.c1 * orbit.c2 * orbit.c3
        rc = sp_unit_scalar_curvature(n, orbit.c1, orbit.c2, orbit.c3)
        return (4 * n + 2) * (4 * n + 3) - prod ** (1.0 / dim) * rc
    if isinstance(orbit, Spin9):
        rc = spin9_unit_scalar_curvature(orbit.c)
        return 210.0 - orbit.c ** (7.0 / 15.0) * rc
    raise DomainError(f"unknown orbit class {orbit!r}")


def berger_defect_polynomial(n: int, rt) -> np.ndarray:
    """Defect of the squashed sphere as a function of the fiber ratio
    rt = e^{-2*squash}; vectorized for property scans."""
    rt = np.asarray(rt, dtype=float)
    if np.any(rt < 0):
        raise DomainError("fiber ratio must be nonnegative")
    return (2 * n + 1) + rt ** (2 * (n + 1)) - 2 * (n + 1) * rt


def su2_defect(c1, c2) -> np.ndarray:
    """SU2 defect on the c3=1 slice; vectorized."""
    c1 = np.asarray(c1, dtype=float)
    c2 = np.asarray(c2, dtype=float)
    if np.any(c1 <= 0) or np.any(c2 <= 0):
        raise DomainError("axis weights must be positive")
    prod = c1 * c2
    return 3.0 + (1.0 - c1**2 - c2**2) ** 2 / prod ** (4.0 / 3.0) - 4.0 * prod ** (2.0 / 3.0)
