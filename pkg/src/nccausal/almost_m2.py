"""Causal predicate for flat spacetime times a two-level matrix algebra.

Internal pure states of the 2x2 matrix factor form a sphere.  Two product
states can only be causally related when their internal states sit on the
same parallel of latitude, and motion along that parallel is rate-limited:
the angular separation divided by the available proper time may not exceed
the spread of the two finite Dirac eigenvalues.  That spread acts as an
internal speed-of-light bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .spacetime import EventPoint, is_causal, lorentzian_distance

__all__ = [
    "InternalStateS2",
    "ProductStateM2",
    "FiniteDiracM2",
    "azimuth_gap",
    "internal_speed_bound",
    "min_proper_time_m2",
    "causally_related_m2",
]

_TWO_PI = 2.0 * math.pi
_HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class InternalStateS2:
    """Internal pure state as a point on the sphere.

    latitude in [-pi/2, pi/2]; azimuth is normalized into [0, 2*pi) and
    forced to 0 at the poles, where it is meaningless.
    """

    latitude: float
    azimuth: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.latitude) and math.isfinite(self.azimuth)):
            raise ValueError("internal state coordinates must be finite")
        if not -_HALF_PI <= self.latitude <= _HALF_PI:
            raise ValueError(f"latitude must lie in [-pi/2, pi/2], got {self.latitude}")
        az = self.azimuth % _TWO_PI
        if abs(self.latitude) == _HALF_PI:
            az = 0.0
        object.__setattr__(self, "azimuth", az)


@dataclass(frozen=True)
class ProductStateM2:
    """A pure state of the product model: base point plus internal state."""

    base: EventPoint
    internal: InternalStateS2


@dataclass(frozen=True)
class FiniteDiracM2:
    """Diagonal finite Dirac data diag(d1, d2) with distinct eigenvalues."""

    d1: float
    d2: float

    def __post_init__(self):
        if not (math.isfinite(self.d1) and math.isfinite(self.d2)):
            raise ValueError("Dirac eigenvalues must be finite")
        if self.d1 == self.d2:
            raise ValueError("finite Dirac eigenvalues must differ (d1 != d2)")

    @property
    def spread(self) -> float:
        return abs(self.d1 - self.d2)


def azimuth_gap(a: InternalStateS2, b: InternalStateS2) -> float:
    """Shorter angular separation along a parallel, in [0, pi]."""
    d = abs(a.azimuth - b.azimuth)
    return min(d, _TWO_PI - d)


def internal_speed_bound(dirac: FiniteDiracM2) -> float:
    """Maximal internal angular speed: the Dirac eigenvalue spread |d1 - d2|."""
    return dirac.spread


def min_proper_time_m2(delta_theta: float, dirac: FiniteDiracM2) -> float:
    """Least proper time needed to traverse an angular gap on a parallel."""
    if not 0.0 <= delta_theta <= math.pi:
        raise ValueError(f"angular gap must lie in [0, pi], got {delta_theta}")
    return delta_theta / dirac.spread


def causally_related_m2(
    a: ProductStateM2,
    b: ProductStateM2,
    dirac: FiniteDiracM2,
    tol: float = 1e-9,
) -> bool:
    """Decide a ⪯ b on the product model.

    Requires: base points causally ordered, equal latitudes (within tol),
    and enough proper time for the azimuthal gap:
    distance >= gap / |d1 - d2| - tol.  The gap is measured along the
    shorter arc of the parallel.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    if not is_causal(a.base, b.base):
        return False
    if abs(a.internal.latitude - b.internal.latitude) > tol:
        return False
    dist = lorentzian_distance(a.base, b.base)
    return dist >= azimuth_gap(a.internal, b.internal) / dirac.spread - tol
