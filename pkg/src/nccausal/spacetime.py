"""Flat 1+1 Minkowski geometry: causal order, proper time, weighted proper time.

Everything here is in natural units (c = 1) with signature (-, +), and the
*closed* future cone convention: lightlike separations count as causal and
every point precedes itself.  Curves are future-directed polylines; proper
time is exact per segment, and the weighted variant integrates |field| along
the curve with fixed-order Gauss-Legendre quadrature per segment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "EventPoint",
    "CausalCurve",
    "ScalarField",
    "FieldEvaluationError",
    "UnitSystem",
    "SI_UNITS",
    "NATURAL_UNITS",
    "is_causal",
    "lorentzian_distance",
    "proper_time",
    "weighted_proper_time",
    "maximize_weighted_proper_time",
]


@dataclass(frozen=True)
class EventPoint:
    """A point (t, x) of the flat 1+1 spacetime."""

    t: float
    x: float

    def __post_init__(self):
        if not (math.isfinite(self.t) and math.isfinite(self.x)):
            raise ValueError(f"event coordinates must be finite, got ({self.t}, {self.x})")


def is_causal(p: EventPoint, q: EventPoint) -> bool:
    """True when q lies in the closed future cone of p (p ⪯ p holds)."""
    return q.t - p.t >= abs(q.x - p.x)


def lorentzian_distance(p: EventPoint, q: EventPoint) -> float | None:
    """Maximal proper time from p to q, or None if q is not in p's future cone.

    In flat space the supremum over causal curves is attained by the straight
    geodesic, so the value is sqrt(dt^2 - dx^2).  Computed as the product
    of the two light-cone increments for accuracy near the cone boundary.
    """
    dt = q.t - p.t
    dx = q.x - p.x
    if dt < abs(dx):
        return None
    return math.sqrt((dt - dx) * (dt + dx))


def _segment_deltas(vertices: Sequence[EventPoint]):
    ts = np.array([v.t for v in vertices], dtype=float)
    xs = np.array([v.x for v in vertices], dtype=float)
    return ts, xs


@dataclass(frozen=True)
class CausalCurve:
    """Future-directed polyline with at least two vertices.

    Each segment must satisfy dt > 0 and |dx| <= dt, except that exactly
    repeated vertices (dt = dx = 0) are permitted; they carry no proper time
    and are skipped by every integral.
    """

    vertices: tuple[EventPoint, ...]

    def __post_init__(self):
        verts = tuple(self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(verts) < 2:
            raise ValueError("a causal curve needs at least two vertices")
        for i in range(len(verts) - 1):
            dt = verts[i + 1].t - verts[i].t
            dx = verts[i + 1].x - verts[i].x
            degenerate = dt == 0.0 and dx == 0.0
            if not degenerate and not (dt > 0.0 and abs(dx) <= dt):
                raise ValueError(
                    f"segment {i} is not future-directed causal: dt={dt}, dx={dx}"
                )

    @classmethod
    def from_points(cls, points: Sequence) -> "CausalCurve":
        verts = tuple(
            p if isinstance(p, EventPoint) else EventPoint(float(p[0]), float(p[1]))
            for p in points
        )
        return cls(verts)

    @property
    def start(self) -> EventPoint:
        return self.vertices[0]

    @property
    def end(self) -> EventPoint:
        return self.vertices[-1]


def proper_time(curve: CausalCurve) -> float:
    """Lorentzian arc length of the polyline: sum of sqrt(dt^2 - dx^2)."""
    ts, xs = _segment_deltas(curve.vertices)
    dt = np.diff(ts)
    dx = np.diff(xs)
    return float(np.sum(np.sqrt((dt - dx) * (dt + dx))))


class FieldEvaluationError(RuntimeError):
    """Raised when a scalar field cannot be evaluated at a requested point."""


class ScalarField:
    """Complex scalar weight over spacetime, evaluable at (t, x).

    Closed forms carry an expression tag plus parameters so they round-trip
    through scenario files; gridded fields interpolate bilinearly on strictly
    increasing axes and refuse to extrapolate.  Arbitrary callables are
    supported for in-process use but cannot be serialized.
    """

    def __init__(self, kind: str, fn: Callable, spec: dict | None):
        self._kind = kind
        self._fn = fn
        self._spec = spec

    @property
    def kind(self) -> str:
        return self._kind

    def __call__(self, t, x):
        t = np.asarray(t, dtype=float)
        x = np.asarray(x, dtype=float)
        out = self._fn(t, x)
        return np.asarray(out, dtype=complex)

    def __repr__(self):
        return f"ScalarField(kind={self._kind!r})"

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, value: complex) -> "ScalarField":
        value = complex(value)
        return cls(
            "constant",
            lambda t, x: np.full(np.broadcast(t, x).shape, value),
            {"kind": "constant", "value": _complex_spec(value)},
        )

    @classmethod
    def linear(cls, const: complex = 0.0, t_coeff: complex = 0.0, x_coeff: complex = 0.0) -> "ScalarField":
        c0, ct, cx = complex(const), complex(t_coeff), complex(x_coeff)
        return cls(
            "linear",
            lambda t, x: c0 + ct * t + cx * x,
            {
                "kind": "linear",
                "const": _complex_spec(c0),
                "t_coeff": _complex_spec(ct),
                "x_coeff": _complex_spec(cx),
            },
        )

    @classmethod
    def gaussian(cls, amplitude: complex = 1.0, t0: float = 0.0, x0: float = 0.0, width: float = 1.0) -> "ScalarField":
        if not width > 0:
            raise ValueError("gaussian width must be positive")
        amp = complex(amplitude)
        t0, x0, width = float(t0), float(x0), float(width)

        def fn(t, x):
            return amp * np.exp(-(((t - t0) ** 2) + ((x - x0) ** 2)) / width**2)

        return cls(
            "gaussian",
            fn,
            {
                "kind": "gaussian",
                "amplitude": _complex_spec(amp),
                "t0": t0,
                "x0": x0,
                "width": width,
            },
        )

    @classmethod
    def from_grid(cls, t_axis, x_axis, values) -> "ScalarField":
        t_axis = np.asarray(t_axis, dtype=float)
        x_axis = np.asarray(x_axis, dtype=float)
        values = np.asarray(values, dtype=complex)
        if t_axis.ndim != 1 or x_axis.ndim != 1:
            raise ValueError("grid axes must be one-dimensional")
        if len(t_axis) < 2 or len(x_axis) < 2:
            raise ValueError("grid axes need at least two samples")
        if np.any(np.diff(t_axis) <= 0) or np.any(np.diff(x_axis) <= 0):
            raise ValueError("grid axes must be strictly increasing")
        if values.shape != (len(t_axis), len(x_axis)):
            raise ValueError(
                f"grid values must have shape ({len(t_axis)}, {len(x_axis)}), got {values.shape}"
            )

        def fn(t, x):
            t = np.atleast_1d(np.asarray(t, dtype=float))
            x = np.atleast_1d(np.asarray(x, dtype=float))
            t, x = np.broadcast_arrays(t, x)
            if (
                np.any(t < t_axis[0]) or np.any(t > t_axis[-1])
                or np.any(x < x_axis[0]) or np.any(x > x_axis[-1])
            ):
                raise FieldEvaluationError(
                    "point outside the sampled grid "
                    f"t in [{t_axis[0]}, {t_axis[-1]}], x in [{x_axis[0]}, {x_axis[-1]}]"
                )
            it = np.clip(np.searchsorted(t_axis, t, side="right") - 1, 0, len(t_axis) - 2)
            ix = np.clip(np.searchsorted(x_axis, x, side="right") - 1, 0, len(x_axis) - 2)
            wt = (t - t_axis[it]) / (t_axis[it + 1] - t_axis[it])
            wx = (x - x_axis[ix]) / (x_axis[ix + 1] - x_axis[ix])
            v00 = values[it, ix]
            v01 = values[it, ix + 1]
            v10 = values[it + 1, ix]
            v11 = values[it + 1, ix + 1]
            return (
                v00 * (1 - wt) * (1 - wx)
                + v01 * (1 - wt) * wx
                + v10 * wt * (1 - wx)
                + v11 * wt * wx
            )

        spec = {
            "kind": "grid",
            "t": [float(v) for v in t_axis],
            "x": [float(v) for v in x_axis],
            "re": values.real.tolist(),
        }
        if np.any(values.imag != 0.0):
            spec["im"] = values.imag.tolist()
        return cls("grid", fn, spec)

    @classmethod
    def from_callable(cls, fn: Callable) -> "ScalarField":
        return cls("callable", fn, None)

    # -- serialization -----------------------------------------------------

    def to_spec(self) -> dict:
        if self._spec is None:
            raise ValueError("callable-backed fields cannot be serialized")
        return self._spec

    @classmethod
    def from_spec(cls, spec: dict) -> "ScalarField":
        kind = spec.get("kind")
        if kind == "constant":
            return cls.constant(_complex_from_spec(spec["value"]))
        if kind == "linear":
            return cls.linear(
                _complex_from_spec(spec.get("const", 0.0)),
                _complex_from_spec(spec.get("t_coeff", 0.0)),
                _complex_from_spec(spec.get("x_coeff", 0.0)),
            )
        if kind == "gaussian":
            return cls.gaussian(
                _complex_from_spec(spec.get("amplitude", 1.0)),
                spec.get("t0", 0.0),
                spec.get("x0", 0.0),
                spec.get("width", 1.0),
            )
        if kind == "grid":
            re = np.asarray(spec["re"], dtype=float)
            im = np.asarray(spec["im"], dtype=float) if "im" in spec else 0.0
            return cls.from_grid(spec["t"], spec["x"], re + 1j * im)
        raise ValueError(f"unknown field kind {kind!r}")


def _complex_spec(value: complex):
    if value.imag == 0.0:
        return {"re": value.real}
    return {"re": value.real, "im": value.imag}


def _complex_from_spec(obj) -> complex:
    if isinstance(obj, dict):
        return complex(obj.get("re", 0.0), obj.get("im", 0.0))
    return complex(obj)


@lru_cache(maxsize=8)
def _unit_gauss_nodes(n: int):
    # Gauss-Legendre on [0, 1]; weights sum to 1.
    pts, wts = np.polynomial.legendre.leggauss(n)
    return (pts + 1.0) / 2.0, wts / 2.0


def _weighted_times_from_arrays(ts, xs, field: ScalarField, nodes: int):
    """Per-segment integral of |field| ds for the polyline (ts, xs)."""
    dt = np.diff(ts)
    dx = np.diff(xs)
    # product of light-cone increments is nonnegative for causal segments
    tau = np.sqrt(np.maximum((dt - dx) * (dt + dx), 0.0))
    live = tau > 0.0
    if not np.any(live):
        return 0.0
    u, w = _unit_gauss_nodes(nodes)
    t_pts = ts[:-1][live, None] + np.outer(dt[live], u)
    x_pts = xs[:-1][live, None] + np.outer(dx[live], u)
    vals = np.abs(field(t_pts.ravel(), x_pts.ravel())).reshape(t_pts.shape)
    return float(np.dot(vals @ w, tau[live]))


def weighted_proper_time(curve: CausalCurve, field: ScalarField, nodes: int = 16) -> float:
    """Integral of |field| against proper time along the polyline.

    Parameters
    ----------
    curve : CausalCurve
        Future-directed polyline.
    field : ScalarField
        Weight; only its modulus enters the integral.
    nodes : int
        Gauss-Legendre nodes per segment (default 16, exact for polynomial
        weights of degree < 32 along each segment).
    """
    if nodes < 1:
        raise ValueError("need at least one quadrature node per segment")
    ts, xs = _segment_deltas(curve.vertices)
    return _weighted_times_from_arrays(ts, xs, field, nodes)


def maximize_weighted_proper_time(
    p: EventPoint,
    q: EventPoint,
    field: ScalarField,
    segments: int = 8,
    budget: int = 200,
    seed: int = 0,
    nodes: int = 16,
) -> float:
    """Best weighted proper time found over causal polylines from p to q.

    Seeded stochastic local search over polylines with the given number of
    segments: interior vertices are perturbed in light-cone coordinates,
    projected back into the causal constraint set (clip + sort, which keeps
    both light-cone coordinate sequences monotone), and improvements are
    accepted.  The result is a certified lower bound on the supremum and is
    never below the straight polyline's value.  For a fixed seed the result
    is nondecreasing in ``budget``.
    """
    if segments < 1:
        raise ValueError("segments must be >= 1")
    if budget < 0:
        raise ValueError("budget must be >= 0")
    if not is_causal(p, q):
        raise ValueError(f"{p} and {q} are not causally related")

    ts0 = np.linspace(p.t, q.t, segments + 1)
    xs0 = np.linspace(p.x, q.x, segments + 1)
    best = _weighted_times_from_arrays(ts0, xs0, field, nodes)
    if segments == 1:
        return best  # no interior vertices to move

    # light-cone coordinates: causal polylines = monotone u and v sequences
    u = ts0 + xs0
    v = ts0 - xs0
    u_lo, u_hi = u[0], u[-1]
    v_lo, v_hi = v[0], v[-1]
    scale = 0.25 * max(u_hi - u_lo, v_hi - v_lo)
    if scale == 0.0:
        return best  # p == q: every curve is the degenerate point

    rng = np.random.default_rng(seed)
    for it in range(budget):
        idx = int(rng.integers(1, segments))
        du, dv = rng.normal(0.0, scale * 0.97 ** (it / max(segments, 1)), size=2)
        cu = u.copy()
        cv = v.copy()
        cu[idx] = min(max(cu[idx] + du, u_lo), u_hi)
        cv[idx] = min(max(cv[idx] + dv, v_lo), v_hi)
        cu[1:-1] = np.sort(cu[1:-1])
        cv[1:-1] = np.sort(cv[1:-1])
        value = _weighted_times_from_arrays((cu + cv) / 2.0, (cu - cv) / 2.0, field, nodes)
        if value > best:
            best = value
            u, v = cu, cv
    return best


@dataclass(frozen=True)
class UnitSystem:
    """Physical constants used by the explicit unit-restoring operations."""

    hbar: float  # J s
    c: float  # m / s

    def __post_init__(self):
        if not (self.hbar > 0 and self.c > 0):
            raise ValueError("hbar and c must be strictly positive")


SI_UNITS = UnitSystem(hbar=1.054571817e-34, c=299792458.0)
NATURAL_UNITS = UnitSystem(hbar=1.0, c=1.0)
