"""Truncated matrix model of the Moyal plane.

In the harmonic oscillator eigenfunction basis the star product of two
functions turns into an ordinary matrix product of their coefficient
matrices, so a truncation to the first N basis indices makes the whole
algebra finite dimensional.  Conventions used throughout:

- complex coordinate z = (x0 + i*x1)/sqrt(2); its coefficient matrix Z is
  the lowering ladder with entries sqrt(theta*(n+1)) on the superdiagonal,
  and the conjugate coordinate is the transpose conjugate Zbar.  With this
  choice [Z, Zbar] = theta on every index except the last truncated one,
  and a coherent state labelled kappa has expectation kappa for Z.
- vector states are coefficient vectors normalized to
  2*pi*theta * sum |psi_m|^2 = 1.
- a coherent state is the ground state displaced by kappa; displacement is
  the exponential of (kappa*Zbar - conj(kappa)*Z)/theta.
- two coherent states are causally ordered exactly when the displacement
  between their labels lies in the closed cone Re >= |Im| of the complex
  plane (time runs along the positive real axis).
- between distinct oscillator levels only a sufficient condition is known:
  a real forward displacement of at least (pi/2)*sqrt(theta/2)/sqrt(n+1)
  bridges levels n and n+1, in both directions.  Mixed-level queries are
  answered by chaining such moves, and can therefore return Causal or
  Undetermined but never NotCausal.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from .verdict import CausalVerdict

__all__ = [
    "MoyalParams",
    "MoyalElement",
    "FockVector",
    "GeneralizedCoherentState",
    "TruncationError",
    "wigner_basis_eval",
    "star_product_matrix",
    "coordinate_elements",
    "time_element",
    "space_element",
    "eval_state",
    "coherent_state",
    "translate",
    "coherent_causal",
    "level_jump_bound",
    "generalized_coherent_causal",
]


class TruncationError(ValueError):
    """Raised when the basis truncation cannot support a requested operation."""


@dataclass(frozen=True)
class MoyalParams:
    """Noncommutativity scale theta > 0 and basis truncation N >= 1."""

    theta: float
    truncation: int

    def __post_init__(self):
        if not (math.isfinite(self.theta) and self.theta > 0):
            raise ValueError(f"theta must be positive and finite, got {self.theta}")
        if int(self.truncation) != self.truncation or self.truncation < 1:
            raise ValueError(f"truncation must be an integer >= 1, got {self.truncation}")
        object.__setattr__(self, "truncation", int(self.truncation))


def _check_same_params(a: MoyalParams, b: MoyalParams):
    if a != b:
        raise ValueError(f"parameter mismatch: {a} vs {b}")


class MoyalElement:
    """Algebra element as an N x N coefficient matrix over the function basis."""

    __slots__ = ("coeffs", "params")

    def __init__(self, coeffs, params: MoyalParams, copy: bool = True):
        arr = np.array(coeffs, dtype=complex, copy=True if copy else None)
        n = params.truncation
        if arr.shape != (n, n):
            raise ValueError(f"coefficients must be {n} x {n}, got {arr.shape}")
        if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
            raise ValueError("coefficients must be finite")
        self.coeffs = arr
        self.params = params

    @classmethod
    def zeros(cls, params: MoyalParams) -> "MoyalElement":
        return cls(np.zeros((params.truncation, params.truncation)), params, copy=False)

    @classmethod
    def identity(cls, params: MoyalParams) -> "MoyalElement":
        return cls(np.eye(params.truncation), params, copy=False)

    @classmethod
    def basis(cls, m: int, n: int, params: MoyalParams) -> "MoyalElement":
        N = params.truncation
        if not (0 <= m < N and 0 <= n < N):
            raise ValueError(f"basis indices must lie in [0, {N}), got ({m}, {n})")
        c = np.zeros((N, N), dtype=complex)
        c[m, n] = 1.0
        return cls(c, params, copy=False)

    def dagger(self) -> "MoyalElement":
        return MoyalElement(self.coeffs.conj().T, self.params, copy=False)

    def is_self_adjoint(self, tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.coeffs - self.coeffs.conj().T)) <= tol)

    def star(self, other: "MoyalElement") -> "MoyalElement":
        return star_product_matrix(self, other)

    def evaluate(self, x0, x1) -> np.ndarray:
        """Pointwise values of the represented function at (x0, x1)."""
        x0 = np.asarray(x0, dtype=float)
        x1 = np.asarray(x1, dtype=float)
        out = np.zeros(np.broadcast(x0, x1).shape, dtype=complex)
        rows, cols = np.nonzero(self.coeffs)
        for m, n in zip(rows, cols):
            out = out + self.coeffs[m, n] * wigner_basis_eval(int(m), int(n), self.params, x0, x1)
        return out

    def __add__(self, other):
        _check_same_params(self.params, other.params)
        return MoyalElement(self.coeffs + other.coeffs, self.params, copy=False)

    def __sub__(self, other):
        _check_same_params(self.params, other.params)
        return MoyalElement(self.coeffs - other.coeffs, self.params, copy=False)

    def __neg__(self):
        return MoyalElement(-self.coeffs, self.params, copy=False)

    def __rmul__(self, scalar):
        return MoyalElement(complex(scalar) * self.coeffs, self.params, copy=False)

    def __repr__(self):
        return f"MoyalElement(N={self.params.truncation}, theta={self.params.theta})"


def star_product_matrix(a: MoyalElement, b: MoyalElement) -> MoyalElement:
    """Star product via coefficient matrix multiplication.

    The basis functions multiply like matrix units, so coefficients compose
    by a plain matrix product; associativity is inherited from it.
    """
    _check_same_params(a.params, b.params)
    return MoyalElement(a.coeffs @ b.coeffs, a.params, copy=False)


# ---------------------------------------------------------------------------
# basis function evaluation
#
# Each basis function is a polynomial in (z, zbar) times the shared Gaussian
# factor.  Building the index-(m, n) function from the ground one uses
#   zbar * f : polynomial -> 2*zbar*P - (theta/2) dP/dz      (raises m)
#   f * z    : polynomial -> 2*z*P    - (theta/2) dP/dzbar   (raises n)
# which is the star product of a linear function with a Gaussian-times-
# polynomial, written out in complex coordinates.
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _wigner_poly(theta: float, m: int, n: int):
    """Coefficient array C with f_{mn} = sum C[i,j] z^i zbar^j * gaussian."""
    if m == 0 and n == 0:
        return np.array([[2.0 + 0j]])
    if m > 0:
        prev = _wigner_poly(theta, m - 1, n)
        rows, cols = prev.shape
        out = np.zeros((rows, cols + 1), dtype=complex)
        out[:, 1:] += 2.0 * prev  # multiply by zbar
        for i in range(1, rows):  # -(theta/2) d/dz
            out[i - 1, :cols] -= 0.5 * theta * i * prev[i, :]
        return out / math.sqrt(theta * m)
    prev = _wigner_poly(theta, m, n - 1)
    rows, cols = prev.shape
    out = np.zeros((rows + 1, cols), dtype=complex)
    out[1:, :] += 2.0 * prev  # multiply by z
    for j in range(1, cols):  # -(theta/2) d/dzbar
        out[:rows, j - 1] -= 0.5 * theta * j * prev[:, j]
    return out / math.sqrt(theta * n)


def wigner_basis_eval(m: int, n: int, params: MoyalParams, x0, x1) -> np.ndarray:
    """Evaluate the (m, n) basis function at points (x0, x1).

    The ground function is the closed-form Gaussian 2*exp(-(x0^2+x1^2)/theta);
    higher indices are built by the ladder recursion above with the
    normalization 1/sqrt(theta^(m+n) m! n!).
    """
    N = params.truncation
    if not (0 <= m < N and 0 <= n < N):
        raise ValueError(f"basis indices must lie in [0, {N}), got ({m}, {n})")
    x0 = np.asarray(x0, dtype=float)
    x1 = np.asarray(x1, dtype=float)
    z = (x0 + 1j * x1) / math.sqrt(2.0)
    zbar = np.conj(z)
    gauss = np.exp(-(x0**2 + x1**2) / params.theta)
    poly = _wigner_poly(params.theta, m, n)
    val = np.zeros(np.broadcast(x0, x1).shape, dtype=complex)
    for i, j in zip(*np.nonzero(poly)):
        val = val + poly[i, j] * z ** int(i) * zbar ** int(j)
    return val * gauss


# ---------------------------------------------------------------------------
# coordinates and states
# ---------------------------------------------------------------------------


def coordinate_elements(params: MoyalParams) -> tuple[MoyalElement, MoyalElement]:
    """Truncated coefficient matrices of z and zbar.

    Z is the lowering ladder (entries sqrt(theta*(n+1)) one step above the
    diagonal); Zbar is its conjugate transpose.  The ladder direction is
    pinned by requiring the left and right products with basis functions to
    match the evaluation recursion, equivalently by eval_state(coherent
    kappa, Z) = kappa.
    """
    N = params.truncation
    ladder = np.sqrt(params.theta * np.arange(1, N, dtype=float))
    z = np.diag(ladder, k=1).astype(complex)
    return (
        MoyalElement(z, params, copy=False),
        MoyalElement(z.conj().T, params, copy=False),
    )


def time_element(params: MoyalParams) -> MoyalElement:
    """Coefficient matrix of the time coordinate x0 = (z + zbar)/sqrt(2)."""
    z, zbar = coordinate_elements(params)
    return MoyalElement((z.coeffs + zbar.coeffs) / math.sqrt(2.0), params, copy=False)


def space_element(params: MoyalParams) -> MoyalElement:
    """Coefficient matrix of the space coordinate x1 = -i(z - zbar)/sqrt(2)."""
    z, zbar = coordinate_elements(params)
    return MoyalElement(-1j * (z.coeffs - zbar.coeffs) / math.sqrt(2.0), params, copy=False)


class FockVector:
    """Truncated coefficient vector of a normalized vector state."""

    NORM_TOL = 1e-9

    __slots__ = ("psi", "params")

    def __init__(self, psi, params: MoyalParams, copy: bool = True):
        vec = np.array(psi, dtype=complex, copy=True if copy else None)
        if vec.shape != (params.truncation,):
            raise ValueError(
                f"state vector must have length {params.truncation}, got shape {vec.shape}"
            )
        if not np.all(np.isfinite(vec.real)) or not np.all(np.isfinite(vec.imag)):
            raise ValueError("state coefficients must be finite")
        weight = 2.0 * math.pi * params.theta * float(np.sum(np.abs(vec) ** 2))
        if abs(weight - 1.0) > self.NORM_TOL:
            raise ValueError(
                f"state must satisfy 2*pi*theta*sum|psi|^2 = 1 within {self.NORM_TOL}, got {weight}"
            )
        self.psi = vec
        self.params = params

    @classmethod
    def ground(cls, params: MoyalParams) -> "FockVector":
        return cls.basis_level(0, params)

    @classmethod
    def basis_level(cls, level: int, params: MoyalParams) -> "FockVector":
        if not 0 <= level < params.truncation:
            raise ValueError(f"level must lie in [0, {params.truncation}), got {level}")
        vec = np.zeros(params.truncation, dtype=complex)
        vec[level] = 1.0 / math.sqrt(2.0 * math.pi * params.theta)
        return cls(vec, params, copy=False)

    def norm_weight(self) -> float:
        return 2.0 * math.pi * self.params.theta * float(np.sum(np.abs(self.psi) ** 2))

    def __repr__(self):
        return f"FockVector(N={self.params.truncation}, theta={self.params.theta})"


def eval_state(psi: FockVector, a: MoyalElement) -> complex:
    """State expectation 2*pi*theta * psi^dagger A psi; real for self-adjoint A."""
    _check_same_params(psi.params, a.params)
    return complex(
        2.0 * math.pi * psi.params.theta * (psi.psi.conj() @ a.coeffs @ psi.psi)
    )


def coherent_state(kappa: complex, params: MoyalParams) -> FockVector:
    """Ground state displaced by kappa, truncated at N.

    Coefficients exp(-|kappa|^2/(2 theta)) kappa^m / sqrt(2 pi theta m! theta^m).
    Raises TruncationError when the truncated tail would spoil the
    normalization by more than the state tolerance.
    """
    kappa = complex(kappa)
    N = params.truncation
    theta = params.theta
    coeff = np.empty(N, dtype=complex)
    coeff[0] = 1.0
    for m in range(1, N):
        coeff[m] = coeff[m - 1] * kappa / math.sqrt(m * theta)
    coeff *= math.exp(-abs(kappa) ** 2 / (2.0 * theta)) / math.sqrt(2.0 * math.pi * theta)
    weight = 2.0 * math.pi * theta * float(np.sum(np.abs(coeff) ** 2))
    if abs(weight - 1.0) > FockVector.NORM_TOL:
        raise TruncationError(
            f"truncation N={N} too small for kappa={kappa} "
            f"(normalization defect {abs(weight - 1.0):.3e})"
        )
    return FockVector(coeff, params, copy=False)


def translate(psi: FockVector, kappa: complex) -> FockVector:
    """Displace a state by kappa.

    Applies the matrix exponential of (kappa*Zbar - conj(kappa)*Z)/theta; with
    this generator the displaced ground state is exactly the coherent state of
    the same label.  The exponential runs in an internally padded space (the
    exponential of the bare truncated generator would be exactly unitary and
    silently wrong for large displacements); cropping back to the truncation
    and renormalizing makes the correction an honest measure of probability
    pushed past the basis cut, and the call fails when it reaches 1e-6.
    """
    kappa = complex(kappa)
    if kappa == 0:
        return psi
    params = psi.params
    N = params.truncation
    alpha = abs(kappa) / math.sqrt(params.theta)
    pad = max(16, math.ceil(8.0 * alpha + 4.0 * alpha * alpha))
    ladder = np.sqrt(params.theta * np.arange(1, N + pad, dtype=float))
    z_big = np.diag(ladder, k=1).astype(complex)
    gen = (kappa * z_big.conj().T - np.conj(kappa) * z_big) / params.theta
    big = np.zeros(N + pad, dtype=complex)
    big[:N] = psi.psi
    kept = (scipy.linalg.expm(gen) @ big)[:N]
    weight = 2.0 * math.pi * params.theta * float(np.sum(np.abs(kept) ** 2))
    correction = abs(math.sqrt(weight) - 1.0)
    if correction >= 1e-6:
        raise TruncationError(
            f"translation by {kappa} leaks past truncation N={N} "
            f"(renormalization correction {correction:.3e})"
        )
    return FockVector(kept / math.sqrt(weight), params, copy=False)


# ---------------------------------------------------------------------------
# closed-form causal predicates
# ---------------------------------------------------------------------------


def coherent_causal(kappa1: complex, kappa2: complex) -> bool:
    """Causal order between coherent states: displacement in the closed cone.

    True exactly when d = kappa2 - kappa1 satisfies Re(d) >= |Im(d)|, i.e.
    the argument of d lies in [-pi/4, pi/4] (d = 0 included).  Independent
    of theta.
    """
    d = complex(kappa2) - complex(kappa1)
    return d.real >= abs(d.imag)


def level_jump_bound(n: int, theta: float) -> float:
    """Least real displacement bridging oscillator levels n and n+1.

    (pi/2) * sqrt(theta/2) / sqrt(n+1); decreasing in n, scales as
    sqrt(theta), and vanishes as theta -> 0 where all levels merge into
    ordinary flat-space causality.
    """
    if n < 0 or int(n) != n:
        raise ValueError(f"level must be a nonnegative integer, got {n}")
    if not theta > 0:
        raise ValueError(f"theta must be positive, got {theta}")
    return (math.pi / 2.0) * math.sqrt(theta / 2.0) / math.sqrt(n + 1.0)


@dataclass(frozen=True)
class GeneralizedCoherentState:
    """Oscillator level n displaced by kappa."""

    level: int
    kappa: complex
    params: MoyalParams

    def __post_init__(self):
        if self.level < 0 or int(self.level) != self.level:
            raise ValueError(f"level must be a nonnegative integer, got {self.level}")
        if self.level >= self.params.truncation:
            raise ValueError(
                f"level {self.level} needs truncation > {self.level}, "
                f"got {self.params.truncation}"
            )
        object.__setattr__(self, "kappa", complex(self.kappa))

    def to_vector(self) -> FockVector:
        return translate(FockVector.basis_level(self.level, self.params), self.kappa)


def _min_jump_cost(start: int, goal: int, theta: float, level_cap: int) -> float:
    """Cheapest total real displacement over level-jump chains start -> goal.

    Dijkstra over the level line with edge (l, l+1) priced at the published
    jump bound for the lower level l.  Excursions above the cap are never
    cheaper because every edge has positive cost, so the cap only bounds the
    search.
    """
    if start == goal:
        return 0.0
    dist = {start: 0.0}
    heap = [(0.0, start)]
    while heap:
        d, lvl = heapq.heappop(heap)
        if lvl == goal:
            return d
        if d > dist.get(lvl, math.inf):
            continue
        for nxt in (lvl - 1, lvl + 1):
            if nxt < 0 or nxt > level_cap:
                continue
            nd = d + level_jump_bound(min(lvl, nxt), theta)
            if nd < dist.get(nxt, math.inf):
                dist[nxt] = nd
                heapq.heappush(heap, (nd, nxt))
    return math.inf


def generalized_coherent_causal(
    a: GeneralizedCoherentState,
    b: GeneralizedCoherentState,
    level_slack: int = 4,
) -> CausalVerdict:
    """Decide a ⪯ b by chaining the two published sufficient moves.

    Moves: (i) stay on a level and translate by any displacement in the
    closed cone Re >= |Im|; (ii) hop to an adjacent level with a real
    forward displacement of at least the level-jump bound.  A chain from a
    to b whose displacements sum to kappa_b - kappa_a exists exactly when

        Re(dk) >= (cheapest jump cost between the levels) + |Im(dk)|

    since jumps consume real displacement only and the imaginary budget must
    be absorbed by cone moves.  The jump cost comes from a shortest-path
    search over level moves, capped at max(level_a, level_b) + level_slack.
    Because the published conditions are sufficient only, failure to find a
    chain yields Undetermined, never NotCausal.
    """
    if a.params.theta != b.params.theta:
        raise ValueError(
            f"theta mismatch: {a.params.theta} vs {b.params.theta}"
        )
    if level_slack < 0:
        raise ValueError("level_slack must be nonnegative")
    dk = b.kappa - a.kappa
    cap = max(a.level, b.level) + level_slack
    cost = _min_jump_cost(a.level, b.level, a.params.theta, cap)
    if dk.real >= cost + abs(dk.imag):
        return CausalVerdict.causal()
    return CausalVerdict.undetermined("no chain under published sufficient conditions")
