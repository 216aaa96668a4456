"""Operator-level causality certification on the truncated Moyal model.

A self-adjoint element is a causal function exactly when the operator built
from its two derivatives, twisted by the fundamental symmetry, is negative
semidefinite.  On the truncated model the derivatives are inner: scaled
commutators with the coordinate ladder matrices.  Those commutators are
wrong on the last basis index (the ladder has nowhere to go), so the
assembled operator drops that index; with the top index cropped, coordinate
elements come out exactly at the level of the two-dimensional Clifford
algebra: the time coordinate gives minus the identity, the space coordinate
a symmetric +/-1 spectrum, and their sum the lightlike {0, -2} spectrum.

The witness search turns the abstract state order into something checkable:
state1 precedes state2 only if every certified causal element is
nondecreasing between them, so a certified element with a positive
expectation gap is a proof of NON-causality.  Absence of a witness within a
budget is evidence, never proof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .moyal import (
    FockVector,
    MoyalElement,
    MoyalParams,
    eval_state,
    space_element,
    time_element,
)
from .verdict import CausalVerdict

__all__ = [
    "GammaConventions",
    "FLAT_GAMMAS",
    "TruncatedOperator",
    "CausalWitness",
    "derivative_matrices",
    "assemble_jda",
    "is_causal_element",
    "find_violation",
]


@dataclass(frozen=True, eq=False)
class GammaConventions:
    """Flat 1+1 Dirac matrices and the fundamental symmetry they induce.

    gamma0 is anti-Hermitian, gamma1 Hermitian, the pair anticommutes to the
    metric diag(-1, +1), and the fundamental symmetry J = i*gamma0 squares
    to one and is Hermitian.  ``validate`` asserts all of that exactly.
    """

    gamma0: np.ndarray
    gamma1: np.ndarray

    @classmethod
    def flat_1_1(cls) -> "GammaConventions":
        sigma1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
        sigma2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
        g = cls(gamma0=1j * sigma1, gamma1=sigma2)
        g.validate()
        return g

    @property
    def fundamental_symmetry(self) -> np.ndarray:
        return 1j * self.gamma0

    def validate(self):
        g0, g1 = self.gamma0, self.gamma1
        eye = np.eye(2, dtype=complex)
        checks = [
            ("gamma0 anti-Hermitian", np.array_equal(g0.conj().T, -g0)),
            ("gamma1 Hermitian", np.array_equal(g1.conj().T, g1)),
            ("gamma0^2 = -1", np.array_equal(g0 @ g0, -eye)),
            ("gamma1^2 = +1", np.array_equal(g1 @ g1, eye)),
            ("anticommutator vanishes", np.array_equal(g0 @ g1 + g1 @ g0, np.zeros((2, 2)))),
        ]
        j = self.fundamental_symmetry
        checks += [
            ("J^2 = 1", np.array_equal(j @ j, eye)),
            ("J Hermitian", np.array_equal(j.conj().T, j)),
        ]
        for name, ok in checks:
            if not ok:
                raise AssertionError(f"gamma convention check failed: {name}")


FLAT_GAMMAS = GammaConventions.flat_1_1()


@dataclass(frozen=True, eq=False)
class TruncatedOperator:
    """Hermitian matrix acting on state-vector (x) spinor-2 components.

    ``block`` is the number of surviving basis indices per spinor component;
    the matrix is (2*block) x (2*block).
    """

    matrix: np.ndarray
    params: MoyalParams
    block: int


def derivative_matrices(params: MoyalParams) -> tuple[Callable, Callable]:
    """Linear maps computing coefficient matrices of the two derivatives.

    Derivatives on this algebra are inner: commutators with the coordinate
    matrices, scaled by 1/theta.  The maps are exact derivations at any
    truncation (the matrix Leibniz rule is an identity), and reproduce the
    pointwise derivatives of the represented functions everywhere except on
    the last basis index, where the truncated ladder is wrong.
    """
    x0 = time_element(params).coeffs
    x1 = space_element(params).coeffs
    scale = 1j / params.theta

    def d0(a: MoyalElement) -> MoyalElement:
        return MoyalElement(scale * (x1 @ a.coeffs - a.coeffs @ x1), params, copy=False)

    def d1(a: MoyalElement) -> MoyalElement:
        return MoyalElement(-scale * (x0 @ a.coeffs - a.coeffs @ x0), params, copy=False)

    return d0, d1


def assemble_jda(a: MoyalElement, hermitian_tol: float = 1e-10) -> TruncatedOperator:
    """Causality test operator for a self-adjoint element.

    Assembles (gamma0 gamma^mu) (x) M(d_mu a) from the commutator-realized
    derivatives, then drops the last basis index of each derivative matrix;
    see the module docstring for why the crop is needed.  The result is
    asserted Hermitian to ``hermitian_tol`` and symmetrized.
    """
    N = a.params.truncation
    if N < 2:
        raise ValueError("operator assembly needs truncation >= 2")
    if not a.is_self_adjoint(hermitian_tol):
        raise ValueError("operator assembly requires a self-adjoint element")
    d0, d1 = derivative_matrices(a.params)
    block = N - 1
    d0c = d0(a).coeffs[:block, :block]
    d1c = d1(a).coeffs[:block, :block]
    g0 = FLAT_GAMMAS.gamma0
    g1 = FLAT_GAMMAS.gamma1
    mat = np.kron(g0 @ g0, d0c) + np.kron(g0 @ g1, d1c)
    defect = float(np.max(np.abs(mat - mat.conj().T)))
    if defect > hermitian_tol:
        raise ValueError(f"assembled operator is not Hermitian (defect {defect:.3e})")
    mat = (mat + mat.conj().T) / 2.0
    return TruncatedOperator(mat, a.params, block)


def _edge_weight(vec: np.ndarray, block: int) -> float:
    """Probability weight of a (2*block)-vector on the two highest indices."""
    comps = vec.reshape(2, block)
    top = min(2, block)
    return float(np.sum(np.abs(comps[:, block - top:]) ** 2) / np.sum(np.abs(comps) ** 2))


def is_causal_element(a: MoyalElement, tol: float = 1e-9) -> CausalVerdict:
    """Certify a self-adjoint element as a causal function, or refute it.

    Causal when the largest eigenvalue of the assembled operator is <= tol.
    A violation is only trusted when it lives away from the truncation edge:
    either the maximizing eigenvector has under 1% weight on the two highest
    surviving indices, or compressing the operator onto the lower indices
    still shows a positive eigenvalue (a basis-independent interior witness,
    needed when the top eigenvalue is degenerate).  Otherwise the verdict is
    Undetermined.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    op = assemble_jda(a)
    w, v = np.linalg.eigh(op.matrix)
    lam_max = float(w[-1])
    if lam_max <= tol:
        return CausalVerdict.causal()
    block = op.block
    if _edge_weight(v[:, -1], block) < 0.01:
        return CausalVerdict.not_causal("interior eigenvector violation")
    interior = block - 2
    if interior >= 1:
        keep = np.concatenate([np.arange(interior), block + np.arange(interior)])
        sub = op.matrix[np.ix_(keep, keep)]
        if float(np.linalg.eigvalsh(sub)[-1]) > tol:
            return CausalVerdict.not_causal("interior compression violation")
    return CausalVerdict.undetermined("truncation edge")


@dataclass(frozen=True, eq=False)
class CausalWitness:
    """Certified causal element with a positive expectation gap.

    The element is certified causal, yet its expectation decreases from
    state1 to state2 by ``margin`` > 0, so state1 cannot precede state2.
    """

    element: MoyalElement
    margin: float

    def __post_init__(self):
        if not self.margin > 0:
            raise ValueError(f"witness margin must be positive, got {self.margin}")


def _hermitian(arr: np.ndarray) -> np.ndarray:
    return (arr + arr.conj().T) / 2.0


def find_violation(
    state1: FockVector,
    state2: FockVector,
    budget: int = 2000,
    seed: int = 0,
    tol: float = 1e-9,
) -> CausalWitness | None:
    """Search for a certified causal element separating two states.

    Seeded projected local search over self-adjoint elements maximizing
    eval_state(state1, a) - eval_state(state2, a) subject to the causal
    certificate.  Candidates are damped on high basis indices (entries with
    index sum beyond the truncation shrink exponentially) and projected into
    the certified cone by shifting along the time-coordinate element, whose
    assembled operator is exactly minus the identity, then rescaling.
    Returns the first witness whose margin exceeds 10*tol, or None when the
    budget runs out.  None is evidence of causality, not a proof.
    """
    if state1.params != state2.params:
        raise ValueError(f"parameter mismatch: {state1.params} vs {state2.params}")
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    params = state1.params
    N = params.truncation
    theta = params.theta

    # gradient of the margin functional: margin(A) = Re tr(A W)
    w_mat = _hermitian(
        2.0 * math.pi * theta * (np.outer(state1.psi, state1.psi.conj())
                                 - np.outer(state2.psi, state2.psi.conj()))
    )
    idx = np.arange(N)
    damp = np.exp(-np.maximum(idx[:, None] + idx[None, :] - N, 0).astype(float))
    t_arr = time_element(params).coeffs
    threshold = 10.0 * tol

    def project(direction: np.ndarray) -> MoyalElement | None:
        cand = direction
        for _ in range(4):
            elem = MoyalElement(cand, params, copy=False)
            op = assemble_jda(elem)
            lam = float(np.linalg.eigvalsh(op.matrix)[-1])
            if lam <= tol:
                return elem
            cand = cand + (lam + max(tol, 1e-12)) * t_arr
            norm = np.linalg.norm(cand)
            if norm == 0:
                return None
            cand = cand / norm
        return None

    def margin_of(elem: MoyalElement) -> float:
        return (eval_state(state1, elem) - eval_state(state2, elem)).real

    rng = np.random.default_rng(seed)
    base = _hermitian(w_mat * damp)
    norm = np.linalg.norm(base)
    current = base / norm if norm > 0 else base
    current_margin = -math.inf

    elem = project(current)
    if elem is not None:
        current_margin = margin_of(elem)
        if current_margin > threshold and is_causal_element(elem, tol).is_causal:
            return CausalWitness(elem, current_margin)

    for it in range(budget):
        noise = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
        sigma = 0.5 * 0.999**it
        cand = _hermitian(current + sigma * noise) * damp
        norm = np.linalg.norm(cand)
        if norm == 0:
            continue
        cand = cand / norm
        elem = project(cand)
        if elem is None:
            continue
        margin = margin_of(elem)
        if margin > threshold and is_causal_element(elem, tol).is_causal:
            return CausalWitness(elem, margin)
        if margin > current_margin:
            current = cand
            current_margin = margin
    return None
