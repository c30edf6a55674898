"""Coefficient operators, frame operators, dual vectors and the natural trace.

The analysis map of a window eta under a representation pi is
(V_eta phi)(x) = <phi, pi(x) eta>, a |G| x d matrix with rows indexed by group
elements.  Admissibility of a pair (eta, psi) means V_psi^* V_eta = Id, and
the natural trace on the right group von Neumann algebra is matrix-trace/|G|.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, InvariantViolated, NotInvariant
from .groups import FiniteGroup, GroupVector, Rep, convolution_operator, left_regular_rep
from .numerics import (
    DEFAULT_TOL,
    EIG_FLOOR,
    as_vector,
    eig_hermitian,
    inv_psd,
    inv_sqrt_psd,
    orthonormal_columns,
)
from .reporting import CheckResult


@dataclass(frozen=True)
class CoefficientOperator:
    """Analysis operator V_eta of a window under a representation."""

    rep: Rep
    vector: np.ndarray = field(repr=False)
    matrix: np.ndarray = field(repr=False)  # |G| x dim


def coefficient_operator(rep: Rep, eta) -> CoefficientOperator:
    """Build V_eta; row x is the functional phi -> <phi, rep(x) eta>."""
    eta = as_vector(eta)
    if eta.shape[0] != rep.dim:
        raise DimensionMismatch(f"window length {eta.shape[0]} != rep dim {rep.dim}")
    orbit = np.einsum("xij,j->xi", rep.matrices, eta)
    return CoefficientOperator(rep=rep, vector=eta, matrix=orbit.conj())


def frame_operator(v: CoefficientOperator) -> np.ndarray:
    """S = V^* V, Hermitian positive semidefinite on the representation space."""
    s = v.matrix.conj().T @ v.matrix
    return 0.5 * (s + s.conj().T)


def is_frame_vector(v: CoefficientOperator, floor: float = EIG_FLOOR) -> bool:
    """True iff the frame operator is invertible above the eigenvalue floor."""
    w = eig_hermitian(frame_operator(v)).eigenvalues
    top = float(w[-1]) if w.size else 0.0
    return top > 0.0 and float(w[0]) > floor * top


def canonical_dual(v: CoefficientOperator, floor: float = EIG_FLOOR) -> np.ndarray:
    """Minimal-norm dual window S^-1 eta; raises NotInvertible for non-frames."""
    return inv_psd(frame_operator(v), floor=floor) @ v.vector


def tighten(v: CoefficientOperator, floor: float = EIG_FLOOR) -> np.ndarray:
    """Self-dual window S^-1/2 eta."""
    return inv_sqrt_psd(frame_operator(v), floor=floor) @ v.vector


def is_admissible_pair(rep: Rep, eta, psi, tol: float = DEFAULT_TOL) -> CheckResult:
    """Check V_psi^* V_eta = Id and report the Frobenius residual."""
    v_eta = coefficient_operator(rep, eta)
    v_psi = coefficient_operator(rep, psi)
    residual = float(
        np.linalg.norm(v_psi.matrix.conj().T @ v_eta.matrix - np.eye(rep.dim))
    )
    return CheckResult(name="admissible_pair", residual=residual, tol=tol)


def natural_trace(t, group: FiniteGroup) -> complex:
    """The natural trace on VN_r(G): matrix trace divided by |G|."""
    t = np.asarray(t, dtype=complex)
    if t.shape != (group.order, group.order):
        raise DimensionMismatch(
            f"operator shape {t.shape} does not act on l2 of a group of order {group.order}"
        )
    return complex(np.trace(t)) / group.order


@dataclass(frozen=True)
class TraceFunctional:
    """Linear extension of a finite trace: T -> normalization * matrix-trace(T)."""

    normalization: float
    domain: str = "full"

    def __call__(self, t) -> complex:
        return self.normalization * complex(np.trace(np.asarray(t)))


def trace_functional(group: FiniteGroup) -> TraceFunctional:
    return TraceFunctional(normalization=1.0 / group.order)


@dataclass(frozen=True)
class InvariantProjection:
    """Orthogonal projection on l2(G) commuting with left translation."""

    group: FiniteGroup
    matrix: np.ndarray = field(repr=False)

    def validate(self, tol: float = DEFAULT_TOL) -> None:
        p = self.matrix
        if np.linalg.norm(p @ p - p) > tol * max(1.0, np.linalg.norm(p)):
            raise InvariantViolated("matrix is not idempotent")
        if np.linalg.norm(p - p.conj().T) > tol * max(1.0, np.linalg.norm(p)):
            raise InvariantViolated("matrix is not Hermitian")
        lam = left_regular_rep(self.group)
        for x in self.group.elements():
            if np.linalg.norm(lam.matrices[x] @ p - p @ lam.matrices[x]) > tol * max(
                1.0, np.linalg.norm(p)
            ):
                raise NotInvariant(f"projection does not commute with translation by {x}")

    def rank(self) -> int:
        w = eig_hermitian(self.matrix).eigenvalues
        return int(np.sum(w > 0.5))

    def range_basis(self) -> np.ndarray:
        dec = eig_hermitian(self.matrix)
        keep = dec.eigenvalues > 0.5
        return dec.eigenvectors[:, keep]


def projection_from_spanning(rep: Rep, vectors) -> InvariantProjection:
    """Projection onto the invariant span of the orbit of ``vectors`` under ``rep``.

    ``rep`` must act on l2(G) itself (dim == |G|), the usual setting for
    left translation.
    """
    if rep.dim != rep.group.order:
        raise DimensionMismatch("projection_from_spanning expects a rep on l2(G)")
    cols = []
    for v in vectors:
        w = as_vector(v)
        cols.append(np.einsum("xij,j->ix", rep.matrices, w))
    if not cols:
        return InvariantProjection(rep.group, np.zeros((rep.dim, rep.dim), dtype=complex))
    q = orthonormal_columns(np.hstack(cols))
    return InvariantProjection(rep.group, q @ q.conj().T)


def admissible_vector_for_projection(
    p: InvariantProjection, tol: float = DEFAULT_TOL
) -> GroupVector:
    """Admissible vector for the restriction of left translation to range(p).

    Takes eta = (p delta_e)^* and returns p eta; the result v satisfies
    V_v^* V_v = p.
    """
    p.validate(tol=tol)
    group = p.group
    h = p.matrix[:, group.identity]          # p delta_e
    eta = h[group.inverses].conj()           # involution of p delta_e
    return GroupVector(group, p.matrix @ eta)


def trace_of_projection(p: InvariantProjection) -> float:
    """Natural trace of an invariant projection; equals ||v||^2 for its admissible vector."""
    return float(natural_trace(p.matrix, p.group).real)


def random_invariant_projection_spectral(
    group: FiniteGroup, rng: np.random.Generator
) -> InvariantProjection:
    """Random invariant projection without irrep data.

    Takes a random Hermitian element of VN_r(G) (a symmetrized right
    convolution) and cuts its spectrum at a random genuine gap, so degenerate
    clusters stay together and the spectral projection remains invariant.
    """
    while True:
        data = rng.standard_normal(group.order) + 1j * rng.standard_normal(group.order)
        u = convolution_operator(GroupVector(group, data), side="right")
        dec = eig_hermitian(u + u.conj().T)
        w = dec.eigenvalues
        spread = max(float(w[-1] - w[0]), 1.0)
        cuts = np.nonzero(np.diff(w) > 1e-6 * spread)[0] + 1
        if cuts.size == 0:
            continue
        c = int(rng.choice(cuts))
        q = dec.eigenvectors[:, :c]
        return InvariantProjection(group, q @ q.conj().T)


def dual_null_space(rep: Rep, eta, rel_cutoff: float = 1e-11) -> np.ndarray:
    """Orthonormal basis (columns) of W = {w : V_w^* V_eta = 0}.

    The difference of any two dual vectors of eta lies in W, and the
    canonical dual is orthogonal to it.
    """
    v_eta = coefficient_operator(rep, eta).matrix
    d = rep.dim
    cols = []
    for j in range(d):
        e = np.zeros(d, dtype=complex)
        e[j] = 1.0
        v_j = coefficient_operator(rep, e).matrix
        cols.append((v_j.conj().T @ v_eta).reshape(-1))
    a = np.column_stack(cols)  # maps w -> vec(V_w^* V_eta)
    _, s, vh = np.linalg.svd(a)
    if s.size == 0 or s[0] == 0.0:
        return np.eye(d, dtype=complex)
    rank = int(np.sum(s > rel_cutoff * s[0]))
    return vh[rank:].conj().T
