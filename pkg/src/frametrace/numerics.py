"""Dense complex linear-algebra kernels used by every other module.

All operations work on ordinary numpy arrays of complex doubles.  Inputs
pass through :func:`as_matrix`, which rejects non-finite entries; everything
downstream may assume clean data.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotHermitian, NotInvertible

#: Default relative tolerance for operator-identity checks.
DEFAULT_TOL = 1e-9

#: Relative eigenvalue floor below which an operator counts as singular.
EIG_FLOOR = 1e-12


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-d complex array, rejecting NaN/Inf entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix contains non-finite entries")
    return m


def as_vector(v) -> np.ndarray:
    """Coerce to a 1-d complex array, rejecting NaN/Inf entries."""
    w = np.asarray(v, dtype=complex).reshape(-1)
    if not np.all(np.isfinite(w.real)) or not np.all(np.isfinite(w.imag)):
        raise ValueError("vector contains non-finite entries")
    return w


def matmul(a, b) -> np.ndarray:
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def frob_inner(a, b) -> complex:
    """Frobenius inner product sum_ij a[i,j] * conj(b[i,j])."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes differ: {a.shape} vs {b.shape}")
    return complex(np.sum(a * b.conj()))


def frob_norm(a) -> float:
    return float(np.linalg.norm(np.asarray(a)))


@dataclass(frozen=True)
class HermEig:
    """Eigendecomposition A = Q diag(w) Q* with w ascending and Q unitary."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        q = self.eigenvectors
        return (q * self.eigenvalues) @ q.conj().T


def _require_hermitian(a: np.ndarray, tol: float) -> None:
    scale = max(frob_norm(a), 1.0)
    if frob_norm(a - a.conj().T) > tol * scale:
        raise NotHermitian("matrix is not Hermitian within tolerance")


def eig_hermitian(a, tol: float = DEFAULT_TOL) -> HermEig:
    """Hermitian eigendecomposition (ascending eigenvalues)."""
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch("eig_hermitian needs a square matrix")
    _require_hermitian(a, tol)
    w, q = np.linalg.eigh(a)
    return HermEig(eigenvalues=w, eigenvectors=q)


def _psd_spectrum(a, floor: float, tol: float) -> HermEig:
    dec = eig_hermitian(a, tol=tol)
    w = dec.eigenvalues
    top = float(w[-1]) if w.size else 0.0
    if top <= 0.0 or float(w[0]) <= floor * top:
        raise NotInvertible(
            f"eigenvalue floor violated: min={w[0] if w.size else 0.0:.3e}, "
            f"max={top:.3e}, floor={floor:.1e}"
        )
    return dec

def inv_psd(a, floor: float = EIG_FLOOR, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Inverse of a Hermitian positive definite matrix.

    Raises :class:`NotInvertible` when the smallest eigenvalue falls at or
    below ``floor`` times the largest, which is how a failed frame property
    surfaces numerically.
    """
    dec = _psd_spectrum(a, floor, tol)
    q = dec.eigenvectors
    return (q / dec.eigenvalues) @ q.conj().T


def inv_sqrt_psd(a, floor: float = EIG_FLOOR, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Inverse square root A^(-1/2) of a Hermitian positive definite matrix."""
    dec = _psd_spectrum(a, floor, tol)
    q = dec.eigenvectors
    return (q / np.sqrt(dec.eigenvalues)) @ q.conj().T


def orthonormal_columns(vectors, rel_cutoff: float = 1e-11) -> np.ndarray:
    """Orthonormal basis for the column span of ``vectors`` (d x k array).

    Uses an SVD with a relative singular-value cutoff, so nearly dependent
    columns are deduplicated.  Returns a d x r array with orthonormal columns.
    """
    m = np.asarray(vectors, dtype=complex)
    if m.ndim != 2 or m.shape[1] == 0 or not np.any(m):
        return np.zeros((m.shape[0] if m.ndim == 2 else 0, 0), dtype=complex)
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    rank = int(np.sum(s > rel_cutoff * s[0]))
    return u[:, :rank]
