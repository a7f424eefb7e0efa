"""Dense Hermitian eigen-calculus.

Every matrix function in the library (asin, atan, log, non-integer powers)
goes through the spectral decomposition of a Hermitian operator; power
series are never used.  Scalar maps with restricted real domains are
evaluated per eigenvalue on an explicit complex branch, see
:func:`arcsin_branch`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, NumericError

HERMITICITY_RTOL = 1e-12


def frobenius(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def ensure_hermitian(h: np.ndarray, rtol: float = HERMITICITY_RTOL) -> np.ndarray:
    """Symmetrise ``h`` to (H + H†)/2, rejecting inputs beyond ``rtol``.

    The defect is measured in relative Frobenius norm.
    """
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DomainError(f"operator must be a square matrix, got shape {h.shape}")
    scale = frobenius(h)
    defect = frobenius(h - h.conj().T)
    if scale > 0.0 and defect > rtol * scale:
        raise DomainError(
            f"matrix is not Hermitian: relative defect {defect / scale:.3e} > {rtol:.0e}"
        )
    return 0.5 * (h + h.conj().T)


@dataclass(frozen=True)
class EigenBasis:
    """Spectral decomposition H = V diag(w) V† of a Hermitian operator.

    Attributes
    ----------
    eigenvalues : (n,) float ndarray, ascending
    eigenvectors : (n, n) complex ndarray, columns are eigenvectors
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @classmethod
    def from_operator(cls, h: np.ndarray) -> "EigenBasis":
        h = ensure_hermitian(h)
        try:
            w, v = np.linalg.eigh(h)
        except np.linalg.LinAlgError as exc:
            raise NumericError(
                "eigendecomposition failed "
                f"(dim={h.shape[0]}, cond~{_cond_report(h)})"
            ) from exc
        return cls(eigenvalues=w, eigenvectors=v)

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    def reconstruct(self) -> np.ndarray:
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.conj().T

    def to_eigenbasis(self, vec: np.ndarray) -> np.ndarray:
        """Amplitudes of ``vec`` over the eigenvectors."""
        return self.eigenvectors.conj().T @ vec

    def from_eigenbasis(self, coeffs: np.ndarray) -> np.ndarray:
        return self.eigenvectors @ coeffs

    def apply(self, scalars: np.ndarray, vec: np.ndarray) -> np.ndarray:
        """Apply V diag(scalars) V† to a vector."""
        return self.eigenvectors @ (scalars * (self.eigenvectors.conj().T @ vec))

    def assemble(self, scalars: np.ndarray) -> np.ndarray:
        """Matrix V diag(scalars) V†."""
        return (self.eigenvectors * scalars) @ self.eigenvectors.conj().T


def _cond_report(h: np.ndarray) -> str:
    try:
        return f"{np.linalg.cond(h):.3e}"
    except Exception:
        return "unavailable"


def matrix_function(h: np.ndarray, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Evaluate f(H) = V f(w) V† for Hermitian H.

    ``f`` receives the real eigenvalue array and may return complex values;
    callers choose the complex branch (see :func:`arcsin_branch`).
    """
    basis = EigenBasis.from_operator(h)
    return basis.assemble(np.asarray(f(basis.eigenvalues)))


def arcsin_branch(x) -> np.ndarray:
    """arcsin on reals, continued past |x| = 1 on the decaying branch.

    For |x| > 1 returns ``sign(x)*pi/2 - 1j*sign(x)*log(|x| + sqrt(x^2-1))``,
    so exp(-1j*k*arcsin_branch(x)) decays with k for x > 1.  Note this is
    the conjugate of numpy's principal value on the cut.
    """
    x = np.asarray(x, dtype=float)
    out = np.asarray(np.arcsin(np.clip(x, -1.0, 1.0)), dtype=complex)
    outside = np.abs(x) > 1.0
    if np.any(outside):
        xo = x[outside]
        s = np.sign(xo)
        ax = np.abs(xo)
        out[outside] = s * (np.pi / 2.0) - 1j * s * np.log(ax + np.sqrt(ax * ax - 1.0))
    if out.ndim == 0:
        return out[()]
    return out


def arccos_branch(y) -> np.ndarray:
    """arccos on reals, continued past y = -1 on the decaying branch.

    For y < -1 returns ``pi - 1j*log(|y| + sqrt(y^2-1))`` so that
    exp(-1j*k*arccos_branch(y)) decays with k.  Coincides with
    2*arcsin_branch(x) at y = 1 - 2 x^2.
    """
    y = np.asarray(y, dtype=float)
    out = np.asarray(np.arccos(np.clip(y, -1.0, 1.0)), dtype=complex)
    below = y < -1.0
    if np.any(below):
        ay = np.abs(y[below])
        out[below] = np.pi - 1j * np.log(ay + np.sqrt(ay * ay - 1.0))
    if np.any(y > 1.0):
        raise DomainError("arccos_branch defined only for arguments <= 1")
    if out.ndim == 0:
        return out[()]
    return out
