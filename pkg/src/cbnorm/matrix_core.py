"""Dense complex linear algebra: SVD, trace norm, fidelity, positivity tests.

Everything here operates on plain 2-D complex ``numpy.ndarray`` values and is
a pure function of its inputs. LAPACK non-convergence surfaces as
``numpy.linalg.LinAlgError``; it is never swallowed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SvdResult",
    "as_matrix",
    "dagger",
    "hermitian_part",
    "hs_inner",
    "svd",
    "trace_norm",
    "frobenius_norm",
    "spectral_norm",
    "optimal_unitary",
    "psd_sqrt",
    "fidelity",
    "is_hermitian",
    "is_psd",
    "is_isometry",
]

# Eigenvalues above -PSD_CLAMP_TOL are treated as numerically zero; anything
# below it means the input is genuinely not PSD.
PSD_CLAMP_TOL = 1e-8


def as_matrix(m) -> np.ndarray:
    """Coerce to a finite 2-D complex128 array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    if not (np.all(np.isfinite(a.real)) and np.all(np.isfinite(a.imag))):
        raise ValueError("matrix contains NaN or Inf entries")
    return a


def dagger(a: np.ndarray) -> np.ndarray:
    return np.asarray(a).conj().T


def hermitian_part(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    return (a + a.conj().T) / 2


def hs_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product <A,B> = Tr(A* B)."""
    return complex(np.vdot(a, b))


@dataclass
class SvdResult:
    """Factorization M = left @ diag(singular_values) @ right*.

    ``left`` and ``right`` are isometries; singular values are sorted
    nonincreasing.
    """

    left: np.ndarray
    singular_values: np.ndarray
    right: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.left * self.singular_values) @ self.right.conj().T

    def rank(self, rel_tol: float = 1e-10) -> int:
        s = self.singular_values
        if s.size == 0 or s[0] == 0.0:
            return 0
        return int(np.count_nonzero(s > rel_tol * s[0]))


def svd(m) -> SvdResult:
    a = as_matrix(m)
    left, s, vh = np.linalg.svd(a, full_matrices=False)
    return SvdResult(left=left, singular_values=s, right=vh.conj().T)


def trace_norm(m) -> float:
    """Sum of singular values."""
    a = as_matrix(m)
    return float(np.linalg.svd(a, compute_uv=False).sum())


def frobenius_norm(m) -> float:
    return float(np.linalg.norm(np.asarray(m)))


def spectral_norm(m) -> float:
    a = as_matrix(m)
    s = np.linalg.svd(a, compute_uv=False)
    return float(s[0]) if s.size else 0.0


def optimal_unitary(m) -> np.ndarray:
    """Unitary U maximizing Re<U,M>, so that <U,M> = trace_norm(M).

    With M = W S Z* this is U = W Z*. For degenerate singular values any
    maximizer is acceptable; only the inner-product contract is fixed.
    """
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"optimal_unitary needs a square matrix, got {a.shape}")
    w, _, zh = np.linalg.svd(a)
    return w @ zh


def psd_sqrt(p) -> np.ndarray:
    """Hermitian square root of a PSD matrix.

    Slightly negative eigenvalues (above -1e-8) are clamped to zero; anything
    more negative raises ValueError.
    """
    a = as_matrix(p)
    herm_defect = np.abs(a - a.conj().T).max() if a.size else 0.0
    scale = max(1.0, np.abs(a).max()) if a.size else 1.0
    if herm_defect > 1e-10 * scale:
        raise ValueError(f"matrix is not Hermitian (defect {herm_defect:.2e})")
    w, v = np.linalg.eigh(hermitian_part(a))
    if w.size and w.min() < -PSD_CLAMP_TOL * scale:
        raise ValueError(f"matrix is not PSD (min eigenvalue {w.min():.2e})")
    w = np.clip(w, 0.0, None)
    return hermitian_part((v * np.sqrt(w)) @ v.conj().T)


def fidelity(p, q) -> float:
    """F(P,Q) = || sqrt(P) sqrt(Q) ||_1 for PSD P, Q."""
    a, b = as_matrix(p), as_matrix(q)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return trace_norm(psd_sqrt(a) @ psd_sqrt(b))


def is_hermitian(m, tol: float = 1e-8) -> bool:
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    return bool(np.abs(a - a.conj().T).max() <= tol) if a.size else True


def is_psd(m, tol: float = 1e-8) -> bool:
    a = as_matrix(m)
    if not is_hermitian(a, tol):
        return False
    w = np.linalg.eigvalsh(hermitian_part(a))
    return bool(w.min() >= -tol) if w.size else True


def is_isometry(m, tol: float = 1e-8) -> bool:
    """True when M*M = I within tol in spectral norm (requires rows >= cols)."""
    a = as_matrix(m)
    if a.shape[0] < a.shape[1]:
        return False
    gram = a.conj().T @ a
    defect = gram - np.eye(a.shape[1])
    return spectral_norm(defect) <= tol
