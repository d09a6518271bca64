"""Dense complex linear algebra used throughout the package.

Conventions: the transpose is entrywise in the computational basis and the
conjugation ``J`` is entrywise complex conjugation. Tensor products are
row-major with the first factor as the slow index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, NoConvergence, NonHermitian, NotPSD, ValidationError

HERM_TOL = 1e-8
PSD_TOL = 1e-8
TRACE_TOL = 1e-8
# inner eigenvalues of R^1/2 S R^1/2 below this fraction of the largest are treated as zero
SQRT_CUTOFF = 1e-13
# relative cutoff for the pseudoinverse of A^1/2 in the extended square root; rounding
# noise in a singular A shows up in A^1/2 at about sqrt(machine eps) ~ 1e-8
PINV_RCOND = 1e-7


@dataclass(frozen=True)
class HermitianEig:
    eigenvalues: np.ndarray  # descending
    eigenvectors: np.ndarray  # columns

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-D, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError(f"{name} has non-finite entries")
    return np.ascontiguousarray(a)


def as_square(m, name: str = "matrix") -> np.ndarray:
    a = as_matrix(m, name)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {a.shape}")
    return a


def is_hermitian(m, tol: float = HERM_TOL) -> bool:
    a = np.asarray(m)
    scale = max(np.linalg.norm(a), 1.0)
    return np.linalg.norm(a - a.conj().T) <= tol * scale


def _check_hermitian(a: np.ndarray, tol: float, name: str) -> None:
    scale = max(np.linalg.norm(a), 1e-300)
    dev = np.linalg.norm(a - a.conj().T)
    if dev > tol * scale and dev > 1e-300:
        raise NonHermitian(f"{name} is not Hermitian (||A - A^dag|| = {dev:.3e})")


def hermitian_eig(m, herm_tol: float = HERM_TOL) -> HermitianEig:
    """Eigendecomposition of a Hermitian matrix, eigenvalues in descending order."""
    a = as_square(m)
    _check_hermitian(a, herm_tol, "matrix")
    try:
        w, v = np.linalg.eigh(0.5 * (a + a.conj().T))
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"eigensolver failed: {exc}") from exc
    return HermitianEig(w[::-1].copy(), np.ascontiguousarray(v[:, ::-1]))


def _psd_spectrum(a: np.ndarray, psd_tol: float, name: str):
    eig = hermitian_eig(a)
    w = eig.eigenvalues
    top = np.max(np.abs(w)) if w.size else 0.0
    floor = -psd_tol * top
    if w.size and w[-1] < floor:
        raise NotPSD(f"{name} has eigenvalue {w[-1]:.3e} below -{psd_tol:g} * {top:.3e}")
    return HermitianEig(np.clip(w, 0.0, None), eig.eigenvectors)


def psd_sqrt(a, psd_tol: float = PSD_TOL) -> np.ndarray:
    """Positive square root; small negative eigenvalues within tolerance are clipped."""
    eig = _psd_spectrum(as_square(a), psd_tol, "matrix")
    v = eig.eigenvectors
    return (v * np.sqrt(eig.eigenvalues)) @ v.conj().T


def check_psd(a, psd_tol: float = PSD_TOL, name: str = "matrix") -> np.ndarray:
    a = as_square(a, name)
    _psd_spectrum(a, psd_tol, name)
    return a


def trace_norm(m) -> float:
    return float(np.sum(np.linalg.svd(as_matrix(m), compute_uv=False)))


def partial_trace(m, dims, over: int = 2) -> np.ndarray:
    """Trace out factor ``over`` (1 or 2) of a matrix on ``C^d1 (x) C^d2``."""
    d1, d2 = (int(d) for d in dims)
    a = as_square(m)
    if a.shape[0] != d1 * d2:
        raise DimensionMismatch(f"side {a.shape[0]} != {d1} * {d2}")
    t = a.reshape(d1, d2, d1, d2)
    if over == 2:
        return np.einsum("ibjb->ij", t)
    if over == 1:
        return np.einsum("aiaj->ij", t)
    raise ValueError("over must be 1 or 2")


def transpose(b) -> np.ndarray:
    return np.ascontiguousarray(as_matrix(b).T)


def conjugation(b) -> np.ndarray:
    return np.conj(as_matrix(b))


def pairing(b, rho) -> complex:
    """Trace pairing (B, rho) = Tr(B rho^T)."""
    b = as_square(b, "B")
    rho = as_square(rho, "rho")
    if b.shape != rho.shape:
        raise DimensionMismatch(f"pairing of {b.shape} with {rho.shape}")
    return complex(np.sum(b * rho))


def trace_sqrt_product(r, s, psd_tol: float = PSD_TOL, cutoff: float = SQRT_CUTOFF) -> float:
    """Tr sqrt(RS) = Tr (R^1/2 S R^1/2)^1/2 for positive R, S."""
    r = check_psd(r, psd_tol, "R")
    s = check_psd(s, psd_tol, "S")
    if r.shape != s.shape:
        raise DimensionMismatch(f"{r.shape} vs {s.shape}")
    return float(_kernels.trace_sqrt_inner(psd_sqrt(r, psd_tol), s, cutoff))


def extended_sqrt(a, b, psd_tol: float = PSD_TOL, rcond: float = PINV_RCOND) -> np.ndarray:
    """The square root of the product AB through its similarity to A^1/2 B A^1/2.

    Returns ``S (S B S)^1/2 S^+`` with ``S = A^1/2``; its trace equals
    :func:`trace_sqrt_product` and it squares to ``AB`` on the range of ``A``.
    """
    sa = psd_sqrt(a, psd_tol)
    inner = sa @ check_psd(b, psd_tol, "B") @ sa
    return sa @ psd_sqrt(0.5 * (inner + inner.conj().T), psd_tol) @ np.linalg.pinv(sa, rcond=rcond, hermitian=True)


def density_operator(m, tol: float = TRACE_TOL, psd_tol: float = PSD_TOL, name: str = "state") -> np.ndarray:
    a = as_square(m, name)
    _check_hermitian(a, HERM_TOL, name)
    _psd_spectrum(a, psd_tol, name)
    tr = np.trace(a).real
    if abs(tr - 1.0) > tol:
        raise ValidationError(f"{name} has trace {tr:.12g}, expected 1")
    return a


def ket(i: int, d: int) -> np.ndarray:
    v = np.zeros(d, dtype=np.complex128)
    v[i] = 1.0
    return v


def projector(v) -> np.ndarray:
    v = np.asarray(v, dtype=np.complex128).ravel()
    return np.outer(v, v.conj())


def max_entangled(d: int) -> np.ndarray:
    """Normalized vector d^-1/2 sum_j |j>|j>."""
    return np.eye(d, dtype=np.complex128).ravel() / np.sqrt(d)
