"""Commutative and hybrid fidelities over finite alphabets.

Kernels are column-stochastic matrices ``p[y, x] = p(y|x)``. Classical-to-quantum
channels are families of states indexed by x; quantum-to-classical channels are
POVMs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import BadWeights, DimensionMismatch, NotPOVM, NotStochastic, ZeroMass
from .linalg import SQRT_CUTOFF, as_square, hermitian_eig, max_entangled, psd_sqrt
from .metrics import MinimaxResult, _result, state_fidelity
from .optimize import Objective, OptConfig, minimize_over_pure_states

STOCHASTIC_TOL = 1e-10
POVM_TOL = 1e-9


@dataclass(frozen=True)
class FiniteKernel:
    matrix: np.ndarray  # (|Y|, |X|)
    column_sums: np.ndarray
    stochastic: bool


@dataclass(frozen=True)
class POVM:
    elements: np.ndarray  # (outcomes, d, d)

    @property
    def dim(self) -> int:
        return self.elements.shape[1]

    @property
    def outcomes(self) -> int:
        return self.elements.shape[0]


def make_kernel(p) -> FiniteKernel:
    m = np.asarray(p, dtype=float)
    if m.ndim != 2 or m.size == 0:
        raise DimensionMismatch(f"kernel must be a non-empty 2-D array, got shape {m.shape}")
    if not np.all(np.isfinite(m)) or np.any(m < 0):
        raise BadWeights("kernel entries must be finite and non-negative")
    sums = m.sum(axis=0)
    return FiniteKernel(m, sums, bool(np.all(np.abs(sums - 1.0) <= STOCHASTIC_TOL)))


def make_povm(elements, tol: float = POVM_TOL) -> POVM:
    mats = [as_square(e, "POVM element") for e in elements]
    if not mats:
        raise NotPOVM("a POVM needs at least one element")
    if len({m.shape for m in mats}) != 1:
        raise DimensionMismatch("POVM elements have different shapes")
    for i, m in enumerate(mats):
        w = hermitian_eig(m).eigenvalues
        if w[-1] < -tol * max(1.0, abs(w[0])):
            raise NotPOVM(f"element {i} has eigenvalue {w[-1]:.3e} < 0")
    total = sum(mats)
    dev = np.linalg.norm(total - np.eye(total.shape[0]), 2)
    if dev > tol:
        raise NotPOVM(f"elements sum to identity only within {dev:.3e}")
    return POVM(np.ascontiguousarray(np.stack(mats)))


def _masses(p, q):
    a = np.asarray(p, dtype=float).ravel()
    b = np.asarray(q, dtype=float).ravel()
    if a.size != b.size:
        raise DimensionMismatch(f"vectors of length {a.size} and {b.size}")
    for name, v in (("P", a), ("Q", b)):
        if not np.all(np.isfinite(v)) or np.any(v < 0):
            raise BadWeights(f"{name} must be finite and non-negative")
        if v.sum() <= 0:
            raise ZeroMass(f"{name} has zero total mass")
    return a, b


def classical_fidelity(p, q) -> float:
    """sum sqrt(p q) / sqrt(sum p * sum q)."""
    a, b = _masses(p, q)
    return float(np.sum(np.sqrt(a * b)) / np.sqrt(a.sum() * b.sum()))


def classical_hellinger(p, q) -> float:
    """Squared Hellinger distance 1/2 sum (sqrt p - sqrt q)^2."""
    a, b = _masses(p, q)
    return float(0.5 * np.sum((np.sqrt(a) - np.sqrt(b)) ** 2))


def _stochastic(k, name):
    k = k if isinstance(k, FiniteKernel) else make_kernel(k)
    if not k.stochastic:
        raise NotStochastic(f"{name} columns sum to {k.column_sums.tolist()}")
    return k


def kernel_minimax_fidelity(p, q):
    """(min over inputs x of sum_y sqrt(p(y|x) q(y|x)), minimizing x)."""
    a = _stochastic(p, "P").matrix
    b = _stochastic(q, "Q").matrix
    if a.shape != b.shape:
        raise DimensionMismatch(f"kernels of shape {a.shape} and {b.shape}")
    cols = np.sqrt(a * b).sum(axis=0)
    x = int(np.argmin(cols))
    return float(cols[x]), x


def cq_fidelity(rho_family, sigma_family):
    """(min over x of F(rho(x), sigma(x)), minimizing x)."""
    if len(rho_family) != len(sigma_family) or not rho_family:
        raise DimensionMismatch(f"families of length {len(rho_family)} and {len(sigma_family)}")
    vals = [state_fidelity(r, s) for r, s in zip(rho_family, sigma_family)]
    x = int(np.argmin(vals))
    return float(vals[x]), x


def povm_kernel(m: POVM) -> FiniteKernel:
    """Outcome distributions p(y|x) = <x|M_y|x> on computational basis inputs."""
    return make_kernel(np.real(np.einsum("yxx->yx", m.elements)))


def qc_povm_fidelity(m, n, cfg: OptConfig | None = None, strict: bool = False) -> MinimaxResult:
    """inf over states rho of sum_y Tr sqrt(M_y (rho N_y rho))."""
    m = m if isinstance(m, POVM) else make_povm(m)
    n = n if isinstance(n, POVM) else make_povm(n)
    if m.elements.shape != n.elements.shape:
        raise DimensionMismatch(f"POVMs of shape {m.elements.shape} and {n.elements.shape}")
    d = m.dim
    m_half = np.ascontiguousarray(np.stack([psd_sqrt(e) for e in m.elements]))
    ne = n.elements
    obj = Objective(batch=lambda vs: _kernels.povm_fidelity_batch(m_half, ne, d, vs, SQRT_CUTOFF))
    res = minimize_over_pure_states(obj, d * d, cfg or OptConfig(), initial=[max_entangled(d)])
    return _result(res, "density", strict, "POVM fidelity")
