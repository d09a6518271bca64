"""Quantum channels stored as Schrodinger-picture Kraus operators.

A channel maps states on g (``dim_in``) to states on h (``dim_out``) by
``rho -> sum_j K_j rho K_j^dag``. Under the trace pairing ``(B, rho) = Tr(B rho^T)``
the dual (Heisenberg) map is ``B -> sum_j K_j^T B conj(K_j)``; that is, the
Heisenberg-form operators ``F_j`` with ``Phi(B) = sum F_j^dag B F_j`` are the
entrywise conjugates of the stored ``K_j``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import BadWeights, DimensionMismatch, NotTracePreserving, NotUnitary, ShapeMismatch, ValidationError
from .linalg import as_matrix, as_square, max_entangled, partial_trace, projector

UNITAL_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class KrausChannel:
    kraus: np.ndarray  # (k, dim_out, dim_in)
    kind: str = "channel"

    @property
    def dim_in(self) -> int:
        return self.kraus.shape[2]

    @property
    def dim_out(self) -> int:
        return self.kraus.shape[1]

    @property
    def rank(self) -> int:
        return self.kraus.shape[0]

    def __call__(self, rho):
        return apply_schrodinger(self, rho)

    def __repr__(self):
        return f"KrausChannel(dim_in={self.dim_in}, dim_out={self.dim_out}, rank={self.rank}, kind={self.kind!r})"


@dataclass(frozen=True, eq=False)
class OperationalDensity:
    matrix: np.ndarray  # on g (x) h, side dim_in * dim_out
    dim_in: int
    dim_out: int


def trace_deviation(kraus) -> float:
    k = np.asarray(kraus)
    s = np.einsum("jba,jbc->ac", k.conj(), k)
    return float(np.linalg.norm(s - np.eye(k.shape[2]), 2))


def make_channel(kraus, require_unital_predual: bool = True, tol: float = UNITAL_TOL) -> KrausChannel:
    """Validate a list of Kraus operators.

    With ``require_unital_predual`` the map must be trace preserving; otherwise
    trace-decreasing operations are accepted and flagged ``kind="operation"``.
    """
    ops = [as_matrix(k, "Kraus operator") for k in (kraus if not isinstance(kraus, np.ndarray) or kraus.ndim == 3 else [kraus])]
    if not ops:
        raise ShapeMismatch("at least one Kraus operator is required")
    shape = ops[0].shape
    if any(op.shape != shape for op in ops):
        raise ShapeMismatch(f"Kraus operators have mixed shapes: {sorted({op.shape for op in ops})}")
    arr = np.ascontiguousarray(np.stack(ops))
    dev = trace_deviation(arr)
    if dev <= tol:
        return KrausChannel(arr, "channel")
    if require_unital_predual:
        raise NotTracePreserving(dev)
    s = np.einsum("jba,jbc->ac", arr.conj(), arr)
    if np.linalg.eigvalsh(0.5 * (s + s.conj().T))[-1] > 1.0 + tol:
        raise NotTracePreserving(dev, f"sum K^dag K exceeds identity (deviation {dev:.3e}); not an operation")
    return KrausChannel(arr, "operation")


def apply_schrodinger(ch: KrausChannel, rho) -> np.ndarray:
    rho = as_square(rho, "rho")
    if rho.shape[0] != ch.dim_in:
        raise DimensionMismatch(f"state of side {rho.shape[0]} fed to channel with dim_in={ch.dim_in}")
    k = ch.kraus
    return np.einsum("jab,bc,jdc->ad", k, rho, k.conj())


def apply_heisenberg(ch: KrausChannel, b) -> np.ndarray:
    b = as_square(b, "B")
    if b.shape[0] != ch.dim_out:
        raise DimensionMismatch(f"observable of side {b.shape[0]} fed to channel with dim_out={ch.dim_out}")
    k = ch.kraus
    return np.einsum("jba,bc,jcd->ad", k, b, k.conj())


def operational_density(ch: KrausChannel) -> OperationalDensity:
    """Positive operator on g (x) h reproducing the channel from the pairing.

    Satisfies ``Phi(B) = Tr_h[(1 (x) B^T) D]`` and ``Phi_*(rho) = Tr_g[D (rho^T (x) 1)]``.
    """
    vecs = np.transpose(ch.kraus, (0, 2, 1)).reshape(ch.rank, -1)
    return OperationalDensity(np.ascontiguousarray(vecs.T @ vecs.conj()), ch.dim_in, ch.dim_out)


def heisenberg_from_density(dens: OperationalDensity, b) -> np.ndarray:
    b = as_square(b, "B")
    lift = np.kron(np.eye(dens.dim_in), b.T)
    return partial_trace(lift @ dens.matrix, (dens.dim_in, dens.dim_out), over=2)


def schrodinger_from_density(dens: OperationalDensity, rho) -> np.ndarray:
    rho = as_square(rho, "rho")
    lift = np.kron(rho.T, np.eye(dens.dim_out))
    return partial_trace(dens.matrix @ lift, (dens.dim_in, dens.dim_out), over=1)


def compose(outer: KrausChannel, inner: KrausChannel) -> KrausChannel:
    """The channel ``outer o inner`` (inner acts first on states)."""
    if inner.dim_out != outer.dim_in:
        raise DimensionMismatch(f"inner dim_out={inner.dim_out} but outer dim_in={outer.dim_in}")
    k = np.einsum("iab,jbc->ijac", outer.kraus, inner.kraus).reshape(-1, outer.dim_out, inner.dim_in)
    kind = "channel" if outer.kind == inner.kind == "channel" else "operation"
    return KrausChannel(np.ascontiguousarray(k), kind)


def tensor(a: KrausChannel, b: KrausChannel) -> KrausChannel:
    k = np.einsum("iab,jcd->ijacbd", a.kraus, b.kraus)
    k = k.reshape(a.rank * b.rank, a.dim_out * b.dim_out, a.dim_in * b.dim_in)
    kind = "channel" if a.kind == b.kind == "channel" else "operation"
    return KrausChannel(np.ascontiguousarray(k), kind)


def unitary_channel(u, tol: float = UNITAL_TOL) -> KrausChannel:
    u = as_square(u, "U")
    dev = np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0]), 2)
    if dev > tol:
        raise NotUnitary(f"U^dag U deviates from identity by {dev:.3e}")
    return KrausChannel(u[None].copy(), "channel")


def mixture_channel(weights, parts, tol: float = 1e-10) -> KrausChannel:
    w = np.asarray(weights, dtype=float).ravel()
    if len(parts) != w.size or w.size == 0:
        raise BadWeights(f"{w.size} weights for {len(parts)} channels")
    if not np.all(np.isfinite(w)) or np.any(w < 0) or abs(w.sum() - 1.0) > tol:
        raise BadWeights(f"weights must be a probability vector, got {w.tolist()}")
    dims = {(p.dim_in, p.dim_out) for p in parts}
    if len(dims) != 1:
        raise DimensionMismatch(f"mixture parts have different dimensions: {sorted(dims)}")
    k = np.concatenate([np.sqrt(wi) * p.kraus for wi, p in zip(w, parts) if wi > 0])
    kind = "channel" if all(p.kind == "channel" for p in parts) else "operation"
    return KrausChannel(np.ascontiguousarray(k), kind)


def identity_channel(d: int) -> KrausChannel:
    return KrausChannel(np.eye(d, dtype=np.complex128)[None].copy(), "channel")


PAULI = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def dephasing(p: float) -> KrausChannel:
    return make_channel([np.sqrt(1 - p) * PAULI["I"], np.sqrt(p) * PAULI["Z"]])


def pauli_channel(probs) -> KrausChannel:
    """Mixture of the Pauli unitaries I, X, Y, Z with the given weights."""
    return mixture_channel(probs, [unitary_channel(PAULI[s]) for s in "IXYZ"])


def depolarizing(p: float) -> KrausChannel:
    """rho -> (1 - p) rho + p I/2 on a qubit."""
    return pauli_channel([1 - 3 * p / 4, p / 4, p / 4, p / 4])


def replacement_channel(sigma, dim_in: int) -> KrausChannel:
    """Constant channel rho -> sigma."""
    sigma = as_square(sigma, "sigma")
    w, v = np.linalg.eigh(0.5 * (sigma + sigma.conj().T))
    ops = []
    for lam, vec in zip(w, v.T):
        if lam > 1e-14:
            for i in range(dim_in):
                e = np.zeros(dim_in)
                e[i] = 1.0
                ops.append(np.sqrt(lam) * np.outer(vec, e))
    if not ops:
        raise ValidationError("replacement state is zero")
    return make_channel(ops)


def extend(ch: KrausChannel, v) -> np.ndarray:
    """(Phi (x) id)(|v><v|) for a vector v on g (x) g (ancilla dimension len(v) / dim_in)."""
    v = np.ascontiguousarray(np.asarray(v, dtype=np.complex128).ravel())
    if v.size % ch.dim_in:
        raise DimensionMismatch(f"vector of length {v.size} is not on g (x) k with dim g = {ch.dim_in}")
    return _kernels.choi_output(ch.kraus, v)


def choi_state(ch: KrausChannel) -> np.ndarray:
    """Normalized output (Phi (x) id)(pi) on the maximally entangled projector."""
    return extend(ch, max_entangled(ch.dim_in))


def padded_kraus(ch: KrausChannel, count: int) -> np.ndarray:
    if count < ch.rank:
        raise ValidationError(f"cannot pad {ch.rank} Kraus operators down to {count}")
    out = np.zeros((count, ch.dim_out, ch.dim_in), dtype=np.complex128)
    out[: ch.rank] = ch.kraus
    return out


def stinespring_isometry(ch: KrausChannel, aux_dim: int) -> np.ndarray:
    """Matrix of xi -> sum_j K_j xi (x) |j> from g into h (x) H, H of dimension ``aux_dim``."""
    k = padded_kraus(ch, aux_dim)
    return np.ascontiguousarray(np.transpose(k, (1, 0, 2)).reshape(ch.dim_out * aux_dim, ch.dim_in))


def recombine(ch: KrausChannel, v) -> KrausChannel:
    """Kraus operators K'_j = sum_l V_jl K_l for a unitary V on the index space."""
    v = as_square(v, "V")
    k = padded_kraus(ch, v.shape[0])
    return KrausChannel(np.ascontiguousarray(np.einsum("jl,lab->jab", v, k)), ch.kind)


def pure_state(v) -> np.ndarray:
    v = np.asarray(v, dtype=np.complex128).ravel()
    return projector(v / np.linalg.norm(v))
