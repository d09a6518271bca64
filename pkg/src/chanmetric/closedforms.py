"""Closed-form minimax fidelities for special channel families.

Unitary channels reduce to plane geometry: f(Theta_U, Theta_V) is the distance
from the origin to the convex hull of the spectrum of ``W = U^dag V``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .channels import KrausChannel, identity_channel, make_channel, unitary_channel
from .errors import BadWeights, DimensionMismatch, EpsilonTooLarge, NonPositiveParameter
from .linalg import as_square, psd_sqrt
from .metrics import MinimaxResult, minimax_fidelity
from .optimize import Objective, OptConfig, maximize_over_pure_states, minimize_over_pure_states

HULL_TOL = 1e-12


@dataclass(frozen=True)
class SpectrumHull:
    eigenvalues: np.ndarray  # complex
    hull_vertices: np.ndarray  # (n, 2), counter-clockwise
    origin_distance: float


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> np.ndarray:
    """Monotone-chain hull of 2-D points, counter-clockwise, collinear points dropped.

    Degenerate inputs are kept: one distinct point gives one vertex, collinear
    points give the two extremes.
    """
    pts = sorted({(float(x), float(y)) for x, y in np.asarray(points, dtype=float).reshape(-1, 2)})
    if len(pts) <= 2:
        return np.array(pts, dtype=float).reshape(-1, 2)
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= HULL_TOL:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= HULL_TOL:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1], dtype=float)


def _segment_distance(a, b):
    # distance from the origin to segment [a, b]
    d = b - a
    dd = float(d @ d)
    t = 0.0 if dd == 0.0 else min(1.0, max(0.0, -float(a @ d) / dd))
    return float(np.linalg.norm(a + t * d))


def origin_distance(vertices) -> float:
    """Distance from the origin to a convex polygon given by its ccw vertices."""
    v = np.asarray(vertices, dtype=float).reshape(-1, 2)
    n = len(v)
    if n == 1:
        return float(np.linalg.norm(v[0]))
    if n == 2:
        return _segment_distance(v[0], v[1])
    origin = np.zeros(2)
    if all(_cross(v[i], v[(i + 1) % n], origin) >= -HULL_TOL for i in range(n)):
        return 0.0
    return min(_segment_distance(v[i], v[(i + 1) % n]) for i in range(n))


def spectrum_hull(w) -> SpectrumHull:
    ev = np.linalg.eigvals(as_square(w, "W"))
    pts = np.column_stack([ev.real, ev.imag])
    # merge numerically repeated eigenvalues before building the hull
    pts = np.round(pts, 12) + 0.0
    hull = convex_hull(pts)
    return SpectrumHull(ev, hull, min(1.0, origin_distance(hull)))


def unitary_minimax_fidelity(u, v):
    """(f(Theta_U, Theta_V), SpectrumHull of U^dag V)."""
    cu = unitary_channel(u)
    cv = unitary_channel(v)
    if cu.dim_in != cv.dim_in:
        raise DimensionMismatch(f"U is {cu.dim_in}x{cu.dim_in}, V is {cv.dim_in}x{cv.dim_in}")
    hull = spectrum_hull(cu.kraus[0].conj().T @ cv.kraus[0])
    return hull.origin_distance, hull


def unitary_cb_distance(u, v) -> float:
    d, _ = unitary_minimax_fidelity(u, v)
    return float(np.sqrt(max(0.0, 1.0 - d * d)))


def gaussian_noise_fidelity(mu: float, nu: float) -> float:
    """sqrt(mu nu) / ((mu + nu) / 2) for Gaussian displacement noise of variances mu and nu."""
    for name, x in (("mu", mu), ("nu", nu)):
        if not (np.isfinite(x) and x > 0):
            raise NonPositiveParameter(f"{name} must be a positive real, got {x}")
    return float(np.sqrt(mu * nu) / (0.5 * (mu + nu)))


def _probability_vector(p, name, tol=1e-10):
    a = np.asarray(p, dtype=float).ravel()
    if a.size == 0 or not np.all(np.isfinite(a)) or np.any(a < -tol) or abs(a.sum() - 1.0) > tol:
        raise BadWeights(f"{name} must be a probability vector, got {a.tolist()}")
    return np.clip(a, 0.0, None)


def random_unitary_fidelity_bound(p, q) -> float:
    """Bhattacharyya coefficient sum_i sqrt(p_i q_i), a lower bound for mixtures of common unitaries."""
    a = _probability_vector(p, "p")
    b = _probability_vector(q, "q")
    if a.size != b.size:
        raise BadWeights(f"p has {a.size} entries, q has {b.size}")
    return float(np.sum(np.sqrt(a * b)))


# ---------------------------------------------------------------- Lindblad


def lindblad_channel(x, eps: float) -> KrausChannel:
    """Two-Kraus channel {1 - eps/2 X^dag X, sqrt(eps) X}, renormalized exactly to trace preservation."""
    x = as_square(x, "X")
    if not (np.isfinite(eps) and eps > 0):
        raise NonPositiveParameter(f"eps must be positive, got {eps}")
    xdx = x.conj().T @ x
    if 1.0 - 0.5 * eps * np.linalg.norm(xdx, 2) <= 0:
        raise EpsilonTooLarge(f"eps={eps} makes 1 - eps/2 ||X^dag X|| non-positive")
    k0 = np.eye(x.shape[0]) - 0.5 * eps * xdx
    k1 = np.sqrt(eps) * x
    s = k0.conj().T @ k0 + k1.conj().T @ k1
    inv_half = np.linalg.inv(psd_sqrt(s))
    return make_channel([k0 @ inv_half, k1 @ inv_half])


@dataclass
class LindbladResult:
    predicted: float
    c: float  # sup over states of <X^dag X> - |<X>|^2
    c_inf: float  # inf of the same variance; zero whenever X has an eigenvector
    numeric: MinimaxResult | None = None
    diagnostics: dict = field(default_factory=dict)

    def __iter__(self):
        yield self.predicted
        yield self.c


def lindblad_infinitesimal_fidelity(x, eps: float, cfg: OptConfig | None = None,
                                    numeric: bool = False) -> LindbladResult:
    """Leading-order fidelity sqrt(1 - eps C) between the short-time channel and the identity.

    The fidelity of the two-Kraus channel at input rho is
    ``sqrt(1 - eps Var_rho(X)) + O(eps^2)``, so its infimum over states uses
    the largest variance C. With ``numeric`` the minimax fidelity of the
    channel itself is computed as well.
    """
    x = as_square(x, "X")
    ch = lindblad_channel(x, eps)
    cfg = cfg or OptConfig()
    d = x.shape[0]
    obj = Objective(batch=lambda vs: _kernels.variance_batch(x, d, vs))
    hi = maximize_over_pure_states(obj, d * d, cfg)
    lo = minimize_over_pure_states(obj, d * d, cfg)
    c = max(0.0, hi.value)
    out = LindbladResult(
        float(np.sqrt(max(0.0, 1.0 - eps * c))), c, max(0.0, lo.value),
        diagnostics={"c_spread": hi.spread, "c_argmax": hi.argmin, "c_inf_argmin": lo.argmin},
    )
    if numeric:
        out.numeric = minimax_fidelity(ch, identity_channel(d), "purification", cfg)
    return out
