"""Extremization of real functions over the unit sphere of C^n.

Multistart projected gradient descent. Gradients come from central finite
differences in the 2n real coordinates; every trial point is renormalized, so
objectives only ever see unit vectors. Each step starts from a
Barzilai-Borwein trial length and halves it until the value strictly drops.

Objectives are callables ``f(v) -> float``. If they also expose
``batch(V) -> ndarray`` (rows of ``V`` are unit vectors), the gradient stencil
and the sampling oracle are evaluated in one call.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ValidationError

MIN_STEP = 1e-12


@dataclass(frozen=True)
class OptConfig:
    restarts: int = 20
    max_iters: int = 2000
    grad_step: float = 1e-6
    tol: float = 1e-8
    seed: int = 0
    sample_budget: int = 50000
    # stop a restart once the value improved by less than ftol * (1 + |f|) over stall_window iterations
    ftol: float = 1e-14
    stall_window: int = 30

    def __post_init__(self):
        for name in ("restarts", "max_iters", "grad_step", "tol", "sample_budget", "stall_window"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"OptConfig.{name} must be positive, got {getattr(self, name)}")
        if self.ftol < 0:
            raise ValidationError("OptConfig.ftol must be non-negative")
        if not self.tol < self.grad_step:
            raise ValidationError(f"OptConfig.tol ({self.tol}) must be below grad_step ({self.grad_step})")

    def with_(self, **kw) -> "OptConfig":
        return replace(self, **kw)


@dataclass
class OptResult:
    value: float
    argmin: np.ndarray
    per_restart_values: list = field(default_factory=list)
    converged: bool = True
    iterations: int = 0
    grad_norm: float = 0.0
    evaluations: int = 0

    @property
    def spread(self) -> float:
        vals = np.asarray(self.per_restart_values)
        return float(vals.max() - vals.min()) if vals.size else 0.0


class Objective:
    """Wraps a scalar function and an optional vectorized evaluator."""

    def __init__(self, func=None, batch=None):
        if func is None and batch is None:
            raise ValueError("need func or batch")
        self._func = func
        self._batch = batch

    def __call__(self, v) -> float:
        if self._func is not None:
            return float(self._func(v))
        return float(self._batch(np.asarray(v, dtype=np.complex128)[None, :])[0])

    def batch(self, vs) -> np.ndarray:
        vs = np.ascontiguousarray(vs, dtype=np.complex128)
        if self._batch is not None:
            return np.asarray(self._batch(vs), dtype=float)
        return np.array([float(self._func(v)) for v in vs])

    def negated(self) -> "Objective":
        return Objective(
            None if self._func is None else (lambda v: -self._func(v)),
            None if self._batch is None else (lambda vs: -np.asarray(self._batch(vs))),
        )


def as_objective(obj) -> Objective:
    if isinstance(obj, Objective):
        return obj
    if hasattr(obj, "batch"):
        return Objective(obj, obj.batch)
    return Objective(obj)


def _normalize_rows(a):
    return a / np.linalg.norm(a, axis=-1, keepdims=True)


def random_start(dim, rng):
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def fd_gradient(objective, x, h):
    """Central-difference gradient in real coordinates, packed as a complex vector.

    Component k is d/d(Re x_k) + i d/d(Im x_k) of ``f(x / |x|)``.
    """
    obj = as_objective(objective)
    n = x.size
    eye = np.eye(n, dtype=np.complex128)
    stencil = np.empty((4 * n, n), dtype=np.complex128)
    stencil[0::4] = x + h * eye
    stencil[1::4] = x - h * eye
    stencil[2::4] = x + 1j * h * eye
    stencil[3::4] = x - 1j * h * eye
    vals = obj.batch(_normalize_rows(stencil))
    return (vals[0::4] - vals[1::4]) / (2 * h) + 1j * (vals[2::4] - vals[3::4]) / (2 * h)


def _tangent(x, g):
    return g - np.real(np.vdot(x, g)) * x


def _descend(obj, x, cfg):
    f = obj(x)
    evals = 1
    g = _tangent(x, fd_gradient(obj, x, cfg.grad_step))
    evals += 4 * x.size
    gnorm = np.linalg.norm(g)
    history = [f]
    prev_x = prev_g = None
    converged = False
    it = 0
    for it in range(1, cfg.max_iters + 1):
        if gnorm < cfg.tol:
            converged = True
            break
        t = 0.1 / gnorm
        if prev_x is not None:
            s = x - prev_x
            y = g - prev_g
            sy = abs(np.real(np.vdot(s, y)))
            if sy > 0:
                t = np.real(np.vdot(s, s)) / sy
        t = min(t, 1.0 / gnorm)
        while True:
            cand = x - t * g
            cand /= np.linalg.norm(cand)
            fc = obj(cand)
            evals += 1
            if fc < f:
                break
            t *= 0.5
            if t * gnorm < MIN_STEP:
                fc = None
                break
        if fc is None:
            # no decrease at the smallest step: nonsmooth point or numerical floor
            converged = True
            break
        prev_x, prev_g = x, g
        x, f = cand, fc
        g = _tangent(x, fd_gradient(obj, x, cfg.grad_step))
        evals += 4 * x.size
        gnorm = np.linalg.norm(g)
        history.append(f)
        if len(history) > cfg.stall_window:
            if history[-cfg.stall_window - 1] - f <= cfg.ftol * (1.0 + abs(f)):
                converged = True
                break
    return x, f, converged, it, gnorm, evals


def minimize_over_pure_states(objective, dim, cfg: OptConfig | None = None, initial=None) -> OptResult:
    """Minimize ``objective`` over unit vectors of C^dim.

    ``initial`` optionally supplies extra starting vectors, tried before the
    ``cfg.restarts`` random ones.
    """
    cfg = cfg or OptConfig()
    obj = as_objective(objective)
    rng = np.random.default_rng(cfg.seed)
    starts = [np.asarray(v, dtype=np.complex128) / np.linalg.norm(v) for v in (initial or [])]
    starts += [random_start(dim, rng) for _ in range(cfg.restarts)]
    best = None
    values = []
    total_iters = 0
    total_evals = 0
    for x0 in starts:
        if x0.size != dim:
            raise ValidationError(f"initial vector of length {x0.size}, expected {dim}")
        x, f, conv, it, gnorm, evals = _descend(obj, x0, cfg)
        values.append(float(f))
        total_iters += it
        total_evals += evals
        if best is None or f < best[1]:
            best = (x, f, conv, gnorm)
    x, f, conv, gnorm = best
    return OptResult(float(f), x, values, bool(conv), total_iters, float(gnorm), total_evals)


def maximize_over_pure_states(objective, dim, cfg: OptConfig | None = None, initial=None) -> OptResult:
    res = minimize_over_pure_states(as_objective(objective).negated(), dim, cfg, initial)
    res.value = -res.value
    res.per_restart_values = [-v for v in res.per_restart_values]
    return res


def sample_extremum(objective, dim, budget, mode="min", seed=0, chunk=4096) -> float:
    """Extremum over ``budget`` random unit vectors; a verification oracle only."""
    if budget < 1:
        raise ValidationError("budget must be at least 1")
    if mode not in ("min", "max"):
        raise ValidationError(f"mode must be 'min' or 'max', got {mode!r}")
    obj = as_objective(objective)
    rng = np.random.default_rng(seed)
    best = np.inf if mode == "min" else -np.inf
    done = 0
    while done < budget:
        n = min(chunk, budget - done)
        g = rng.standard_normal((n, dim)) + 1j * rng.standard_normal((n, dim))
        vals = obj.batch(_normalize_rows(g))
        best = min(best, vals.min()) if mode == "min" else max(best, vals.max())
        done += n
    return float(best)
