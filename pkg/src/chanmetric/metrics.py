"""Fidelities and distances between states and between channels.

The minimax fidelity is an infimum over input states. It can be evaluated by
three independent routes, all parametrized by a unit vector ``v`` on
g (x) g whose reduced state ``rho = T T^dag`` (``T`` = ``v`` reshaped) is the
input:

* ``density``: ``Tr sqrt(D_a [(rho^T (x) 1) D_b (rho^T (x) 1)])`` from the
  operational densities ``D_a``, ``D_b``;
* ``purification``: Uhlmann fidelity of the outputs ``(Phi (x) id)(|v><v|)``;
* ``stinespring``: ``|| Tr_h(F rho V^dag) ||_1`` with Stinespring isometries
  padded to a common auxiliary space.

The objective is convex in ``rho``, so the search runs over all states
(mixed ones included) rather than over pure inputs on g alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .channels import KrausChannel, choi_state, operational_density, stinespring_isometry
from .errors import DimensionMismatch, NoConvergence, NotEffect, OutOfRange, RouteUnavailable
from .linalg import PSD_TOL, SQRT_CUTOFF, as_square, density_operator, max_entangled, psd_sqrt, trace_norm, trace_sqrt_product
from .optimize import Objective, OptConfig, OptResult, maximize_over_pure_states, minimize_over_pure_states

ROUTES = ("density", "purification", "stinespring")
RANGE_TOL = 1e-9


@dataclass
class MinimaxResult:
    value: float
    minimizer: np.ndarray
    route: str
    converged: bool = True
    restarts: int = 0
    iterations: int = 0
    grad_norm: float = 0.0
    evaluations: int = 0
    per_restart_values: list = field(default_factory=list)

    @property
    def spread(self) -> float:
        vals = np.asarray(self.per_restart_values)
        return float(vals.max() - vals.min()) if vals.size else 0.0

    @property
    def diagnostics(self) -> dict:
        return {
            "route": self.route,
            "converged": self.converged,
            "restarts": self.restarts,
            "iterations": self.iterations,
            "evaluations": self.evaluations,
            "grad_norm": self.grad_norm,
            "restart_spread": self.spread,
            "per_restart_values": list(self.per_restart_values),
        }


def _result(res: OptResult, route: str, strict: bool, what: str) -> MinimaxResult:
    out = MinimaxResult(
        res.value, res.argmin, route, res.converged, len(res.per_restart_values),
        res.iterations, res.grad_norm, res.evaluations, list(res.per_restart_values),
    )
    if strict and not res.converged:
        raise NoConvergence(f"{what} did not converge (best value {res.value:.12g})", res.value, out)
    return out


# ---------------------------------------------------------------- states


def state_fidelity(rho, sigma) -> float:
    """Uhlmann fidelity Tr (rho^1/2 sigma rho^1/2)^1/2 (not squared)."""
    rho = density_operator(rho, name="rho")
    sigma = density_operator(sigma, name="sigma")
    if rho.shape != sigma.shape:
        raise DimensionMismatch(f"{rho.shape} vs {sigma.shape}")
    return min(trace_sqrt_product(rho, sigma), 1.0)


def trace_distance(rho, sigma) -> float:
    rho = as_square(rho, "rho")
    sigma = as_square(sigma, "sigma")
    if rho.shape != sigma.shape:
        raise DimensionMismatch(f"{rho.shape} vs {sigma.shape}")
    return 0.5 * trace_norm(rho - sigma)


def _root_one_minus(f: float, what: str) -> float:
    if not -RANGE_TOL <= f <= 1 + RANGE_TOL:
        raise OutOfRange(f"{what} {f} outside [0, 1]")
    return float(np.sqrt(max(0.0, 1.0 - f)))


def bures_from_fidelity(fid: float) -> float:
    return _root_one_minus(fid, "fidelity")


def bures_distance(rho, sigma) -> float:
    """sqrt(1 - F(rho, sigma))."""
    return bures_from_fidelity(state_fidelity(rho, sigma))


def hellinger_channel_distance(f: float) -> float:
    """sqrt(1 - f) for a minimax fidelity value f."""
    return _root_one_minus(f, "minimax fidelity")


# ---------------------------------------------------------------- channels


def _same_dims(a: KrausChannel, b: KrausChannel):
    if (a.dim_in, a.dim_out) != (b.dim_in, b.dim_out):
        raise DimensionMismatch(f"channels {a.dim_in}->{a.dim_out} and {b.dim_in}->{b.dim_out}")


def entangled_channel_fidelity(phi: KrausChannel, psi: KrausChannel) -> float:
    """Fidelity of the two outputs on the maximally entangled input."""
    _same_dims(phi, psi)
    return min(float(_kernels.fidelity(choi_state(phi), choi_state(psi), SQRT_CUTOFF)), 1.0)


def _lifted(rho, dim_out):
    return np.kron(np.ascontiguousarray(rho.T), np.eye(dim_out))


def pointwise_minimax_fidelity(phi: KrausChannel, psi: KrausChannel, rho) -> float:
    """Tr sqrt(D_phi [(rho^T (x) 1) D_psi (rho^T (x) 1)]) at input state rho.

    The transpose makes this equal to the output fidelity of any purification
    of ``rho`` sent through ``phi (x) id`` and ``psi (x) id``.
    """
    _same_dims(phi, psi)
    rho = density_operator(rho, name="rho")
    if rho.shape[0] != phi.dim_in:
        raise DimensionMismatch(f"state of side {rho.shape[0]} for channels with dim_in={phi.dim_in}")
    p = _lifted(rho, phi.dim_out)
    s = p @ operational_density(psi).matrix @ p
    return trace_sqrt_product(operational_density(phi).matrix, 0.5 * (s + s.conj().T))


def hellinger_pointwise_distance(phi: KrausChannel, psi: KrausChannel, rho) -> float:
    """Squared pointwise Hellinger distance 1/2 Tr[(D_phi + D_psi)(rho^T (x) 1)] - pointwise fidelity."""
    fid = pointwise_minimax_fidelity(phi, psi, rho)
    rho = np.asarray(rho, dtype=np.complex128)
    total = operational_density(phi).matrix + operational_density(psi).matrix
    return float(0.5 * np.real(np.trace(total @ _lifted(rho, phi.dim_out)))) - fid


def minimax_objective(phi: KrausChannel, psi: KrausChannel, route: str = "purification") -> Objective:
    """The route's objective as a function of a unit vector on g (x) g."""
    _same_dims(phi, psi)
    din, dout = phi.dim_in, phi.dim_out
    if route == "density":
        a_half = np.ascontiguousarray(psd_sqrt(operational_density(phi).matrix))
        b = operational_density(psi).matrix
        return Objective(batch=lambda vs: _kernels.density_fidelity_batch(a_half, b, din, dout, vs, SQRT_CUTOFF))
    if route == "purification":
        ka, kb = phi.kraus, psi.kraus
        return Objective(batch=lambda vs: _kernels.purification_fidelity_batch(ka, kb, vs, SQRT_CUTOFF))
    if route == "stinespring":
        aux = max(din * dout, phi.rank, psi.rank)
        fa = stinespring_isometry(phi, aux)
        fb = stinespring_isometry(psi, aux)
        return Objective(batch=lambda vs: _kernels.stinespring_trace_norm_batch(fa, fb, dout, vs))
    raise RouteUnavailable(f"unknown route {route!r}; expected one of {ROUTES}")


def minimax_fidelity(phi: KrausChannel, psi: KrausChannel, route: str = "purification",
                     cfg: OptConfig | None = None, strict: bool = False) -> MinimaxResult:
    """Minimax fidelity f(phi, psi): infimum over inputs of the output fidelity.

    ``strict`` raises :class:`NoConvergence` (carrying the best value) when the
    best restart did not converge; otherwise the flag is only reported.
    """
    cfg = cfg or OptConfig()
    obj = minimax_objective(phi, psi, route)
    dim = phi.dim_in ** 2
    res = minimize_over_pure_states(obj, dim, cfg, initial=[max_entangled(phi.dim_in)])
    return _result(res, route, strict, "minimax fidelity")


def output_trace_distance_objective(phi: KrausChannel, psi: KrausChannel) -> Objective:
    _same_dims(phi, psi)
    ka, kb = phi.kraus, psi.kraus
    return Objective(batch=lambda vs: _kernels.output_trace_distance_batch(ka, kb, vs))


def cb_distance(phi: KrausChannel, psi: KrausChannel, cfg: OptConfig | None = None,
                strict: bool = False) -> MinimaxResult:
    """Half the CB-norm distance: sup over v on g (x) g of the output trace distance."""
    cfg = cfg or OptConfig()
    obj = output_trace_distance_objective(phi, psi)
    res = maximize_over_pure_states(obj, phi.dim_in ** 2, cfg, initial=[max_entangled(phi.dim_in)])
    return _result(res, "purification", strict, "CB distance")


# ---------------------------------------------------------------- effects


def check_effect(e, psd_tol: float = PSD_TOL, name: str = "effect") -> np.ndarray:
    e = as_square(e, name)
    w = np.linalg.eigvalsh(0.5 * (e + e.conj().T))
    if w[0] < -psd_tol or w[-1] > 1 + psd_tol:
        raise NotEffect(f"{name} eigenvalues span [{w[0]:.3e}, {w[-1]:.3e}], outside [0, 1]")
    return e


def effect_fidelity_distance(eff_a, eff_b, rho) -> float:
    """Squared pointwise Hellinger distance 1/2 Tr[(A + B) rho] - Tr sqrt(A (rho B rho)) between effects."""
    a = check_effect(eff_a, name="first effect")
    b = check_effect(eff_b, name="second effect")
    rho = density_operator(rho, name="rho")
    if not a.shape == b.shape == rho.shape:
        raise DimensionMismatch(f"{a.shape}, {b.shape}, {rho.shape}")
    s = rho @ b @ rho
    return float(0.5 * np.real(np.trace((a + b) @ rho))) - trace_sqrt_product(a, 0.5 * (s + s.conj().T))


def effect_distance_sup(eff_a, eff_b, cfg: OptConfig | None = None) -> MinimaxResult:
    """Supremum over states of :func:`effect_fidelity_distance`."""
    a = check_effect(eff_a, name="first effect")
    b = check_effect(eff_b, name="second effect")
    if a.shape != b.shape:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")
    d = a.shape[0]
    a_half = np.ascontiguousarray(psd_sqrt(a))
    obj = Objective(batch=lambda vs: _kernels.effect_hellinger_batch(a, a_half, b, d, vs, SQRT_CUTOFF))
    res = maximize_over_pure_states(obj, d * d, cfg or OptConfig(), initial=[max_entangled(d)])
    return _result(res, "density", False, "effect distance")
