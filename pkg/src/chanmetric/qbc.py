"""Security bounds for single-round bit commitment built from two channels.

Alice commits bit b by handing Bob the output of channel ``phi_b``. Bob's best
guess succeeds with probability 1/2 (1 + D) where D is the CB distance; Alice
can later swap the bit with probability at least f^2, f the minimax fidelity.
Since f >= 1 - D, concealment (D -> 0) forces Alice's success towards 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .channels import KrausChannel
from .errors import ChainViolation, DimensionMismatch, NotTracePreserving, ValidationError
from .metrics import MinimaxResult, cb_distance, minimax_fidelity
from .optimize import OptConfig

CHAIN_TOL = 1e-3


@dataclass(frozen=True)
class CommitmentProtocol:
    phi0: KrausChannel
    phi1: KrausChannel

    def __post_init__(self):
        for name, ch in (("phi0", self.phi0), ("phi1", self.phi1)):
            if not isinstance(ch, KrausChannel):
                raise ValidationError(f"{name} must be a KrausChannel")
            if ch.kind != "channel":
                raise NotTracePreserving(float("nan"), f"{name} is not trace preserving")
        if (self.phi0.dim_in, self.phi0.dim_out) != (self.phi1.dim_in, self.phi1.dim_out):
            raise DimensionMismatch("phi0 and phi1 have different dimensions")


def bob_cheat_probability(p: CommitmentProtocol, cfg: OptConfig | None = None) -> float:
    return 0.5 * (1.0 + cb_distance(p.phi0, p.phi1, cfg).value)


def alice_cheat_lower_bound(p: CommitmentProtocol, cfg: OptConfig | None = None) -> float:
    return minimax_fidelity(p.phi0, p.phi1, "purification", cfg).value ** 2


@dataclass
class ChainReport:
    f: float
    d: float
    bob: float
    alice_bound: float  # f^2
    concealment_bound: float  # (1 - D)^2
    bob_form: float  # [1 - 2 (P_B - 1/2)]^2
    slack: float  # f^2 - (1 - D)^2
    fidelity_result: MinimaxResult
    distance_result: MinimaxResult

    def triple(self):
        return self.alice_bound, self.concealment_bound, self.bob_form


def impossibility_report(p: CommitmentProtocol, cfg: OptConfig | None = None,
                         tol: float = CHAIN_TOL) -> ChainReport:
    """Evaluate f^2 >= (1 - D)^2 = [1 - 2 (P_B - 1/2)]^2; raise ChainViolation beyond ``tol``."""
    fr = minimax_fidelity(p.phi0, p.phi1, "purification", cfg)
    dr = cb_distance(p.phi0, p.phi1, cfg)
    f = min(max(fr.value, 0.0), 1.0)
    d = min(max(dr.value, 0.0), 1.0)
    bob = 0.5 * (1.0 + d)
    rep = ChainReport(f, d, bob, f * f, (1 - d) ** 2, (1 - 2 * (bob - 0.5)) ** 2,
                      f * f - (1 - d) ** 2, fr, dr)
    if rep.slack < -tol:
        raise ChainViolation(f"f^2 = {rep.alice_bound:.6g} < (1 - D)^2 = {rep.concealment_bound:.6g}")
    if abs(rep.concealment_bound - rep.bob_form) > tol:
        raise ChainViolation(f"(1 - D)^2 = {rep.concealment_bound:.6g} but bob form gives {rep.bob_form:.6g}")
    return rep
