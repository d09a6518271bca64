"""Command-line front end.

Every command prints one JSON report on stdout. Exit codes: 0 success,
1 selfcheck failure, 2 invalid input, 3 optimizer did not converge (the
report is still printed).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import channels, classical, closedforms, jsonio, metrics, qbc
from ._accel import backend_name
from .errors import MalformedInput, NoConvergence, ValidationError
from .linalg import density_operator
from .optimize import OptConfig
from .random import rand_channel, rand_density

SCHEMA_VERSION = "1"
SIG_DIGITS = 12


def _num(x) -> float:
    x = float(x)
    if not np.isfinite(x):
        raise ValidationError(f"non-finite result {x}")
    return float(f"{x:.{SIG_DIGITS}g}")


def _vec(v):
    if v is None:
        return None
    return [[_num(z.real), _num(z.imag)] for z in np.asarray(v, dtype=np.complex128).ravel()]


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _vec(obj)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    return obj


def make_report(command, inputs=None, values=None, minimizer=None, diagnostics=None) -> dict:
    return {
        "command": command,
        "inputs": inputs or {},
        "values": {k: _num(v) for k, v in (values or {}).items()},
        "minimizer": _vec(minimizer),
        "diagnostics": _clean(diagnostics or {}),
        "schema_version": SCHEMA_VERSION,
    }


class _Inputs:
    """Loads input files and remembers their digests."""

    def __init__(self):
        self.digests = {}

    def load(self, flag, path, decoder):
        if path is None:
            raise ValidationError(f"--{flag} is required")
        obj, digest = jsonio.load_file(path)
        self.digests[flag] = {"path": str(path), "sha256": digest}
        return decoder(obj, flag)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("CHANMETRIC_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError as exc:
        raise ValidationError(f"CHANMETRIC_SEED must be an integer, got {env!r}") from exc


def _cfg(args) -> OptConfig:
    return OptConfig(restarts=args.restarts, tol=args.tol, seed=_seed(args))


def _state(obj, field):
    m = jsonio.matrix_from_json(obj, field)
    return density_operator(m, name=field)


def _opt_report(command, ins, res: metrics.MinimaxResult, name="value", extra=None):
    values = {name: res.value}
    values.update(extra or {})
    return make_report(command, ins.digests, values, res.minimizer, res.diagnostics)


# ---------------------------------------------------------------- commands


def cmd_state_metrics(args, ins):
    a = ins.load("a", args.a, _state)
    b = ins.load("b", args.b, _state)
    f = metrics.state_fidelity(a, b)
    return make_report("state-metrics", ins.digests, {
        "fidelity": f,
        "trace_distance": metrics.trace_distance(a, b),
        "bures_distance": metrics.bures_from_fidelity(f),
    })


def cmd_channel_fidelity(args, ins):
    a = ins.load("a", args.a, jsonio.channel_from_json)
    b = ins.load("b", args.b, jsonio.channel_from_json)
    return make_report("channel-fidelity", ins.digests, {"value": metrics.entangled_channel_fidelity(a, b)})


def cmd_minimax(args, ins):
    a = ins.load("a", args.a, jsonio.channel_from_json)
    b = ins.load("b", args.b, jsonio.channel_from_json)
    res = metrics.minimax_fidelity(a, b, args.route, _cfg(args), strict=True)
    return _opt_report("minimax", ins, res, extra={"hellinger_distance": metrics.hellinger_channel_distance(min(max(res.value, 0.0), 1.0))})


def cmd_cb_distance(args, ins):
    a = ins.load("a", args.a, jsonio.channel_from_json)
    b = ins.load("b", args.b, jsonio.channel_from_json)
    return _opt_report("cb-distance", ins, metrics.cb_distance(a, b, _cfg(args), strict=True))


def cmd_unitary(args, ins):
    u = ins.load("u", args.u, jsonio.matrix_from_json)
    v = ins.load("v", args.v, jsonio.matrix_from_json)
    f, hull = closedforms.unitary_minimax_fidelity(u, v)
    return make_report("unitary", ins.digests,
                       {"value": f, "cb_distance": closedforms.unitary_cb_distance(u, v)},
                       diagnostics={"eigenvalues": hull.eigenvalues, "hull_vertices": hull.hull_vertices.tolist()})


def cmd_gaussian(args, ins):
    if args.mu is None or args.nu is None:
        raise ValidationError("--mu and --nu are required")
    return make_report("gaussian", {}, {"value": closedforms.gaussian_noise_fidelity(args.mu, args.nu)})


def cmd_povm(args, ins):
    m = ins.load("a", args.a, jsonio.povm_from_json)
    n = ins.load("b", args.b, jsonio.povm_from_json)
    return _opt_report("povm", ins, classical.qc_povm_fidelity(m, n, _cfg(args), strict=True))


def cmd_kernel(args, ins):
    p = ins.load("a", args.a, jsonio.kernel_from_json)
    q = ins.load("b", args.b, jsonio.kernel_from_json)
    val, x = classical.kernel_minimax_fidelity(p, q)
    return make_report("kernel", ins.digests, {"value": val}, diagnostics={"argmin_input": x})


def cmd_qbc(args, ins):
    if args.b is None:
        proto = ins.load("a", args.a, jsonio.protocol_from_json)
    else:
        proto = qbc.CommitmentProtocol(ins.load("a", args.a, jsonio.channel_from_json),
                                       ins.load("b", args.b, jsonio.channel_from_json))
    rep = qbc.impossibility_report(proto, _cfg(args))
    return make_report("qbc", ins.digests, {
        "minimax_fidelity": rep.f,
        "cb_distance": rep.d,
        "bob_cheat_probability": rep.bob,
        "alice_cheat_lower_bound": rep.alice_bound,
        "concealment_bound": rep.concealment_bound,
        "bob_form": rep.bob_form,
        "chain_slack": rep.slack,
    }, diagnostics={"fidelity": rep.fidelity_result.diagnostics, "cb_distance": rep.distance_result.diagnostics})


def cmd_lindblad(args, ins):
    x = ins.load("a", args.a, jsonio.matrix_from_json)
    if args.eps is None:
        raise ValidationError("--eps is required")
    res = closedforms.lindblad_infinitesimal_fidelity(x, args.eps, _cfg(args), numeric=True)
    return make_report("lindblad", ins.digests, {
        "predicted": res.predicted,
        "C": res.c,
        "C_inf": res.c_inf,
        "numeric": res.numeric.value,
        "error": abs(res.numeric.value - res.predicted),
    }, res.numeric.minimizer, res.numeric.diagnostics)


# ---------------------------------------------------------------- selfcheck


def _builtin_pairs():
    rng = np.random.default_rng(20240601)
    i2 = channels.identity_channel(2)
    return [
        ("id-vs-dephasing", i2, channels.dephasing(0.3)),
        ("id-vs-depolarizing", i2, channels.depolarizing(0.5)),
        ("unitary-chord", i2, channels.unitary_channel(np.diag([1, 1j]))),
        ("random-2to2", rand_channel(2, rng=rng), rand_channel(2, rng=rng)),
        ("random-2to3", rand_channel(2, 3, rng=rng), rand_channel(2, 3, rng=rng)),
    ]


def _fixture_pairs(ins, path):
    def decode(obj, field):
        pairs = jsonio._get(obj, "pairs", field)
        if not isinstance(pairs, list) or not pairs:
            raise MalformedInput(f"{field}.pairs", "expected a non-empty list")
        out = []
        for i, p in enumerate(pairs):
            fld = f"{field}.pairs[{i}]"
            name = p.get("name", f"pair{i}") if isinstance(p, dict) else f"pair{i}"
            out.append((name, jsonio.channel_from_json(jsonio._get(p, "a", fld), f"{fld}.a"),
                        jsonio.channel_from_json(jsonio._get(p, "b", fld), f"{fld}.b")))
        return out

    return ins.load("fixture", path, decode)


def cmd_selfcheck(args, ins):
    cfg = _cfg(args)
    pairs = _fixture_pairs(ins, args.fixture) if args.fixture else _builtin_pairs()
    checks = []

    def check(name, ok, **detail):
        checks.append({"name": name, "passed": bool(ok), **detail})

    for name, a, b in pairs:
        vals = {r: metrics.minimax_fidelity(a, b, r, cfg).value for r in metrics.ROUTES}
        spread = max(vals.values()) - min(vals.values())
        check(f"{name}: route agreement", spread < 1e-4, spread=spread)
        f = vals["purification"]
        d = metrics.cb_distance(a, b, cfg).value
        check(f"{name}: 1 - D <= f <= sqrt(1 - D^2)",
              1 - d - 1e-3 <= f <= np.sqrt(max(0.0, 1 - d * d)) + 1e-3, f=f, D=d)
        if a.kind == b.kind == "channel":
            check(f"{name}: commitment chain", f * f - (1 - d) ** 2 >= -1e-3, slack=f * f - (1 - d) ** 2)
    u, v = np.eye(2), np.diag([1, 1j])
    closed, _ = closedforms.unitary_minimax_fidelity(u, v)
    numeric = metrics.minimax_fidelity(channels.unitary_channel(u), channels.unitary_channel(v), "density", cfg).value
    check("unitary closed form", abs(closed - numeric) < 1e-4, closed=closed, numeric=numeric)
    check("gaussian closed form", abs(closedforms.gaussian_noise_fidelity(1, 4) - 0.8) < 1e-12)
    rng = np.random.default_rng(7)
    worst = np.inf
    for _ in range(50):
        d = int(rng.integers(2, 5))
        r, s = rand_density(d, rng), rand_density(d, rng)
        fid, dist = metrics.state_fidelity(r, s), metrics.trace_distance(r, s)
        worst = min(worst, dist - (1 - fid), np.sqrt(max(0.0, 1 - fid * fid)) - dist)
    check("Fuchs-van de Graaf", worst >= -1e-9, slack=worst)
    passed = all(c["passed"] for c in checks)
    rep = make_report("selfcheck", ins.digests, {"checks": len(checks), "failed": sum(not c["passed"] for c in checks)},
                      diagnostics={"checks": checks, "backend": backend_name(), "seed": cfg.seed})
    return rep, (0 if passed else 1)


COMMANDS = {
    "state-metrics": cmd_state_metrics,
    "channel-fidelity": cmd_channel_fidelity,
    "minimax": cmd_minimax,
    "cb-distance": cmd_cb_distance,
    "unitary": cmd_unitary,
    "gaussian": cmd_gaussian,
    "povm": cmd_povm,
    "kernel": cmd_kernel,
    "qbc": cmd_qbc,
    "lindblad": cmd_lindblad,
    "selfcheck": cmd_selfcheck,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chanmetric", description="Fidelities and distances of quantum channels.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--a", help="first input file (JSON)")
        p.add_argument("--b", help="second input file (JSON)")
        p.add_argument("--u", help="first unitary (matrix JSON)")
        p.add_argument("--v", help="second unitary (matrix JSON)")
        p.add_argument("--route", choices=metrics.ROUTES, default="purification")
        p.add_argument("--restarts", type=int, default=8)
        p.add_argument("--tol", type=float, default=1e-8)
        p.add_argument("--seed", type=int, default=None, help="optimizer seed (fallback: CHANMETRIC_SEED, then 0)")
        p.add_argument("--mu", type=float)
        p.add_argument("--nu", type=float)
        p.add_argument("--eps", type=float)
        if name == "selfcheck":
            p.add_argument("--fixture", help='JSON {"pairs": [{"name", "a", "b"}]} replacing the built-in pairs')
    return parser


def _emit(report):
    sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    ins = _Inputs()
    try:
        out = COMMANDS[args.command](args, ins)
    except NoConvergence as exc:
        res = exc.result
        if isinstance(res, metrics.MinimaxResult):
            _emit(make_report(args.command, ins.digests, {"value": res.value}, res.minimizer, res.diagnostics))
        print(f"chanmetric: {exc}", file=sys.stderr)
        return 3
    except ValidationError as exc:
        print(f"chanmetric: invalid input: {exc}", file=sys.stderr)
        return 2
    report, code = out if isinstance(out, tuple) else (out, 0)
    _emit(report)
    return code


def main():
    sys.exit(run())
