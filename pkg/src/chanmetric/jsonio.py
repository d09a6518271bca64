"""JSON encodings for matrices, channels, kernels, POVMs and commitment protocols.

Matrix: ``{"rows": r, "cols": c, "data": [[re, im], ...]}`` row-major.
Channel: ``{"dim_in": n, "dim_out": m, "kraus": [matrix, ...], "kind": "channel"|"operation"}``.
Kernel: ``{"rows": |Y|, "cols": |X|, "p": [[...], ...]}``. POVM: list of matrices.
Protocol: ``{"phi0": channel, "phi1": channel}``.

Decoders raise :class:`MalformedInput` naming the offending field.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .channels import KrausChannel, make_channel, mixture_channel
from .classical import POVM, FiniteKernel, make_kernel, make_povm
from .errors import MalformedInput, ValidationError
from .qbc import CommitmentProtocol


def _get(obj, key, field):
    if not isinstance(obj, dict):
        raise MalformedInput(field, f"expected an object, got {type(obj).__name__}")
    if key not in obj:
        raise MalformedInput(f"{field}.{key}", "missing")
    return obj[key]


def _int(obj, key, field):
    v = _get(obj, key, field)
    if isinstance(v, bool) or not isinstance(v, int) or v < 1:
        raise MalformedInput(f"{field}.{key}", f"expected a positive integer, got {v!r}")
    return v


def matrix_to_json(m) -> dict:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim == 1:
        a = a[:, None]
    return {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in a.ravel()],
    }


def matrix_from_json(obj, field: str = "matrix") -> np.ndarray:
    rows = _int(obj, "rows", field)
    cols = _int(obj, "cols", field)
    data = _get(obj, "data", field)
    if not isinstance(data, list) or len(data) != rows * cols:
        n = len(data) if isinstance(data, list) else type(data).__name__
        raise MalformedInput(f"{field}.data", f"expected {rows * cols} entries, got {n}")
    out = np.empty(rows * cols, dtype=np.complex128)
    for i, z in enumerate(data):
        if (not isinstance(z, list) or len(z) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in z)):
            raise MalformedInput(f"{field}.data[{i}]", f"expected [re, im], got {z!r}")
        out[i] = complex(z[0], z[1])
    if not np.all(np.isfinite(out)):
        raise MalformedInput(f"{field}.data", "non-finite entry")
    return out.reshape(rows, cols)


def channel_to_json(ch: KrausChannel) -> dict:
    return {
        "dim_in": ch.dim_in,
        "dim_out": ch.dim_out,
        "kraus": [matrix_to_json(k) for k in ch.kraus],
        "kind": ch.kind,
    }


def channel_from_json(obj, field: str = "channel") -> KrausChannel:
    """Decode a channel, or a mixture ``{"weights": [...], "channels": [...]}`` of channels."""
    if isinstance(obj, dict) and "weights" in obj:
        parts = _get(obj, "channels", field)
        if not isinstance(parts, list):
            raise MalformedInput(f"{field}.channels", "expected a list")
        chans = [channel_from_json(c, f"{field}.channels[{i}]") for i, c in enumerate(parts)]
        return mixture_channel(obj["weights"], chans)
    dim_in = _int(obj, "dim_in", field)
    dim_out = _int(obj, "dim_out", field)
    kind = obj.get("kind", "channel")
    if kind not in ("channel", "operation"):
        raise MalformedInput(f"{field}.kind", f"expected 'channel' or 'operation', got {kind!r}")
    kraus = _get(obj, "kraus", field)
    if not isinstance(kraus, list) or not kraus:
        raise MalformedInput(f"{field}.kraus", "expected a non-empty list of matrices")
    ops = [matrix_from_json(k, f"{field}.kraus[{i}]") for i, k in enumerate(kraus)]
    for i, k in enumerate(ops):
        if k.shape != (dim_out, dim_in):
            raise MalformedInput(f"{field}.kraus[{i}]", f"shape {k.shape}, expected ({dim_out}, {dim_in})")
    ch = make_channel(ops, require_unital_predual=(kind == "channel"))
    return ch


def kernel_to_json(k: FiniteKernel) -> dict:
    m = k.matrix
    return {"rows": int(m.shape[0]), "cols": int(m.shape[1]), "p": m.tolist()}


def kernel_from_json(obj, field: str = "kernel") -> FiniteKernel:
    rows = _int(obj, "rows", field)
    cols = _int(obj, "cols", field)
    p = _get(obj, "p", field)
    try:
        m = np.asarray(p, dtype=float)
    except (TypeError, ValueError) as exc:
        raise MalformedInput(f"{field}.p", f"not a numeric matrix ({exc})") from exc
    if m.shape != (rows, cols):
        raise MalformedInput(f"{field}.p", f"shape {m.shape}, expected ({rows}, {cols})")
    return make_kernel(m)


def povm_to_json(m: POVM) -> list:
    return [matrix_to_json(e) for e in m.elements]


def povm_from_json(obj, field: str = "povm") -> POVM:
    if not isinstance(obj, list) or not obj:
        raise MalformedInput(field, "expected a non-empty list of matrices")
    return make_povm([matrix_from_json(e, f"{field}[{i}]") for i, e in enumerate(obj)])


def protocol_to_json(p: CommitmentProtocol) -> dict:
    return {"phi0": channel_to_json(p.phi0), "phi1": channel_to_json(p.phi1)}


def protocol_from_json(obj, field: str = "protocol") -> CommitmentProtocol:
    return CommitmentProtocol(channel_from_json(_get(obj, "phi0", field), f"{field}.phi0"),
                              channel_from_json(_get(obj, "phi1", field), f"{field}.phi1"))


def dumps(obj) -> str:
    """Normalized serialization: sorted keys, fixed separators."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def load_file(path):
    """(parsed JSON, sha256 hex digest of the raw bytes)."""
    p = Path(path)
    try:
        raw = p.read_bytes()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise MalformedInput(str(path), f"invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    return obj, hashlib.sha256(raw).hexdigest()
