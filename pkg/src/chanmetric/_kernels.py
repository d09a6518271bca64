"""Hot numeric kernels.

Every function here is written in the numpy subset numba understands, so the
same source runs jitted or as plain numpy depending on ``CHANMETRIC_NUMBA``.
Inputs are complex128 arrays; ``*_batch`` kernels take unit vectors as rows of
a 2-D array and return one float per row. Unit vectors on g (x) g are read as
row-major ``din x din`` matrices ``T`` whose reduced state is ``T T^dag``.
"""

import numpy as np

from ._accel import kernel


@kernel
def hermitize(a):
    return np.ascontiguousarray(0.5 * (a + a.conj().T))


@kernel
def psd_sqrt_clipped(a):
    w, v = np.linalg.eigh(hermitize(a))
    w = np.where(w > 0.0, w, 0.0)
    v = np.ascontiguousarray(v)
    return (v * np.sqrt(w)) @ np.ascontiguousarray(v.conj().T)


@kernel
def trace_sqrt_inner(r_half, s, cutoff):
    # Tr (R^1/2 S R^1/2)^1/2 given R^1/2; eigenvalues below cutoff * max are dropped
    m = r_half @ np.ascontiguousarray(s) @ r_half
    w = np.linalg.eigvalsh(hermitize(m))
    top = np.max(np.abs(w))
    if top == 0.0:
        return 0.0
    total = 0.0
    for x in w:
        if x > cutoff * top:
            total += np.sqrt(x)
    return total


@kernel
def fidelity(rho, sigma, cutoff):
    return trace_sqrt_inner(psd_sqrt_clipped(rho), sigma, cutoff)


@kernel
def trace_norm_herm(a):
    return np.sum(np.abs(np.linalg.eigvalsh(hermitize(a))))


@kernel
def reduced_state(v, din):
    t = np.ascontiguousarray(v).reshape((din, v.shape[0] // din))
    return t @ np.ascontiguousarray(t.conj().T)


@kernel
def choi_output(kraus, v):
    # (Phi (x) id)(|v><v|) for Schrodinger Kraus operators of shape (k, dout, din)
    dout = kraus.shape[1]
    din = kraus.shape[2]
    da = v.shape[0] // din
    t = np.ascontiguousarray(v).reshape((din, da))
    n = dout * da
    out = np.zeros((n, n), dtype=np.complex128)
    for j in range(kraus.shape[0]):
        u = (np.ascontiguousarray(kraus[j]) @ t).reshape(n)
        out += np.outer(u, u.conj())
    return out


@kernel
def purification_fidelity_batch(kraus_a, kraus_b, vs, cutoff):
    out = np.empty(vs.shape[0])
    for i in range(vs.shape[0]):
        v = np.ascontiguousarray(vs[i])
        out[i] = fidelity(choi_output(kraus_a, v), choi_output(kraus_b, v), cutoff)
    return out


@kernel
def density_fidelity_batch(dens_a_half, dens_b, din, dout, vs, cutoff):
    eye = np.zeros((dout, dout), dtype=np.complex128)
    for i in range(dout):
        eye[i, i] = 1.0
    out = np.empty(vs.shape[0])
    for i in range(vs.shape[0]):
        rho = reduced_state(vs[i], din)
        p = np.kron(np.ascontiguousarray(rho.T), eye)
        s = p @ dens_b @ p
        out[i] = trace_sqrt_inner(dens_a_half, s, cutoff)
    return out


@kernel
def stinespring_trace_norm_batch(iso_a, iso_b, dout, vs):
    # iso_* map g -> h (x) H with h the slow index; value is || Tr_h(F rho V^dag) ||_1
    din = iso_a.shape[1]
    nh = iso_a.shape[0] // dout
    out = np.empty(vs.shape[0])
    vb_h = np.ascontiguousarray(iso_b.conj().T)
    for i in range(vs.shape[0]):
        rho = reduced_state(vs[i], din)
        x = iso_a @ rho @ vb_h
        m = np.zeros((nh, nh), dtype=np.complex128)
        for b in range(dout):
            m += x[b * nh:(b + 1) * nh, b * nh:(b + 1) * nh]
        out[i] = np.sum(np.linalg.svd(m)[1])
    return out


@kernel
def output_trace_distance_batch(kraus_a, kraus_b, vs):
    out = np.empty(vs.shape[0])
    for i in range(vs.shape[0]):
        v = np.ascontiguousarray(vs[i])
        out[i] = 0.5 * trace_norm_herm(choi_output(kraus_a, v) - choi_output(kraus_b, v))
    return out


@kernel
def quadratic_form_batch(h, vs):
    out = np.empty(vs.shape[0])
    for i in range(vs.shape[0]):
        v = np.ascontiguousarray(vs[i])
        out[i] = np.real(np.vdot(v, h @ v))
    return out


@kernel
def povm_fidelity_batch(m_half, n_elems, din, vs, cutoff):
    out = np.empty(vs.shape[0])
    for i in range(vs.shape[0]):
        rho = reduced_state(vs[i], din)
        total = 0.0
        for y in range(n_elems.shape[0]):
            s = rho @ np.ascontiguousarray(n_elems[y]) @ rho
            total += trace_sqrt_inner(np.ascontiguousarray(m_half[y]), s, cutoff)
        out[i] = total
    return out


@kernel
def effect_hellinger_batch(eff_a, eff_a_half, eff_b, din, vs, cutoff):
    out = np.empty(vs.shape[0])
    for i in range(vs.shape[0]):
        rho = reduced_state(vs[i], din)
        lin = 0.5 * np.real(np.trace((eff_a + eff_b) @ rho))
        out[i] = lin - trace_sqrt_inner(eff_a_half, rho @ eff_b @ rho, cutoff)
    return out


@kernel
def variance_batch(x, din, vs):
    xdx = np.ascontiguousarray(x.conj().T) @ x
    out = np.empty(vs.shape[0])
    for i in range(vs.shape[0]):
        rho = reduced_state(vs[i], din)
        out[i] = np.real(np.trace(xdx @ rho)) - np.abs(np.trace(x @ rho)) ** 2
    return out
