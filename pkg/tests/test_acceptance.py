"""Acceptance criteria, one test each.

Every test records a one-line verdict in RESULTS; conftest prints them at the
end of the run.
"""

import numpy as np

import oracles
from chanmetric import _kernels
from chanmetric import channels as C
from chanmetric import classical as K
from chanmetric import closedforms as CF
from chanmetric import metrics as M
from chanmetric import qbc
from chanmetric.linalg import psd_sqrt, trace_sqrt_product
from chanmetric.optimize import Objective, OptConfig, maximize_over_pure_states, minimize_over_pure_states
from chanmetric.random import rand_channel, rand_density, rand_hermitian, rand_povm, rand_psd, rand_stochastic, rand_unitary

RESULTS = {}
CFG = OptConfig(restarts=4, seed=0)
THETA_FAMILY = [np.pi / m for m in (4, 8, 16, 32)]


def record(number, title, passed, detail):
    RESULTS[number] = (title, bool(passed), detail)
    assert passed, f"criterion {number} ({title}): {detail}"


def _random_pair(rng, din=2, dout=2):
    r1, r2 = rng.integers(1, din * dout + 1, size=2)
    return rand_channel(din, dout, rank=int(r1), rng=rng), rand_channel(din, dout, rank=int(r2), rng=rng)


def test_criterion_01_route_agreement():
    rng = np.random.default_rng(101)
    worst = 0.0
    for _ in range(50):
        a, b = _random_pair(rng)
        vals = [M.minimax_fidelity(a, b, r, CFG).value for r in M.ROUTES]
        worst = max(worst, max(vals) - min(vals))
    record(1, "three minimax routes agree on 50 qubit pairs", worst < 1e-4, f"max pairwise gap {worst:.2e} (tol 1e-4)")


def test_criterion_02_unitary_closed_form():
    rng = np.random.default_rng(102)
    worst = 0.0
    for d in (2, 3):
        for _ in range(20):
            u, v = rand_unitary(d, rng), rand_unitary(d, rng)
            closed, _ = CF.unitary_minimax_fidelity(u, v)
            numeric = M.minimax_fidelity(C.unitary_channel(u), C.unitary_channel(v), "purification", CFG).value
            worst = max(worst, abs(closed - numeric))
    chord = M.minimax_fidelity(C.identity_channel(2), C.unitary_channel(np.diag([1, 1j])), "purification", CFG).value
    ok = worst < 1e-4 and abs(chord - 0.70711) < 1e-5
    record(2, "unitary hull closed form", ok, f"max gap {worst:.2e} on 40 pairs; diag(1,i) gives {chord:.6f}")


def test_criterion_03_equivalence_bounds():
    rng = np.random.default_rng(103)
    slack = np.inf
    for i in range(100):
        a, b = _random_pair(rng, 2, 2 + i % 2)
        f = M.minimax_fidelity(a, b, "purification", CFG).value
        d = M.cb_distance(a, b, CFG).value
        slack = min(slack, f - (1 - d), np.sqrt(max(0.0, 1 - d * d)) - f)
    sat = 0.0
    for d in (2, 3):
        for _ in range(10):
            u, v = C.unitary_channel(rand_unitary(d, rng)), C.unitary_channel(rand_unitary(d, rng))
            f = M.minimax_fidelity(u, v, "purification", CFG).value
            dist = M.cb_distance(u, v, CFG).value
            sat = max(sat, abs(f - np.sqrt(max(0.0, 1 - dist * dist))))
    ok = slack >= -1e-3 and sat < 1e-4
    record(3, "1 - D <= f <= sqrt(1 - D^2)", ok, f"min slack {slack:.2e} on 100 pairs; unitary saturation gap {sat:.2e}")


def test_criterion_04_fuchs_van_de_graaf():
    rng = np.random.default_rng(104)
    slack = np.inf
    for _ in range(500):
        d = int(rng.integers(2, 5))
        r, s = rand_density(d, rng, rank=int(rng.integers(1, d + 1))), rand_density(d, rng)
        f, t = M.state_fidelity(r, s), M.trace_distance(r, s)
        slack = min(slack, t - (1 - f), np.sqrt(max(0.0, 1 - f * f)) - t)
    record(4, "Fuchs-van de Graaf on 500 state pairs", slack >= -1e-9, f"min slack {slack:.2e}")


def test_criterion_05_entangled_fidelity_does_not_control_distance():
    ident = C.identity_channel(2)
    fs, ds, ratios = [], [], []
    worst_formula = 0.0
    bad_bound = np.inf
    for theta in THETA_FAMILY:
        ch = C.unitary_channel(np.diag([1, np.exp(1j * theta)]))
        f_ent = M.entangled_channel_fidelity(ch, ident)
        d = M.cb_distance(ch, ident, CFG).value
        worst_formula = max(worst_formula, abs(f_ent - np.cos(theta / 2)), abs(d - np.sqrt(1 - np.cos(theta / 2) ** 2)))
        bad_bound = min(bad_bound, f_ent - (1 - d), np.sqrt(1 - d * d / 4) - f_ent)
        fs.append(f_ent)
        ds.append(d)
        ratios.append(d / (1 - f_ent))
    trends = np.all(np.diff(fs) > 0) and np.all(np.diff(ds) < 0) and np.all(np.diff(ratios) > 0)
    # I_m against diag(-1, 1, ..., 1): entangled fidelity (m - 2)/m tends to 1 while D stays 1
    far = []
    for m in (4, 8, 16, 32):
        w = np.eye(m, dtype=complex)
        w[0, 0] = -1
        f_ent = M.entangled_channel_fidelity(C.identity_channel(m), C.unitary_channel(w))
        far.append((f_ent, CF.unitary_cb_distance(np.eye(m), w)))
    far_ok = all(abs(f - (m - 2) / m) < 1e-9 and abs(d - 1) < 1e-12 for (f, d), m in zip(far, (4, 8, 16, 32)))
    ok = worst_formula < 1e-4 and trends and bad_bound >= -1e-9 and far_ok
    record(5, "entangled fidelity near 1 with D not small", ok,
           f"theta family: F {fs[0]:.4f}->{fs[-1]:.4f}, D {ds[0]:.4f}->{ds[-1]:.4f}, D/(1-F) {ratios[0]:.1f}->{ratios[-1]:.1f}, "
           f"formula gap {worst_formula:.1e}, weak-bound slack {bad_bound:.1e}; diag(-1,1..1): F {far[-1][0]:.4f}, D {far[-1][1]:.1f}")


def test_criterion_06_lemma1_oracle():
    rng = np.random.default_rng(106)
    excess, gap = -np.inf, 0.0
    for _ in range(50):
        d = int(rng.integers(2, 4))
        r, s = rand_psd(d, rng), rand_psd(d, rng)
        exact = 2 * trace_sqrt_product(r, s)
        sampled, refined = oracles.unitary_sup(psd_sqrt(r), psd_sqrt(s), rng, samples=2000)
        excess = max(excess, 2 * sampled - exact)
        gap = max(gap, abs(exact - 2 * refined))
    ok = excess <= 1e-10 and gap < 1e-3
    record(6, "sampled-unitary sup vs 2 Tr sqrt(RS)", ok, f"max sample excess {excess:.2e}; local-search gap {gap:.2e}")


def test_criterion_07_concavity_and_monotonicity():
    rng = np.random.default_rng(107)
    conc = mono = np.inf
    for _ in range(50):
        n = int(rng.integers(2, 4))
        p, q = rng.dirichlet(np.ones(n)), rng.dirichlet(np.ones(n))
        phis = [rand_channel(2, rng=rng) for _ in range(n)]
        psis = [rand_channel(2, rng=rng) for _ in range(n)]
        lhs = M.minimax_fidelity(C.mixture_channel(p, phis), C.mixture_channel(q, psis), "purification", CFG).value
        rhs = sum(np.sqrt(p[i] * q[i]) * M.minimax_fidelity(phis[i], psis[i], "purification", CFG).value for i in range(n))
        conc = min(conc, lhs - rhs)
    for _ in range(50):
        a, b = _random_pair(rng)
        xi = rand_channel(2, rank=int(rng.integers(1, 5)), rng=rng)
        f = M.minimax_fidelity(a, b, "purification", CFG).value
        g = M.minimax_fidelity(C.compose(a, xi), C.compose(b, xi), "purification", CFG).value
        mono = min(mono, g - f)
    ok = conc >= -1e-3 and mono >= -1e-3
    record(7, "strong concavity and monotonicity", ok, f"min concavity slack {conc:.2e}; min monotonicity slack {mono:.2e}")


def test_criterion_08_gaussian():
    a = CF.gaussian_noise_fidelity(1, 4)
    b = CF.gaussian_noise_fidelity(1, 9)
    same = [CF.gaussian_noise_fidelity(x, x) for x in (0.3, 1.0, 7.5)]
    ok = a == 0.8 and b == 0.6 and all(v == 1.0 for v in same)
    record(8, "Gaussian displacement closed form", ok, f"(1,4) -> {a!r}, (1,9) -> {b!r}, mu = nu -> {same}")


def test_criterion_09_commitment_chain():
    rng = np.random.default_rng(109)
    slack = np.inf
    for _ in range(100):
        a, b = _random_pair(rng)
        rep = qbc.impossibility_report(qbc.CommitmentProtocol(a, b), CFG, tol=np.inf)
        slack = min(slack, rep.slack, -abs(rep.concealment_bound - rep.bob_form))
    bobs, alices, trend_slack = [], [], np.inf
    for theta in THETA_FAMILY:
        rep = qbc.impossibility_report(qbc.CommitmentProtocol(C.identity_channel(2), C.unitary_channel(np.diag([1, np.exp(1j * theta)]))), CFG)
        bobs.append(rep.bob)
        alices.append(rep.alice_bound)
        trend_slack = min(trend_slack, rep.alice_bound - (2 * (1 - rep.bob)) ** 2)
    trend = np.all(np.diff(bobs) < 0) and np.all(np.diff(alices) > 0)
    ok = slack >= -1e-3 and trend and trend_slack >= -1e-3
    record(9, "commitment chain and concealment trend", ok,
           f"min chain slack {slack:.2e} on 100 protocols; P_B {bobs[0]:.4f}->{bobs[-1]:.4f}, f^2 {alices[0]:.4f}->{alices[-1]:.4f}")


def test_criterion_10_povm_fidelity():
    rng = np.random.default_rng(110)
    self_gap = 0.0
    for _ in range(20):
        d = int(rng.integers(2, 4))
        m = rand_povm(d, int(rng.integers(2, 5)), rng)
        self_gap = max(self_gap, abs(K.qc_povm_fidelity(m, m, CFG).value - 1))
    diag_gap = 0.0
    for _ in range(20):
        rows, cols = int(rng.integers(2, 4)), int(rng.integers(2, 4))
        p, q = rand_stochastic(rows, cols, rng), rand_stochastic(rows, cols, rng)
        qv = K.qc_povm_fidelity([np.diag(r) for r in p], [np.diag(r) for r in q], CFG).value
        diag_gap = max(diag_gap, abs(qv - K.kernel_minimax_fidelity(p, q)[0]))
    ok = self_gap <= 1e-9 and diag_gap < 1e-6
    record(10, "POVM fidelity", ok, f"max |f(M,M) - 1| {self_gap:.1e}; diagonal vs kernel gap {diag_gap:.1e}")


def test_criterion_11_lindblad_second_order():
    x = np.array([[0.3, 1.0], [0.2, -0.5j]])
    cfg = OptConfig(restarts=4, seed=0, tol=1e-10, grad_step=1e-7)
    errs = []
    for eps in (1e-2, 5e-3, 2.5e-3):
        res = CF.lindblad_infinitesimal_fidelity(x, eps, cfg, numeric=True)
        errs.append(abs(res.numeric.value - res.predicted))
    ratios = [errs[0] / errs[1], errs[1] / errs[2]]
    ok = all(2 <= r <= 8 for r in ratios)
    record(11, "short-time fidelity error is second order", ok,
           f"errors {', '.join(f'{e:.2e}' for e in errs)}; ratios {ratios[0]:.2f}, {ratios[1]:.2f} (want 4 within x2)")


def test_criterion_12_eigenvalue_extremization():
    worst = 0.0
    for seed in range(20):
        rng = np.random.default_rng(seed)
        h = rand_hermitian(6, rng)
        w = np.linalg.eigvalsh(h)
        obj = Objective(batch=lambda vs, h=h: _kernels.quadratic_form_batch(h, vs))
        cfg = OptConfig(restarts=4, seed=seed)
        lo = minimize_over_pure_states(obj, 6, cfg).value
        hi = maximize_over_pure_states(obj, 6, cfg).value
        worst = max(worst, abs(lo - w[0]), abs(hi - w[-1]))
    record(12, "eigenvalue extremization on 6x6 Hermitian", worst < 1e-6, f"max error {worst:.2e} over 20 seeds")
