"""Time the batch kernels and one full minimax solve under both backends.

Each backend runs in its own interpreter because the choice is made at import
time from CHANMETRIC_NUMBA. The numba timing excludes compilation (one warm-up
call first; compiled kernels are also cached on disk).

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from chanmetric import _kernels, backend_name, minimax_fidelity
from chanmetric.channels import operational_density, stinespring_isometry
from chanmetric.linalg import psd_sqrt
from chanmetric.optimize import OptConfig
from chanmetric.random import rand_channel, unit_vectors

repeat = int(sys.argv[1])
rng = np.random.default_rng(0)
a, b = rand_channel(2, 3, rng=rng), rand_channel(2, 3, rng=rng)
vs = unit_vectors(256, 4, rng)
ah, bd = psd_sqrt(operational_density(a).matrix), operational_density(b).matrix
fa, fb = stinespring_isometry(a, 6), stinespring_isometry(b, 6)
cases = {
    "purification_batch": lambda: _kernels.purification_fidelity_batch(a.kraus, b.kraus, vs, 1e-13),
    "density_batch": lambda: _kernels.density_fidelity_batch(ah, bd, 2, 3, vs, 1e-13),
    "stinespring_batch": lambda: _kernels.stinespring_trace_norm_batch(fa, fb, 3, vs),
    "trace_distance_batch": lambda: _kernels.output_trace_distance_batch(a.kraus, b.kraus, vs),
    "minimax_solve": lambda: minimax_fidelity(a, b, "purification", OptConfig(restarts=4)),
}
out = {"backend": backend_name(), "times": {}}
for name, fn in cases.items():
    fn()
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    out["times"][name] = best
print(json.dumps(out))
"""


def run(flag, repeat):
    env = dict(os.environ, CHANMETRIC_NUMBA=flag)
    res = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    jit, plain = run("1", args.repeat), run("0", args.repeat)
    print(f"{'case':<22}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for name in plain["times"]:
        p, j = plain["times"][name] * 1e3, jit["times"][name] * 1e3
        print(f"{name:<22}{p:>12.2f}{j:>12.2f}{p / j:>9.1f}x")


if __name__ == "__main__":
    main()
