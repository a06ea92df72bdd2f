"""gmpy2.mpq versus fractions.Fraction on the hot paths.

Each backend runs in its own interpreter because the scalar type is fixed
at import time.  Usage:

    python3 benchmarks/bench_backends.py [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, random, time
from affgebra.exactnum import BACKEND
from affgebra.genderiv import solve_pairs
from affgebra.liecore import catalog
from affgebra.affine import check_axioms
from affgebra.harness import random_pair_affgebra, orbit_test

def timed(fn):
    t = time.perf_counter(); fn(); return (time.perf_counter() - t) * 1000

ALGEBRAS = [("r3", None), ("r3lambda", "1/2"), ("r3lambda", 2), ("r3lambda", -1),
            ("r3lambda", 1), ("r2c", None)]
rng = random.Random(0)
xs = [random_pair_affgebra("r2c", None, rng) for _ in range(20)]
out = {
    "backend": BACKEND,
    "solve_pairs x6": timed(lambda: [solve_pairs(catalog(t, l)) for t, l in ALGEBRAS]),
    "check_axioms x20": timed(lambda: [check_axioms(X) for X in xs]),
    "orbit_test r2c 200": timed(lambda: orbit_test("r2c", None, 1, 200)),
    "orbit_test r3(1) 100": timed(lambda: orbit_test("r3lambda", 1, 1, 100)),
}
print(json.dumps(out))
"""


def run(pure: bool) -> dict:
    env = {**os.environ, "AFFGEBRA_PURE_PYTHON": "1" if pure else "0"}
    proc = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True,
                          text=True, check=True)
    return json.loads(proc.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    best = {}
    for pure in (False, True):
        runs = [run(pure) for _ in range(args.repeat)]
        name = runs[0]["backend"]
        best[name] = {k: min(r[k] for r in runs) for k in runs[0] if k != "backend"}
    names = list(best)
    print(f"{'workload':<24}" + "".join(f"{n:>14}" for n in names) + f"{'ratio':>10}")
    for k in best[names[0]]:
        vals = [best[n][k] for n in names]
        ratio = vals[-1] / vals[0] if len(vals) == 2 else float("nan")
        print(f"{k:<24}" + "".join(f"{v:>12.1f}ms" for v in vals) + f"{ratio:>9.2f}x")


if __name__ == "__main__":
    main()
