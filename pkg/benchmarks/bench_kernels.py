"""Compare the numba kernels with the interpreted fallback.

Runs the same workload in two subprocesses, one with HURWITZ2_DISABLE_NUMBA=1.

    python benchmarks/bench_kernels.py [--words 20000]
"""
import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, random, sys, time
from hurwitz2 import _accel, identities, mcg, surface
from hurwitz2 import factorization as Fz

n = int(sys.argv[1])
rng = random.Random(0)
letters = (1, -1, 2, -2, 3, -3, 4, -4)
words = [tuple(rng.choice(letters) for _ in range(rng.randint(8, 64))) for _ in range(n)]
surface.dehn_reduce(words[0])  # compile outside the timer
out = {"numba": _accel.USE_NUMBA}
t = time.perf_counter()
for w in words:
    surface.dehn_reduce(w)
out["dehn_reduce"] = time.perf_counter() - t
t = time.perf_counter()
mcg.validate_presentation()
out["presentation"] = time.perf_counter() - t
t = time.perf_counter()
Fz.check_certificate(Fz.W1() * 2, identities.lemma8_certificate(), Fz.W0() * 3)
out["lemma8_replay"] = time.perf_counter() - t
print(json.dumps(out))
"""


def run(disable: bool, n: int) -> dict:
    env = dict(os.environ)
    if disable:
        env["HURWITZ2_DISABLE_NUMBA"] = "1"
    else:
        env.pop("HURWITZ2_DISABLE_NUMBA", None)
    res = subprocess.run([sys.executable, "-c", WORKLOAD, str(n)], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--words", type=int, default=20_000)
    args = ap.parse_args()
    fast, slow = run(False, args.words), run(True, args.words)
    print(f"{'task':<16}{'numba (s)':>12}{'fallback (s)':>14}{'speedup':>10}")
    for key in ("dehn_reduce", "presentation", "lemma8_replay"):
        print(f"{key:<16}{fast[key]:>12.3f}{slow[key]:>14.3f}{slow[key] / max(fast[key], 1e-9):>10.1f}")


if __name__ == "__main__":
    main()
