"""Compare the production beta_hat scan with a dense brute-force grid.

    python scripts/oracle_check.py --instances 200 --points 1000000 --seed 0
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

import oracles  # noqa: E402
from problems import random_problem  # noqa: E402
from structinterp import GridSpec, interpolate  # noqa: E402


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--instances", type=int, default=100)
    ap.add_argument("--points", type=int, default=oracles.ORACLE_POINTS)
    ap.add_argument("--grid-points", type=int, default=4096, help="production grid size")
    ap.add_argument("--max-nodes", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    errs = []
    for k in range(args.instances):
        n = int(rng.integers(1, args.max_nodes + 1))
        prob = random_problem(int(rng.integers(2**31)), tag="gpe", m=1, n=n, on_axis=0)
        fam = interpolate(prob, M=np.eye(1), grid=GridSpec(points=args.grid_points)).family
        ref, w_ref = oracles.beta_hat_scalar(fam.P.coeffs[:, 0, 0], prob.nodes, args.points)
        err = abs(fam.beta_hat - ref) / ref if ref > 0 else abs(fam.beta_hat)
        errs.append(err)
        if err > 1e-5:
            print(f"instance {k}: n={n} production {fam.beta_hat:.12g} oracle {ref:.12g} (omega {w_ref:.6g})")
    errs = np.array(errs)
    print(f"{args.instances} instances: max rel err {errs.max():.3e}, median {np.median(errs):.3e}, "
          f"{int(np.sum(errs > 1e-5))} above 1e-5")
    return int(np.any(errs > 1e-5))


if __name__ == "__main__":
    sys.exit(main())
