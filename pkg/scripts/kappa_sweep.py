"""Iteration counts of the interior point method across kappa margins and first steps."""
import argparse
import statistics

import numpy as np

from lcplab.errors import IpmStall
from lcplab.generate import random_structured_instance
from lcplab.ipm import IpmParams, solve_ipm


def iterations(inst, z0, slack, gamma, max_iter):
    params = IpmParams(kappa_slack=slack, gamma=gamma, max_iter=max_iter,
                       z0=[float(v) for v in z0])
    try:
        _, trace = solve_ipm(inst, params)
    except IpmStall:
        return None
    return len(trace) - 1


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--instances", type=int, default=20)
    ap.add_argument("--slacks", default="0.01,0.05,0.1,0.5,1,2")
    ap.add_argument("--gammas", default="1,0.5")
    ap.add_argument("--max-iter", type=int, default=5000)
    args = ap.parse_args()

    cases = [random_structured_instance(args.n, seed) for seed in range(args.instances)]
    print(f"{'slack':>6} {'gamma':>6} {'median':>7} {'max':>6} {'stalls':>6}")
    for slack in (float(s) for s in args.slacks.split(",")):
        for gamma in (float(g) for g in args.gammas.split(",")):
            counts = [iterations(inst, z0, slack, gamma, args.max_iter) for inst, z0 in cases]
            done = [c for c in counts if c is not None]
            med = statistics.median(done) if done else np.nan
            top = max(done) if done else np.nan
            print(f"{slack:6g} {gamma:6g} {med:7g} {top:6g} {len(counts) - len(done):6d}")


if __name__ == "__main__":
    main()
