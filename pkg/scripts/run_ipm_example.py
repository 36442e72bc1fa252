"""Run the interior point method on a stored instance and dump its trace.

    python3 scripts/run_ipm_example.py --kappa-slack 0.01 --gamma 0.5 --rows 1,2,50,100

reproduces the reference iterates pinned by ``lcplab reproduce-paper``.
"""
import argparse
from pathlib import Path

from lcplab.io import load
from lcplab.ipm import IpmParams, solve_ipm
from lcplab.lcp import LcpInstance

DATA = Path(__file__).resolve().parent.parent / "data" / "ipm_example.json"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-i", "--input", default=str(DATA))
    ap.add_argument("--z0", default="1,1,5")
    ap.add_argument("--beta", type=float, default=0.5)
    ap.add_argument("--sigma", type=float, default=0.2)
    ap.add_argument("--eps", type=float, default=1e-5)
    ap.add_argument("--kappa-slack", type=float, default=0.1)
    ap.add_argument("--gamma", type=float, default=1.0)
    ap.add_argument("--rows", default="", help="comma separated iteration numbers to print")
    ap.add_argument("--csv", help="write the full trace here")
    args = ap.parse_args()

    doc = load(args.input)
    params = IpmParams(beta=args.beta, sigma=args.sigma, eps=args.eps,
                       kappa_slack=args.kappa_slack, gamma=args.gamma,
                       z0=[float(v) for v in args.z0.split(",")])
    sol, trace = solve_ipm(LcpInstance(doc.A, doc.q), params)
    if args.csv:
        trace.write_csv(args.csv)

    rows = [int(r) for r in args.rows.split(",") if r] or [0, len(trace) - 1]
    print(f"{'k':>4} {'z':>36} {'dz':>36} {'psi':>10}")
    for k in rows:
        s = trace.steps[k]
        prev = trace.steps[k - 1] if k > 0 else None
        z = " ".join(f"{v:11.6f}" for v in s.z)
        dz = " ".join(f"{v:11.6f}" for v in prev.dz) if prev else ""
        psi = f"{prev.psi:10.5f}" if prev else ""
        print(f"{k:4d} {z:>36} {dz:>36} {psi:>10}")
    print(f"converged after {len(trace) - 1} iterations: z = "
          f"({', '.join(f'{v:.6f}' for v in sol.z)}), z'w = {trace.steps[-1].ztw:.3g}")


if __name__ == "__main__":
    main()
