"""Command line front end.

Exit codes: 0 success, 2 no solution (or Lemke ray), 3 input error, 4 IPM stall.
"""
import argparse
import json
import sys

from . import io, regression
from .classes import CLASS_NAMES, classify_full
from .errors import (DimensionTooLarge, GenerationExhausted, IllegitimatePivot, InfeasibleStart,
                     InputError, IpmStall, PreconditionError)
from .generate import generate_random, generate_structured, random_p0_block
from .ipm import IpmParams, solve_ipm
from .lcp import LcpInstance, LcpSolution, solve_enumerate, solve_lemke
from .lp import game_value
from .ppt import ppt_rhs, ppt_transform
from .rational import fmt, fmt_mat, fmt_vec

OK, NO_SOLUTION, BAD_INPUT, STALL = 0, 2, 3, 4


def _index_list(text, n):
    try:
        idx = [int(t) - 1 for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"bad index list {text!r}") from None
    if any(i < 0 or i >= n for i in idx):
        raise InputError(f"indices in {text!r} must lie in 1..{n}")
    return idx


def _float_list(text):
    try:
        return [float(t) for t in text.split(",")]
    except ValueError:
        raise InputError(f"bad vector {text!r}") from None


def report_dict(rep):
    def verdict(v):
        d = {"member": v.member}
        if v.witness is not None:
            d["witness"] = [fmt(x) for x in v.witness]
        if v.support is not None:
            d["support"] = [i + 1 for i in v.support]
        if v.block is not None:
            d["block"] = [i + 1 for i in v.block]
        if v.note:
            d["note"] = v.note
        return d

    return {
        "n": rep.matrix.shape[0],
        "A": [[fmt(x) for x in row] for row in rep.matrix],
        "classes": {k: verdict(v) for k, v in rep.verdicts.items()},
        "minor_class": rep.minor_class,
        "game_value": fmt(rep.game.value),
        "derived": {k: {"holds": f.holds, "route": f.route} for k, f in rep.derived.items()},
        "l2_certificates": [
            {"support": [i + 1 for i in s], "x": [fmt(v) for v in x],
             "D1": [fmt(d1[i, i]) for i in range(len(x))]}
            for s, x, d1 in rep.certificates
        ],
    }


def cmd_classify(args):
    doc = io.load(args.input)
    rep = classify_full(doc.A)
    width = max(len(k) for k in CLASS_NAMES)
    print(fmt_mat(doc.A))
    print()
    for name in CLASS_NAMES:
        print(f"{name.ljust(width)}  {rep.verdicts[name].describe()}")
    print(f"{'minors'.ljust(width)}  {rep.minor_class}")
    print(f"{'v(A)'.ljust(width)}  {fmt(rep.game.value)}")
    for name, flag in rep.derived.items():
        print(f"{name.ljust(width)}  {'yes' if flag.holds else 'no'} ({flag.route})")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report_dict(rep), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return OK


def _print_solution(sol):
    exact = not isinstance(sol.z[0], float)
    show = fmt_vec if exact else (lambda v: "(" + ", ".join(f"{x:.6g}" for x in v) + ")")
    print("z =", show(sol.z))
    print("w =", show(sol.w))
    print("z'w =", fmt(sol.residuals["ztw"]) if exact else f"{sol.residuals['ztw']:.3g}")


def cmd_solve(args):
    doc = io.load(args.input)
    if doc.q is None:
        raise InputError('solve needs "q" in the document')
    inst = LcpInstance(doc.A, doc.q)
    if args.method == "enumerate":
        sols, _ = solve_enumerate(inst)
        if not sols:
            print("no solution")
            return NO_SOLUTION
        for i, sol in enumerate(sols, 1):
            print(f"solution {i}")
            _print_solution(sol)
        return OK
    if args.method == "lemke":
        out = solve_lemke(inst)
        if not isinstance(out, LcpSolution):
            print(f"secondary ray after {out.pivots} pivots")
            print("z =", fmt_vec(out.z), " z0 =", fmt(out.z0))
            print("direction z =", fmt_vec(out.direction_z), " z0 =", fmt(out.direction_z0))
            return NO_SOLUTION
        _print_solution(out)
        print("pivots =", out.residuals["pivots"])
        return OK
    params = IpmParams(beta=args.beta, sigma=args.sigma, eps=args.eps, kappa_slack=args.kappa_slack,
                       max_iter=args.max_iter, gamma=args.gamma,
                       z0=_float_list(args.z0) if args.z0 else None)
    try:
        sol, trace = solve_ipm(inst, params)
    except InfeasibleStart as exc:
        print(exc, file=sys.stderr)
        return NO_SOLUTION
    except IpmStall as exc:
        if args.trace:
            exc.trace.write_csv(args.trace)
        print(exc, file=sys.stderr)
        return STALL
    if args.trace:
        trace.write_csv(args.trace)
    _print_solution(sol)
    print("iterations =", len(trace) - 1)
    return OK


def cmd_ppt(args):
    doc = io.load(args.input)
    alpha = _index_list(args.alpha, doc.n)
    res = ppt_transform(doc.A, alpha)
    print(fmt_mat(res.M))
    if doc.q is not None:
        print("q' =", fmt_vec(ppt_rhs(doc.q, doc.A, alpha)))
    return OK


def cmd_game(args):
    doc = io.load(args.input)
    g = game_value(doc.A)
    print("v(A) =", fmt(g.value))
    print("x (columns, maximizer) =", fmt_vec(g.col_strategy))
    print("y (rows, minimizer) =", fmt_vec(g.row_strategy))
    return OK


def cmd_gen(args):
    if args.structured:
        import numpy as np
        rng = np.random.default_rng(args.seed)
        a = generate_structured(random_p0_block(args.n - 1, rng), seed=int(rng.integers(2**32)))
    else:
        a = generate_random(args.cls, args.n, args.seed, budget=args.budget)
    text = io.dumps(io.MatrixDocument(a))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return OK


def cmd_reproduce(args):
    if args.list:
        for c in regression.CHECKS:
            print(f"{c.name}  {c.summary}")
        return OK
    results = regression.run_all()
    width = max(len(n) for n, _, _ in results)
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name.ljust(width)}  {detail}")
    failed = sum(not ok for _, ok, _ in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return OK if not failed else 1


def build_parser():
    p = argparse.ArgumentParser(prog="lcplab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="run every class detector on a matrix")
    c.add_argument("-i", "--input", required=True)
    c.add_argument("--json", help="also write the report as JSON")
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("solve", help="solve LCP(q, A)")
    s.add_argument("-i", "--input", required=True)
    s.add_argument("--method", choices=("lemke", "ipm", "enumerate"), default="lemke")
    d = IpmParams()
    s.add_argument("--beta", type=float, default=d.beta)
    s.add_argument("--sigma", type=float, default=d.sigma)
    s.add_argument("--eps", type=float, default=d.eps)
    s.add_argument("--kappa-slack", type=float, default=d.kappa_slack)
    s.add_argument("--gamma", type=float, default=d.gamma, help="first trial step of the line search")
    s.add_argument("--max-iter", type=int, default=d.max_iter)
    s.add_argument("--z0", help="comma separated strictly feasible start")
    s.add_argument("--trace", help="write the IPM iterates as CSV")
    s.set_defaults(func=cmd_solve)

    t = sub.add_parser("ppt", help="principal pivot transform")
    t.add_argument("-i", "--input", required=True)
    t.add_argument("--alpha", required=True, help="1-based indices, e.g. 1,3")
    t.set_defaults(func=cmd_ppt)

    g = sub.add_parser("game", help="value of the zero-sum game with payoff A")
    g.add_argument("-i", "--input", required=True)
    g.set_defaults(func=cmd_game)

    n = sub.add_parser("gen", help="generate a matrix document")
    mode = n.add_mutually_exclusive_group(required=True)
    mode.add_argument("--structured", action="store_true", help="P0 block bordered by +col, -row")
    mode.add_argument("--random", action="store_true", help="rejection sample a class")
    n.add_argument("--class", dest="cls", default="none", choices=("none",) + CLASS_NAMES)
    n.add_argument("--n", type=int, default=3)
    n.add_argument("--seed", type=int, default=0)
    n.add_argument("--budget", type=int, default=10000)
    n.add_argument("-o", "--output")
    n.set_defaults(func=cmd_gen)

    r = sub.add_parser("reproduce-paper", help="run the reproduction checks")
    r.add_argument("--list", action="store_true", help="list check names without running")
    r.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if getattr(args, "n", None) is not None and args.command == "gen" and args.n < 1:
        print("error: --n must be positive", file=sys.stderr)
        return BAD_INPUT
    try:
        return args.func(args)
    except (InputError, IllegitimatePivot, PreconditionError, DimensionTooLarge, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except GenerationExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return NO_SOLUTION
    except ValueError as exc:  # parameter validation
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
