"""Hopset size relative to n^(1+1/kappa) log2 n and the hop bound found, over random connected graphs.

The largest ratio printed is what the documented size constant has to cover.
"""

import argparse

from approxsp.experiments import generate_graph
from approxsp.hopset import build_hopset, size_bound


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[32, 64, 128, 256])
    ap.add_argument("--kappas", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--eps", type=float, nargs="+", default=[0.25, 0.5])
    ap.add_argument("--degree", type=float, default=3.0)
    ap.add_argument("--seeds", type=int, default=5)
    args = ap.parse_args()

    print("n,kappa,eps,seed,size,ratio,beta")
    worst = 0.0
    for n in args.sizes:
        for kappa in args.kappas:
            for eps in args.eps:
                for seed in range(args.seeds):
                    params = {"p": min(1.0, args.degree / n), "max_weight": 100, "connected": True}
                    G = generate_graph("gnp", n, params, seed)
                    H = build_hopset(G, kappa, eps, seed=seed)
                    ratio = len(H) / size_bound(n, kappa, 1.0)
                    worst = max(worst, ratio)
                    print(f"{n},{kappa},{eps},{seed},{len(H)},{ratio:.4f},{H.beta_bound}")
    print(f"# max ratio {worst:.4f}")


if __name__ == "__main__":
    main()
