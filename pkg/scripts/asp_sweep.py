"""Measured stretch, hop bound and hopset size of multi-source ASP across n, eps and |S|."""

import argparse
import math

import numpy as np

from approxsp.core import all_pairs_dijkstra
from approxsp.experiments import generate_graph
from approxsp.msp import asp


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[16, 32, 64, 128])
    ap.add_argument("--eps", type=float, nargs="+", default=[0.25, 0.5])
    ap.add_argument("--kappa", type=int, default=2)
    ap.add_argument("--degree", type=float, default=3.0, help="expected degree of the random graph")
    ap.add_argument("--max-weight", type=int, default=100)
    ap.add_argument("--seeds", type=int, default=3)
    args = ap.parse_args()

    print("n,eps,sources,seed,hopset_size,beta,R,max_stretch,mean_stretch,bound")
    for n in args.sizes:
        for eps in args.eps:
            for count in sorted({1, round(math.sqrt(n)), n}):
                for seed in range(args.seeds):
                    params = {"p": min(1.0, args.degree / n), "max_weight": args.max_weight, "connected": True}
                    G = generate_graph("gnp", n, params, seed)
                    S = sorted(np.random.default_rng(seed).choice(n, count, replace=False).tolist())
                    res = asp(G, S, eps, args.kappa, seed=seed)
                    D = all_pairs_dijkstra(G)[S]
                    pos = np.isfinite(D) & (D > 0)
                    st = res.estimates.values[pos] / D[pos]
                    print(f"{n},{eps},{count},{seed},{len(res.hopset)},{res.beta},{res.R},"
                          f"{st.max():.4f},{st.mean():.4f},{1 + 3 * eps}")


if __name__ == "__main__":
    main()
