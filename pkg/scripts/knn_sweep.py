"""k-NN distances by k: candidate sums the sparse product touches (at most rounds * k^2 * n) and approximate stretch."""

import argparse

import numpy as np

from approxsp.core import all_pairs_dijkstra
from approxsp.experiments import generate_graph
from approxsp.knn import approx_knn, exact_knn


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=64)
    ap.add_argument("--ks", type=int, nargs="+", default=[1, 2, 4, 8, 16, 32])
    ap.add_argument("--eps", type=float, default=0.25)
    ap.add_argument("--degree", type=float, default=2.0)
    ap.add_argument("--seeds", type=int, default=3)
    args = ap.parse_args()

    print("n,k,seed,rounds,sparse_ops,ops_bound,approx_max_ratio,bound")
    for seed in range(args.seeds):
        params = {"p": args.degree / args.n, "max_weight": 50, "connected": True, "directed": True}
        G = generate_graph("gnp", args.n, params, seed)
        D = all_pairs_dijkstra(G)
        for k in args.ks:
            ex = exact_knn(G, k)
            ap_res = approx_knn(G, k, args.eps, seed=seed)
            zk = np.sort(D, axis=1)[:, k - 1]
            ratio = 1.0
            for v in range(args.n):
                row = ap_res.matrix[v]
                if zk[v] > 0:
                    ratio = max(ratio, row[np.isfinite(row)].max() / zk[v])
            print(f"{args.n},{k},{seed},{len(ex.witnesses)},{ex.ops},{len(ex.witnesses) * k * k * args.n},{ratio:.4f},{1 + 3 * args.eps}")


if __name__ == "__main__":
    main()
