"""Per-phase rounds and words of the simulated clique product across n, row count and scheme."""

import argparse

import numpy as np

from approxsp.ccsim import CliqueNetwork, cc_integer_product, for_clique


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 16, 64])
    ap.add_argument("--rs", type=float, nargs="+", default=[0.5, 0.75, 1.0])
    ap.add_argument("--bits", type=int, nargs="+", default=[8, 64, 256], help="entry size in bits")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print("n,rows,scheme,products,bits,phase,rounds,max_words_per_pair,words")
    rng = np.random.default_rng(args.seed)
    for n in args.sizes:
        for r in args.rs:
            s = max(1, min(n, round(n**r)))
            for scheme in ("naive", "strassen"):
                alg = for_clique(scheme, n, s)
                for bits in args.bits:
                    A = np.array([[int(x) for x in row] for row in rng.integers(0, 2, (s, n))], dtype=object) << (bits - 1)
                    B = np.array([[int(x) for x in row] for row in rng.integers(0, 2, (n, n))], dtype=object) << (bits - 1)
                    net = CliqueNetwork(n)
                    C = cc_integer_product(net, A, B, alg, entry_bound=2**bits)
                    assert np.array_equal(C, A.dot(B))
                    for ph in net.phases:
                        print(f"{n},{s},{scheme},{alg.m},{bits},{ph.name},{ph.rounds},{ph.max_words_per_pair},{ph.words}")


if __name__ == "__main__":
    main()
