"""Round exponent of the clique distance product for |S| = n^r, next to the published anchors."""

import argparse

from approxsp.ccsim import OmegaTable, cc_round_exponent, solve_r_prime
from approxsp.experiments import EXPONENT_ANCHORS


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--omega-table", help="JSON file with points/alpha/omega_square")
    ap.add_argument("--step", type=float, default=0.05)
    args = ap.parse_args()
    table = OmegaTable.load(args.omega_table) if args.omega_table else OmegaTable()
    print("r,r_prime,omega_r_prime,exponent,anchor")
    steps = round(1 / args.step)
    for i in range(steps + 1):
        r = round(i * args.step, 6)
        rp = solve_r_prime(r, table)
        anchor = EXPONENT_ANCHORS.get(r, "")
        print(f"{r:.2f},{rp:.4f},{table(rp):.4f},{cc_round_exponent(r, table):.4f},{anchor}")


if __name__ == "__main__":
    main()
