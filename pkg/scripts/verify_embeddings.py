#!/usr/bin/env python3
"""Equivariance and dimension audit across every manifold family.

For each family at its smallest legal size (and optionally grown sizes),
prints the equivariance residual over random trials, the tangent dimension,
the stabilizer dimension, and the target dimension.
"""

import argparse
from dataclasses import replace

from manirep.embeddings import (
    action,
    all_smallest_legal,
    base_point,
    check_equivariance,
    group,
    module,
    mp_dimension,
    tangent_dim,
)
from manirep.stabilizers import stabilizer_dim_in_group


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--grow", type=int, default=0, help="also audit sizes n + this increment")
    args = ap.parse_args()

    header = f"{'family':24s} {'params':16s} {'residual':>10s} {'dim M':>6s} {'dim H':>6s} {'dim V':>6s}"
    print(header)
    print("-" * len(header))
    worst = 0.0
    for md0 in all_smallest_legal():
        variants = [md0]
        if args.grow:
            if md0.family == "gr-indefinite":
                mm, nn = md0.sizes
                variants.append(replace(md0, n=md0.n + args.grow,
                                        sizes=(mm + args.grow, nn + args.grow)))
            else:
                variants.append(replace(md0, n=md0.n + args.grow))
        for md in variants:
            res = check_equivariance(md, args.trials, args.seed)
            worst = max(worst, res)
            gp = group(md)
            stab = stabilizer_dim_in_group(gp, module(md), action(md), base_point(md).value)
            params = f"n={md.n}" + (f",k={md.k}" if md.k else "") + (
                f",ks={md.ks}" if md.ks else "")
            print(f"{md.family:24s} {params:16s} {res:10.2e} "
                  f"{tangent_dim(md):6d} {stab:6d} {mp_dimension(md):6d}")
    print(f"\nworst residual: {worst:.3e} over {args.trials} trials/family")


if __name__ == "__main__":
    main()
