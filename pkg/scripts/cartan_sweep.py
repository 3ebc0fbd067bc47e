#!/usr/bin/env python3
"""Compare Cartan embeddings against the orbit realizations over a size range."""

import argparse

import numpy as np

from manirep.embeddings import cartan_compare


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    cases = []
    for n in range(2, args.max_n + 1):
        cases += [("AI", n, None), ("AII", n, None), ("DIII", n, None), ("CI", n, None)]
        for k in range(1, n):
            cases += [("AIII", n, k), ("BDI", n, k), ("CII", n, k)]

    print(f"{'type':6s} {'n':>3s} {'k':>3s} {'residual':>10s}  factor")
    for ctype, n, k in cases:
        rep = cartan_compare(ctype, n, k, trials=args.trials, seed=args.seed)
        if rep.identical:
            desc = "identical"
        else:
            C = rep.right_factor
            if np.allclose(C, np.diag(np.diag(C)), atol=1e-8):
                def fmt(d):
                    if abs(d.imag) < 1e-9:
                        return f"{d.real:.0f}"
                    if abs(d.real) < 1e-9:
                        return f"{d.imag:.0f}j"
                    return f"{d:.2f}"

                desc = "diag(" + ",".join(fmt(complex(d)) for d in np.diag(C)) + ")"
            else:
                desc = "constant right factor"
        print(f"{ctype:6s} {n:3d} {k if k else 0:3d} {rep.residual:10.2e}  {desc}")


if __name__ == "__main__":
    main()
