"""Track the two pieces of the small-set decomposition as the set shrinks."""

import argparse

import numpy as np

from orlicz_lorentz.lab import DEFAULT_LAMBDA, proof_decomposition
from orlicz_lorentz.young import power


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rho", type=float, default=3.0)
    ap.add_argument("--p", type=float, default=2.0)
    ap.add_argument("--q", type=float, default=1.0)
    ap.add_argument("--lam", type=float, default=DEFAULT_LAMBDA)
    ap.add_argument("--decades", type=int, default=16)
    args = ap.parse_args()
    print("r,S,B,total")
    for r in np.logspace(-1, -args.decades, args.decades):
        d = proof_decomposition(power(args.rho), args.p, args.q, args.lam, float(r))
        print(f"{r:.0e},{d.S_integral:.6g},{d.B_integral:.6g},{d.total:.6g}")


if __name__ == "__main__":
    main()
