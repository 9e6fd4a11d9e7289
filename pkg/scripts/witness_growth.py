"""Growth of the L^{p,q}/Luxemburg ratio along the dyadic divergence witnesses."""

import argparse
import math

from orlicz_lorentz.criteria import divergence_witness, probe_ratio
from orlicz_lorentz.young import power


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=float, default=2.0)
    ap.add_argument("--q", type=float, default=1.0)
    ap.add_argument("--n", type=int, default=40)
    args = ap.parse_args()
    A = power(args.p)
    base = None
    print("n,ratio,ratio/ratio(1),sqrt(n)")
    for n in range(1, args.n + 1):
        r = probe_ratio(A, args.p, args.q, divergence_witness(A, args.p, args.q, n))
        base = base or r
        print(f"{n},{r:.6g},{r / base:.4f},{math.sqrt(n):.4f}")


if __name__ == "__main__":
    main()
