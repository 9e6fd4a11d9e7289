"""Print the continuity table for A(t) = t^r into L^{p,q} in both modes."""

import argparse

from orlicz_lorentz.criteria import condition_integral_A
from orlicz_lorentz.young import power


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=float, default=2.0)
    ap.add_argument("--q", type=float, default=1.0)
    ap.add_argument("--offsets", type=float, nargs="+", default=[-0.5, -0.1, -0.02, 0.0, 0.02, 0.1, 0.5])
    args = ap.parse_args()
    print("r,exact,numeric")
    for off in args.offsets:
        r = args.p + off
        if r < 1:
            continue
        A = power(r)
        ex = condition_integral_A(A, args.p, args.q, mode="exact").state.value
        nu = condition_integral_A(A, args.p, args.q, mode="numeric").state.value
        print(f"{r:g},{ex},{nu}")


if __name__ == "__main__":
    main()
