"""π_CK on the sunset: coefficient per rank pattern and the assignment total."""
import argparse

from mshopf.verify import sunset_report


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--rho", type=int, nargs="+", default=[2, 3])
    args = p.parse_args()
    for rho in args.rho:
        rep, total = sunset_report(rho)
        print(f"rho={rho}  total={total}  (rho+1)^3={(rho + 1) ** 3}")
        for r in rep:
            print(f"  pattern {r.pattern}: coefficients {list(r.coefficients)} over {r.n_classes} classes")


if __name__ == "__main__":
    main()
