"""Bare against effective four-point series, coefficient by coefficient in λ_ρ."""
import argparse

from mshopf.effective import check_effective_corollary
from mshopf.renorm import ToyAmplitude


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--rho", type=int, default=1)
    p.add_argument("--order", type=int, default=3)
    p.add_argument("--amplitude", choices=("toy", "symbols", "local"), default="toy")
    args = p.parse_args()
    res = check_effective_corollary(ToyAmplitude(args.amplitude), args.rho, args.order)
    for n, bare, eff in res.coefficients():
        print(f"λ^{n}: bare={bare}  effective={eff}  equal={bare == eff}")
    print("holds" if res.holds else "FAILS")


if __name__ == "__main__":
    main()
