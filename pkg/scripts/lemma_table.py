"""Insertion-counting identity for every pair of biped-free quadrupeds that fits the catalog."""
import argparse

from mshopf.effective import check_combinatorial_lemma
from mshopf.wick import MAX_VERTICES, biped_free_quadrupeds


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--source", choices=("oracle", "core"), default="oracle")
    args = p.parse_args()
    gs = [g for g in biped_free_quadrupeds(MAX_VERTICES) if g.edges]
    print(f"{'g1':>4} {'g2':>4} {'lhs':>8} {'rhs':>8}  holds")
    for i, g1 in enumerate(gs):
        for j, g2 in enumerate(gs):
            if g1.num_vertices + g2.num_vertices - 1 > MAX_VERTICES:
                continue
            r = check_combinatorial_lemma(g1, g2, source=args.source)
            print(f"{i:>4} {j:>4} {str(r.lhs):>8} {str(r.rhs):>8}  {r.holds}")


if __name__ == "__main__":
    main()
