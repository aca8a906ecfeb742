"""Enumerate every Wick universe up to four vertices and cache the class tables."""
import argparse
import time

from mshopf.wick import cache_dir, enumerate_pairings


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-vertices", type=int, default=4)
    args = p.parse_args()
    print(f"cache: {cache_dir()}")
    for v in range(args.max_vertices + 1):
        for n in (0, 2, 4):
            if not v and not n:
                continue
            t = time.perf_counter()
            u = enumerate_pairings(v, n)
            ok = "ok" if u.total == u.expected_total else "MISMATCH"
            print(f"v={v} n={n}: {len(u.classes):4d} classes, {u.total} pairings ({ok}) {time.perf_counter() - t:.1f}s")


if __name__ == "__main__":
    main()
