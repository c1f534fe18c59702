"""Compare the computed Lie closure with the predicted structure for a list of (d, e) pairs."""

import argparse
import time

from toricvf.surfaces import empirical_ell, lie_closure, predicted_structure, surface_profile

DEFAULT_PAIRS = [(2, 1), (3, 2), (5, 2), (5, 3), (7, 3), (7, 4), (8, 5)]


def parse_pair(text):
    d, e = text.split(",")
    return int(d), int(e)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("pairs", nargs="*", type=parse_pair, help="pairs written d,e (default: the reference set)")
    ap.add_argument("--bound", type=int, default=24)
    args = ap.parse_args()
    failures = 0
    for d, e in args.pairs or DEFAULT_PAIRS:
        t0 = time.perf_counter()
        table = lie_closure(d, e, args.bound)
        diff = table.differences(predicted_structure(d, e, args.bound))
        prof = surface_profile(d, e)
        ell = empirical_ell(d, e, args.bound, table)
        status = "match" if not diff else f"{len(diff)} mismatches, first {diff[0]}"
        print(f"({d},{e}) codim={prof.codim} ell_bound={prof.ell_bound} ell_empirical={ell} "
              f"{status} [{time.perf_counter() - t0:.2f}s]")
        failures += bool(diff)
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
