"""Component census over small (g, r, m), printed as CSV.

For each type with non-empty moduli this prints ell, the number of
components, their sizes, and how many orbits the explicit generator set
actually produces. A surplus of orbits over components means the chosen
generators realise only part of the monodromy group.
"""

from __future__ import annotations

import argparse
import csv
import sys
from itertools import combinations_with_replacement

from rspin.arith import LevelParams, ell, exists_spin
from rspin.monodromy import component_partition, generator_set, orbits


def rows(max_g: int, max_r: int, max_n: int, orbit_cap: int):
    for g in range(max_g + 1):
        for r in range(1, max_r + 1):
            for n in range(max_n + 1):
                if 2 * g - 2 + n <= 0:
                    continue
                for m in combinations_with_replacement(range(r), n):
                    params = LevelParams(g, r, n)
                    if not exists_spin(params, m):
                        continue
                    part = component_partition(params, m)
                    states = r ** (2 * g)
                    n_orbits = ""
                    if states <= orbit_cap:
                        n_orbits = len(orbits(generator_set(params, m), params))
                    yield {
                        "g": g,
                        "r": r,
                        "m": " ".join(map(str, m)),
                        "ell": ell(params, m),
                        "components": len(part),
                        "sizes": " ".join(map(str, part.sizes())),
                        "orbits": n_orbits,
                    }


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-g", type=int, default=3)
    ap.add_argument("--max-r", type=int, default=6)
    ap.add_argument("--max-n", type=int, default=1)
    ap.add_argument("--orbit-cap", type=int, default=5000, help="skip explicit orbits above this many states")
    args = ap.parse_args(argv)
    fields = ["g", "r", "m", "ell", "components", "sizes", "orbits"]
    writer = csv.DictWriter(sys.stdout, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows(args.max_g, args.max_r, args.max_n, args.orbit_cap):
        writer.writerow(row)


if __name__ == "__main__":
    main()
