"""Brute-force oracle for the one-loop boundary identity; writes tests/fixtures/boundary_identity.json.

Near a curve with one non-separating node, the r-spin structures on the
smooth fibre (Z/r)^{2g} are permuted by the Dehn twist about the vanishing
cycle. Each cycle of that permutation is one boundary point, and its length
is the local ramification there. The twist about the first chain curve sends
xi_2 to xi_2 + xi_1 and fixes the other coordinates. This script walks
every state and records the cycle-length histogram. It imports nothing from
the library.
"""

from __future__ import annotations

import argparse
import json
import time
from pathlib import Path

FIXTURE = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "boundary_identity.json"


def step(index: int, r: int, dim: int) -> int:
    """Apply xi_2 += xi_1 to the state encoded big-endian in base r."""
    low = r ** (dim - 2)
    xi1 = index // (r * low)
    xi2 = (index // low) % r
    return index + (((xi2 + xi1) % r) - xi2) * low


def cycle_histogram(g: int, r: int) -> dict[int, int]:
    dim = 2 * g
    total = r**dim
    seen = bytearray(total)
    hist: dict[int, int] = {}
    for start in range(total):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = 1
            length += 1
            x = step(x, r, dim)
        hist[length] = hist.get(length, 0) + 1
    return hist


def cases(max_r: int, max_g: int) -> list[tuple[int, int]]:
    return [(g, r) for g in range(1, max_g + 1) for r in range(2, max_r + 1) if (2 * g - 2) % r == 0]


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-r", type=int, default=8)
    ap.add_argument("--max-g", type=int, default=4)
    ap.add_argument("--out", type=Path, default=FIXTURE)
    args = ap.parse_args(argv)
    records = []
    for g, r in cases(args.max_r, args.max_g):
        t0 = time.perf_counter()
        hist = cycle_histogram(g, r)
        records.append(
            {
                "g": g,
                "r": r,
                "states": r ** (2 * g),
                "cycles": {str(k): v for k, v in sorted(hist.items())},
            }
        )
        print(f"g={g} r={r} states={r ** (2 * g)} cycles={sorted(hist.items())} ({time.perf_counter() - t0:.1f}s)")
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps({"cases": records}, indent=1) + "\n")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
