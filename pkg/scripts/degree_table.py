#!/usr/bin/env python3
"""Print the degree series of the split model next to the class-number column.

Usage: python scripts/degree_table.py [max_t]
"""

import sys

import ariththeta as at
from ariththeta import binforms, identities


def main() -> None:
    max_t = int(sys.argv[1]) if len(sys.argv) > 1 else 25
    lat = at.trace_zero_lattice(at.bundled_order("d1"))
    series = identities.degree_series(lat, v=1.0, n=max(max_t, 1))
    print(f"{'t':>4}  {'deg':>8}  {'H(4t)':>8}")
    print(f"{0:>4}  {str(series.coefficient(0)):>8}  {str(binforms.hurwitz_class_number(0)):>8}")
    for t in range(1, max_t + 1):
        deg = series.coefficient(t)
        h = binforms.hurwitz_class_number(4 * t)
        flag = "" if deg == h else "   <-- mismatch"
        print(f"{t:>4}  {str(deg):>8}  {str(h):>8}{flag}")


if __name__ == "__main__":
    main()
