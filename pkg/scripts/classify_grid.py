#!/usr/bin/env python3
"""Fundamental primes of diagonal index matrices over a small grid.

Usage: python scripts/classify_grid.py [D] [size]
Prints a size x size grid of fundamental primes for T = diag(t1, t2)
('.' = no prime, so the cycle is empty; '*' marks irregular entries).
"""

import sys

from ariththeta import identities


def main() -> None:
    d = int(sys.argv[1]) if len(sys.argv) > 1 else 6
    size = int(sys.argv[2]) if len(sys.argv) > 2 else 10
    print(f"discriminant D = {d}")
    header = "t1\\t2 " + "".join(f"{t2:>6}" for t2 in range(1, size + 1))
    print(header)
    for t1 in range(1, size + 1):
        cells = []
        for t2 in range(1, size + 1):
            c = identities.classify(((t1, 0), (0, t2)), d)
            if c.fundamental_prime is None:
                cells.append(f"{'.':>6}")
            else:
                mark = "" if c.regular else "*"
                cells.append(f"{str(c.fundamental_prime) + mark:>6}")
        print(f"{t1:>5} " + "".join(cells))


if __name__ == "__main__":
    main()
