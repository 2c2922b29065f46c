#!/usr/bin/env python3
"""Sweep a star-product height over a one-parameter family of rotations.

The value should be flat across the sweep; the printed deviation column makes
drift obvious.  Usage: python scripts/lambda_invariance.py [n_steps] [seed]
"""

import math
import random
import sys

import numpy as np

from ariththeta import checks
from ariththeta.greens import QuadratureSpec
from ariththeta.starprod import lambda_star


def main() -> None:
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 12
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 1729
    rng = random.Random(seed)
    spec = QuadratureSpec()
    pair = checks.random_pair(rng)
    base = lambda_star(pair, spec)
    print(f"base pair gram = {pair.gram}")
    print(f"{'theta':>8}  {'Lambda':>14}  {'|delta|':>10}")
    print(f"{0.0:8.4f}  {base.value:14.8f}  {0.0:10.2e}")
    for k in range(1, n + 1):
        th = 2 * math.pi * k / (n + 1)
        rot = np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
        moved = lambda_star(checks.rotate_pair(pair, rot), spec)
        print(f"{th:8.4f}  {moved.value:14.8f}  {abs(moved.value - base.value):10.2e}")


if __name__ == "__main__":
    main()
