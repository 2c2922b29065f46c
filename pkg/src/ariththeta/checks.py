"""Named verification suites behind `check`: seeded, deterministic, pure.

Each suite returns a list of (name, passed, detail) rows; everything derives
from one integer seed so that a fixed seed reproduces the report byte for
byte in single-threaded mode.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np

from . import binforms
from .greens import EULER_GAMMA, QuadratureSpec, beta1
from .identities import degree_series
from .lattice import TraceZeroLattice
from .starprod import PairConfig, lambda_star, z_hat_indefinite

Row = tuple[str, bool, str]


def vector_with_cm(u0: float, v0: float, t: float, sign: int = 1) -> tuple:
    """The vector with norm t > 0 whose divisor is the point (u0, v0)."""
    g = sign * math.sqrt(t) / v0
    a = g * u0
    b = -(a * a + t) / g
    return (a, b, g)


def vector_with_geodesic(r1: float, r2: float, t: float, sign: int = 1) -> tuple:
    """The vector with norm t < 0 whose geodesic has endpoints r1 < r2."""
    g = sign * 2.0 * math.sqrt(-t) / abs(r1 - r2)
    a = g * (r1 + r2) / 2.0
    b = -g * r1 * r2
    return (a, b, g)


def random_pair(rng: random.Random):
    """A seeded nonsingular pair whose divisors interact, so heights are not
    negligibly small: close CM points, a geodesic passing a CM point, or a
    pair of nearby geodesics."""
    while True:
        mode = rng.choice("AAABBC")
        u1 = rng.uniform(-0.5, 0.5)
        v1 = rng.uniform(0.7, 1.3)
        t1 = rng.uniform(0.5, 2.5)
        if mode == "A":
            x1 = vector_with_cm(u1, v1, t1)
            d = rng.uniform(0.35, 1.2)
            th = rng.uniform(0, 2 * math.pi)
            # Point at hyperbolic distance ~d from (u1, v1).
            u2 = u1 + v1 * math.sinh(d) * math.cos(th)
            v2 = v1 * (math.cosh(d) + math.sinh(d) * math.sin(th) * 0.6)
            x2 = vector_with_cm(u2, max(v2, 0.15), rng.uniform(0.5, 2.5))
        elif mode == "B":
            x1 = vector_with_cm(u1, v1, t1)
            spread = rng.uniform(0.8, 2.5) * v1
            off = rng.uniform(-0.4, 0.4)
            x2 = vector_with_geodesic(
                u1 + off - spread, u1 + off + spread, -rng.uniform(0.4, 2.0)
            )
        else:
            x1 = vector_with_geodesic(u1 - rng.uniform(0.8, 2.0), u1, -rng.uniform(0.4, 2.0))
            x2 = vector_with_geodesic(
                u1 - rng.uniform(0.2, 0.7), u1 + rng.uniform(0.5, 1.5), -rng.uniform(0.4, 2.0)
            )
        pair = PairConfig.from_vectors(x1, x2)
        (g_t1, g_m), (_, g_t2) = pair.gram
        if abs(pair.det) < 0.15 or max(abs(g_t1), abs(g_t2), abs(g_m)) > 6.0:
            continue
        if g_t1 > 0 and g_t2 > 0:
            from .greens import cm_point

            z1, z2 = cm_point(pair.x1), cm_point(pair.x2)
            d2 = ((z1.u - z2.u) ** 2 + (z1.v - z2.v) ** 2) / (2 * z1.v * z2.v)
            if math.acosh(1 + d2) < 0.3:
                continue
        return pair


def random_rotation(rng: random.Random) -> np.ndarray:
    th = rng.uniform(0.3, 2 * math.pi - 0.3)
    k = np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
    if rng.random() < 0.5:
        k = k @ np.array([[1.0, 0.0], [0.0, -1.0]])
    return k


def rotate_pair(pair: PairConfig, k: np.ndarray) -> PairConfig:
    x1 = np.array(pair.x1)
    x2 = np.array(pair.x2)
    y1 = k[0, 0] * x1 + k[1, 0] * x2
    y2 = k[0, 1] * x1 + k[1, 1] * x2
    return PairConfig.from_vectors(tuple(y1), tuple(y2))


def conjugate_pair(pair: PairConfig, rng: random.Random) -> PairConfig:
    """A different realization of the same gram (ambient isometry)."""
    p = rng.uniform(0.7, 1.4)
    q = rng.uniform(-0.6, 0.6)
    r = rng.uniform(-0.6, 0.6)
    s = (1 + q * r) / p

    def conj(x):
        al, be, ga = x
        return (
            (p * s + q * r) * al - p * r * be + q * s * ga,
            -2 * p * q * al + p * p * be - q * q * ga,
            2 * r * s * al - r * r * be + s * s * ga,
        )

    y1, y2 = conj(pair.x1), conj(pair.x2)
    if rng.random() < 0.5:
        # Improper ambient isometry (reflection u -> -u of the half-plane).
        y1 = (-y1[0], y1[1], y1[2])
        y2 = (-y2[0], y2[1], y2[2])
    return PairConfig.from_vectors(y1, y2)


def suite_beta1(seed: int, spec: QuadratureSpec) -> list[Row]:
    rows: list[Row] = []
    rs = [10.0 ** (-6 + 7.2 * k / 39) for k in range(40)]
    ok = all(beta1(r) > beta1(r * 1.05) > 0 for r in rs)
    rows.append(("beta1:strictly-decreasing-positive", ok, "40 log-spaced points"))
    ok = all(beta1(r) <= math.exp(-r) / r for r in rs if r >= 0.1)
    rows.append(("beta1:tail-bound-exp(-r)/r", ok, "r >= 0.1"))
    worst = max(
        abs(beta1(r) + EULER_GAMMA + math.log(r)) / (2 * r)
        for r in rs
        if r <= 0.5
    )
    rows.append(
        ("beta1:small-r-log-law", worst <= 1.0, f"max |beta1+gamma+log r|/2r = {worst:.3e}")
    )
    from .greens import _beta1_cf, _beta1_series

    gap = max(
        abs(_beta1_series(r) - _beta1_cf(r)) / _beta1_series(r) for r in (0.8, 1.0, 1.3)
    )
    rows.append(
        (
            "beta1:series-fraction-crossover",
            gap < 1e-12,
            f"max relative gap between the two evaluations: {gap:.2e}",
        )
    )
    return rows


def suite_zagier(lat: TraceZeroLattice, hodge_degree: Fraction) -> list[Row]:
    rows: list[Row] = []
    series = degree_series(lat, v=1.0, n=50, hodge_degree=hodge_degree)
    ok0 = series.coefficient(0) == -hodge_degree
    rows.append(("zagier:constant-term", ok0, f"coefficient(0) = {series.coefficient(0)}"))
    for t in range(1, 51):
        h = binforms.hurwitz_class_number(4 * t)
        c = series.coefficient(t)
        rows.append((f"zagier:t={t}", c == h, f"degree {c} vs H({4 * t}) = {h}"))
    return rows


def suite_o2_invariance(seed: int, spec: QuadratureSpec, count: int = 20) -> list[Row]:
    rng = random.Random(seed * 7 + 1)
    rows: list[Row] = []
    for k in range(count):
        pair = random_pair(rng)
        rot = random_rotation(rng)
        base = lambda_star(pair, spec)
        moved = lambda_star(rotate_pair(pair, rot), spec)
        tol = 5e-3 * (1 + abs(base.value))
        dev = abs(moved.value - base.value)
        rows.append(
            (
                f"o2-invariance:{k}",
                dev <= tol,
                f"|L(xk)-L(x)| = {dev:.3e} tol {tol:.3e} (L = {base.value:.6f})",
            )
        )
    return rows


def suite_symmetry(seed: int, spec: QuadratureSpec, count: int = 20) -> list[Row]:
    rng = random.Random(seed * 7 + 2)
    rows: list[Row] = []
    for k in range(count):
        pair = random_pair(rng)
        base = lambda_star(pair, spec)
        swapped = lambda_star(PairConfig.from_vectors(pair.x2, pair.x1), spec)
        tol = base.err + swapped.err + 1e-9
        dev = abs(base.value - swapped.value)
        rows.append(
            (f"symmetry:swap-{k}", dev <= tol, f"dev {dev:.3e} within {tol:.3e}")
        )
    rng2 = random.Random(seed * 7 + 3)
    for k in range(count):
        pair = random_pair(rng2)
        other = conjugate_pair(pair, rng2)
        base = lambda_star(pair, spec)
        again = lambda_star(other, spec)
        tol = base.err + again.err + 1e-9
        dev = abs(base.value - again.value)
        rows.append(
            (f"symmetry:gram-only-{k}", dev <= tol, f"dev {dev:.3e} within {tol:.3e}")
        )
    return rows


def suite_a_independence(
    lat: TraceZeroLattice, seed: int, spec: QuadratureSpec, n_v: int = 5
) -> list[Row]:
    rng = random.Random(seed * 7 + 4)
    ts_11 = [(1, 0, -1), (1, 1, -1), (2, 1, -1), (1, 2, 1), (3, 1, -2)]
    ts_02 = [(-1, 0, -1), (-1, 1, -2), (-2, 1, -2), (-1, 0, -2), (-3, 2, -2)]
    rows: list[Row] = []
    for k in range(n_v):
        a11 = rng.uniform(0.5, 2.0)
        a22 = rng.uniform(0.5, 2.0)
        a12 = rng.uniform(-0.4, 0.4) * math.sqrt(a11 * a22)
        v = ((a11, a12), (a12, a22))
        for t1, m, t2 in ts_11 + ts_02:
            t_mat = ((t1, m), (m, t2))
            sym = z_hat_indefinite(lat, t_mat, v, spec, square_root="symmetric")
            tri = z_hat_indefinite(lat, t_mat, v, spec, square_root="triangular")
            tol = sym.err + tri.err + 1e-9
            dev = abs(sym.value - tri.value)
            rows.append(
                (
                    f"a-independence:v{k}:T=({t1},{m},{t2})",
                    dev <= tol,
                    f"sym {sym.value:.6e} tri {tri.value:.6e} dev {dev:.2e} "
                    f"tol {tol:.2e} orbits {sym.orbits}",
                )
            )
    return rows


SUITES = ("beta1", "zagier", "o2-invariance", "symmetry", "a-independence")


def run_suite(
    name: str,
    lat: TraceZeroLattice,
    seed: int,
    spec: QuadratureSpec,
    hodge_degree: Fraction = Fraction(1, 12),
) -> list[Row]:
    if name == "beta1":
        return suite_beta1(seed, spec)
    if name == "zagier":
        return suite_zagier(lat, hodge_degree)
    if name == "o2-invariance":
        return suite_o2_invariance(seed, spec)
    if name == "symmetry":
        return suite_symmetry(seed, spec)
    if name == "a-independence":
        return suite_a_independence(lat, seed, spec)
    if name == "full":
        rows: list[Row] = []
        for s in SUITES:
            rows.extend(run_suite(s, lat, seed, spec, hodge_degree))
        return rows
    raise ValueError(f"unknown suite {name!r}; choose from {SUITES + ('full',)}")
