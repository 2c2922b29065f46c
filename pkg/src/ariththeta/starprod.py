"""Star-product heights and archimedean classes for nonsingular 2x2 indices.

The height of a pair of Green functions is realized as

    Lambda(x1, x2) = [delta term] + integral over D of ddc_xi(x1) . xi(x2),

the delta term being xi(x1) evaluated at the divisor of x2 when Q(x2) > 0
(attached to x1's divisor instead when only Q(x1) > 0, and absent when both
norms are negative).  The smooth integral excises hyperbolic balls around
each divisor point and extrapolates the radius to zero by one Richardson
step with two radii.  Both sheets of D contribute; for real vectors they
agree, hence the overall factor 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import splitorbits
from .errors import (
    PreconditionViolation,
    QuadratureFailure,
    SingularConfiguration,
    UnsupportedDiscriminant,
)
from .greens import (
    DEFAULT_SPEC,
    QuadratureSpec,
    cm_point,
    ddc_xi_vec,
    geodesic_endpoints,
    q_model,
    xi,
    xi_vec,
)
from .lattice import TraceZeroLattice, is_split_model
from .quadrature import adaptive_integrate

Vec3 = tuple[float, float, float]


@dataclass(frozen=True)
class PairConfig:
    """A pair of trace-zero vectors with its matrix of inner products.

    gram is T = ((t1, m), (m, t2)) with t_i = Q(x_i) and m = (x1, x2)/2.
    """

    x1: Vec3
    x2: Vec3
    gram: tuple[tuple[float, float], tuple[float, float]]

    @classmethod
    def from_vectors(cls, x1, x2) -> "PairConfig":
        x1 = tuple(float(c) for c in x1)
        x2 = tuple(float(c) for c in x2)
        t1 = q_model(x1)
        t2 = q_model(x2)
        s = tuple(a + b for a, b in zip(x1, x2))
        m = (q_model(s) - t1 - t2) / 2.0
        return cls(x1=x1, x2=x2, gram=((t1, m), (m, t2)))

    def __post_init__(self):
        (t1, m), (m2, t2) = self.gram
        if abs(m - m2) > 1e-9 * (1 + abs(m)):
            raise PreconditionViolation("gram matrix is not symmetric")
        q1, q2 = q_model(self.x1), q_model(self.x2)
        s = tuple(a + b for a, b in zip(self.x1, self.x2))
        mm = (q_model(s) - q1 - q2) / 2.0
        scale = 1 + max(abs(t1), abs(t2), abs(m))
        if max(abs(q1 - t1), abs(q2 - t2), abs(mm - m)) > 1e-8 * scale:
            raise PreconditionViolation("gram does not match the vectors")

    @property
    def det(self) -> float:
        return self.gram[0][0] * self.gram[1][1] - self.gram[0][1] ** 2


@dataclass(frozen=True)
class LambdaResult:
    value: float
    err: float

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class ZhatResult:
    value: float
    err: float
    orbits: int

    def __float__(self) -> float:
        return self.value


def _features(vec: Vec3) -> list[tuple[float, float]]:
    """Representative points in the closed half-plane marking where R is small."""
    t = q_model(vec)
    if t > 0:
        p = cm_point(vec)
        return [(p.u, p.v)]
    ends = geodesic_endpoints(vec)
    if ends is None:
        return []
    a, b = ends
    if math.isinf(b):
        return [(a, 0.3), (a, 1.0), (a, 3.0)]
    lo, hi = min(a, b), max(a, b)
    mid, rad = 0.5 * (lo + hi), 0.5 * (hi - lo)
    return [(lo, 0.0), (hi, 0.0), (mid, rad)]


def _hyperbolic_dist(p: tuple[float, float], q: tuple[float, float]) -> float:
    du2 = (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2
    return math.acosh(1.0 + du2 / (2.0 * p[1] * q[1]))


def _ball_mask(u: np.ndarray, v: np.ndarray, center: tuple[float, float], rho: float):
    """Points inside the hyperbolic ball of radius rho about center."""
    cu, cv = center
    ec_v = cv * math.cosh(rho)
    er = cv * math.sinh(rho)
    return (u - cu) ** 2 + (v - ec_v) ** 2 <= er * er


def _anchor_point(vec: Vec3) -> tuple[float, float]:
    """A point of the half-plane marking the divisor geometry of vec."""
    t = q_model(vec)
    if t > 0:
        p = cm_point(vec)
        return (p.u, p.v)
    ends = geodesic_endpoints(vec)
    a, b = ends
    if math.isinf(b):
        return (a, 1.0)
    return (0.5 * (a + b), 0.5 * abs(b - a))


def _recenter(vec: Vec3, u0: float, v0: float) -> Vec3:
    """Apply the isometry z -> (z - u0)/v0 to the vector (exact Q-preserving)."""
    al, be, ga = vec
    return (
        al - u0 * ga,
        (2 * u0 * al + be - u0 * u0 * ga) / v0,
        v0 * ga,
    )


def lambda_star(pair: PairConfig, spec: QuadratureSpec = DEFAULT_SPEC) -> LambdaResult:
    """Archimedean height Lambda of a nonsingular pair, with an error estimate.

    Invariant under O(2) rotations of the pair and symmetric in its two
    entries, and depends on the pair only through its gram matrix; those
    properties are the calibration suite for this routine.
    """
    if abs(pair.det) < 1e-12 * (1 + abs(pair.gram[0][0]) + abs(pair.gram[1][1])) ** 2:
        raise PreconditionViolation("gram matrix is singular")
    q1, q2 = q_model(pair.x1), q_model(pair.x2)
    if min(abs(q1), abs(q2)) < 1e-12 * (1 + abs(q1) + abs(q2)):
        # xi is a Green function only for anisotropic vectors; an isotropic
        # component can be avoided by scaling the pair (e.g. by a square root
        # of a generic v), never by this routine.
        raise PreconditionViolation("pair has an isotropic component")
    if q1 > 0 and q2 > 0:
        z1, z2 = cm_point(pair.x1), cm_point(pair.x2)
        if _hyperbolic_dist((z1.u, z1.v), (z2.u, z2.v)) < 1e-10:
            raise SingularConfiguration("the two divisors coincide")
    # Delta term attaches to x2's divisor when Q(x2) > 0, else to x1's.
    if q2 > 0:
        y1, y2 = pair.x1, pair.x2
    elif q1 > 0:
        y1, y2 = pair.x2, pair.x1
    else:
        y1, y2 = pair.x1, pair.x2
    # Recenter by a hyperbolic isometry (the integral is invariant exactly):
    # the anchor divisor moves to i, which keeps all feature scales of order 1
    # no matter how skewed the incoming representatives are.
    u0, v0 = _anchor_point(y2 if q_model(y2) > 0 else y1)
    y1 = _recenter(y1, u0, v0)
    y2 = _recenter(y2, u0, v0)
    delta_upper = 0.0
    if q_model(y2) > 0:
        delta_upper = xi(y1, cm_point(y2), spec)

    rho0 = spec.singular_ball_radius
    masks = []
    force = []
    for vec in (y1, y2):
        if q_model(vec) > 0:
            p = cm_point(vec)
            masks.append((p.u, p.v))
            force.append((p.u, p.v))

    feats = _features(y1) + _features(y2)
    endpoints = []
    for vec in (y1, y2):
        ends = geodesic_endpoints(vec)
        if ends is not None:
            endpoints.extend(e for e in ends if not math.isinf(e))
    u_lo = min(f[0] for f in feats) - 2.5
    u_hi = max(f[0] for f in feats) + 2.5
    v_hi = max(max(f[1] for f in feats) * 3.5, 3.5)
    v_lo = min(min((f[1] for f in feats if f[1] > 0), default=0.3) / 6.0, 0.08)

    def integrand(rho):
        def f(u, v):
            vals = ddc_xi_vec(y1, u, v, spec, clamp_floor=1e-280)
            vals = vals * xi_vec(y2, u, v)
            vals = vals / (v * v)
            for center in masks:
                vals = np.where(_ball_mask(u, v, center, rho), 0.0, vals)
            return vals

        return f

    # Expand the window until a dense boundary scan is negligible.  The scan
    # clusters extra abscissas near geodesic endpoints, where the integrand
    # hides in strips of width comparable to the height above the axis.
    probe = integrand(rho0)
    tol_here = max(spec.abs_tol, 1e-4 * spec.rel_tol)

    def edge_u_samples():
        base = np.linspace(u_lo, u_hi, 161)
        extra = [base]
        for r in endpoints:
            if u_lo < r < u_hi:
                extra.append(r + np.linspace(-0.3, 0.3, 31))
        return np.clip(np.concatenate(extra), u_lo, u_hi)

    for _ in range(18):
        uu = edge_u_samples()
        vv = np.geomspace(v_lo, v_hi, 41)
        bottom = np.abs(probe(uu, np.full_like(uu, v_lo)))
        low_rows = np.abs(
            probe(
                np.tile(uu, 2),
                np.concatenate([np.full_like(uu, 1.5 * v_lo), np.full_like(uu, 2.25 * v_lo)]),
            )
        )
        top = np.abs(probe(uu, np.full_like(uu, v_hi)))
        sides = np.abs(
            probe(
                np.concatenate([np.full_like(vv, u_lo), np.full_like(vv, u_hi)]),
                np.tile(vv, 2),
            )
        )
        width = u_hi - u_lo
        # Crude exterior-mass estimates: edge magnitude times a decay span.
        bottom_mass = float(np.max(np.concatenate([bottom, low_rows]))) * width * v_lo * 4
        top_mass = float(np.max(top)) * width * v_hi
        side_mass = float(np.max(sides)) * (v_hi - v_lo) * 2.0
        if bottom_mass + top_mass + side_mass < 0.01 * tol_here:
            break
        if bottom_mass >= 0.01 * tol_here:
            v_lo /= 2.0
        if top_mass >= 0.01 * tol_here:
            v_hi *= 1.6
        if side_mass >= 0.01 * tol_here:
            u_lo -= 1.2
            u_hi += 1.2
    else:
        raise QuadratureFailure("integrand does not decay on the window boundary")

    tol_pair = (max(spec.abs_tol, 1e-9), spec.rel_tol)
    try:
        i_full, e_full = adaptive_integrate(
            integrand(rho0),
            u_lo,
            u_hi,
            v_lo,
            v_hi,
            abs_tol=tol_pair[0],
            rel_tol=tol_pair[1],
            max_cells=spec.max_cells,
            max_depth=spec.max_depth,
            force_points=tuple(force),
            force_size=rho0 / 2.0,
        )
        i_half, e_half = adaptive_integrate(
            integrand(rho0 / 2.0),
            u_lo,
            u_hi,
            v_lo,
            v_hi,
            abs_tol=tol_pair[0],
            rel_tol=tol_pair[1],
            max_cells=spec.max_cells,
            max_depth=spec.max_depth,
            force_points=tuple(force),
            force_size=rho0 / 4.0,
        )
    except QuadratureFailure as exc:
        raise QuadratureFailure(f"lambda_star smooth integral: {exc}") from exc
    # One Richardson step in the excision radius.  The leading error is
    # rho^2 log rho, so the pure-rho^2 extrapolant is deliberately padded.
    smooth = i_half + (i_half - i_full) / 3.0
    rich_err = abs(i_half - i_full)
    err = 2.0 * (rich_err + 2.0 * (e_half + e_full / 3.0) + 0.05 * tol_here)
    return LambdaResult(value=2.0 * (delta_upper + smooth), err=err)


def z_hat_indefinite(
    lat: TraceZeroLattice,
    t_mat,
    v_mat,
    spec: QuadratureSpec = DEFAULT_SPEC,
    square_root: str = "symmetric",
    orbit_reps=None,
) -> ZhatResult:
    """Archimedean class value for nonsingular T of signature (1,1) or (0,2).

    Sums Lambda(x . a) over unit-group orbits of pairs with Q-gram T, where
    v = a a^T.  The square root defaults to the symmetric positive one; the
    triangular (Cholesky) option exists to exercise a-independence.
    """
    t1, m, t2 = int(t_mat[0][0]), int(t_mat[0][1]), int(t_mat[1][1])
    if t_mat[1][0] != t_mat[0][1]:
        raise PreconditionViolation("T must be symmetric")
    if orbit_reps is None:
        if not (lat.discriminant == 1 and is_split_model(lat)):
            raise UnsupportedDiscriminant(
                "orbit enumeration needs the split model; pass orbit_reps explicitly"
            )
        orbit_reps = splitorbits.pair_orbit_reps(t1, m, t2)
    a = _square_root(np.asarray(v_mat, dtype=float), square_root)
    total = 0.0
    err = 0.0
    for x1, x2 in orbit_reps:
        y1 = tuple(a[0, 0] * c1 + a[1, 0] * c2 for c1, c2 in zip(x1, x2))
        y2 = tuple(a[0, 1] * c1 + a[1, 1] * c2 for c1, c2 in zip(x1, x2))
        res = lambda_star(PairConfig.from_vectors(y1, y2), spec)
        total += res.value
        err += res.err
    return ZhatResult(value=total, err=err, orbits=len(orbit_reps))


def _square_root(v: np.ndarray, kind: str) -> np.ndarray:
    if v.shape != (2, 2) or abs(v[0, 1] - v[1, 0]) > 1e-12:
        raise PreconditionViolation("v must be symmetric 2x2")
    eigvals = np.linalg.eigvalsh(v)
    if eigvals[0] <= 0:
        raise PreconditionViolation("v must be positive definite")
    if kind == "symmetric":
        w, q = np.linalg.eigh(v)
        return (q * np.sqrt(w)) @ q.T
    if kind == "triangular":
        return np.linalg.cholesky(v)
    raise PreconditionViolation(f"unknown square root kind {kind!r}")
