"""The archimedean layer: beta_1, the distance function R, Green functions.

Model of the symmetric space: the split 2x2 matrix picture.  A trace-zero
real vector is (alpha, beta, gamma) for [[alpha, beta], [gamma, -alpha]],
Q = -alpha^2 - beta*gamma, and the isotropic section over a point z of the
upper half-plane is w(z) = [[z, -z^2], [1, -z]].  Then

    (x, w(z)) = gamma z^2 - 2 alpha z - beta,
    (w, wbar) = -4 v^2,
    R(x, z)   = |(x, w)|^2 / |(w, wbar)|,

and R is the same on both sheets for real x, which is how the orientation
component is handled throughout.  A vector with Q(x) = t > 0 has divisor
D_x = the conjugate pair of roots of (x, w(z)) = 0; there R vanishes, and
R(x, z) = t sinh^2(d(z, z_x)) in the hyperbolic distance d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    NonpositiveArgument,
    OnSingularLocus,
    PreconditionViolation,
    QuadratureFailure,
    SingularEvaluation,
)
from .lattice import TraceZeroLattice, enumerate_by_majorant, majorant, model_coordinates_float

# Euler-Mascheroni constant, 30 certified digits (mpmath, 40 dps).
EULER_GAMMA = 0.577215664901532860606512090082

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class UHPoint:
    """Point of the symmetric space: upper half-plane coordinate plus sheet."""

    u: float
    v: float
    sheet: int = 1

    def __post_init__(self):
        if not self.v > 0:
            raise PreconditionViolation("UHPoint needs v > 0")
        if self.sheet not in (1, -1):
            raise PreconditionViolation("sheet must be +1 or -1")

    @property
    def z(self) -> complex:
        return complex(self.u, self.v)


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances, truncation radii and grid parameters for all numerics."""

    rel_tol: float = 4e-5
    abs_tol: float = 4e-7
    truncation_majorant_bound: float = 48.0
    singular_ball_radius: float = 0.016
    max_cells: int = 14000
    max_depth: int = 34
    singular_r_floor: float = 1e-12
    enumeration_cap: int = 2_000_000

    def __post_init__(self):
        for name in (
            "rel_tol",
            "abs_tol",
            "truncation_majorant_bound",
            "singular_ball_radius",
            "singular_r_floor",
        ):
            if not getattr(self, name) > 0:
                raise PreconditionViolation(f"{name} must be positive")
        if not self.singular_ball_radius < 1:
            raise PreconditionViolation("singular_ball_radius must be < 1")
        if self.max_cells <= 0 or self.max_depth <= 0:
            raise PreconditionViolation("grid limits must be positive")


DEFAULT_SPEC = QuadratureSpec()


# --- beta_1 -----------------------------------------------------------------


def beta1(r: float) -> float:
    """beta_1(r) = integral_1^oo e^(-r u) du / u, the exponential integral E_1.

    Power series around 0 for r <= 1, continued fraction for r > 1; relative
    accuracy is a little better than 1e-13 across (0, 745].
    """
    if not r > 0:
        raise NonpositiveArgument(f"beta1 needs r > 0, got {r}")
    if r <= 1.0:
        return _beta1_series(float(r))
    return _beta1_cf(float(r))


def _beta1_series(r: float) -> float:
    # -gamma - log r - sum_{k>=1} (-r)^k / (k k!)
    acc = -EULER_GAMMA - math.log(r)
    term = 1.0
    for k in range(1, 40):
        term *= -r / k
        delta = -term / k
        acc += delta
        if abs(delta) < 1e-18 * max(abs(acc), 1e-3):
            break
    return acc


def _beta1_cf(r: float) -> float:
    # E_1(r) = e^{-r} / (r + 1 - 1^2/(r + 3 - 2^2/(r + 5 - ...))), by
    # the modified Lentz algorithm.
    tiny = 1e-300
    f = r + 1.0
    if f == 0:
        f = tiny
    c = f
    d = 0.0
    for n in range(1, 200):
        an = -(n * n)
        bn = r + 1.0 + 2.0 * n
        d = bn + an * d
        if d == 0:
            d = tiny
        c = bn + an / c
        if c == 0:
            c = tiny
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    if r > 700:
        return 0.0
    return math.exp(-r) / f


def beta1_vec(r: np.ndarray) -> np.ndarray:
    """Vectorized beta1 on positive arrays (same series/fraction split)."""
    r = np.asarray(r, dtype=float)
    out = np.empty_like(r)
    small = r <= 1.0
    if np.any(small):
        rs = r[small]
        acc = -EULER_GAMMA - np.log(rs)
        term = np.ones_like(rs)
        for k in range(1, 24):
            term *= -rs / k
            acc -= term / k
        out[small] = acc
    if np.any(~small):
        rl = r[~small]
        f = rl + 1.0
        c = f.copy()
        d = np.zeros_like(rl)
        for n in range(1, 80):
            an = -(n * n)
            bn = rl + 1.0 + 2.0 * n
            d = bn + an * d
            np.copyto(d, 1e-300, where=d == 0)
            c = bn + an / c
            np.copyto(c, 1e-300, where=c == 0)
            d = 1.0 / d
            f *= c * d
        with np.errstate(over="ignore"):
            out[~small] = np.where(rl > 700, 0.0, np.exp(-np.minimum(rl, 745.0)) / f)
    return out


# --- R, xi and their derivatives --------------------------------------------


def r_value(x, z: UHPoint):
    """R(x, z) = |(x, w(z))|^2 / |(w, wbar)|; exact when inputs are rational.

    x is an (alpha, beta, gamma) triple in the matrix model.  R >= 0 with
    equality exactly on the divisor D_x, and R is sheet-independent.
    """
    alpha, beta, gamma = x
    u, v = z.u, z.v
    re = gamma * (u * u - v * v) - 2 * alpha * u - beta
    im = 2 * v * (gamma * u - alpha)
    return (re * re + im * im) / (4 * v * v)


def q_model(x):
    alpha, beta, gamma = x
    return -alpha * alpha - beta * gamma


def cm_point(x) -> UHPoint:
    """Upper half-plane point of the divisor D_x, for Q(x) > 0."""
    alpha, beta, gamma = (float(c) for c in x)
    t = q_model((alpha, beta, gamma))
    if t <= 0:
        raise PreconditionViolation("D_x is empty unless Q(x) > 0")
    return UHPoint(alpha / gamma, math.sqrt(t) / abs(gamma))


def geodesic_endpoints(x) -> tuple[float, float] | None:
    """Real endpoints of the fixed geodesic of x when Q(x) < 0, else None.

    For gamma = 0 the 'geodesic' is the vertical line over -beta/(2 alpha);
    the second endpoint is reported as math.inf.
    """
    alpha, beta, gamma = (float(c) for c in x)
    t = q_model((alpha, beta, gamma))
    if t >= 0:
        return None
    if gamma == 0.0:
        return (-beta / (2 * alpha), math.inf)
    disc = math.sqrt(alpha * alpha + beta * gamma)
    return ((alpha - disc) / gamma, (alpha + disc) / gamma)


def xi(x, z: UHPoint, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Green function xi(x, z) = beta_1(2 pi R(x, z)); Q(x) must be nonzero."""
    if q_model(x) == 0:
        raise PreconditionViolation("xi needs Q(x) != 0")
    r = float(r_value(x, z))
    if r < spec.singular_r_floor:
        raise OnSingularLocus(f"R(x, z) = {r} below the underflow floor")
    return beta1(TWO_PI * r)


def _p_data(x, u, v):
    """p, p' and |p|^2 for p(z) = gamma z^2 - 2 alpha z - beta at z = u + iv."""
    alpha, beta, gamma = (float(c) for c in x)
    z = u + 1j * v
    p = gamma * z * z - 2 * alpha * z - beta
    pp = 2 * gamma * z - 2 * alpha
    return p, pp


def ddc_xi(x, z: UHPoint, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Density of dd^c xi(x, .) against hyperbolic measure, away from D_x.

    With A = |grad R|^2 and B = Laplace R in the hyperbolic metric, the value
    is exp(-2 pi R) ((1 + 2 pi R) A - R B) / (4 pi R^2); the two leading
    singular parts cancel, so the density extends smoothly across D_x even
    though this pointwise formula is used only off the divisor.
    """
    val = ddc_xi_vec(x, np.array([float(z.u)]), np.array([float(z.v)]), spec)
    return float(val[0])


def ddc_xi_vec(
    x,
    u: np.ndarray,
    v: np.ndarray,
    spec: QuadratureSpec = DEFAULT_SPEC,
    clamp_floor: float | None = None,
) -> np.ndarray:
    p, pp = _p_data(x, u, v)
    pabs2 = (p * p.conjugate()).real
    r = pabs2 / (4.0 * v * v)
    if clamp_floor is None:
        if np.any(r < spec.singular_r_floor):
            raise OnSingularLocus("evaluation point on a divisor D_x")
    else:
        # Quadrature masks excise the divisor; clamping keeps masked nodes finite.
        r = np.maximum(r, clamp_floor)
    # Hyperbolic |grad R|^2 and Laplacian of R.
    q = pp + 1j * p / v
    a = pabs2 * (q * q.conjugate()).real / (4.0 * v * v)
    b = (pp * pp.conjugate()).real + 2.0 * (pp * p.conjugate()).imag / v + 1.5 * pabs2 / (v * v)
    two_pi_r = TWO_PI * r
    with np.errstate(over="ignore", under="ignore"):
        out = np.exp(-np.minimum(two_pi_r, 745.0)) * ((1.0 + two_pi_r) * a - r * b) / (
            4.0 * math.pi * r * r
        )
    return out


def xi_vec(x, u: np.ndarray, v: np.ndarray, floor: float = 1e-300) -> np.ndarray:
    """Vectorized xi for quadrature; points with R below floor return +inf."""
    alpha, beta, gamma = (float(c) for c in x)
    re = gamma * (u * u - v * v) - 2 * alpha * u - beta
    im = 2 * v * (gamma * u - alpha)
    r = (re * re + im * im) / (4.0 * v * v)
    r = np.maximum(r, floor)
    return beta1_vec(TWO_PI * r)


# --- the truncated theta sums ----------------------------------------------


@dataclass(frozen=True)
class BigXiResult:
    """Truncated value of a Green-function sum plus its certified tail bound."""

    value: float
    tail_bound: float
    terms: int
    excluded: tuple

    def __float__(self) -> float:
        return self.value


def big_xi(
    lat: TraceZeroLattice,
    t: int,
    v: float,
    z: UHPoint,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> BigXiResult:
    """Xi(t, v)(z) = sum over Q(x) = t of beta_1(2 pi v R(x, z)), truncated.

    The sum runs over lattice vectors with majorant value at most the
    truncation bound; the remainder is covered by a certified tail bound
    below abs_tol, derived from beta_1(r) <= e^-r / r and shell counts of
    the majorant.  The truncation bound is doubled (a few times) if the
    certificate does not reach abs_tol at the configured value.

    For t > 0, terms with R below the singular floor: an exact zero raises
    SingularEvaluation, a positive value below the floor is excluded from
    the sum and reported in the result.
    """
    if lat.is_definite:
        raise PreconditionViolation("big_xi needs an indefinite lattice")
    if t == 0:
        raise PreconditionViolation("t must be nonzero")
    if not v > 0:
        raise PreconditionViolation("v must be positive")
    coords = model_coordinates_float(lat)
    bound = spec.truncation_majorant_bound
    for _ in range(7):
        tail = _tail_bound(lat, z, t, v, bound)
        if tail <= spec.abs_tol:
            break
        bound *= 2.0
    else:
        raise QuadratureFailure(
            f"tail bound {tail:.3g} above abs_tol at majorant bound {bound}"
        )
    pts = [
        n
        for n in enumerate_by_majorant(lat, z, bound, cap=spec.enumeration_cap)
        if lat.q_value(n) == t
    ]
    value = 0.0
    excluded = []
    u0, v0 = float(z.u), float(z.v)
    for n in pts:
        vec = coords @ np.array(n, dtype=float)
        r = float(r_value(tuple(vec), UHPoint(u0, v0)))
        if r == 0.0:
            raise SingularEvaluation(f"z lies on the divisor of {n}")
        if r < spec.singular_r_floor:
            excluded.append(tuple(n))
            continue
        value += beta1(TWO_PI * v * r)
    return BigXiResult(value=value, tail_bound=tail, terms=len(pts), excluded=tuple(excluded))


def _tail_bound(lat: TraceZeroLattice, z: UHPoint, t: int, v: float, bound: float) -> float:
    """Rigorous bound for the sum over majorant values above `bound`.

    Points with majorant value M have R = (M - 2t)/4, and the number with
    M <= X is at most prod_i (2 sqrt(X / lambda_i) + 1) for the eigenvalues
    lambda_i of the majorant form.  Dyadic shells then give a convergent
    series dominating the tail of beta_1(2 pi v R) <= e^-r / r.
    """
    m = majorant(lat, z)
    lam = np.linalg.eigvalsh(m) * (1.0 - 1e-9)
    if lam[0] <= 0:
        raise QuadratureFailure("majorant lost positivity")
    if bound <= 2 * t + 1:
        return math.inf
    total = 0.0
    lo = bound
    for _ in range(200):
        hi = 2.0 * lo
        count = 1.0
        for ev in lam:
            count *= 2.0 * math.sqrt(hi / ev) + 1.0
        r_min = (lo - 2 * t) / 4.0
        arg = TWO_PI * v * r_min
        if arg > 745:
            term = 0.0
        else:
            term = count * math.exp(-arg) / arg
        total += term
        if term < 1e-22 and lo > 4 * bound:
            break
        lo = hi
    return total
