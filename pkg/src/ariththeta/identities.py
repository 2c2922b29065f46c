"""Degree series, exact constants, and the special-cycle classification predicates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    InconclusiveScan,
    NotSquarefree,
    PreconditionViolation,
    QuadratureFailure,
    UnsupportedDiscriminant,
)
from .greens import DEFAULT_SPEC, QuadratureSpec, UHPoint
from .lattice import TraceZeroLattice, weighted_orbit_degree
from .numtheory import (
    factorint,
    is_squarefree,
    primes_up_to,
    splits_in_quadratic_field,
    valuation,
)
from .quatalg import hilbert_symbol
from .quadrature import adaptive_integrate

# zeta'(-1), 30 certified digits (mpmath zeta derivative at 40 dps);
# Euler's gamma likewise.
ZETA_PRIME_MINUS_ONE = -0.165421143700450929213919660243
EULER_GAMMA = 0.577215664901532860606512090082


@dataclass(frozen=True)
class DegreeSeries:
    """Exact-rational coefficients of the degree generating series up to q^N."""

    v: float
    coefficients: dict[int, Fraction]
    hodge_degree: Fraction

    def __post_init__(self):
        if self.coefficients.get(0) != -self.hodge_degree:
            raise PreconditionViolation("constant term must be -hodge_degree")
        if any(t < 0 and c != 0 for t, c in self.coefficients.items()):
            raise PreconditionViolation("negative-index coefficients must vanish")

    def coefficient(self, t: int) -> Fraction:
        return self.coefficients.get(t, Fraction(0))


def degree_series(
    lat: TraceZeroLattice,
    v: float,
    n: int,
    hodge_degree: Fraction = Fraction(1, 12),
    degree_table: dict[int, Fraction] | None = None,
) -> DegreeSeries:
    """Degrees of the arithmetic cycle classes as a q-series, indices -N..N.

    Positive coefficients are unit-orbit degrees of the special divisors
    (split model), the constant term is -hodge_degree, and negative indices
    vanish because purely archimedean classes have zero generic-fiber degree.
    For discriminant > 1 an explicit (unverified) degree table must be
    supplied via configuration.
    """
    if n < 1:
        raise PreconditionViolation("N must be >= 1")
    if not v > 0:
        raise PreconditionViolation("v must be positive")
    coeffs: dict[int, Fraction] = {t: Fraction(0) for t in range(-n, 0)}
    coeffs[0] = -hodge_degree
    if lat.discriminant == 1:
        for t in range(1, n + 1):
            coeffs[t] = weighted_orbit_degree(lat, t)
    else:
        if degree_table is None:
            raise UnsupportedDiscriminant(
                "degrees for discriminant > 1 must come from a configured table"
            )
        for t in range(1, n + 1):
            if t not in degree_table:
                raise UnsupportedDiscriminant(f"degree table has no entry for t = {t}")
            coeffs[t] = Fraction(degree_table[t])
    return DegreeSeries(v=v, coefficients=coeffs, hodge_degree=hodge_degree)


@dataclass(frozen=True)
class ArchimedeanDegree:
    value: float
    err: float
    cusp_height: float

    def __float__(self) -> float:
        return self.value


def arithmetic_degree_archimedean(
    g,
    spec: QuadratureSpec = DEFAULT_SPEC,
    cusp_height: float = 4.0,
) -> ArchimedeanDegree:
    """(1/2) integral of g over the modular orbifold, in hyperbolic measure.

    g is an evaluator on UHPoint (e.g. a truncated Green-function sum at
    fixed t < 0).  The integral runs over the standard fundamental domain;
    the cusp neighbourhood is handled by doubling the height until the added
    strip certifies exponential decay, and a failure to decay (which does
    happen for some integrands on the noncompact model) raises
    QuadratureFailure rather than returning a number.
    """

    def f(u: np.ndarray, v: np.ndarray) -> np.ndarray:
        out = np.zeros_like(u)
        for k in range(u.size):
            if u[k] * u[k] + v[k] * v[k] < 1.0:
                continue
            out[k] = g(UHPoint(float(u[k]), float(v[k]))) / (v[k] * v[k])
        return out

    tol = max(spec.abs_tol, 1e-9)
    value, err = adaptive_integrate(
        f,
        -0.5,
        0.5,
        math.sqrt(3.0) / 2.0 * 0.999,
        cusp_height,
        abs_tol=tol,
        rel_tol=spec.rel_tol,
        max_cells=spec.max_cells,
        max_depth=spec.max_depth,
        initial=(6, 6),
    )
    height = cusp_height
    prev_strip = None
    for _ in range(8):
        strip, strip_err = adaptive_integrate(
            f,
            -0.5,
            0.5,
            height,
            2.0 * height,
            abs_tol=tol / 4,
            rel_tol=spec.rel_tol,
            max_cells=spec.max_cells,
            max_depth=spec.max_depth,
            initial=(4, 4),
        )
        value += strip
        err += strip_err
        height *= 2.0
        if prev_strip is not None and abs(strip) > 0.6 * abs(prev_strip) and abs(strip) > tol:
            raise QuadratureFailure(
                f"cusp strips are not decaying ({prev_strip:.3g} -> {strip:.3g}); "
                "the integrand is not integrable on the noncompact model"
            )
        if abs(strip) < tol / 2:
            err += abs(strip)
            break
        prev_strip = strip
    else:
        raise QuadratureFailure("cusp tail did not certify within the height budget")
    return ArchimedeanDegree(value=0.5 * value, err=0.5 * err, cusp_height=height)


def zeta_db_at_minus1(d: int) -> Fraction:
    """zeta_{D}(-1) = zeta(-1) prod_{p | D} (1 - p), exact."""
    if d < 1 or not (d == 1 or is_squarefree(d)):
        raise NotSquarefree(f"{d} is not a squarefree positive integer")
    out = Fraction(-1, 12)
    if d > 1:
        for p in factorint(d):
            out *= 1 - p
    return out


def constant_c(hodge_pairing: float, d: int, hodge_degree: Fraction) -> float:
    """The additive constant of the weight-zero class, from its defining relation.

    Solves (1/2) hodge_degree * c = hodge_pairing - zeta_D(-1) * bracket with
    bracket = 2 zeta'(-1)/zeta(-1) + 1 - log(4 pi) - gamma - sum_{p|D} p log p / (p-1).
    """
    if not hodge_degree > 0:
        raise PreconditionViolation("hodge_degree must be positive")
    bracket = bracket_constant(d)
    zd = zeta_db_at_minus1(d)
    return 2.0 * (hodge_pairing - float(zd) * bracket) / float(hodge_degree)


def bracket_constant(d: int) -> float:
    if d < 1 or not (d == 1 or is_squarefree(d)):
        raise NotSquarefree(f"{d} is not a squarefree positive integer")
    total = 2.0 * ZETA_PRIME_MINUS_ONE / (-1.0 / 12.0) + 1.0 - math.log(4.0 * math.pi) - EULER_GAMMA
    if d > 1:
        for p in factorint(d):
            total -= p * math.log(p) / (p - 1)
    return total


def vertical_components(t: int, d: int, p: int) -> bool:
    """Whether the weight-t divisor contains fiber components at p.

    True iff ord_p(t) >= 2 and no other prime dividing the discriminant
    splits in Q(sqrt(-t)); splitting is decided by the Kronecker symbol of
    the field discriminant.
    """
    if t < 1:
        raise PreconditionViolation("t must be a positive integer")
    if not is_squarefree(d) or len(factorint(d)) < 2:
        raise PreconditionViolation("need a squarefree discriminant with >= 2 prime factors")
    if d % p:
        raise PreconditionViolation(f"{p} does not divide {d}")
    if valuation(t, p) < 2:
        return False
    for ell in factorint(d):
        if ell != p and splits_in_quadratic_field(ell, -t):
            return False
    return True


@dataclass(frozen=True)
class CycleClassification:
    """Classification data of a positive definite index matrix."""

    t_matrix: tuple[tuple[int, int], tuple[int, int]]
    fundamental_prime: int | None
    regular: bool | None
    supersingular_support: bool


def _hasse(diag, place) -> int:
    out = 1
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            out *= hilbert_symbol(diag[i], diag[j], place)
    return out


def _binary_diag(t_mat) -> tuple[Fraction, Fraction]:
    t1 = Fraction(t_mat[0][0])
    m = Fraction(t_mat[0][1])
    t2 = Fraction(t_mat[1][1])
    det = t1 * t2 - m * m
    if t1 == 0:
        # T positive definite never has t1 = 0, kept for safety.
        raise PreconditionViolation("degenerate corner in T")
    return (t1, det / t1)


def _twin_hasse_at(ram_fin: frozenset[int], p: int, ell: int) -> int:
    """Hasse invariant of the trace-zero ternary space of the p-twin at ell.

    For B' = (a, b) the trace-zero space is <-a, -b, ab>, whose Hasse
    invariant collapses to (-1,-1)_ell (a,b)_ell; the twin has (a,b)_ell = -1
    exactly on ram(B) xor {p}.
    """
    eps = -1 if (ell in ram_fin) != (ell == p) else 1
    minus_one_pair = -1 if ell == 2 else 1
    return eps * minus_one_pair


def _represents_twin_locally(diag_u, ram_fin, p: int, ell: int) -> bool:
    """T embeds in the twin ternary space over Q_ell.

    The twin space has square determinant, so the forced complement is
    d = det(U) mod squares and the embedding exists iff the Hasse invariants
    of U + <d> and of the twin space agree at ell.
    """
    u1, u2 = diag_u
    d = u1 * u2
    cand = [u1, u2, d]
    return _hasse(cand, ell) == _twin_hasse_at(ram_fin, p, ell)


def fundamental_prime(t_mat, d: int, scan_limit: int = 300) -> int | None:
    """The unique prime p whose definite twin space represents T, or None.

    Decided by local representability: Hasse invariants of T against the
    ternary twin space at every relevant place, over a bounded prime scan.
    A scan limit below the mandatory divisor primes raises InconclusiveScan
    instead of silently reporting absence.  (At the infinite place both T
    and the twin space are positive definite, so no condition arises there.)
    """
    t1 = int(t_mat[0][0])
    m = int(t_mat[0][1])
    t2 = int(t_mat[1][1])
    det = t1 * t2 - m * m
    if t1 <= 0 or det <= 0:
        raise PreconditionViolation("T must be positive definite")
    if d < 1 or not (d == 1 or is_squarefree(d)):
        raise NotSquarefree(f"{d} is not squarefree")
    ram_fin = frozenset(factorint(d)) if d > 1 else frozenset()
    diag_u = _binary_diag(t_mat)
    mandatory = {2} | set(factorint(d)) | set(factorint(t1)) | set(factorint(det))
    if max(mandatory) > scan_limit:
        raise InconclusiveScan(
            f"scan limit {scan_limit} below mandatory prime {max(mandatory)}"
        )
    candidates = sorted(set(primes_up_to(scan_limit)) | mandatory)
    passers = []
    for p in candidates:
        places = sorted(mandatory | {p})
        if all(_represents_twin_locally(diag_u, ram_fin, p, ell) for ell in places):
            passers.append(p)
            if len(passers) > 1:
                raise InconclusiveScan(
                    f"two candidate primes {passers} pass the local test; "
                    "this contradicts uniqueness"
                )
    return passers[0] if passers else None


def is_regular(t_mat, p: int, d: int) -> bool:
    """Whether the T-cycle is a 0-cycle: p not dividing D, or p^2 not dividing T."""
    fp = fundamental_prime(t_mat, d)
    if fp != p:
        raise PreconditionViolation(f"{p} is not the fundamental prime of T (got {fp})")
    if d % p:
        return True
    entries = (t_mat[0][0], t_mat[0][1], t_mat[1][1])
    return not all(int(e) % (p * p) == 0 for e in entries)


def classify(t_mat, d: int, scan_limit: int = 300) -> CycleClassification:
    tm = ((int(t_mat[0][0]), int(t_mat[0][1])), (int(t_mat[1][0]), int(t_mat[1][1])))
    p = fundamental_prime(tm, d, scan_limit=scan_limit)
    reg = None if p is None else is_regular(tm, p, d)
    return CycleClassification(
        t_matrix=tm,
        fundamental_prime=p,
        regular=reg,
        supersingular_support=p is not None,
    )
