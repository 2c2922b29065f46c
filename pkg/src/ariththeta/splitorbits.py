"""Unit-group orbits on the split trace-zero lattice.

Vectors are integer triples (alpha, beta, gamma) standing for the trace-zero
matrix [[alpha, beta], [gamma, -alpha]] with Q = det = -alpha^2 - beta*gamma.
The unit group of the split order acts by conjugation; orbits of vectors of
norm t > 0 correspond to reduced positive binary forms of discriminant -4t,
which is how representatives, stabilizers, and pair orbits are produced here.
"""

from __future__ import annotations

import math

from . import binforms
from .errors import PreconditionViolation
from .numtheory import integer_kernel, integer_row_kernel, is_square, solve_integer_linear

# Bilinear gram of (x, y) = nu(x+y) - nu(x) - nu(y) in (alpha, beta, gamma).
G_STD = ((-2, 0, 0), (0, 0, -1), (0, -1, 0))

Vec = tuple[int, int, int]
Mat2 = tuple[int, int, int, int]  # (p, q, r, s) for [[p, q], [r, s]]


def q_value(v: Vec) -> int:
    a, b, g = v
    return -a * a - b * g


def inner(v: Vec, w: Vec) -> int:
    return sum(v[i] * G_STD[i][j] * w[j] for i in range(3) for j in range(3))


def form_of_vector(v: Vec) -> tuple[int, int, int]:
    """Binary form gamma u^2 - 2 alpha u w - beta w^2 attached to a vector."""
    a, b, g = v
    return (g, -2 * a, -b)


def vector_of_form(form: tuple[int, int, int]) -> Vec:
    a, b, c = form
    if b % 2:
        raise ValueError("needs an even middle coefficient")
    return (-b // 2, -c, a)


def canonical_orbit_form(v: Vec) -> tuple[int, int, int]:
    """Reduced positive form labelling the conjugation orbit of v (Q(v) > 0)."""
    a, b, g = v
    if g == 0:
        raise ValueError("vector with gamma = 0 has Q <= 0")
    if g < 0:
        # Conjugating by diag(1, -1) sends (alpha, beta, gamma) to (alpha, -beta, -gamma).
        a, b, g = a, -b, -g
    return binforms.reduce_form((g, -2 * a, -b))


def orbit_reps(t: int) -> list[Vec]:
    """One vector per unit-group orbit on {Q = t}, t > 0."""
    if t < 1:
        raise ValueError("t must be positive")
    return [vector_of_form(f) for f in binforms.reduced_classes(-4 * t)]


def conj_action(g: Mat2) -> tuple[tuple[int, int, int], ...]:
    """3x3 integer matrix of x -> g x g^{-1} on (alpha, beta, gamma); |det g| = 1."""
    p, q, r, s = g
    d = p * s - q * r
    if abs(d) != 1:
        raise ValueError("need |det| = 1")
    rows = (
        (p * s + q * r, -p * r, q * s),
        (-2 * p * q, p * p, -q * q),
        (2 * r * s, -r * r, s * s),
    )
    return tuple(tuple(e * d for e in row) for row in rows)  # divide by det = multiply


def apply3(m, v: Vec) -> Vec:
    return tuple(sum(m[i][j] * v[j] for j in range(3)) for i in range(3))  # type: ignore[return-value]


def _det_form_on_plane(e1: Mat2, e2: Mat2) -> tuple[int, int, int]:
    def det(m: Mat2) -> int:
        return m[0] * m[3] - m[1] * m[2]

    s = tuple(x + y for x, y in zip(e1, e2))
    return (det(e1), det(s) - det(e1) - det(e2), det(e2))


def _solve_binary_value(a: int, b: int, c: int, value: int) -> list[tuple[int, int]]:
    """All integer (m, n) with a m^2 + b mn + c n^2 = value, for a definite form."""
    disc = b * b - 4 * a * c
    if disc >= 0:
        raise ValueError("form must be definite")
    if a < 0:
        a, b, c, value = -a, -b, -c, -value
    if value < 0:
        return []
    if value == 0:
        return [(0, 0)]
    out = []
    # 4a * f(m,n) = (2am + bn)^2 - disc n^2, so n^2 <= 4 a value / -disc.
    n_max = math.isqrt(4 * a * value // (-disc))
    for n in range(-n_max, n_max + 1):
        rhs = 4 * a * value + disc * n * n
        if rhs < 0:
            continue
        r = math.isqrt(rhs)
        if r * r != rhs:
            continue
        for sign in ((r,) if r == 0 else (r, -r)):
            num = sign - b * n
            if num % (2 * a) == 0:
                out.append((num // (2 * a), n))
    return sorted(set(out))


def commuting_units(v: Vec) -> list[Mat2]:
    """Units of GL2(Z) commuting with the matrix of v (Q(v) > 0); a finite group."""
    a, b, g = v
    # XY - YX = 0 in the unknowns (p, q, r, s); nonzero entries are
    #   (0,0): b r - g q, (0,1): 2 a q + b (s - p), (1,0): g (p - s) - 2 a r.
    rows = [
        [0, -g, b, 0],
        [-b, 2 * a, 0, b],
        [g, 0, -2 * a, -g],
    ]
    kernel = integer_kernel(rows)
    if len(kernel) != 2:
        raise ValueError(f"centralizer rank {len(kernel)} != 2 for {v}")
    e1 = tuple(kernel[0])
    e2 = tuple(kernel[1])
    fa, fb, fc = _det_form_on_plane(e1, e2)  # positive definite norm form
    sols = _solve_binary_value(fa, fb, fc, 1)
    return [
        tuple(m * x + n * y for x, y in zip(e1, e2)) for m, n in sols  # type: ignore[misc]
    ]


def anticommuting_flips(v: Vec) -> list[Mat2]:
    """Elements of GL2(Z) with g v g^{-1} = -v, i.e. anticommuting, det -1."""
    a, b, g = v
    # Entries of XY + YX: (0,0): 2 a p + g q + b r, (0,1): b (p + s),
    # (1,0): g (p + s), (1,1): g q + b r - 2 a s.
    rows = [
        [2 * a, g, b, 0],
        [b, 0, 0, b],
        [g, 0, 0, g],
        [0, g, b, -2 * a],
    ]
    kernel = integer_kernel(rows)
    if len(kernel) == 0:
        return []
    if len(kernel) != 2:
        raise ValueError(f"anticommutant rank {len(kernel)} != 2 for {v}")
    e1 = tuple(kernel[0])
    e2 = tuple(kernel[1])
    fa, fb, fc = _det_form_on_plane(e1, e2)  # negative definite for Q(v) > 0
    sols = _solve_binary_value(fa, fb, fc, -1)
    return [
        tuple(m * x + n * y for x, y in zip(e1, e2)) for m, n in sols  # type: ignore[misc]
    ]


def _orbit_canonical(actions, pair):
    best = None
    for act in actions:
        img = (apply3(act, pair[0]), apply3(act, pair[1]))
        if best is None or img < best:
            best = img
    return best


def _fiber(x1: Vec, two_m: int, t2: int) -> list[Vec]:
    """All y with (x1, y) = two_m and Q(y) = t2; finite since Q(x1) > 0."""
    row = [sum(G_STD[i][j] * x1[i] for i in range(3)) for j in range(3)]
    y0 = solve_integer_linear(row, two_m)
    if y0 is None:
        return []
    k1, k2 = (tuple(k) for k in integer_row_kernel(row))
    a2 = q_value(k1)
    b2 = inner(k1, k2)
    c2 = q_value(k2)
    d2 = inner(tuple(y0), k1)
    e2 = inner(tuple(y0), k2)
    f2 = q_value(tuple(y0)) - t2
    # Solve a2 s^2 + b2 s u + c2 u^2 + d2 s + e2 u + f2 = 0 with negative
    # definite quadratic part: complete the square over 4*a2.
    out = []
    aa, bb, cc = -a2, -b2, -c2  # positive definite now
    # Range of u from the discriminant of the quadratic in s.
    # disc_s(u) = (b2 u + d2)^2 - 4 a2 (c2 u^2 + e2 u + f2) >= 0.
    pa = bb * bb - 4 * aa * cc  # negative
    pb = 2 * bb * (-d2) - 4 * aa * (-e2)
    pc = d2 * d2 - 4 * a2 * f2
    # pa u^2 + pb u + pc >= 0 with pa < 0: u between the roots.
    disc_u = pb * pb - 4 * pa * pc
    if disc_u < 0:
        return []
    rt = math.isqrt(disc_u) + 1
    r1 = (-pb - rt) / (2 * pa)
    r2 = (-pb + rt) / (2 * pa)
    lo, hi = math.floor(min(r1, r2)), math.ceil(max(r1, r2))
    for u in range(lo - 2, hi + 3):
        # a2 s^2 + (b2 u + d2) s + (c2 u^2 + e2 u + f2) = 0
        qb = b2 * u + d2
        qc = c2 * u * u + e2 * u + f2
        disc = qb * qb - 4 * a2 * qc
        if disc < 0:
            continue
        r = math.isqrt(disc)
        if r * r != disc:
            continue
        for sign in ((r,) if r == 0 else (r, -r)):
            num = -qb + sign
            if num % (2 * a2) == 0:
                s = num // (2 * a2)
                y = tuple(y0[i] + s * k1[i] + u * k2[i] for i in range(3))
                out.append(y)
    return sorted(set(out))


def _transform_for_positive(t_mat) -> tuple[tuple[int, int, int, int], int]:
    """S in SL2(Z), as (a, x, b, y) columns (a,b),(x,y), with (S^T T S)_11 > 0."""
    t1, m, t2 = t_mat
    best = None
    for a in range(-24, 25):
        for b in range(-24, 25):
            if math.gcd(a, b) != 1:
                continue
            val = a * a * t1 + 2 * a * b * m + b * b * t2
            if val > 0 and (best is None or val < best[0]):
                best = (val, a, b)
    if best is None:
        raise PreconditionViolation(
            "no primitive vector of positive value within the search bound 24"
        )
    _, a, b = best
    g, xg, yg = _xgcd_pair(a, b)
    # a*xg + b*yg = 1; columns (a, b) and (-yg, xg) give det 1.
    return (a, -yg, b, xg), best[0]


def _xgcd_pair(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        qq = old_r // r
        old_r, r = r, old_r - qq * r
        old_s, s = s, old_s - qq * s
        old_t, t = t, old_t - qq * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def pair_orbit_reps(t1: int, m: int, t2: int) -> list[tuple[Vec, Vec]]:
    """One representative per unit-group orbit of pairs with Q-gram [[t1, m], [m, t2]].

    The gram must be nonsingular of signature (1,1) or (0,2).
    """
    det_t = t1 * t2 - m * m
    if det_t == 0:
        raise PreconditionViolation("singular gram")
    if det_t < 0:
        return _pair_reps_sig11(t1, m, t2)
    if t1 > 0 or t2 > 0:
        raise PreconditionViolation("positive definite gram has no archimedean pairs")
    return _pair_reps_sig02(t1, m, t2)


def _pair_reps_sig11(t1: int, m: int, t2: int) -> list[tuple[Vec, Vec]]:
    (sa, sx, sb, sy), _ = _transform_for_positive((t1, m, t2))
    # S = [[sa, sx], [sb, sy]], det 1. T' = S^T T S.
    tp1 = sa * sa * t1 + 2 * sa * sb * m + sb * sb * t2
    tpm = sa * sx * t1 + (sa * sy + sb * sx) * m + sb * sy * t2
    tp2 = sx * sx * t1 + 2 * sx * sy * m + sy * sy * t2
    # S^{-1} = [[sy, -sx], [-sb, sa]]
    inv = (sy, -sx, -sb, sa)
    reps = []
    for x1 in orbit_reps(tp1):
        actions = [conj_action(g) for g in commuting_units(x1)]
        seen = set()
        for y in _fiber(x1, 2 * tpm, tp2):
            key = _orbit_canonical(actions, (x1, y))
            if key in seen:
                continue
            seen.add(key)
            # Back to the original gram: (x1, y) . S^{-1}
            p1 = tuple(inv[0] * x1[i] + inv[2] * y[i] for i in range(3))
            p2 = tuple(inv[1] * x1[i] + inv[3] * y[i] for i in range(3))
            reps.append((p1, p2))
    for p1, p2 in reps:
        assert q_value(p1) == t1 and q_value(p2) == t2 and inner(p1, p2) == 2 * m
    return reps


def _pair_reps_sig02(t1: int, m: int, t2: int) -> list[tuple[Vec, Vec]]:
    det_t = t1 * t2 - m * m
    reps: list[tuple[Vec, Vec]] = []
    for t0 in range(1, 4 * det_t + 1):
        if not is_square(4 * det_t * t0):
            continue
        for form in binforms.reduced_classes(-4 * t0):
            v0 = vector_of_form(form)
            if math.gcd(math.gcd(v0[0], v0[1]), v0[2]) != 1:
                continue
            neg_label = canonical_orbit_form((-v0[0], -v0[1], -v0[2]))
            if neg_label < form:
                continue  # the opposite orbit carries this anchor
            row = [sum(G_STD[i][j] * v0[i] for i in range(3)) for j in range(3)]
            k1, k2 = (tuple(k) for k in integer_row_kernel(row))
            ha, hb, hc = q_value(k1), inner(k1, k2), q_value(k2)
            v_list = _solve_binary_value(ha, hb, hc, t1)
            w_list = v_list if t2 == t1 else _solve_binary_value(ha, hb, hc, t2)
            group = commuting_units(v0) + anticommuting_flips(v0)
            actions = [conj_action(g) for g in group]
            seen = set()
            for sv, uv in v_list:
                x1 = tuple(sv * k1[i] + uv * k2[i] for i in range(3))
                for sw, uw in w_list:
                    x2 = tuple(sw * k1[i] + uw * k2[i] for i in range(3))
                    if inner(x1, x2) != 2 * m:
                        continue
                    key = _orbit_canonical(actions, (x1, x2))
                    if key in seen:
                        continue
                    seen.add(key)
                    reps.append((x1, x2))
    for p1, p2 in reps:
        assert q_value(p1) == t1 and q_value(p2) == t2 and inner(p1, p2) == 2 * m
    return reps
