"""Star-product heights: invariance, symmetry, gram-only dependence, classes."""

import math
import random
from fractions import Fraction

import numpy as np
import pytest

import ariththeta as at
from ariththeta import checks
from ariththeta.errors import (
    PreconditionViolation,
    SingularConfiguration,
    UnsupportedDiscriminant,
)
from ariththeta.greens import QuadratureSpec, q_model
from ariththeta.starprod import PairConfig, lambda_star, z_hat_indefinite


def test_pair_config_computes_gram():
    pair = PairConfig.from_vectors((0, 1, -1), (1, 0, 0))
    assert pair.gram == ((1.0, 0.0), (0.0, -1.0))
    assert pair.det == -1.0


def test_pair_config_rejects_wrong_gram():
    with pytest.raises(PreconditionViolation):
        PairConfig(x1=(0, 1, -1), x2=(1, 0, 0), gram=((1.0, 0.5), (0.5, -1.0)))


def test_lambda_rejects_singular_gram(spec):
    with pytest.raises(PreconditionViolation):
        lambda_star(PairConfig.from_vectors((0, 1, -1), (0, 2, -2)), spec)


def test_lambda_singular_configuration(spec):
    # Proportional positive vectors share their divisor.
    x1 = (0.0, 1.0, -1.0)
    x2 = (0.0, 2.0, -2.0)
    pair = PairConfig(
        x1=x1, x2=x2, gram=PairConfig.from_vectors(x1, x2).gram
    )
    with pytest.raises((SingularConfiguration, PreconditionViolation)):
        lambda_star(pair, spec)


def test_lambda_close_pair_value_and_symmetry(spec):
    x1 = (0.0, 1.0, -1.0)
    x2 = (0.4, -1.37, 1.0)
    a = lambda_star(PairConfig.from_vectors(x1, x2), spec)
    b = lambda_star(PairConfig.from_vectors(x2, x1), spec)
    assert a.value > 0.5  # close divisors produce an O(1) height
    assert abs(a.value - b.value) <= a.err + b.err


def test_lambda_mixed_and_negative_signatures(spec):
    pos = (0.0, 1.0, -1.0)
    neg = (1.0, 1.0, 1.0)  # Q = -2
    r1 = lambda_star(PairConfig.from_vectors(pos, neg), spec)
    r2 = lambda_star(PairConfig.from_vectors(neg, pos), spec)
    assert abs(r1.value - r2.value) <= r1.err + r2.err
    n1 = (0.0, 1.0, 1.0)
    n2 = (1.0, 0.5, 1.5)
    r3 = lambda_star(PairConfig.from_vectors(n1, n2), spec)
    assert math.isfinite(r3.value)


def test_lambda_rotation_instances(spec):
    rng = random.Random(2024)
    for _ in range(6):
        pair = checks.random_pair(rng)
        rot = checks.random_rotation(rng)
        base = lambda_star(pair, spec)
        moved = lambda_star(checks.rotate_pair(pair, rot), spec)
        assert abs(moved.value - base.value) <= 5e-3 * (1 + abs(base.value))


def test_lambda_depends_only_on_gram(spec):
    rng = random.Random(77)
    for _ in range(6):
        pair = checks.random_pair(rng)
        other = checks.conjugate_pair(pair, rng)
        a = lambda_star(pair, spec)
        b = lambda_star(other, spec)
        assert abs(a.value - b.value) <= a.err + b.err


def test_lambda_rational_pairs_equal_gram(spec):
    # Two exact-rational realizations of the same gram matrix.
    from ariththeta import splitorbits as so

    p1 = PairConfig.from_vectors((0, 1, -1), (1, 0, 0))
    act = so.conj_action((2, 1, 1, 1))  # det 1
    q1 = so.apply3(act, (0, 1, -1))
    q2 = so.apply3(act, (1, 0, 0))
    p2 = PairConfig.from_vectors(q1, q2)
    assert p1.gram == p2.gram
    assert (q1, q2) != ((0, 1, -1), (1, 0, 0))
    a = lambda_star(p1, spec)
    b = lambda_star(p2, spec)
    assert abs(a.value - b.value) <= a.err + b.err


def test_lambda_self_convergence_under_tighter_spec():
    base_spec = QuadratureSpec()
    tight = QuadratureSpec(
        rel_tol=4e-6,
        abs_tol=4e-8,
        singular_ball_radius=0.008,
        max_cells=40000,
    )
    pair = PairConfig.from_vectors((0.0, 1.0, -1.0), (0.4, -1.37, 1.0))
    a = lambda_star(pair, base_spec)
    b = lambda_star(pair, tight)
    assert abs(a.value - b.value) <= a.err + b.err


# --- archimedean classes ------------------------------------------------------


def test_z_hat_zero_for_unrepresented_gram(lat_d1, spec):
    res = z_hat_indefinite(lat_d1, ((1, 2), (2, 1)), ((1.0, 0.0), (0.0, 1.0)), spec)
    assert res.value == 0.0 and res.orbits == 0


def test_z_hat_rejects_positive_definite(lat_d1, spec):
    with pytest.raises(PreconditionViolation):
        z_hat_indefinite(lat_d1, ((1, 0), (0, 1)), ((1.0, 0.0), (0.0, 1.0)), spec)


def test_z_hat_rejects_non_split(lat_d6, spec):
    with pytest.raises(UnsupportedDiscriminant):
        z_hat_indefinite(lat_d6, ((1, 0), (0, -1)), ((1.0, 0.0), (0.0, 1.0)), spec)


def test_z_hat_accepts_explicit_orbit_reps(lat_d6, spec):
    # Supplying representatives bypasses the split-model machinery.
    res = z_hat_indefinite(
        lat_d6,
        ((1, 0), (0, -1)),
        ((1.0, 0.0), (0.0, 1.0)),
        spec,
        orbit_reps=[((0, 1, -1), (1, 0, 0))],
    )
    assert res.orbits == 1 and math.isfinite(res.value)


def test_z_hat_sig11_stability_and_a_independence(lat_d1, spec):
    t_mat = ((1, 0), (0, -1))
    v = ((1.3, 0.3), (0.3, 0.8))
    sym = z_hat_indefinite(lat_d1, t_mat, v, spec, square_root="symmetric")
    tri = z_hat_indefinite(lat_d1, t_mat, v, spec, square_root="triangular")
    assert sym.orbits == 2
    assert abs(sym.value - tri.value) <= sym.err + tri.err
    tight = QuadratureSpec(rel_tol=4e-6, abs_tol=4e-8, singular_ball_radius=0.008, max_cells=40000)
    ref = z_hat_indefinite(lat_d1, t_mat, v, tight)
    assert abs(sym.value - ref.value) <= sym.err + ref.err


def test_lambda_rejects_isotropic_component(spec):
    with pytest.raises(PreconditionViolation):
        lambda_star(PairConfig.from_vectors((0.0, 1.0, 0.0), (1.0, 0.0, 1.0)), spec)


def test_z_hat_zero_diagonal_gram(lat_d1, spec):
    # T = [[0, 1], [1, 0]] has isotropic members, but scaling by a square
    # root of a generic v makes every orbit representative anisotropic.
    res = z_hat_indefinite(lat_d1, ((0, 1), (1, 0)), ((1.3, 0.3), (0.3, 0.8)), spec)
    assert res.orbits > 0 and math.isfinite(res.value)


def test_z_hat_sig02_instance(lat_d1, spec):
    t_mat = ((-1, 0), (0, -1))
    v = ((1.0, 0.2), (0.2, 1.5))
    sym = z_hat_indefinite(lat_d1, t_mat, v, spec, square_root="symmetric")
    tri = z_hat_indefinite(lat_d1, t_mat, v, spec, square_root="triangular")
    assert sym.orbits == 2
    assert abs(sym.value - tri.value) <= sym.err + tri.err
