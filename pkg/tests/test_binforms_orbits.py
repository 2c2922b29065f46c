"""Form reduction, Hurwitz class numbers, and unit-group orbit machinery."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import ariththeta as at
from ariththeta import binforms, splitorbits as so
from ariththeta.binforms import (
    hurwitz_class_number,
    hurwitz_class_number_boxdedup,
    is_reduced,
    reduce_form,
    reduced_classes,
)


def test_hurwitz_hand_values():
    assert hurwitz_class_number(3) == Fraction(1, 3)
    assert hurwitz_class_number(4) == Fraction(1, 2)
    assert hurwitz_class_number(23) == 3
    assert hurwitz_class_number(0) == Fraction(-1, 12)
    assert hurwitz_class_number(1) == 0
    assert hurwitz_class_number(2) == 0


def test_hurwitz_two_routes_agree_to_200():
    for n in range(0, 201):
        assert hurwitz_class_number(n) == hurwitz_class_number_boxdedup(n), n


def test_hurwitz_zagier_table():
    # H(n) for n = 3, 4, ..., 20 (0 off the allowed residues).
    table = {
        3: Fraction(1, 3), 4: Fraction(1, 2), 7: 1, 8: 1, 11: 1,
        12: Fraction(4, 3), 15: 2, 16: Fraction(3, 2), 19: 1, 20: 2,
    }
    for n, h in table.items():
        assert hurwitz_class_number(n) == h


@settings(max_examples=120, deadline=None)
@given(st.integers(min_value=1, max_value=60), st.integers(min_value=-15, max_value=15))
def test_reduce_form_is_class_invariant(a, b):
    # Reduction is idempotent and constant on SL2(Z) translates.
    disc = -(4 * a * 3 - b * b)
    if disc >= 0 or b * b - 4 * a * 3 != disc:
        return
    form = (a, b, 3)
    if binforms.discriminant(form) >= 0:
        return
    red = reduce_form(form)
    assert is_reduced(red)
    assert reduce_form(red) == red
    # Translate by a few generators of SL2(Z): (a,b,c) -> (a, b+2a, a+b+c), swap.
    aa, bb, cc = form
    shifted = (aa, bb + 2 * aa, aa + bb + cc)
    assert reduce_form(shifted) == red
    swapped = (cc, -bb, aa)
    assert reduce_form(swapped) == red


def test_reduced_classes_disc_minus_20():
    assert reduced_classes(-20) == [(1, 0, 5), (2, 2, 3)]


# --- vector orbits on the split model ----------------------------------------


def _random_gl2z(rng, steps=8):
    m = (1, 0, 0, 1)
    gens = [(1, 1, 0, 1), (1, -1, 0, 1), (0, -1, 1, 0), (1, 0, 0, -1)]
    for _ in range(steps):
        g = rng.choice(gens)
        m = (
            m[0] * g[0] + m[1] * g[2],
            m[0] * g[1] + m[1] * g[3],
            m[2] * g[0] + m[3] * g[2],
            m[2] * g[1] + m[3] * g[3],
        )
    return m


def test_orbit_label_invariant_under_conjugation():
    rng = random.Random(11)
    for t in (1, 2, 3, 5, 6, 11):
        for rep in so.orbit_reps(t):
            label = so.canonical_orbit_form(rep)
            for _ in range(12):
                g = _random_gl2z(rng)
                moved = so.apply3(so.conj_action(g), rep)
                assert so.q_value(moved) == t
                assert so.canonical_orbit_form(moved) == label


def test_orbit_reps_are_pairwise_inequivalent():
    for t in (1, 2, 3, 5, 12):
        labels = [so.canonical_orbit_form(r) for r in so.orbit_reps(t)]
        assert len(labels) == len(set(labels))


def test_stabilizer_orders():
    # Unit counts 4, 2, 6 for the orbits attached to x^2+y^2, x^2+2y^2,
    # and the half-integral hexagonal class at t = 3.
    assert len(so.commuting_units(so.vector_of_form((1, 0, 1)))) == 4
    assert len(so.commuting_units(so.vector_of_form((1, 0, 2)))) == 2
    assert len(so.commuting_units(so.vector_of_form((2, 2, 2)))) == 6


def test_stabilizers_fix_their_vector():
    for t in (1, 3, 5):
        for rep in so.orbit_reps(t):
            for g in so.commuting_units(rep):
                assert so.apply3(so.conj_action(g), rep) == rep
            for g in so.anticommuting_flips(rep):
                moved = so.apply3(so.conj_action(g), rep)
                assert moved == (-rep[0], -rep[1], -rep[2])


def test_weighted_orbit_degree_equals_hurwitz(lat_d1):
    for t in range(1, 31):
        assert at.weighted_orbit_degree(lat_d1, t) == hurwitz_class_number(4 * t)


def test_weighted_orbit_degree_requires_split(lat_d6):
    from ariththeta.errors import UnsupportedDiscriminant

    with pytest.raises(UnsupportedDiscriminant):
        at.weighted_orbit_degree(lat_d6, 1)


# --- pair orbits --------------------------------------------------------------


def _gram(p):
    x1, x2 = p
    return (so.q_value(x1), so.inner(x1, x2) // 2, so.q_value(x2))


@pytest.mark.parametrize(
    "t1,m,t2",
    [(1, 0, -1), (1, 1, -1), (2, 1, -1), (1, 2, 1), (-1, 0, -1), (-1, 1, -2), (-2, 1, -2), (3, 1, -2)],
)
def test_pair_reps_have_the_right_gram(t1, m, t2):
    reps = so.pair_orbit_reps(t1, m, t2)
    for rep in reps:
        assert _gram(rep) == (t1, m, t2)


def test_pair_counts_invariant_under_unimodular_change():
    # N(T) = N(S^T T S): the pairs biject by x -> x S, a completely different
    # run of the enumeration machinery (different base norms and fibers).
    rng = random.Random(5)
    mats = [(1, 0, -1), (1, 1, -1), (-1, 1, -2), (2, 1, -1), (-1, 0, -1)]
    for t1, m, t2 in mats:
        n0 = len(so.pair_orbit_reps(t1, m, t2))
        for _ in range(3):
            while True:
                a, b = rng.randint(-3, 3), rng.randint(-3, 3)
                c, d = rng.randint(-3, 3), rng.randint(-3, 3)
                if a * d - b * c == 1:
                    break
            tt1 = a * a * t1 + 2 * a * b * m + b * b * t2
            ttm = a * c * t1 + (a * d + b * c) * m + b * d * t2
            tt2 = c * c * t1 + 2 * c * d * m + d * d * t2
            assert len(so.pair_orbit_reps(tt1, ttm, tt2)) == n0, (t1, m, t2, a, b, c, d)


def test_pair_counts_swap_and_sign_symmetries():
    for t1, m, t2 in [(1, 1, -1), (-1, 1, -2), (2, 1, -1)]:
        n = len(so.pair_orbit_reps(t1, m, t2))
        assert len(so.pair_orbit_reps(t2, m, t1)) == n
        assert len(so.pair_orbit_reps(t1, -m, t2)) == n


def test_pair_reps_empty_for_unrepresented_gram():
    # (1, 2, 1) has det -3 but the fiber over any base vector is empty.
    assert so.pair_orbit_reps(1, 2, 1) == []


def test_fiber_solver_against_box_scan():
    # The quadratic fiber solver must produce exactly the box-scan solutions.
    for x1, m, t2 in [
        ((0, 1, -1), 1, -1),
        ((0, 1, -1), 0, -2),
        ((-1, -2, 2), 1, -1),
        ((0, 1, -1), 2, 1),
    ]:
        got = sorted(so._fiber(x1, 2 * m, t2))
        box = 25
        brute = sorted(
            (a, b, c)
            for a in range(-box, box + 1)
            for b in range(-box, box + 1)
            for c in range(-box, box + 1)
            if so.inner(x1, (a, b, c)) == 2 * m and so.q_value((a, b, c)) == t2
        )
        inside = [y for y in got if max(abs(v) for v in y) <= box]
        assert inside == brute, (x1, m, t2)
        assert all(so.q_value(y) == t2 for y in got)


def test_pair_reps_pairwise_inequivalent_under_random_conjugation():
    rng = random.Random(23)
    for t1, m, t2 in [(1, 0, -1), (-1, 0, -1), (1, 1, -1)]:
        reps = so.pair_orbit_reps(t1, m, t2)
        # Conjugating any rep never lands on another rep's exact pair.
        others = set()
        for k, rep in enumerate(reps):
            for _ in range(40):
                g = _random_gl2z(rng)
                act = so.conj_action(g)
                moved = (so.apply3(act, rep[0]), so.apply3(act, rep[1]))
                others.add((k, moved))
        seen = {}
        for k, moved in others:
            if moved in seen:
                assert seen[moved] == k
            seen[moved] = k
