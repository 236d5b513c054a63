"""K evaluation, the cocycle identity, the seminorm and the G two-cocycle."""

import random
from fractions import Fraction

import deckrot as dk
from conftest import ALL_SPACES, ANNULUS, CIRCLE, COMPLINE, random_homeo, random_pl


def test_k_of_identity_vanishes():
    rng = random.Random(1)
    for space in ALL_SPACES:
        e = dk.identity(space)
        for _ in range(10):
            assert dk.k_eval(e, space.sample_point(rng)) == 0


def test_k_of_shear_powers_matches_paper_formula():
    g = dk.TorusShear(COMPLINE)
    for n in range(-20, 21):
        gn = dk.power(g, n)
        for x in (Fraction(-7, 2), Fraction(0), Fraction(13, 5)):
            assert dk.k_eval(gn, (Fraction(1, 9), x)) == abs(x + n) - abs(x)
        assert dk.k_eval(gn, (0, dk.INF)) == 0


def test_k_of_rotation_is_constant():
    r = dk.RigidRotation(CIRCLE, Fraction(2, 7))
    vals = {dk.k_eval(r, (Fraction(i, 11),)) for i in range(11)}
    assert vals == {Fraction(2, 7)}


def test_k_eval_is_sheet_independent_through_potentials():
    g = dk.AnnulusTwist(ANNULUS, Fraction(1, 5), Fraction(2, 3))
    P = dk.built_in_potential(ANNULUS)
    x = (Fraction(1, 7), Fraction(1, 3))
    expected = dk.k_eval(g, x)
    for sheet in (0, 3, Fraction(-5, 2)):
        cp = dk.CoverPoint(ANNULUS, x, sheet)
        assert P.eval(g.lift(cp)) - P.eval(cp) == expected


def test_k_with_alternative_potential_still_satisfies_cocycle_identity():
    # potential differing by an invariant function: a different representative
    from deckrot.util import sinpi

    base = dk.built_in_potential(CIRCLE)
    P = dk.Potential(
        CIRCLE, lambda b, h: base.fn(b, h) + Fraction(1, 4) * sinpi(2 * b[0]), "alt"
    )
    g = dk.RigidRotation(CIRCLE, Fraction(1, 3))
    h = dk.RigidRotation(CIRCLE, Fraction(1, 7))
    gh = dk.compose(g, h)
    for s in (Fraction(1, 5), Fraction(2, 5), Fraction(4, 5)):
        lhs = dk.k_eval(gh, (s,), P)
        rhs = dk.k_eval(g, h.apply((s,)), P) + dk.k_eval(h, (s,), P)
        assert abs(lhs - rhs) <= 1e-12


def test_k_identity_residual_with_identity_partner_is_zero():
    rng = random.Random(2)
    for space in ALL_SPACES:
        g = random_homeo(space, rng)
        assert dk.k_identity_residual(g, dk.identity(space), 100) == 0


def test_k_identity_residual_shear_and_twist():
    g = dk.TorusShear(COMPLINE)
    assert dk.k_identity_residual(dk.power(g, 3), dk.power(g, -2), 1000) <= 1e-12
    t1 = dk.AnnulusTwist(ANNULUS, Fraction(1, 3), Fraction(1, 5))
    t2 = dk.AnnulusTwist(ANNULUS, Fraction(-1, 2), Fraction(3, 7))
    assert dk.k_identity_residual(t1, t2, 1000) <= 1e-12


def test_seminorm_values():
    assert dk.seminorm(dk.RigidRotation(CIRCLE, Fraction(5, 7))).value == 0
    assert dk.seminorm(dk.TorusShear(COMPLINE)).value == 2
    t = dk.AnnulusTwist(ANNULUS, Fraction(1, 4), Fraction(-1, 3))
    assert dk.seminorm(t).value == Fraction(1, 4) + Fraction(1, 3)


def test_seminorm_certified_bound_and_monotonicity():
    g = dk.TorusShear(COMPLINE)
    lo = dk.seminorm(g, 16)
    hi = dk.seminorm(g, 32)
    assert lo.certified
    assert lo.certified_bound >= lo.value
    assert hi.value >= lo.value  # doubling refines the grid
    assert hi.certified_bound <= lo.certified_bound


def test_seminorm_pl_uses_breakpoints_exactly():
    rng = random.Random(6)
    p = random_pl(rng)
    est = dk.seminorm(p, 8)  # coarse grid; breakpoints carry the extremes
    disp = [p.pl.displacement(s) for s in p.pl.breakpoints()]
    assert est.value == max(disp) - min(disp)


def test_seminorm_symmetry_under_inverse():
    rng = random.Random(8)
    for space in ALL_SPACES:
        for _ in range(3):
            g = random_homeo(space, rng)
            if g.flavor is dk.Flavor.NUMERIC_SAMPLED:
                continue
            a = dk.seminorm(g).value
            b = dk.seminorm(g.inverse()).value
            assert abs(float(a) - float(b)) <= 1e-9


def test_seminorm_word_lipschitz_bound():
    rng = random.Random(12)
    t = dk.AnnulusTwist(ANNULUS, 0, Fraction(1, 2))
    u = dk.AnnulusTwist(ANNULUS, Fraction(1, 3), Fraction(-1, 4))
    gens = [t, u, t.inverse(), u.inverse()]
    C = max(dk.seminorm(s).value for s in gens)
    for _ in range(20):
        k = rng.randint(1, 10)
        word = dk.identity(ANNULUS)
        for _ in range(k):
            word = dk.compose(word, rng.choice(gens))
        assert float(dk.seminorm(word).value) <= float(k * C) + 1e-9


def test_g_cocycle_vanishes_when_h_fixes_x():
    g = dk.GradientTimeOne(CIRCLE, Fraction(1, 10))
    h = dk.GradientTimeOne(CIRCLE, Fraction(-1, 12))
    assert dk.g_cocycle((0,), g, h) == 0
    assert dk.g_cocycle((Fraction(1, 2),), g, h) == 0


def test_g_cocycle_shear_table_values():
    g = dk.TorusShear(COMPLINE)
    assert dk.g_cocycle((0, 0), dk.power(g, 1), dk.power(g, 1)) == 0
    assert dk.g_cocycle((0, 0), dk.power(g, 1), dk.power(g, -1)) == -2
    for m, n in [(3, 4), (-2, 5), (7, -7)]:
        assert dk.g_cocycle((0, 0), dk.power(g, m), dk.power(g, n)) == abs(m + n) - abs(m) - abs(n)
    assert dk.g_cocycle((Fraction(1, 3), dk.INF), dk.power(g, 5), dk.power(g, -9)) == 0


def test_two_cocycle_identity_on_sampled_triples():
    rng = random.Random(14)
    for space in ALL_SPACES:
        for _ in range(5):
            g, h, k = (random_homeo(space, rng) for _ in range(3))
            x = space.sample_point(rng)
            assert dk.g_cocycle_identity_residual(x, g, h, k) <= 1e-9
