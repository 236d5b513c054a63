"""Family lifts: composition, inversion, powers, equivariance, flavors."""

import random
from fractions import Fraction

import pytest

import deckrot as dk
from conftest import ALL_SPACES, ANNULUS, CIRCLE, COMPLINE, TORUS, random_homeo, random_pl


def test_compose_rotations_adds_shifts():
    a = dk.RigidRotation(CIRCLE, Fraction(2, 3))
    b = dk.RigidRotation(CIRCLE, Fraction(2, 3))
    c = dk.compose(a, b)
    assert isinstance(c, dk.RigidRotation)
    assert c.shift == Fraction(4, 3)  # lift shift adds without reduction
    assert c.apply((0,)) == (Fraction(1, 3),)


def test_compose_shears_adds_displacements():
    g = dk.TorusShear(COMPLINE)
    gg = dk.compose(g, g)
    for x in (Fraction(-3), Fraction(-1, 2), Fraction(5, 4)):
        assert gg.k_displacement((0, x)) == abs(x + 2) - abs(x)


def test_pl_composition_matches_pointwise_at_1000_rationals():
    rng = random.Random(3)
    p = random_pl(rng)
    q = random_pl(rng)
    comp = dk.compose(p, q)
    assert isinstance(comp, dk.PLCircleMap)
    for k in range(1000):
        t = Fraction(k, 1000)
        assert comp.pl.eval(t) == p.pl.eval(q.pl.eval(t))


def test_inverse_rotation():
    r = dk.RigidRotation(CIRCLE, Fraction(3, 7))
    assert r.inverse().shift == Fraction(-3, 7)


def test_inverse_shear_formula():
    # g^{-1}(t,x) = (t - |x| + |x-1|, x - 1)
    g = dk.TorusShear(COMPLINE)
    gi = g.inverse()
    for x in (Fraction(-2), Fraction(0), Fraction(1, 3), Fraction(4)):
        assert gi.k_displacement((0, x)) == abs(x - 1) - abs(x)
        assert gi.apply((Fraction(1, 5), x))[1] == x - 1


def test_pl_inverse_is_exact():
    rng = random.Random(4)
    p = random_pl(rng)
    pi = p.inverse()
    for k in range(200):
        t = Fraction(k, 200)
        assert p.pl.eval(pi.pl.eval(t)) == t


def test_power_zero_is_identity():
    for space in ALL_SPACES:
        rng = random.Random(9)
        g = random_homeo(space, rng)
        e = dk.power(g, 0)
        assert isinstance(e, dk.Identity)


def test_power_shear_lift_formula():
    g = dk.TorusShear(COMPLINE)
    for n in (-4, -1, 2, 7):
        gn = dk.power(g, n)
        for x in (Fraction(-5), Fraction(1, 2), Fraction(3)):
            assert gn.k_displacement((0, x)) == abs(x + n) - abs(x)
        assert gn.apply((0, dk.INF)) == (0, dk.INF)


def test_power_rotation():
    r = dk.RigidRotation(CIRCLE, Fraction(2, 7))
    r5 = dk.power(r, 5)
    assert r5.shift == Fraction(10, 7)
    assert r5.apply((0,)) == (Fraction(3, 7),)


@pytest.mark.parametrize("space", ALL_SPACES, ids=lambda s: s.kind.value)
def test_equivariance_of_constructed_lifts(space):
    rng = random.Random(17)
    for _ in range(4):
        g = random_homeo(space, rng)
        assert dk.equivariance_residual(g, samples=500, rng=random.Random(1)) <= 1e-12


def test_power_addition_law_pointwise():
    rng = random.Random(23)
    for space in ALL_SPACES:
        g = random_homeo(space, rng)
        lhs = dk.power(g, 5)
        rhs = dk.compose(dk.power(g, 2), dk.power(g, 3))
        for _ in range(50):
            x = space.sample_point(rng)
            assert abs(lhs.k_displacement(x) - rhs.k_displacement(x)) <= 1e-12
            ax, bx = lhs.apply(x), rhs.apply(x)
            assert all(abs(float(a) - float(b)) <= 1e-12 for a, b in zip(ax, bx))


def test_power_addition_exact_for_pl():
    rng = random.Random(29)
    p = random_pl(rng)
    lhs = dk.power(p, 4)
    rhs = dk.compose(dk.power(p, 1), dk.power(p, 3))
    assert lhs.pl.canonical_data() == rhs.pl.canonical_data()


@pytest.mark.parametrize("space", ALL_SPACES, ids=lambda s: s.kind.value)
def test_class_pairing_preserved_exactly(space):
    rng = random.Random(31)
    for _ in range(4):
        g = random_homeo(space, rng)
        assert dk.class_pairing_residual(g) == 0


def test_gradient_fixes_poles_exactly():
    g = dk.GradientTimeOne(CIRCLE, Fraction(1, 10))
    assert g.apply((0,)) == (0,)
    assert g.apply((Fraction(1, 2),)) == (Fraction(1, 2),)
    assert g.k_displacement((0,)) == 0
    assert g.k_displacement((Fraction(1, 2),)) == 0


def test_gradient_amplitude_validation():
    with pytest.raises(ValueError):
        dk.GradientTimeOne(CIRCLE, Fraction(1, 2))


def test_gradient_inverse_roundtrip():
    g = dk.GradientTimeOne(CIRCLE, Fraction(1, 10))
    comp = dk.compose(g, g.inverse())
    worst = max(abs(comp.k_displacement((i / 97,))) for i in range(97))
    assert worst <= 1e-12


def test_compose_space_mismatch():
    with pytest.raises(dk.SpaceMismatchError):
        dk.compose(dk.RigidRotation(CIRCLE, 1), dk.AnnulusTwist(ANNULUS, 0, 1))


def test_numeric_sampled_reproduces_rotation_exactly():
    r = dk.RigidRotation(CIRCLE, 0.37)
    ns = dk.NumericSampledMap.from_homeo(r, 64)
    assert ns.flavor is dk.Flavor.NUMERIC_SAMPLED
    for s in (0.0, 0.123, 0.9):
        assert abs(ns.k_displacement((s,)) - 0.37) <= 1e-12


def test_numeric_sampled_bilinear_on_annulus():
    tw = dk.AnnulusTwist(ANNULUS, Fraction(1, 5), Fraction(1, 3))
    ns = dk.NumericSampledMap.from_homeo(tw, 32)
    rng = random.Random(37)
    for _ in range(50):
        p = ANNULUS.sample_point(rng)
        # the twist profile is affine in r, so bilinear interpolation is exact
        assert abs(ns.k_displacement(p) - float(tw.k_displacement(p))) <= 1e-12


def test_numeric_sampled_has_no_inverse():
    ns = dk.NumericSampledMap.from_homeo(dk.RigidRotation(CIRCLE, 0.3), 16)
    with pytest.raises(dk.NonInvertibleError):
        dk.inverse(ns)


def test_lazy_composition_tracks_displacements():
    g = dk.GradientTimeOne(CIRCLE, Fraction(1, 10))
    r = dk.RigidRotation(CIRCLE, Fraction(1, 3))
    comp = dk.compose(g, r)
    assert isinstance(comp, dk.Composition)
    x = (0.21,)
    expected = g.k_displacement(r.apply(x)) + r.k_displacement(x)
    assert abs(comp.k_displacement(x) - expected) <= 1e-15


def test_iterated_map_powers():
    g = dk.GradientTimeOne(CIRCLE, Fraction(1, 10))
    g8 = dk.power(g, 8)
    assert isinstance(g8, dk.IteratedMap)
    x = (0.3,)
    step = x
    total = 0.0
    for _ in range(8):
        total += float(g.k_displacement(step))
        step = g.apply(step)
    assert abs(float(g8.k_displacement(x)) - total) <= 1e-12
    g16 = dk.power(g8, 2)
    assert isinstance(g16, dk.IteratedMap) and g16.n == 16


def test_lift_injectivity_spot_check():
    rng = random.Random(41)
    # circle flavors: the lift must be strictly increasing
    for g in (random_pl(rng), dk.GradientTimeOne(CIRCLE, Fraction(1, 10))):
        samples = sorted(rng.random() for _ in range(200))
        lifts = [s + float(g.factor_displacements((s,))[0]) for s in samples]
        assert all(b > a for a, b in zip(lifts, lifts[1:]))
    # 2-D families: distinct samples map to distinct points
    for space in (ANNULUS, TORUS, COMPLINE):
        g = random_homeo(space, rng)
        pts = {space.sample_point(rng) for _ in range(100)}
        images = {tuple(map(float, g.apply(p))) for p in pts}
        assert len(images) == len(pts)


def test_canonical_keys_unify_families():
    rot = dk.RigidRotation(CIRCLE, Fraction(1, 3))
    as_pl = dk.PLCircleMap(CIRCLE, dk.PLMap.rotation(Fraction(1, 3)))
    assert rot.canonical_key() == as_pl.canonical_key()
    assert dk.Identity(CIRCLE).canonical_key() == dk.power(rot, 3).canonical_key()
    t = dk.AnnulusTwist(ANNULUS, 0, Fraction(1, 2))
    assert dk.power(t, 2).canonical_key() == ("twist", 0, 1)
    assert dk.GradientTimeOne(CIRCLE, Fraction(1, 10)).canonical_key() is None
