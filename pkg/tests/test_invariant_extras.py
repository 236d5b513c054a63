"""Cross-module invariants that do not belong to a single operation."""

import random
from fractions import Fraction

import deckrot as dk
from conftest import ALL_SPACES, ANNULUS, CIRCLE
from deckrot.cli import main
from deckrot.scenario import run_scenario


def test_kfunction_pin_normalizes_to_zero():
    t = dk.AnnulusTwist(ANNULUS, Fraction(1, 3), Fraction(1, 2))
    pin = (0, Fraction(1, 4))
    K = dk.KFunction(t, pin=pin)
    assert K.at(pin) == 0
    other = (Fraction(1, 2), Fraction(3, 4))
    assert K.at(other) == dk.k_eval(t, other) - dk.k_eval(t, pin)


def test_path_cocycle_is_additive_under_concatenation():
    rng = random.Random(21)
    for space in ALL_SPACES:
        c = dk.class_cocycle(space)
        a = space.random_polyline(rng, segments=2)
        mid = a.vertices[-1]
        tail = [space.sample_point(rng), space.sample_point(rng)]
        b = dk.Polyline(
            space,
            (mid, *tail),
            tuple((0,) * len(space.circle_factors) for _ in range(2)),
        )
        joined = dk.Polyline(space, a.vertices + b.vertices[1:], a.windings + b.windings)
        assert abs(c.integrate(joined) - (c.integrate(a) + c.integrate(b))) <= 1e-12


def test_potential_modulus_bounds_chart_increments():
    rng = random.Random(22)
    for space in ALL_SPACES:
        P = dk.built_in_potential(space)
        assert P.modulus is not None
        for _ in range(100):
            b0 = space.sample_point(rng)
            b1 = space.sample_point(rng)
            # one-chart distance: raw angle differences, no seam crossing
            gap = max(
                abs(float(a1) - float(a0))
                for a0, a1 in zip(space.angles(b0), space.angles(b1))
            )
            inc = abs(float(P.fn(b1, 0.0)) - float(P.fn(b0, 0.0)))
            assert inc <= P.modulus * gap + 1e-9


def test_scc_consistency_with_nielsen_gap():
    # gap between invariant-circle measures equals |rho1 <a,l1> - rho2 <a,l2>|
    t = dk.AnnulusTwist(ANNULUS, Fraction(1, 3), Fraction(1, 2))
    c0 = dk.NamedCircle(ANNULUS, "boundary:0")
    c1 = dk.NamedCircle(ANNULUS, "boundary:1")
    s0 = dk.scc_rotation_integral(c0, t)
    s1 = dk.scc_rotation_integral(c1, t)
    gap = dk.nielsen_gap(
        dk.CircleUniformMeasure(c0), dk.CircleUniformMeasure(c1), t
    ).gap
    assert abs(float(gap) - abs(float(s0.product - s1.product))) <= 1e-6


def test_ball_cap_exceeded_is_flagged_not_fatal(tmp_path):
    text = """\
[space]
kind = annulus
pairing = 1

[homeo T]
family = annulus_twist
rho0 = 0
rho1 = 1/2

[genset S]
generators = T

[budgets]
ball_cap = 4

[analysis big-ball]
op = ball
genset = S
radius = 8
"""
    report = run_scenario(text)
    assert "truncated = true" in report.render_text()
    path = tmp_path / "cap.cfg"
    path.write_text(text)
    assert main(["run", str(path), "--out", str(tmp_path / "out")]) == 0


def test_equivariance_invariant_at_full_sample_count():
    # lift equivariance residual at the documented 10^4-sample scale
    cases = [
        dk.RigidRotation(CIRCLE, Fraction(5, 9)),
        dk.AnnulusTwist(ANNULUS, Fraction(1, 3), Fraction(-2, 7)),
        dk.TorusShear(dk.Space.circle_compline(), 2),
        dk.CosineTwist(dk.Space.torus2((1, 0)), Fraction(3, 2)),
    ]
    for g in cases:
        assert dk.equivariance_residual(g, samples=10**4) <= 1e-12
