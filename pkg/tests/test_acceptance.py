"""Acceptance criteria, one test per criterion, printed pass lines.

Each test pins the tolerances stated in the project contract; timing
assertions use the stated budgets (the actual runtimes are far smaller).
Run with `pytest tests/test_acceptance.py -v -s` to see the lines.
"""

import math
import random
import time
from fractions import Fraction
from pathlib import Path

import deckrot as dk
from conftest import ALL_SPACES, ANNULUS, CIRCLE, COMPLINE, TORUS, random_homeo
from deckrot.scenario import run_scenario
from deckrot.util import circle_dist

SCENARIOS = Path(__file__).resolve().parents[1] / "scenarios"


def _report(n, name):
    print(f"ACCEPTANCE {n} ({name}): PASS")


def test_criterion_1_torus_example_exactness():
    start = time.perf_counter()
    g = dk.TorusShear(COMPLINE)
    rng = random.Random(1)
    points = [(rng.random(), rng.uniform(-40, 40)) for _ in range(98)]
    points += [(Fraction(1, 3), Fraction(-7, 2)), (0, Fraction(25))]
    assert len(points) == 100
    for n in range(-20, 21):
        gn = dk.power(g, n)
        for t, x in points:
            assert abs(dk.k_eval(gn, (t, x)) - (abs(x + n) - abs(x))) <= 1e-12
    for m in range(-20, 21):
        gm = dk.power(g, m)
        for n in range(-20, 21):
            val = dk.g_cocycle((0, 0), gm, dk.power(g, n))
            assert abs(val - (abs(m + n) - abs(m) - abs(n))) <= 1e-12
            assert dk.g_cocycle((Fraction(1, 7), dk.INF), gm, dk.power(g, n)) == 0
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"criterion 1 took {elapsed:.2f}s"
    _report(1, "torus example exactness")


def test_criterion_2_cocycle_identity_across_families():
    start = time.perf_counter()
    rng = random.Random(2)
    worst = 0
    for i in range(200):
        space = ALL_SPACES[i % len(ALL_SPACES)]
        g = random_homeo(space, rng)
        h = dk.identity(space) if i % 40 == 39 else random_homeo(space, rng)
        res = dk.k_identity_residual(g, h, 1000, rng=random.Random(i))
        worst = max(worst, float(res))
    assert worst <= 1e-9, f"worst residual {worst}"
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"criterion 2 took {elapsed:.2f}s"
    _report(2, "cocycle identity, 200 random pairs")


def test_criterion_3_appendix_roundtrip():
    rng = random.Random(3)
    for space in ALL_SPACES:
        c = dk.class_cocycle(space)
        bp = dk.CoverPoint(space, space.basepoint, 0)
        P = dk.potential_from_cocycle(space, c, bp)
        c2 = dk.cocycle_from_potential(space, P)
        for _ in range(100):
            pl = space.random_polyline(rng)
            assert abs(c.integrate(pl) - c2.integrate(pl)) <= 1e-9
        for _ in range(100):
            pl = space.random_polyline(rng, segments=3)
            loop = dk.Polyline(
                space,
                pl.vertices + (pl.vertices[0],),
                pl.windings + ((0,) * len(space.circle_factors),),
            )
            val = c2.integrate(loop)
            assert abs(val - round(val)) <= 1e-9
    _report(3, "appendix roundtrip and loop integrality")


def test_criterion_4_defect_bound():
    rng = random.Random(4)
    for i in range(50):
        space = ALL_SPACES[i % len(ALL_SPACES)]
        g = random_homeo(space, rng)
        x = space.sample_point(rng)
        y = space.sample_point(rng)
        est = dk.defect_estimate(x, y, g, 16)
        assert float(est.sampled_defect) <= float(est.g_table_bound) + 1e-9
    _report(4, "defect bounded by G tables, 50 configurations")


def test_criterion_5_rotation_numbers():
    # fixed points: exactly zero
    grad = dk.GradientTimeOne(CIRCLE, Fraction(1, 10))
    for x in ((0,), (Fraction(1, 2),)):
        est = dk.local_rotation_number(x, grad)
        assert est.rot == 0 and est.residual_band == 0
    shear = dk.TorusShear(COMPLINE)
    est = dk.local_rotation_number((Fraction(1, 3), dk.INF), shear)
    assert est.rot == 0
    wind = dk.CosineTwist(TORUS, 1)
    assert dk.local_rotation_number((Fraction(2, 7), 0), wind).rot == 0

    # rigid rotations: r = -rho with zero residual band
    for rho in (Fraction(2, 7), Fraction(math.sqrt(2)) - 1):
        r = dk.RigidRotation(CIRCLE, rho)
        est = dk.local_rotation_number((0.123,), r)
        assert est.r == -rho
        assert est.residual_band == 0

    # PL map conjugate to rotation by 2/5 vs the classical-lift oracle
    h = dk.PLCircleMap(CIRCLE, dk.PLMap(((0, 0), (Fraction(1, 3), Fraction(1, 2)))))
    p = dk.compose(dk.compose(h, dk.RigidRotation(CIRCLE, Fraction(2, 5))), h.inverse())
    n_oracle = 10**4
    u, total = 0.0, 0.0
    for _ in range(n_oracle):
        d = float(p.factor_displacements((u,))[0])
        total += d
        u = (u + d) % 1.0
    oracle = total / n_oracle
    est = dk.local_rotation_number((0.1,), p, budget=n_oracle)
    assert circle_dist(float(est.classical_rot), oracle) <= 1e-3
    _report(5, "rotation numbers: fixed points, rigid, PL vs oracle")


def test_criterion_6_undistortion_certificates():
    start = time.perf_counter()
    t = dk.AnnulusTwist(ANNULUS, 0, Fraction(1, 2))
    gens = dk.GenSet([t], names=["T"])
    assert gens.C == Fraction(1, 2)

    cert_rot = dk.certify_two_rotation_points(
        (0, Fraction(0)), (0, Fraction(1)), t, generators=gens
    )
    assert cert_rot.verdict is dk.Verdict.UNDISTORTED
    assert cert_rot.mechanism is dk.Mechanism.TWO_ROTATION_POINTS
    assert abs(float(cert_rot.tau_lower_bound) - 1.0) <= 1e-6

    mu = dk.CircleUniformMeasure(dk.NamedCircle(ANNULUS, "boundary:0"))
    nu = dk.CircleUniformMeasure(dk.NamedCircle(ANNULUS, "boundary:1"))
    cert_meas = dk.certify_two_measures(mu, nu, t, generators=gens)
    assert cert_meas.verdict is dk.Verdict.UNDISTORTED
    assert cert_meas.mechanism is dk.Mechanism.TWO_MEASURES
    assert abs(float(cert_meas.tau_lower_bound) - 1.0) <= 1e-6

    g = dk.TorusShear(COMPLINE)
    cert_shear = dk.certify_two_rotation_points((0, 0), (0, dk.INF), g, budget=1024)
    assert cert_shear.verdict is dk.Verdict.INCONCLUSIVE
    assert cert_shear.evidence["bounded_verdict_x"] == "UnboundedSuspected"

    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"criterion 6 took {elapsed:.2f}s"
    _report(6, "undistortion certificates")


def test_criterion_7_word_geometry():
    start = time.perf_counter()
    p = dk.PLCircleMap(
        CIRCLE,
        dk.PLMap(((0, 0), (Fraction(1, 4), Fraction(3, 8)), (Fraction(1, 2), Fraction(1, 2)))),
    )
    q = dk.PLCircleMap(
        CIRCLE,
        dk.PLMap(((0, 0), (Fraction(1, 2), Fraction(1, 2)), (Fraction(3, 4), Fraction(7, 8)))),
    )
    S = dk.GenSet([p, q], names=["p", "q"])
    assert dk.ball(S, 3).sizes == (1, 5, 13, 25)

    t = dk.AnnulusTwist(ANNULUS, 0, Fraction(1, 2))
    ST = dk.GenSet([t], names=["T"])
    for n in range(1, 7):
        res = dk.word_norm(dk.power(t, n), ST, 8)
        assert res.exact == n
        assert abs(float(res.lower_bound) - n) <= 1e-12
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0, f"criterion 7 took {elapsed:.2f}s"
    _report(7, "word geometry: Z^2 ball and twist norms")


def test_criterion_8_deterministic_reports():
    for name in ("acceptance.cfg", "torus_shear.cfg", "fixed_points.cfg"):
        text = (SCENARIOS / name).read_text(encoding="utf-8")
        first = run_scenario(text, seed=0, source=name)
        second = run_scenario(text, seed=0, source=name)
        assert first.render_text() == second.render_text()
        assert first.csv_blobs() == second.csv_blobs()
    _report(8, "byte-identical reports")
