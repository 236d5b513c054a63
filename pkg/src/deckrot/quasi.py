"""Two-point quasimorphisms and undistortion certificates.

q(g) = K(g)(y) - K(g)(x) restricted to the cyclic group of g.  A strictly
positive homogenisation certifies unboundedness of q, hence a positive
lower bound on the translation length: C |g^n| >= ||g^n|| >= |q(g^n)|.

Unboundedness and boundedness of the G cocycles are not finitely
decidable; certificates carry the finite evidence (tables, budgets,
tolerances) and an Inconclusive verdict is not a proof of distortion.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .cocycle import k_eval, seminorm
from .errors import PreconditionError, SpaceMismatchError
from .rotation import (
    BoundedVerdict,
    _b_profile,
    _exponent_ladder,
    boundedness_diagnostic,
    estimate_linear_rate,
    local_rotation_number,
)
from .spaces import Polyline
from .util import circle_dist


class Verdict(enum.Enum):
    UNDISTORTED = "Undistorted"
    INCONCLUSIVE = "Inconclusive"


class Mechanism(enum.Enum):
    TWO_MEASURES = "TwoMeasures"
    TWO_ROTATION_POINTS = "TwoRotationPoints"
    TWO_FIXED_POINTS = "TwoFixedPoints"


@dataclass(frozen=True)
class Certificate:
    """Verdict plus the numeric evidence chain.

    seminorm_rate is the lower bound on lim ||g^n||/n in seminorm units;
    tau_lower_bound divides it by the generator constant C when a
    generating set was supplied, and equals it (per unit seminorm)
    otherwise.
    """

    verdict: Verdict
    mechanism: Mechanism
    tau_lower_bound: object
    seminorm_rate: object
    generator_constant: object  # C = max generator seminorm, or None
    evidence: dict = field(default_factory=dict)

    @property
    def undistorted(self) -> bool:
        return self.verdict is Verdict.UNDISTORTED


def _generator_constant(generators):
    """Max seminorm over a generating set (accepts a GenSet or an iterable)."""
    if generators is None:
        return None
    C = getattr(generators, "C", None)
    if C is not None:
        return C
    vals = [seminorm(s).value for s in generators]
    if not vals:
        return None
    return max(vals)


def _finish(verdict, mechanism, rate, generators, evidence):
    C = _generator_constant(generators)
    tau = None
    if verdict is Verdict.UNDISTORTED:
        tau = rate / C if C else rate
    evidence["generator_constant_C"] = C
    return Certificate(verdict, mechanism, tau, rate, C, evidence)


def q_value(x, y, g, n: int = 1):
    """q(g^n) = K(g^n)(y) - K(g^n)(x)."""
    prof_x = _b_profile(x, g, [n])
    prof_y = _b_profile(y, g, [n])
    # q = K(y) - K(x) = b_x - b_y with the b sign convention
    return prof_x[n] - prof_y[n]


class Quasimorphism:
    """q on the cyclic group of g, with cached power values."""

    def __init__(self, x, y, g):
        self.space = g.space
        self.x = self.space.validate_point(x)
        self.y = self.space.validate_point(y)
        self.g = g
        self._cache = {0: 0}

    def values(self, exponents) -> dict:
        missing = [n for n in exponents if n not in self._cache]
        if missing:
            bx = _b_profile(self.x, self.g, missing)
            by = _b_profile(self.y, self.g, missing)
            for n in missing:
                self._cache[n] = bx[n] - by[n]
        return {n: self._cache[n] for n in exponents}

    def value(self, n: int):
        return self.values([n])[n]

    def defect_bound(self, table_range: int = 16):
        return defect_estimate(self.x, self.y, self.g, table_range).g_table_bound

    def homogenised(self, budget: int = None):
        return homogenise(self, budget)[0]


@dataclass(frozen=True)
class DefectEstimate:
    sampled_defect: object
    g_table_bound: object  # sup|G_x| + sup|G_y| over the same exponent table
    table_range: int


def defect_estimate(x, y, g, table_range: int = 16) -> DefectEstimate:
    """Sampled defect max |q(g^m) - q(g^{m+n}) + q(g^n)| and its G-table bound.

    Exponents run over 1 <= |m|,|n| <= table_range - 1.  The pointwise
    identity q(f) - q(fg) + q(g) = G_x - G_y makes sampled <= bound
    automatic; the assertion guards the implementation, not the identity.
    """
    N = max(2, int(table_range))
    top = N - 1
    exps = [s * m for m in range(1, top + 1) for s in (1, -1)]
    needed = set(exps) | {m + n for m in exps for n in exps} | {0}
    bx = _b_profile(x, g, needed)
    by = _b_profile(y, g, needed)
    q = {n: bx[n] - by[n] for n in needed}
    sampled = max(abs(q[m] - q[m + n] + q[n]) for m in exps for n in exps)
    sup_gx = max(abs(bx[m] + bx[n] - bx[m + n]) for m in exps for n in exps)
    sup_gy = max(abs(by[m] + by[n] - by[m + n]) for m in exps for n in exps)
    bound = sup_gx + sup_gy
    assert sampled <= bound + 1e-9
    return DefectEstimate(sampled, bound, N)


def homogenise(q: Quasimorphism, budget: int = None):
    """lim q(g^n)/n via doubling differences; returns (value, residual_band)."""
    if budget is None:
        budget = 1_000_000 if q.g.has_closed_power else 2**14
    ns = _exponent_ladder(budget)
    values = q.values(ns)
    return estimate_linear_rate(values)


def _point_residual(space, a, b):
    a = space.validate_point(a)
    b = space.validate_point(b)
    worst = 0
    for i, (ca, cb) in enumerate(zip(a, b)):
        if i in space.circle_factors and not (
            space.kind.value == "circle_times_compactified_line" and i == 1
        ):
            d = circle_dist(ca, cb)
        elif ca == cb:  # covers oo == oo exactly
            d = 0
        elif not all(map(_finite, (ca, cb))):
            return float("inf")
        else:
            d = abs(ca - cb)
        worst = max(worst, d)
    return worst


def _finite(v):
    import math

    return math.isfinite(float(v))


def certify_two_rotation_points(
    x,
    y,
    g,
    budget: int = None,
    diagnostic_range: int = 64,
    generators=None,
    gap_tol: float = 1e-6,
) -> Certificate:
    """Certificate from two points with distinct local rotation numbers.

    Undistorted requires: bounded G-diagnostics at both points, a rotation
    gap above gap_tol that is stable across budgets N and 2N, and a
    homogenised |q| that the power sequence tracks over the last half of
    the budget.
    """
    space = g.space
    x = space.validate_point(x)
    y = space.validate_point(y)
    if budget is None:
        budget = 2**18 if g.has_closed_power else 2**13
    evidence = {"budget": budget, "gap_tolerance": gap_tol}

    diag_x = boundedness_diagnostic(x, g, diagnostic_range)
    diag_y = boundedness_diagnostic(y, g, diagnostic_range)
    evidence["bounded_verdict_x"] = diag_x.verdict.value
    evidence["bounded_verdict_y"] = diag_y.verdict.value
    evidence["g_table_sup_x"] = diag_x.sup
    evidence["g_table_sup_y"] = diag_y.sup
    if (
        diag_x.verdict is not BoundedVerdict.BOUNDED
        or diag_y.verdict is not BoundedVerdict.BOUNDED
    ):
        evidence["reason"] = "boundedness diagnostic failed"
        return _finish(Verdict.INCONCLUSIVE, Mechanism.TWO_ROTATION_POINTS, None, generators, evidence)

    gaps = []
    for b in (budget, 2 * budget):
        rx = local_rotation_number(x, g, b, diagnostic_range)
        ry = local_rotation_number(y, g, b, diagnostic_range)
        gaps.append(circle_dist(rx.rot, ry.rot))
    evidence["rot_x"] = rx.rot
    evidence["rot_y"] = ry.rot
    evidence["rotation_gap"] = gaps[1]
    evidence["rotation_gap_half_budget"] = gaps[0]
    if gaps[1] <= gap_tol or abs(gaps[1] - gaps[0]) > gap_tol:
        evidence["reason"] = "rotation gap below tolerance or unstable"
        return _finish(Verdict.INCONCLUSIVE, Mechanism.TWO_ROTATION_POINTS, None, generators, evidence)

    q = Quasimorphism(x, y, g)
    qhat, band = homogenise(q, 2 * budget)
    evidence["q_homogenised"] = qhat
    evidence["q_residual_band"] = band
    rate = abs(qhat)
    if rate <= 1e-12:
        evidence["reason"] = "homogenised quasimorphism vanishes"
        return _finish(Verdict.INCONCLUSIVE, Mechanism.TWO_ROTATION_POINTS, None, generators, evidence)

    # finite soundness surrogate: |q(g^n)|/n tracks the rate over the tail
    tail = [n for n in _exponent_ladder(2 * budget) if n >= budget]
    vals = q.values(tail)
    tracking = min(abs(vals[n]) / n for n in tail)
    evidence["tail_rate_min"] = tracking
    if float(tracking) < float(rate) * (1 - 1e-3):
        evidence["reason"] = "power sequence does not track the homogenised value"
        return _finish(Verdict.INCONCLUSIVE, Mechanism.TWO_ROTATION_POINTS, None, generators, evidence)

    return _finish(Verdict.UNDISTORTED, Mechanism.TWO_ROTATION_POINTS, rate, generators, evidence)


def certify_two_fixed_points(
    x, y, g, path: Polyline = None, generators=None, fixed_tol: float = 1e-12
) -> Certificate:
    """Two-fixed-point certificate: nonzero pairing with g(path) - path.

    The pairing equals K(g)(y) - K(g)(x) and is an integer for fixed points
    of a map preserving an integral class; the path argument (default: the
    straight segment) only documents the cycle, the value is path-free.
    """
    space = g.space
    x = space.validate_point(x)
    y = space.validate_point(y)
    rx = _point_residual(space, g.apply(x), x)
    ry = _point_residual(space, g.apply(y), y)
    if rx > fixed_tol or ry > fixed_tol:
        raise PreconditionError(
            f"points are not fixed by {g.describe()} (residuals {rx}, {ry})"
        )
    if path is None:
        path = Polyline.straight(space, x, y)
    if path.space != space:
        raise SpaceMismatchError("path lives on a different space")
    if (
        _point_residual(space, path.vertices[0], x) > 1e-9
        or _point_residual(space, path.vertices[-1], y) > 1e-9
    ):
        raise PreconditionError("path endpoints must be x and y")

    raw = k_eval(g, y) - k_eval(g, x)
    pairing = round(raw)
    evidence = {
        "pairing_raw": raw,
        "pairing": pairing,
        "integer_residual": abs(raw - pairing),
        "fixed_point_residuals": (rx, ry),
        "path_vertices": path.vertices,
    }
    if abs(raw - pairing) > 1e-9:
        evidence["reason"] = "pairing is not an integer at tolerance"
        return _finish(Verdict.INCONCLUSIVE, Mechanism.TWO_FIXED_POINTS, None, generators, evidence)
    if pairing == 0:
        evidence["reason"] = "pairing vanishes"
        return _finish(Verdict.INCONCLUSIVE, Mechanism.TWO_FIXED_POINTS, None, generators, evidence)
    return _finish(Verdict.UNDISTORTED, Mechanism.TWO_FIXED_POINTS, abs(pairing), generators, evidence)
