"""Invariant-measure surrogates and the Nielsen-equivalence machinery.

Three measure kinds cover the applications: atoms, uniform measures on
named invariant circles, and empirical orbit averages.  The key quantity
is the integral of K(g); two invariant measures with different integrals
certify the map undistorted, with translation length at least the gap per
generator seminorm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cocycle import k_eval, k_power_eval
from .errors import DomainError, PreconditionError, SpaceMismatchError
from .homeo import Homeo
from .quasi import Certificate, Mechanism, Verdict, _finish
from .spaces import INF, Space, SpaceKind
from .util import wrap


@dataclass(frozen=True)
class NamedCircle:
    """An invariant circle referenced by name.

    Names: "boundary:0" / "boundary:1" / "core:<r>" (annulus), "infinity"
    (compactified-line torus), "s2:<c>" (torus), "full" (the circle space
    itself).  The circle is parameterized by the first angular coordinate.
    """

    space: Space
    label: str

    def __post_init__(self):
        self._embed  # validate eagerly

    @property
    def _embed(self):
        kind = self.space.kind
        label = self.label
        if label == "full" and kind is SpaceKind.CIRCLE:
            return lambda u: (u,)
        if kind is SpaceKind.ANNULUS:
            if label == "boundary:0":
                return lambda u: (u, Fraction(0))
            if label == "boundary:1":
                return lambda u: (u, Fraction(1))
            if label.startswith("core:"):
                r = Fraction(label.split(":", 1)[1])
                return lambda u: (u, r)
        if kind is SpaceKind.CIRCLE_X_COMPLINE and label == "infinity":
            return lambda u: (u, INF)
        if kind is SpaceKind.TORUS2 and label.startswith("s2:"):
            c = Fraction(self.label.split(":", 1)[1])
            return lambda u: (u, wrap(c))
        raise DomainError(f"unknown circle {label!r} on {kind.value}")

    def embed(self, u):
        return self.space.validate_point(self._embed(u))

    @property
    def pairing(self) -> int:
        """Pairing of the class with the circle (all named circles are
        first-factor loops)."""
        return self.space.pairing[0]

    def invariance_residual(self, g: Homeo, samples: int = 64):
        """Max distance of g(circle point) from the circle."""
        worst = 0
        for i in range(samples):
            p = self.embed(Fraction(i, samples))
            q = g.apply(p)
            ref = self.embed(q[0])
            if len(p) == 1:
                continue  # the whole circle space
            a, b = q[1], ref[1]
            if a == b:
                continue
            if not (math.isfinite(float(a)) and math.isfinite(float(b))):
                return math.inf
            worst = max(worst, abs(a - b))
        return worst

    def induced_displacement(self, g: Homeo, u):
        """Lift displacement of the induced circle map at parameter u."""
        return g.factor_displacements(self.embed(u))[0]


class Measure:
    """Base class; subclasses provide integrate(fn) and invariance_defect(g)."""

    space: Space

    def integrate(self, fn):
        raise NotImplementedError

    def invariance_defect(self, g: Homeo):
        raise NotImplementedError

    def describe(self) -> str:
        return type(self).__name__


class AtomicMeasure(Measure):
    def __init__(self, space: Space, points, weights=None):
        self.space = space
        self.points = tuple(space.validate_point(p) for p in points)
        if weights is None:
            weights = [Fraction(1, len(self.points))] * len(self.points)
        self.weights = tuple(weights)
        if len(self.weights) != len(self.points):
            raise DomainError("one weight per atom")
        if any(w < 0 for w in self.weights):
            raise DomainError("weights must be nonnegative")
        if abs(sum(self.weights) - 1) > 1e-12:
            raise DomainError("weights must sum to 1")

    def integrate(self, fn):
        total = 0
        for p, w in zip(self.points, self.weights):
            total = total + w * fn(p)
        return total

    def invariance_defect(self, g: Homeo):
        """Transport residual: each atom must map onto an atom of equal weight."""
        from .quasi import _point_residual

        worst = 0
        for p, w in zip(self.points, self.weights):
            img = g.apply(p)
            best = math.inf
            for q, w2 in zip(self.points, self.weights):
                if abs(w2 - w) <= 1e-12:
                    best = min(best, _point_residual(self.space, img, q))
            worst = max(worst, best)
        return worst

    def describe(self):
        return f"atomic({len(self.points)} atoms)"


class CircleUniformMeasure(Measure):
    """Uniform measure (in the angle parameterization) on a named circle."""

    def __init__(self, circle: NamedCircle, resolution: int = 1024):
        self.space = circle.space
        self.circle = circle
        self.resolution = int(resolution)

    def integrate(self, fn):
        n = self.resolution
        total = 0
        for i in range(n):
            total = total + fn(self.circle.embed(Fraction(2 * i + 1, 2 * n)))
        return total / n

    def invariance_defect(self, g: Homeo):
        # invariant when the restriction is a rigid rotation of the circle
        res = self.circle.invariance_residual(g)
        disps = [
            float(self.circle.induced_displacement(g, Fraction(i, 16)))
            for i in range(16)
        ]
        return max(float(res), max(disps) - min(disps))

    def describe(self):
        return f"circle({self.circle.label})"


class EmpiricalMeasure(Measure):
    """Orbit average (1/N) sum of point masses along g^k(start)."""

    def __init__(self, space: Space, start, g: Homeo, length: int):
        self.space = space
        self.start = space.validate_point(start)
        self.g = g
        self.length = int(length)
        if self.length < 1:
            raise DomainError("orbit length must be positive")
        pts = []
        p = tuple(float(c) if c != INF else INF for c in self.start)
        for _ in range(self.length):
            pts.append(p)
            p = g.apply(p)
        self.points = tuple(pts)
        self._endpoint = p

    def integrate(self, fn):
        total = 0
        for p in self.points:
            total = total + fn(p)
        return total / self.length

    def invariance_defect(self, g: Homeo):
        """2 sup|K(g)| / N, the push-forward discrepancy for f = K(g)."""
        sup = max(abs(float(g.k_displacement(p))) for p in self.points)
        sup = max(sup, abs(float(g.k_displacement(self._endpoint))))
        return 2 * sup / self.length

    def describe(self):
        return f"empirical(N={self.length})"


def integrate_k(mu: Measure, g: Homeo, potential=None):
    """Integral of K(g) against the measure.

    K is the canonical-potential representative; differences of integrals
    between measures are independent of that normalization.
    """
    if mu.space != g.space:
        raise SpaceMismatchError("measure and map live on different spaces")
    return mu.integrate(lambda p: k_eval(g, p, potential))


@dataclass(frozen=True)
class NielsenGap:
    gap: object
    tolerance: object
    equivalent: bool  # verdict at the tolerance
    defect_mu: object
    defect_nu: object


def nielsen_gap(mu: Measure, nu: Measure, g: Homeo, potential=None) -> NielsenGap:
    """|integral of K(g) d(mu - nu)| with an equivalence verdict.

    Tolerance is 1e-6 for exact measures, widened by ten times the
    invariance defects for empirical ones.
    """
    if mu.space != nu.space:
        raise SpaceMismatchError("measures live on different spaces")
    gap = abs(integrate_k(mu, g, potential) - integrate_k(nu, g, potential))
    dmu = mu.invariance_defect(g)
    dnu = nu.invariance_defect(g)
    tol = max(1e-6, 10 * (float(dmu) + float(dnu)))
    return NielsenGap(gap, tol, float(gap) <= tol, dmu, dnu)


def certify_two_measures(mu: Measure, nu: Measure, g: Homeo, generators=None) -> Certificate:
    """Two-measure certificate: a Nielsen gap bounds the translation length.

    The integration functional is one-Lipschitz for the seminorm and linear
    on powers, so tau >= gap / C.
    """
    result = nielsen_gap(mu, nu, g)
    evidence = {
        "gap": result.gap,
        "tolerance": result.tolerance,
        "defect_mu": result.defect_mu,
        "defect_nu": result.defect_nu,
        "measure_mu": mu.describe(),
        "measure_nu": nu.describe(),
    }
    if result.equivalent:
        evidence["reason"] = "gap within tolerance (measures Nielsen equivalent at this precision)"
        return _finish(Verdict.INCONCLUSIVE, Mechanism.TWO_MEASURES, None, generators, evidence)
    # homomorphism-on-powers spot check (finite surrogate of the estimate chain)
    base = integrate_k(mu, g) - integrate_k(nu, g)
    worst = 0
    for n in (2, 4):
        val = mu.integrate(lambda p: k_power_eval(g, p, n)) - nu.integrate(
            lambda p: k_power_eval(g, p, n)
        )
        worst = max(worst, abs(float(val - n * base)))
    evidence["power_linearity_residual"] = worst
    return _finish(Verdict.UNDISTORTED, Mechanism.TWO_MEASURES, result.gap, generators, evidence)


@dataclass(frozen=True)
class SccEstimate:
    rotation_number: object  # classical rotation number of g on the circle
    error_heuristic: float
    pairing: int
    product: object  # rotation number times the loop pairing


def scc_rotation_integral(circle: NamedCircle, g: Homeo, budget: int = 10**4) -> SccEstimate:
    """Classical rotation number of g on an invariant circle, times pairing.

    Standard monotone-lift estimate: average displacement along the induced
    orbit, error heuristic 1/budget.  Precondition: the circle is invariant.
    """
    if circle.space != g.space:
        raise SpaceMismatchError("circle and map live on different spaces")
    res = circle.invariance_residual(g)
    if float(res) > 1e-9:
        raise PreconditionError(
            f"circle {circle.label!r} is not invariant (residual {res})"
        )
    n = int(budget)
    u = Fraction(0)
    total = 0
    exact = True
    for _ in range(n):
        d = circle.induced_displacement(g, u)
        total = total + d
        u = wrap(u + d)
        if not isinstance(u, Fraction):
            exact = False
            u = float(u)
    rho = total / n
    if not exact:
        rho = float(rho)
    return SccEstimate(rho, 1.0 / n, circle.pairing, rho * circle.pairing)


@dataclass(frozen=True)
class RationalityReport:
    found: bool
    k1: int | None
    k2: int | None
    residual: object
    note: str


def _convergents(value, max_q):
    """Continued-fraction convergents (p, q) of value with q <= max_q."""
    frac = Fraction(value)
    h0, h1 = 1, math.floor(frac)
    k0, k1 = 0, 1
    out = [(h1, k1)]
    rest = frac - h1
    while rest != 0 and k1 <= max_q:
        frac = 1 / rest
        a = math.floor(frac)
        rest = frac - a
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        out.append((h1, k1))
    return [(p, q) for p, q in out if 0 < q <= max_q]


def rationality_check(rho1, pairing1, rho2, pairing2, max_k: int = 64, tol: float = 1e-9) -> RationalityReport:
    """Search for nonzero integers with k1 rho1 = k2 rho2, k's up to max_k.

    A diagnostic via continued-fraction reconstruction of rho2/rho1, not a
    proof; inputs are real representatives of the rotation numbers.
    """
    note = ""
    if pairing1 == 0 or pairing2 == 0:
        note = "warning: a loop pairing is zero; the relation statement assumes both nonzero"
    if rho1 == 0 and rho2 == 0:
        return RationalityReport(True, 1, 1, 0, note)
    if rho1 == 0 or rho2 == 0:
        return RationalityReport(False, None, None, None, note or "one rotation number is zero")
    ratio = Fraction(rho2) / Fraction(rho1)
    best = None
    for p, q in _convergents(ratio, max_k):
        if p == 0 or abs(p) > max_k:
            continue
        residual = abs(p * Fraction(rho1) - q * Fraction(rho2))
        if float(residual) <= tol and (best is None or residual < best[2]):
            best = (p, q, residual)
    if best is None:
        return RationalityReport(False, None, None, None, note or f"no relation found with k <= {max_k} at tolerance {tol}")
    p, q, residual = best
    if q < 0:
        p, q = -p, -q
    return RationalityReport(True, p, q, residual, note)
