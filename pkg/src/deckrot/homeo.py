"""Homeomorphisms preserving the class, represented by equivariant lifts.

Every map knows its action on base points and, per angular factor, the
continuous-lift displacement of that factor.  The displacement against the
class, sum(pairing[i] * factor_displacement[i]), is exactly the value of
the coboundary function K at the point, so the lift to the cyclic cover is

    lift(b, h) = (g(b), h + K(g)(b) + phi(b) - phi(g(b)))

which is deck-equivariant by construction.

Built-in families:

  Identity          -- any space
  RigidRotation     -- circle, lift s -> s + shift
  PLCircleMap       -- circle, exact rational piecewise-linear
  GradientTimeOne   -- circle, s -> s + a sin(2 pi s); north-south map
                       fixing 0 and 1/2 exactly
  AnnulusTwist      -- annulus, (s, r) -> (s + (1-r) rho0 + r rho1, r)
  TorusShear        -- R/Z x (R u {oo}), (t, x) -> (t + |x+n| - |x|, x + n),
                       fixing the oo circle pointwise
  CosineTwist       -- torus, (s1, s2) -> (s1 + a (1 - cos 2 pi s2)/2, s2);
                       fixes the circles s2 = 0 (always) and s2 = 1/2
                       (when a is an integer) pointwise
  NumericSampledMap -- displacement sampled on a grid, interpolated

Numeric parameters are exactified at construction (floats are dyadic
rationals), so family arithmetic and canonical forms are exact.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction

from .errors import (
    NonInvertibleError,
    SpaceMismatchError,
    UnsupportedFlavorError,
)
from .plmaps import PLMap
from .spaces import INF, CoverPoint, Space, SpaceKind, compline_angle
from .util import cospi, exactify, fmt, sinpi, wrap


class Flavor(enum.Enum):
    EXACT_PL = "exact_pl"
    CLOSED_FORM = "closed_form"
    NUMERIC_SAMPLED = "numeric_sampled"


class Homeo:
    """Base class; subclasses implement apply() and factor_displacements()."""

    flavor = Flavor.CLOSED_FORM
    has_closed_power = False
    lipschitz = None  # chart Lipschitz bound, when known

    def __init__(self, space: Space):
        self.space = space

    # -- required family surface ---------------------------------------
    def apply(self, base: tuple) -> tuple:
        raise NotImplementedError

    def factor_displacements(self, base: tuple) -> tuple:
        """Continuous-lift displacement of each angular factor at base."""
        raise NotImplementedError

    # -- derived operations ---------------------------------------------
    def k_displacement(self, base):
        """K(g) at base: pairing . factor displacements."""
        total = 0
        for k, d in zip(self.space.pairing, self.factor_displacements(base)):
            if k:
                total = total + k * d
        return total

    def lift(self, point: CoverPoint) -> CoverPoint:
        if point.space != self.space:
            raise SpaceMismatchError("point lives on a different space")
        image = self.apply(point.base)
        sheet = (
            point.sheet
            + self.k_displacement(point.base)
            + self.space.phi(point.base)
            - self.space.phi(image)
        )
        return CoverPoint(self.space, image, sheet)

    def inverse(self) -> "Homeo":
        raise NonInvertibleError(f"{self.describe()} has no inverse implementation")

    def _compose(self, other: "Homeo"):
        """Family-closed composition, or None to fall back to a lazy chain."""
        return None

    def _power(self, n: int):
        return None

    def canonical_key(self):
        """Exact hashable identity of the underlying map, or None."""
        return None

    def k_critical_points(self):
        """Base points where K(g) may attain its extremes (beyond the grid)."""
        return ()

    def describe(self) -> str:
        return type(self).__name__

    def __matmul__(self, other):
        return compose(self, other)

    def __pow__(self, n):
        return power(self, n)

    def __repr__(self):
        return f"<{self.describe()} on {self.space.kind.value}>"


class Identity(Homeo):
    has_closed_power = True
    lipschitz = 1.0

    def apply(self, base):
        return base

    def factor_displacements(self, base):
        return (Fraction(0),) * len(self.space.circle_factors)

    def inverse(self):
        return self

    def _compose(self, other):
        return other

    def _power(self, n):
        return self

    def canonical_key(self):
        return _identity_key(self.space)

    def describe(self):
        return "identity"


def _identity_key(space: Space):
    kind = space.kind
    if kind is SpaceKind.CIRCLE:
        return ("pl", ((Fraction(0), Fraction(0)),))
    if kind is SpaceKind.ANNULUS:
        return ("twist", Fraction(0), Fraction(0))
    if kind is SpaceKind.CIRCLE_X_COMPLINE:
        return ("shear", 0)
    return ("cosine", Fraction(0))


class RigidRotation(Homeo):
    """Rotation of the circle; the lift translates by the (exact) shift."""

    has_closed_power = True
    lipschitz = 1.0

    def __init__(self, space: Space, shift):
        if space.kind is not SpaceKind.CIRCLE:
            raise SpaceMismatchError("rigid rotations live on the circle")
        super().__init__(space)
        self.shift = exactify(shift)

    def apply(self, base):
        return (wrap(base[0] + self.shift),)

    def factor_displacements(self, base):
        return (self.shift,)

    def inverse(self):
        return RigidRotation(self.space, -self.shift)

    def _compose(self, other):
        if isinstance(other, RigidRotation):
            return RigidRotation(self.space, self.shift + other.shift)
        if isinstance(other, PLCircleMap):
            return PLCircleMap(self.space, self.as_pl().compose(other.pl))
        return None

    def _power(self, n):
        return RigidRotation(self.space, n * self.shift)

    def as_pl(self) -> PLMap:
        return PLMap.rotation(self.shift)

    def canonical_key(self):
        return ("pl", self.as_pl().canonical_data())

    def describe(self):
        return f"rigid_rotation({fmt(self.shift)})"


class PLCircleMap(Homeo):
    """Exact piecewise-linear circle homeomorphism (degree +1)."""

    flavor = Flavor.EXACT_PL

    def __init__(self, space: Space, pl: PLMap):
        if space.kind is not SpaceKind.CIRCLE:
            raise SpaceMismatchError("PL maps live on the circle")
        super().__init__(space)
        self.pl = pl

    @property
    def lipschitz(self):
        return float(self.pl.max_slope())

    def apply(self, base):
        return (wrap(self.pl.eval(base[0])),)

    def factor_displacements(self, base):
        return (self.pl.displacement(base[0]),)

    def inverse(self):
        return PLCircleMap(self.space, self.pl.invert())

    def _compose(self, other):
        if isinstance(other, PLCircleMap):
            return PLCircleMap(self.space, self.pl.compose(other.pl))
        if isinstance(other, RigidRotation):
            return PLCircleMap(self.space, self.pl.compose(other.as_pl()))
        return None

    def _power(self, n):
        # exact binary powering; data size grows with |n|, fine for small n
        if n < 0:
            return PLCircleMap(self.space, self.pl.invert())._power(-n)
        result = PLMap.identity()
        base = self.pl
        while n:
            if n & 1:
                result = base.compose(result)
            base = base.compose(base)
            n >>= 1
        return PLCircleMap(self.space, result)

    def canonical_key(self):
        return ("pl", self.pl.canonical_data())

    def k_critical_points(self):
        return tuple((s,) for s in self.pl.breakpoints())

    def describe(self):
        return f"pl_circle({len(self.pl.nodes)} nodes)"


class GradientTimeOne(Homeo):
    """Time-one map of a gradient flow on the circle: s -> s + a sin(2 pi s).

    Fixes 0 (repeller) and 1/2 (attractor for a > 0) exactly; |a| <= 0.15
    keeps the lift strictly increasing.
    """

    def __init__(self, space: Space, amplitude):
        if space.kind is not SpaceKind.CIRCLE:
            raise SpaceMismatchError("gradient maps live on the circle")
        super().__init__(space)
        amplitude = exactify(amplitude)
        if abs(amplitude) > Fraction(15, 100):
            raise ValueError("amplitude must satisfy |a| <= 0.15 for monotonicity")
        self.amplitude = amplitude

    @property
    def lipschitz(self):
        return 1.0 + 2 * math.pi * abs(float(self.amplitude))

    def apply(self, base):
        return (wrap(base[0] + self.amplitude * sinpi(2 * base[0])),)

    def factor_displacements(self, base):
        return (self.amplitude * sinpi(2 * base[0]),)

    def inverse(self):
        return MonotoneCircleInverse(self, max_displacement=abs(float(self.amplitude)))

    def k_critical_points(self):
        # K = a sin(2 pi s) peaks exactly at the quarter points
        return ((Fraction(1, 4),), (Fraction(3, 4),))

    def describe(self):
        return f"gradient_time_one({fmt(self.amplitude)})"


class MonotoneCircleInverse(Homeo):
    """Inverse of a monotone circle map, evaluated by bisection on the lift."""

    def __init__(self, forward: Homeo, max_displacement: float):
        super().__init__(forward.space)
        self.forward = forward
        self.max_displacement = max_displacement

    def _solve(self, s):
        """t with t + disp_fwd(t) = s, to float precision."""
        fwd = self.forward
        pad = self.max_displacement + 1e-9

        def lift(t):
            return t + fwd.factor_displacements((wrap(t),))[0]

        lo, hi = float(s) - pad, float(s) + pad
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if lift(mid) < s:
                lo = mid
            else:
                hi = mid
            if hi - lo < 1e-16:
                break
        return 0.5 * (lo + hi)

    def apply(self, base):
        return (wrap(self._solve(base[0])),)

    def factor_displacements(self, base):
        return (self._solve(base[0]) - base[0],)

    def inverse(self):
        return self.forward

    def k_critical_points(self):
        # K(g^{-1}) = -K(g) o g^{-1}: extremes at forward images of g's extremes
        return tuple(self.forward.apply(p) for p in self.forward.k_critical_points())

    def describe(self):
        return f"inverse({self.forward.describe()})"


class AnnulusTwist(Homeo):
    """Linear twist of the annulus, boundary rotation numbers rho0 and rho1."""

    has_closed_power = True

    def __init__(self, space: Space, rho0, rho1):
        if space.kind is not SpaceKind.ANNULUS:
            raise SpaceMismatchError("twists live on the annulus")
        super().__init__(space)
        self.rho0 = exactify(rho0)
        self.rho1 = exactify(rho1)

    @property
    def lipschitz(self):
        return 1.0 + abs(float(self.rho1 - self.rho0))

    def _profile(self, r):
        return self.rho0 + r * (self.rho1 - self.rho0)

    def apply(self, base):
        s, r = base
        return (wrap(s + self._profile(r)), r)

    def factor_displacements(self, base):
        return (self._profile(base[1]),)

    def inverse(self):
        return AnnulusTwist(self.space, -self.rho0, -self.rho1)

    def _compose(self, other):
        if isinstance(other, AnnulusTwist):
            return AnnulusTwist(
                self.space, self.rho0 + other.rho0, self.rho1 + other.rho1
            )
        return None

    def _power(self, n):
        return AnnulusTwist(self.space, n * self.rho0, n * self.rho1)

    def canonical_key(self):
        return ("twist", wrap(self.rho0), self.rho1 - self.rho0)

    def describe(self):
        return f"annulus_twist({fmt(self.rho0)}, {fmt(self.rho1)})"


class TorusShear(Homeo):
    """The shear (t, x) -> (t + |x+n| - |x|, x + n) on R/Z x (R u {oo}).

    The lift fixes the oo circle pointwise; K(g^n) = |x+n| - |x| there
    evaluates to 0.  Powers and inverses stay in the family.
    """

    has_closed_power = True

    def __init__(self, space: Space, n: int = 1):
        if space.kind is not SpaceKind.CIRCLE_X_COMPLINE:
            raise SpaceMismatchError("the shear lives on R/Z x (R u {oo})")
        super().__init__(space)
        self.n = int(n)

    @property
    def lipschitz(self):
        return 1.0 + 2.0 * (1 + abs(self.n)) ** 2

    def apply(self, base):
        t, x = base
        if x == INF:
            return (t, INF)
        return (wrap(t + abs(x + self.n) - abs(x)), x + self.n)

    def factor_displacements(self, base):
        t, x = base
        if x == INF:
            return (0, 0)
        return (
            abs(x + self.n) - abs(x),
            compline_angle(x + self.n) - compline_angle(x),
        )

    def inverse(self):
        return TorusShear(self.space, -self.n)

    def _compose(self, other):
        if isinstance(other, TorusShear):
            return TorusShear(self.space, self.n + other.n)
        return None

    def _power(self, m):
        return TorusShear(self.space, m * self.n)

    def canonical_key(self):
        return ("shear", self.n)

    def describe(self):
        return f"torus_shear({self.n})"


class CosineTwist(Homeo):
    """(s1, s2) -> (s1 + a (1 - cos 2 pi s2)/2, s2) on the torus.

    Fixes the circle s2 = 0 pointwise; for integer a also fixes s2 = 1/2
    pointwise while winding paths between the two circles once per unit of
    a, which is the two-fixed-point certificate situation.
    """

    has_closed_power = True

    def __init__(self, space: Space, amplitude):
        if space.kind is not SpaceKind.TORUS2:
            raise SpaceMismatchError("cosine twists live on the torus")
        super().__init__(space)
        self.amplitude = exactify(amplitude)

    @property
    def lipschitz(self):
        return 1.0 + math.pi * abs(float(self.amplitude))

    def _profile(self, s2):
        return self.amplitude * (1 - cospi(2 * s2)) / 2

    def apply(self, base):
        s1, s2 = base
        return (wrap(s1 + self._profile(s2)), s2)

    def factor_displacements(self, base):
        return (self._profile(base[1]), 0)

    def inverse(self):
        return CosineTwist(self.space, -self.amplitude)

    def _compose(self, other):
        if isinstance(other, CosineTwist):
            return CosineTwist(self.space, self.amplitude + other.amplitude)
        return None

    def _power(self, n):
        return CosineTwist(self.space, n * self.amplitude)

    def canonical_key(self):
        return ("cosine", self.amplitude)

    def describe(self):
        return f"cosine_twist({fmt(self.amplitude)})"


class NumericSampledMap(Homeo):
    """Lift displacements sampled on a regular chart grid, interpolated.

    Excluded from group enumeration (no reliable equality test) and not
    invertible.  Supported on the circle, annulus and torus; the chart
    coordinates are the angles plus, for the annulus, the radial coordinate.
    """

    flavor = Flavor.NUMERIC_SAMPLED

    def __init__(self, space: Space, resolution: int, tables, r_table=None, lipschitz=None):
        if space.kind is SpaceKind.CIRCLE_X_COMPLINE:
            raise UnsupportedFlavorError("sampling near oo is not supported")
        super().__init__(space)
        self.resolution = int(resolution)
        self.tables = tables  # per angular factor: nested float lists
        self.r_table = r_table  # annulus only: sampled image of r
        self.lipschitz = lipschitz

    @staticmethod
    def from_homeo(g: Homeo, resolution: int) -> "NumericSampledMap":
        space = g.space
        n = int(resolution)
        axes = NumericSampledMap._axes(space, n)

        def sample(fn):
            if len(axes) == 1:
                return [float(fn((a,))) for a in axes[0]]
            return [[float(fn((a, b))) for b in axes[1]] for a in axes[0]]

        nf = len(space.circle_factors)
        tables = [sample(lambda p, i=i: g.factor_displacements(p)[i]) for i in range(nf)]
        r_table = None
        if space.kind is SpaceKind.ANNULUS:
            r_table = sample(lambda p: g.apply(p)[1])
        return NumericSampledMap(space, n, tables, r_table, lipschitz=g.lipschitz)

    @staticmethod
    def _axes(space, n):
        if space.kind is SpaceKind.CIRCLE:
            return [[i / n for i in range(n)]]
        if space.kind is SpaceKind.ANNULUS:
            return [[i / n for i in range(n)], [j / n for j in range(n + 1)]]
        return [[i / n for i in range(n)], [j / n for j in range(n)]]

    def _interp(self, table, base):
        n = self.resolution
        space = self.space

        def axis_locate(coord, periodic):
            t = float(coord) * n
            if periodic:
                i0 = math.floor(t) % n
                return i0, (i0 + 1) % n, t - math.floor(t)
            i0 = min(max(int(math.floor(t)), 0), n - 1)
            return i0, i0 + 1, t - i0

        if space.kind is SpaceKind.CIRCLE:
            i0, i1, f = axis_locate(wrap(base[0]), True)
            return (1 - f) * table[i0] + f * table[i1]
        periodic1 = space.kind is SpaceKind.TORUS2
        i0, i1, fi = axis_locate(wrap(base[0]), True)
        c1 = wrap(base[1]) if periodic1 else base[1]
        j0, j1, fj = axis_locate(c1, periodic1)
        return (
            (1 - fi) * (1 - fj) * table[i0][j0]
            + (1 - fi) * fj * table[i0][j1]
            + fi * (1 - fj) * table[i1][j0]
            + fi * fj * table[i1][j1]
        )

    def factor_displacements(self, base):
        return tuple(self._interp(t, base) for t in self.tables)

    def apply(self, base):
        disp = self.factor_displacements(base)
        coords = list(base)
        coords[0] = wrap(float(base[0]) + disp[0])
        if self.space.kind is SpaceKind.TORUS2:
            coords[1] = wrap(float(base[1]) + disp[1])
        elif self.space.kind is SpaceKind.ANNULUS:
            coords[1] = min(max(self._interp(self.r_table, base), 0.0), 1.0)
        return tuple(coords)

    def inverse(self):
        raise NonInvertibleError("numeric sampled maps are not invertible")

    def describe(self):
        return f"numeric_sampled(resolution={self.resolution})"


class Composition(Homeo):
    """Lazy composition chain, applied right to left."""

    def __init__(self, space: Space, chain):
        super().__init__(space)
        flat = []
        for m in chain:
            if isinstance(m, Composition):
                flat.extend(m.chain)
            elif not isinstance(m, Identity):
                flat.append(m)
        self.chain = tuple(flat) or (Identity(space),)
        if any(m.flavor is Flavor.NUMERIC_SAMPLED for m in self.chain):
            self.flavor = Flavor.NUMERIC_SAMPLED

    @property
    def lipschitz(self):
        out = 1.0
        for m in self.chain:
            if m.lipschitz is None:
                return None
            out *= m.lipschitz
        return out

    def apply(self, base):
        for m in reversed(self.chain):
            base = m.apply(base)
        return base

    def factor_displacements(self, base):
        total = [0] * len(self.space.circle_factors)
        for m in reversed(self.chain):
            for i, d in enumerate(m.factor_displacements(base)):
                total[i] = total[i] + d
            base = m.apply(base)
        return tuple(total)

    def inverse(self):
        return Composition(self.space, [m.inverse() for m in reversed(self.chain)])

    def describe(self):
        return " . ".join(m.describe() for m in self.chain)


class IteratedMap(Homeo):
    """Lazy n-th power of a map without closed-form powers; O(1) memory."""

    def __init__(self, base_map: Homeo, n: int):
        super().__init__(base_map.space)
        if n < 0:
            base_map = base_map.inverse()
            n = -n
        self.base_map = base_map
        self.n = int(n)
        self.flavor = base_map.flavor

    @property
    def lipschitz(self):
        if self.base_map.lipschitz is None:
            return None
        return self.base_map.lipschitz ** self.n

    def apply(self, base):
        for _ in range(self.n):
            base = self.base_map.apply(base)
        return base

    def factor_displacements(self, base):
        total = [0] * len(self.space.circle_factors)
        for _ in range(self.n):
            for i, d in enumerate(self.base_map.factor_displacements(base)):
                total[i] = total[i] + d
            base = self.base_map.apply(base)
        return tuple(total)

    def inverse(self):
        return IteratedMap(self.base_map.inverse(), self.n)

    def _power(self, m):
        return IteratedMap(self.base_map, self.n * m) if m >= 0 else None

    def describe(self):
        return f"({self.base_map.describe()})^{self.n}"


# -- module-level group operations --------------------------------------


def compose(g: Homeo, h: Homeo) -> Homeo:
    """g after h.  Stays in-family where the family is closed."""
    if g.space != h.space:
        raise SpaceMismatchError(
            f"cannot compose maps on {g.space.kind.value} and {h.space.kind.value}"
        )
    if isinstance(g, Identity):
        return h
    if isinstance(h, Identity):
        return g
    out = g._compose(h)
    return out if out is not None else Composition(g.space, [g, h])


def inverse(g: Homeo) -> Homeo:
    if g.flavor is Flavor.NUMERIC_SAMPLED:
        raise NonInvertibleError("numeric sampled maps are not invertible")
    return g.inverse()


def power(g: Homeo, n: int) -> Homeo:
    """g^n; exact closed form when the family has one."""
    n = int(n)
    if n == 0:
        return Identity(g.space)
    out = g._power(n)
    if out is not None:
        return out
    return IteratedMap(g, n)


def identity(space: Space) -> Homeo:
    return Identity(space)


# -- sample-based verifiers ----------------------------------------------


def equivariance_residual(g: Homeo, samples: int = 1000, rng=None):
    """Max |F(lift(b, h+k)) - F(lift(b, h)) - k| over random samples."""
    import random as _random

    rng = rng or _random.Random(0)
    space = g.space
    from .spaces import built_in_potential

    F = built_in_potential(space)
    worst = 0
    for _ in range(samples):
        base = space.sample_point(rng, allow_infinity=True)
        h = rng.uniform(-2.0, 2.0)
        ref = F.eval(g.lift(CoverPoint(space, base, h)))
        for k in (-3, -1, 1, 2, 3):
            val = F.eval(g.lift(CoverPoint(space, base, h + k)))
            res = abs(val - ref - k)
            if res > worst:
                worst = res
    return worst


def class_pairing_residual(g: Homeo):
    """Exact check that the lift realizes the declared pairing on basis loops.

    For each basis loop, the lifted endpoints differ by the deck translation
    by the loop's pairing; their images under the lift must do the same.
    Integer-exact for exact families.
    """
    space = g.space
    from .spaces import built_in_potential

    F = built_in_potential(space)
    worst = 0
    for k, loop in zip(space.pairing, space.basis_loops()):
        start = CoverPoint(space, loop.vertices[0], Fraction(0))
        end = start.deck(k)
        res = abs((F.eval(g.lift(end)) - F.eval(g.lift(start))) - k)
        if res > worst:
            worst = res
    return worst
