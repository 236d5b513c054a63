"""Base spaces, integral degree-one classes, cyclic covers and potentials.

Supported spaces are the circle R/Z, the closed annulus R/Z x [0,1], the
torus (R/Z)^2 and the torus presented as R/Z x (R u {oo}).  A space carries
an integral pairing vector: the value of the chosen degree-one class on a
fixed basis of loops (one loop per angular coordinate).

The cyclic cover associated with the class is modelled as pairs
(base point, sheet) with sheet a real number; the deck group Z acts by
sheet translation.  The canonical potential is F(base, h) = phi(base) + h
where phi sums pairing[i] * angle_i(base) over the angular coordinates,
so F is exactly deck-equivariant by construction.

Paths are finite polylines with a declared winding per segment (integers,
one per angular coordinate).  Path integrals of closed one-cocycles then
depend only on vertex data and windings, which keeps them exact for
rational inputs.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import ClassMismatchError, DomainError, SpaceMismatchError
from .util import wrap

INF = math.inf


class SpaceKind(enum.Enum):
    CIRCLE = "circle"
    ANNULUS = "annulus"
    TORUS2 = "torus2"
    CIRCLE_X_COMPLINE = "circle_times_compactified_line"


# coordinate count and indices of angular coordinates, per kind
_N_COORDS = {
    SpaceKind.CIRCLE: 1,
    SpaceKind.ANNULUS: 2,
    SpaceKind.TORUS2: 2,
    SpaceKind.CIRCLE_X_COMPLINE: 2,
}
_CIRCLE_FACTORS = {
    SpaceKind.CIRCLE: (0,),
    SpaceKind.ANNULUS: (0,),
    SpaceKind.TORUS2: (0, 1),
    SpaceKind.CIRCLE_X_COMPLINE: (0, 1),
}


def compline_chart(x):
    """Chart u = x/(1+|x|) mapping R onto (-1,1); oo is the glued point u=+-1."""
    if x == INF:
        return 1
    if not isinstance(x, float):
        x = Fraction(x)
    return x / (1 + abs(x))


def compline_unchart(u):
    """Inverse of compline_chart on (-1,1)."""
    if abs(u) >= 1:
        return INF
    if not isinstance(u, float):
        u = Fraction(u)
    return u / (1 - abs(u))


def compline_angle(x):
    """Angle coordinate of the compactified line, with the seam at oo.

    theta = (u+1)/2 maps R onto (0,1); theta(oo) = 0.  A path crossing oo in
    the positive x direction winds the second circle factor once.

    Exact for int/Fraction inputs.
    """
    if x == INF:
        return 0
    u = compline_chart(x)
    return (u + 1) / 2


@dataclass(frozen=True)
class Space:
    """A supported base space with an integral degree-one class."""

    kind: SpaceKind
    pairing: tuple

    def __post_init__(self):
        expected = len(_CIRCLE_FACTORS[self.kind])
        pairing = tuple(int(p) for p in self.pairing)
        if len(pairing) != expected:
            raise ValueError(
                f"{self.kind.value} needs a pairing vector of length {expected}"
            )
        object.__setattr__(self, "pairing", pairing)

    # -- constructors -------------------------------------------------
    @staticmethod
    def circle(pairing=(1,)):
        return Space(SpaceKind.CIRCLE, tuple(pairing))

    @staticmethod
    def annulus(pairing=(1,)):
        return Space(SpaceKind.ANNULUS, tuple(pairing))

    @staticmethod
    def torus2(pairing=(1, 0)):
        return Space(SpaceKind.TORUS2, tuple(pairing))

    @staticmethod
    def circle_compline(pairing=(1, 0)):
        return Space(SpaceKind.CIRCLE_X_COMPLINE, tuple(pairing))

    # -- geometry ------------------------------------------------------
    @property
    def n_coords(self):
        return _N_COORDS[self.kind]

    @property
    def circle_factors(self):
        return _CIRCLE_FACTORS[self.kind]

    @property
    def basepoint(self):
        return (Fraction(0),) * self.n_coords

    def validate_point(self, base) -> tuple:
        """Normalize a base point: wrap angular coordinates, check ranges."""
        base = tuple(base)
        if len(base) != self.n_coords:
            raise DomainError(f"expected {self.n_coords} coordinates, got {base}")
        coords = list(base)
        for i in self.circle_factors:
            if self.kind is SpaceKind.CIRCLE_X_COMPLINE and i == 1:
                continue  # extended-line coordinate, not an angle
            coords[i] = wrap(coords[i])
        if self.kind is SpaceKind.ANNULUS:
            r = coords[1]
            if not (0 <= r <= 1):
                raise DomainError(f"annulus coordinate r={r} outside [0,1]")
        if self.kind is SpaceKind.CIRCLE_X_COMPLINE:
            x = coords[1]
            if x == -INF:
                coords[1] = INF
            elif x != INF and not math.isfinite(float(x)):
                raise DomainError(f"bad extended-line coordinate {x}")
        return tuple(coords)

    def angles(self, base) -> tuple:
        """Angle in [0,1) of each angular coordinate (exact for rationals)."""
        out = []
        for i in self.circle_factors:
            if self.kind is SpaceKind.CIRCLE_X_COMPLINE and i == 1:
                out.append(compline_angle(base[1]))
            else:
                out.append(wrap(base[i]))
        return tuple(out)

    def phi(self, base):
        """Canonical potential in base coordinates: pairing . angles."""
        total = 0
        for k, a in zip(self.pairing, self.angles(base)):
            total = total + k * a
        return total

    def grid(self, resolution: int) -> list:
        """Deterministic rational grid over a fundamental domain.

        Includes boundary values (annulus r in {0,1}, the oo point of the
        compactified line), so closed-form extrema of the built-in families
        are attained exactly.
        """
        n = int(resolution)
        ticks = [Fraction(i, n) for i in range(n)]
        closed = ticks + [Fraction(1)]
        if self.kind is SpaceKind.CIRCLE:
            return [(s,) for s in ticks]
        if self.kind is SpaceKind.ANNULUS:
            return [(s, r) for s in ticks for r in closed]
        if self.kind is SpaceKind.TORUS2:
            return [(s1, s2) for s1 in ticks for s2 in ticks]
        # compactified line: uniform in the chart u, plus the point oo
        xs = [compline_unchart(Fraction(-1) + Fraction(2 * j, n)) for j in range(1, n)]
        xs.append(INF)
        return [(t, x) for t in ticks for x in xs]

    def mesh(self, resolution: int):
        """Spacing of grid(resolution) in chart coordinates (max metric)."""
        if self.kind is SpaceKind.CIRCLE_X_COMPLINE:
            return Fraction(2, int(resolution))
        return Fraction(1, int(resolution))

    def sample_point(self, rng: random.Random, allow_infinity: bool = False) -> tuple:
        """Random base point with float coordinates."""
        coords = []
        for i in range(self.n_coords):
            if self.kind is SpaceKind.ANNULUS and i == 1:
                coords.append(rng.random())
            elif self.kind is SpaceKind.CIRCLE_X_COMPLINE and i == 1:
                if allow_infinity and rng.random() < 0.05:
                    coords.append(INF)
                else:
                    u = rng.uniform(-0.999, 0.999)
                    coords.append(compline_unchart(u))
            else:
                coords.append(rng.random())
        return tuple(coords)

    def basis_loops(self) -> list:
        """One degenerate polyline per angular factor, winding that factor once."""
        loops = []
        bp = self.basepoint
        for j in range(len(self.circle_factors)):
            w = tuple(1 if i == j else 0 for i in range(len(self.circle_factors)))
            loops.append(Polyline(self, [bp, bp], [w]))
        return loops

    def random_polyline(self, rng: random.Random, segments: int = 4) -> "Polyline":
        verts = [self.sample_point(rng) for _ in range(segments + 1)]
        winds = [
            tuple(rng.randint(-2, 2) for _ in self.circle_factors)
            for _ in range(segments)
        ]
        return Polyline(self, verts, winds)


@dataclass(frozen=True)
class CoverPoint:
    """A point of the cyclic cover: base point plus a real sheet height."""

    space: Space
    base: tuple
    sheet: object = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "base", self.space.validate_point(self.base))

    def project(self) -> tuple:
        return self.base

    def deck(self, k: int) -> "CoverPoint":
        """Deck translation by k sheets."""
        return CoverPoint(self.space, self.base, self.sheet + k)


@dataclass(frozen=True)
class Polyline:
    """Finite polyline in base coordinates with declared windings per segment.

    windings[j][i] counts signed crossings of the i-th angular seam on
    segment j; only vertex values and windings enter path integrals of
    closed cocycles, so integration is exact for rational data.
    """

    space: Space
    vertices: tuple
    windings: tuple

    def __init__(self, space, vertices, windings):
        object.__setattr__(self, "space", space)
        object.__setattr__(
            self, "vertices", tuple(space.validate_point(v) for v in vertices)
        )
        winds = tuple(tuple(int(w) for w in ws) for ws in windings)
        if len(winds) != len(self.vertices) - 1:
            raise DomainError("need one winding vector per segment")
        nf = len(space.circle_factors)
        if any(len(ws) != nf for ws in winds):
            raise DomainError(f"winding vectors must have length {nf}")
        object.__setattr__(self, "windings", winds)

    @staticmethod
    def straight(space, start, end):
        """Single segment with zero winding."""
        nf = len(space.circle_factors)
        return Polyline(space, [start, end], [(0,) * nf])

    def segments(self):
        for j in range(len(self.windings)):
            yield self.vertices[j], self.vertices[j + 1], self.windings[j]

    def is_loop(self) -> bool:
        return self.vertices[0] == self.vertices[-1]

    def reversed(self) -> "Polyline":
        verts = tuple(reversed(self.vertices))
        winds = tuple(tuple(-w for w in ws) for ws in reversed(self.windings))
        return Polyline(self.space, verts, winds)


def lift_polyline(path: Polyline, start_sheet=Fraction(0)) -> tuple:
    """Endpoints of the continuous lift of a polyline to the cyclic cover.

    The sheet coordinate increments by pairing . winding per segment; this
    is the unique continuous tracking rule for the canonical cover structure
    and is independent of the choice of potential.
    """
    space = path.space
    sheet = start_sheet
    start = CoverPoint(space, path.vertices[0], start_sheet)
    for _, _, ws in path.segments():
        sheet = sheet + sum(k * w for k, w in zip(space.pairing, ws))
    end = CoverPoint(space, path.vertices[-1], sheet)
    return start, end


@dataclass(frozen=True)
class Potential:
    """Deck-equivariant function on the cyclic cover (the F of the theory).

    modulus, when set, bounds increments along chart-staying paths:
    |P(b1,h) - P(b0,h)| <= modulus * chart distance (continuity surrogate).
    """

    space: Space
    fn: Callable  # (base, sheet) -> value
    description: str = "built-in"
    modulus: float | None = None

    def eval(self, point: CoverPoint):
        if point.space != self.space:
            raise SpaceMismatchError("potential evaluated on a different space")
        return self.fn(point.base, point.sheet)

    def __call__(self, point: CoverPoint):
        return self.eval(point)

    def shifted(self, constant) -> "Potential":
        """Same class, potential moved by an additive constant."""
        base_fn = self.fn
        return Potential(
            self.space,
            lambda b, h: base_fn(b, h) + constant,
            f"{self.description}+{constant}",
            self.modulus,
        )


def built_in_potential(space: Space) -> Potential:
    """The canonical potential F(base, h) = phi(base) + h."""
    modulus = float(sum(abs(k) for k in space.pairing))
    return Potential(
        space, lambda base, sheet: space.phi(base) + sheet, "built-in", modulus
    )


@dataclass(frozen=True)
class PathIntegralCocycle:
    """A singular one-cocycle presented as a path-integral functional."""

    space: Space
    integrate_fn: Callable  # Polyline -> value
    description: str = "class"

    def integrate(self, path: Polyline):
        if path.space != self.space:
            raise SpaceMismatchError("path lives on a different space")
        return self.integrate_fn(path)

    def basis_loop_values(self) -> tuple:
        return tuple(self.integrate(lp) for lp in self.space.basis_loops())


def class_cocycle(space: Space) -> PathIntegralCocycle:
    """The canonical representative: pairing . (signed angular variation)."""

    def integrate(path):
        total = 0
        for v0, v1, ws in path.segments():
            a0 = space.angles(v0)
            a1 = space.angles(v1)
            for k, x0, x1, w in zip(space.pairing, a0, a1, ws):
                total = total + k * ((x1 - x0) + w)
        return total

    return PathIntegralCocycle(space, integrate, "class")


def cocycle_from_potential(space: Space, potential: Potential) -> PathIntegralCocycle:
    """Appendix correspondence, potential -> cocycle.

    integrate(path) = P(lift of endpoint) - P(lift of start), with the lift
    tracked continuously along the polyline.
    """
    if potential.space != space:
        raise SpaceMismatchError("potential lives on a different space")

    def integrate(path):
        start, end = lift_polyline(path)
        return potential.eval(end) - potential.eval(start)

    return PathIntegralCocycle(space, integrate, f"from {potential.description}")


def potential_from_cocycle(
    space: Space, cocycle: PathIntegralCocycle, basepoint: CoverPoint
) -> Potential:
    """Appendix correspondence, cocycle -> potential, pinned to 0 at basepoint.

    Raises ClassMismatchError when the cocycle's basis-loop values disagree
    with the space's pairing vector.
    """
    if cocycle.space != space or basepoint.space != space:
        raise SpaceMismatchError("cocycle or basepoint on a different space")
    loop_vals = cocycle.basis_loop_values()
    for k, v in zip(space.pairing, loop_vals):
        if abs(v - k) > 1e-9:
            raise ClassMismatchError(
                f"cocycle pairs {tuple(loop_vals)} with basis loops, class says {space.pairing}"
            )

    origin = basepoint.base
    origin_sheet = basepoint.sheet

    def fn(base, sheet):
        seg = Polyline.straight(space, origin, base)
        return cocycle.integrate(seg) + (sheet - origin_sheet)

    return Potential(space, fn, "from_cocycle")


def verify_equivariance(
    potential: Potential, samples: int = 1000, rng: random.Random | None = None
):
    """Max residual of P(b, h+k) - P(b, h) - k over random samples, k in -3..3."""
    rng = rng or random.Random(0)
    space = potential.space
    worst = 0
    for _ in range(samples):
        base = space.sample_point(rng, allow_infinity=True)
        h = rng.uniform(-2.0, 2.0)
        ref = potential.fn(base, h)
        for k in range(-3, 4):
            res = abs(potential.fn(base, h + k) - ref - k)
            if res > worst:
                worst = res
    return worst
