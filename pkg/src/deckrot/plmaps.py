"""Exact piecewise-linear circle homeomorphisms with rational data.

A map is stored through its lift L: R -> R with L(s+1) = L(s) + 1, as a
tuple of nodes (s_i, L(s_i)) with s_i strictly increasing in [0,1) and
values strictly increasing with total increase < 1 across the wrap.  All
arithmetic is Fraction-exact; evaluation at float points degrades to float.

Composition and inversion stay inside the class, which is what makes
Cayley-ball enumeration over PL generators sound: equality of group
elements is equality of canonical node data.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .util import exactify, wrap


@dataclass(frozen=True)
class PLMap:
    nodes: tuple  # ((s, v), ...) as described above

    def __post_init__(self):
        nodes = tuple((exactify(s), exactify(v)) for s, v in self.nodes)
        if not nodes:
            raise ValueError("a PL map needs at least one node")
        ss = [s for s, _ in nodes]
        vs = [v for _, v in nodes]
        if any(not (0 <= s < 1) for s in ss):
            raise ValueError("breakpoints must lie in [0,1)")
        if any(b <= a for a, b in zip(ss, ss[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if any(b <= a for a, b in zip(vs, vs[1:])) or vs[-1] >= vs[0] + 1:
            raise ValueError("values must be strictly increasing with wrap slope > 0")
        object.__setattr__(self, "nodes", nodes)

    # -- constructors --------------------------------------------------
    @staticmethod
    def identity() -> "PLMap":
        return PLMap(((0, 0),))

    @staticmethod
    def rotation(shift) -> "PLMap":
        return PLMap(((0, exactify(shift)),))

    @staticmethod
    def from_pairs(breakpoints, values) -> "PLMap":
        return PLMap(tuple(zip(breakpoints, values)))

    # -- evaluation ----------------------------------------------------
    def _segment(self, j):
        """Endpoints of segment j, where j = -1 is the wrap-around piece."""
        nodes = self.nodes
        if j < 0:
            s0, v0 = nodes[-1]
            return s0 - 1, v0 - 1, nodes[0][0], nodes[0][1]
        s0, v0 = nodes[j]
        if j + 1 < len(nodes):
            s1, v1 = nodes[j + 1]
        else:
            s1, v1 = nodes[0][0] + 1, nodes[0][1] + 1
        return s0, v0, s1, v1

    def eval(self, t):
        """Value of the lift at t (exact for Fraction t)."""
        k = math.floor(t)
        s = t - k
        ss = [n[0] for n in self.nodes]
        j = bisect_right(ss, s) - 1
        s0, v0, s1, v1 = self._segment(j)
        return v0 + (s - s0) * (v1 - v0) / (s1 - s0) + k

    def __call__(self, t):
        return self.eval(t)

    def displacement(self, s):
        return self.eval(s) - s

    def breakpoints(self):
        return tuple(s for s, _ in self.nodes)

    def max_slope(self) -> Fraction:
        m = len(self.nodes)
        return max(
            (self._segment(j)[3] - self._segment(j)[1])
            / (self._segment(j)[2] - self._segment(j)[0])
            for j in range(m)
        )

    # -- group operations ----------------------------------------------
    def invert(self) -> "PLMap":
        """Exact inverse: swap node coordinates, reduce breakpoints mod 1."""
        pairs = []
        for s, v in self.nodes:
            k = math.floor(v)
            pairs.append((v - k, s - k))
        pairs.sort()
        return PLMap(tuple(pairs))

    def compose(self, other: "PLMap") -> "PLMap":
        """self after other, exactly: L(t) = L_self(L_other(t))."""
        other_inv = other.invert()
        breaks = {s for s, _ in other.nodes}
        breaks.update(wrap(other_inv.eval(s)) for s, _ in self.nodes)
        pairs = tuple((s, self.eval(other.eval(s))) for s in sorted(breaks))
        return PLMap(pairs).merged()

    def merged(self) -> "PLMap":
        """Remove nodes interior to straight runs (collinear cleanup)."""
        nodes = self.nodes
        m = len(nodes)
        if m == 1:
            return self
        slopes = []
        for j in range(m):
            s0, v0, s1, v1 = self._segment(j)
            slopes.append((v1 - v0) / (s1 - s0))
        keep = [nodes[j] for j in range(m) if slopes[j - 1] != slopes[j]]
        if not keep:
            # affine: a rigid rotation; anchor the single node at s = 0
            s0, v0 = nodes[0]
            return PLMap(((0, v0 - s0),))
        return PLMap(tuple(keep))

    def canonical_data(self) -> tuple:
        """Node data identifying the underlying circle map (lift taken mod 1)."""
        merged = self.merged()
        k = math.floor(merged.nodes[0][1])
        return tuple((s, v - k) for s, v in merged.nodes)

    def same_circle_map(self, other: "PLMap") -> bool:
        return self.canonical_data() == other.canonical_data()
