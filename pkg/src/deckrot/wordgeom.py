"""Word norms, Cayley-ball enumeration and translation-length estimates.

Enumeration demands exact canonical forms: a product of generators is
recorded under the canonical key of the underlying map, so two words are
identified exactly when they define the same homeomorphism.  Numeric
fingerprints are rejected outright; a hash collision here would silently
corrupt every word norm downstream.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .cocycle import seminorm
from .errors import PreconditionError, SpaceMismatchError, UnsupportedFlavorError
from .homeo import Homeo, compose, identity, power

DEFAULT_NODE_CAP = 10_000_000
_CAP_ENV = "DECKROT_BALL_CAP"


def _node_cap(explicit=None) -> int:
    if explicit is not None:
        return int(explicit)
    return int(os.environ.get(_CAP_ENV, DEFAULT_NODE_CAP))


class GenSet:
    """A symmetrized finite generating set of exactly representable maps."""

    def __init__(self, generators, names=None, resolution: int = 64):
        gens = list(generators)
        if not gens:
            raise PreconditionError("empty generating set")
        space = gens[0].space
        if any(g.space != space for g in gens):
            raise SpaceMismatchError("generators live on different spaces")
        if names is None:
            names = [f"s{i}" for i in range(len(gens))]
        names = list(names)
        if len(names) != len(gens):
            raise PreconditionError("one name per generator")

        self.space = space
        self._resolution = resolution
        self.generators: list = []
        self.names: list = []
        seen = set()
        for g, name in zip(gens, names):
            for h, label in ((g, name), (g.inverse(), name + "'")):
                key = h.canonical_key()
                if key is None:
                    raise UnsupportedFlavorError(
                        f"generator {label} ({h.describe()}) has no exact canonical form"
                    )
                if key not in seen:
                    seen.add(key)
                    self.generators.append(h)
                    self.names.append(label)
        self._C = None

    @property
    def C(self):
        """Max generator seminorm (grid estimate, exact for the built-ins)."""
        if self._C is None:
            self._C = max(seminorm(g, self._resolution).value for g in self.generators)
        return self._C

    def spell(self, witness) -> str:
        if not witness:
            return "1"
        return "*".join(self.names[i] for i in witness)


@dataclass(frozen=True)
class BallNode:
    key: object
    homeo: Homeo
    length: int
    witness: tuple  # generator indices, in composition order


@dataclass(frozen=True)
class BallResult:
    nodes: dict  # canonical key -> BallNode
    sizes: tuple  # cumulative ball size at radius 0..R
    radius_completed: int
    truncated: bool

    def size(self, radius: int) -> int:
        return self.sizes[radius]


def ball(gens: GenSet, radius: int, node_cap=None) -> BallResult:
    """BFS over words; every element recorded at its minimal word length.

    Expansion order is deterministic (frontier in insertion order, then
    generator order), so the recorded witness is the lexicographically
    first minimal word.  Exceeding the node cap returns the completed radii
    with the truncated flag set.
    """
    cap = _node_cap(node_cap)
    e = identity(gens.space)
    root = BallNode(e.canonical_key(), e, 0, ())
    nodes = {root.key: root}
    frontier = [root]
    sizes = [1]
    completed = 0
    truncated = False
    for r in range(1, int(radius) + 1):
        new = []
        for node in frontier:
            for i, s in enumerate(gens.generators):
                h = compose(node.homeo, s)
                key = h.canonical_key()
                if key is None:
                    raise UnsupportedFlavorError(
                        f"product {gens.spell(node.witness + (i,))} left the exact families"
                    )
                if key in nodes:
                    continue
                if len(nodes) >= cap:
                    truncated = True
                    break
                child = BallNode(key, h, r, node.witness + (i,))
                nodes[key] = child
                new.append(child)
            if truncated:
                break
        if truncated:
            break
        frontier = new
        sizes.append(len(nodes))
        completed = r
        if not new:
            break
    while len(sizes) <= int(radius):
        sizes.append(sizes[-1])
        if not truncated:
            completed = len(sizes) - 1
    return BallResult(nodes, tuple(sizes), completed, truncated)


@dataclass(frozen=True)
class WordNormResult:
    exact: int | None  # word norm when found within the search radius
    lower_bound: object  # seminorm(g) / C, valid unconditionally
    witness: str | None
    searched_radius: int
    truncated: bool


def word_norm(g: Homeo, gens: GenSet, r_max: int, node_cap=None) -> WordNormResult:
    """Exact word norm via ball membership, plus the seminorm lower bound."""
    if g.space != gens.space:
        raise SpaceMismatchError("element and generators live on different spaces")
    C = gens.C
    lb = seminorm(g).value / C if C else 0
    key = g.canonical_key()
    if key is None:
        return WordNormResult(None, lb, None, 0, False)
    result = ball(gens, r_max, node_cap)
    node = result.nodes.get(key)
    if node is None:
        return WordNormResult(None, lb, None, result.radius_completed, result.truncated)
    return WordNormResult(node.length, lb, gens.spell(node.witness), result.radius_completed, result.truncated)


@dataclass(frozen=True)
class TranslationLengthEstimate:
    upper_estimate: object  # min |g^n|/n over computed n (>= tau by Fekete)
    certificate_lower: object  # max certificate rate / C, or None
    tail_estimate: object  # min |g^n|/n over the last half (heuristic display)
    norms: tuple  # ((n, |g^n|), ...) for the powers found
    truncated: bool


def translation_length(
    g: Homeo, gens: GenSet, n_budget: int = 6, certificates=(), node_cap=None
) -> TranslationLengthEstimate:
    """Sandwich estimate of tau(g) = lim |g^n|/n.

    Upper estimate from exact BFS norms of powers; certificate lower bound
    from supplied certificates (their seminorm rate divided by C).  The
    caller is responsible for g lying in the group generated by gens; the
    witness is checked exactly by requiring |g| itself to be found.
    """
    base = word_norm(g, gens, r_max=4, node_cap=node_cap)
    if base.exact is None:
        raise PreconditionError(
            "element not found within radius 4 of the generators; "
            "is it in the generated group?"
        )
    radius = max(1, int(n_budget)) * max(1, base.exact)
    result = ball(gens, radius, node_cap)
    norms = []
    for n in range(1, int(n_budget) + 1):
        node = result.nodes.get(power(g, n).canonical_key())
        if node is not None:
            norms.append((n, node.length))
    upper = min(Fraction(length, n) for n, length in norms) if norms else None
    tail = [(n, length) for n, length in norms if 2 * n >= n_budget]
    tail_est = min(Fraction(length, n) for n, length in tail) if tail else upper
    cert_lower = None
    C = gens.C
    rates = [c.seminorm_rate for c in certificates if c.undistorted and c.seminorm_rate is not None]
    if rates and C:
        cert_lower = max(rates) / C
    return TranslationLengthEstimate(upper, cert_lower, tail_est, tuple(norms), result.truncated)
