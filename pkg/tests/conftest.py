"""Shared fixtures: spaces and random built-in family members."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

import deckrot as dk

CIRCLE = dk.Space.circle()
ANNULUS = dk.Space.annulus()
TORUS = dk.Space.torus2((1, 0))
COMPLINE = dk.Space.circle_compline((1, 0))
ALL_SPACES = (CIRCLE, ANNULUS, TORUS, COMPLINE)


@pytest.fixture
def rng():
    return random.Random(20260811)


def rand_fraction(rng, lo=-2, hi=2, den=24):
    q = rng.randint(1, den)
    return Fraction(rng.randint(lo * q, hi * q), q)


def random_pl(rng, max_nodes=4) -> dk.PLCircleMap:
    n = rng.randint(1, max_nodes)
    grid = [Fraction(i, 48) for i in range(48)]
    breaks = sorted(rng.sample(grid, n))
    values = sorted(rng.sample(grid, n))
    return dk.PLCircleMap(CIRCLE, dk.PLMap(tuple(zip(breaks, values))))


def random_homeo(space, rng) -> dk.Homeo:
    """A random member of the built-in families on the given space."""
    kind = space.kind
    if kind is dk.SpaceKind.CIRCLE:
        which = rng.randrange(4)
        if which == 0:
            return dk.RigidRotation(space, rand_fraction(rng))
        if which == 1:
            return dk.RigidRotation(space, rng.uniform(-1, 1))
        if which == 2:
            return random_pl(rng)
        return dk.GradientTimeOne(space, Fraction(rng.randint(-14, 14), 100))
    if kind is dk.SpaceKind.ANNULUS:
        return dk.AnnulusTwist(space, rand_fraction(rng), rand_fraction(rng))
    if kind is dk.SpaceKind.TORUS2:
        return dk.CosineTwist(space, rand_fraction(rng))
    return dk.TorusShear(space, rng.randint(-3, 3))
