"""Exact PL lift algebra: evaluation, composition, inversion, canonical forms."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from deckrot.plmaps import PLMap


def _grid_fractions(max_den=16):
    return st.fractions(min_value=0, max_value=Fraction(15, 16), max_denominator=max_den)


@st.composite
def pl_maps(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    breaks = draw(
        st.lists(_grid_fractions(), min_size=n, max_size=n, unique=True).map(sorted)
    )
    values = draw(
        st.lists(_grid_fractions(), min_size=n, max_size=n, unique=True).map(sorted)
    )
    return PLMap(tuple(zip(breaks, values)))


_points = st.fractions(min_value=-3, max_value=3, max_denominator=64)


def test_validation_rejects_bad_data():
    with pytest.raises(ValueError):
        PLMap(())
    with pytest.raises(ValueError):
        PLMap(((0, 0), (0, Fraction(1, 2))))  # duplicate breakpoint
    with pytest.raises(ValueError):
        PLMap(((Fraction(1, 2), 0), (Fraction(3, 4), -1)))  # decreasing values
    with pytest.raises(ValueError):
        PLMap(((0, 0), (Fraction(1, 2), Fraction(3, 2))))  # wrap slope <= 0


def test_identity_and_rotation():
    assert PLMap.identity().eval(Fraction(7, 3)) == Fraction(7, 3)
    r = PLMap.rotation(Fraction(1, 3))
    assert r.eval(Fraction(5, 6)) == Fraction(5, 6) + Fraction(1, 3)
    assert r.displacement(Fraction(1, 7)) == Fraction(1, 3)


@given(pl_maps(), _points)
@settings(max_examples=200, deadline=None)
def test_lift_is_equivariant_and_monotone(p, t):
    assert p.eval(t + 1) == p.eval(t) + 1
    eps = Fraction(1, 128)
    assert p.eval(t + eps) > p.eval(t)


@given(pl_maps(), pl_maps(), _points)
@settings(max_examples=200, deadline=None)
def test_composition_matches_pointwise_evaluation(p, q, t):
    assert p.compose(q).eval(t) == p.eval(q.eval(t))


@given(pl_maps(), _points)
@settings(max_examples=200, deadline=None)
def test_inverse_roundtrip_is_exact(p, t):
    pinv = p.invert()
    assert p.eval(pinv.eval(t)) == t
    assert pinv.eval(p.eval(t)) == t


@given(pl_maps())
@settings(max_examples=100, deadline=None)
def test_canonical_data_is_idempotent_and_merge_preserves_map(p):
    merged = p.merged()
    for k in range(9):
        t = Fraction(k, 9)
        assert merged.eval(t) == p.eval(t)
    assert PLMap(merged.canonical_data()).canonical_data() == p.canonical_data()


def test_lift_constant_is_quotiented_in_canonical_data():
    p = PLMap(((0, Fraction(1, 4)), (Fraction(1, 2), Fraction(3, 4))))
    shifted = PLMap(tuple((s, v + 3) for s, v in p.nodes))
    assert p.canonical_data() == shifted.canonical_data()
    assert p.nodes != shifted.nodes


def test_affine_composites_collapse_to_anchored_rotation():
    # two rotations composed through PL data stay a one-node rotation
    a = PLMap.rotation(Fraction(2, 3))
    b = PLMap.rotation(Fraction(2, 3))
    c = a.compose(b)
    assert c.canonical_data() == ((Fraction(0), Fraction(1, 3)),)


def test_compose_breakpoint_collection():
    # composite breakpoints are q's plus q^{-1} of p's (after merging)
    p = PLMap(((0, 0), (Fraction(1, 4), Fraction(3, 8)), (Fraction(1, 2), Fraction(1, 2))))
    q = PLMap.rotation(Fraction(1, 8))
    comp = p.compose(q)
    expected = {Fraction(7, 8), Fraction(1, 8), Fraction(3, 8)}
    assert set(comp.breakpoints()) <= expected
    for k in range(16):
        t = Fraction(k, 16)
        assert comp.eval(t) == p.eval(q.eval(t))


def test_max_slope():
    p = PLMap(((0, 0), (Fraction(1, 4), Fraction(1, 2))))
    assert p.max_slope() == 2
