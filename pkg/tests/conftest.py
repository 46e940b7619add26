"""Shared strategies and fixtures for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from vclab import (
    Box,
    ClassDescriptor,
    ClassKind,
    Interval,
    PointSet,
    anchored,
    boxes,
    cubes,
    degenerate_balls,
    origin_anchored,
)

settings.register_profile(
    "ci",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


# ---------------------------------------------------------------------------
# hypothesis strategies
# ---------------------------------------------------------------------------

rationals = st.fractions(min_value=-8, max_value=8, max_denominator=4)
small_ints = st.integers(min_value=-8, max_value=8)
scalars = st.one_of(small_ints, rationals)


@st.composite
def point_sets(draw, max_dim: int = 3, max_n: int = 6, min_n: int = 1):
    dim = draw(st.integers(min_value=1, max_value=max_dim))
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pts = draw(
        st.lists(
            st.tuples(*[scalars for _ in range(dim)]),
            min_size=n,
            max_size=n,
            unique=True,
        )
    )
    return PointSet.of(pts)


@st.composite
def anchor_boxes(draw, dim: int):
    ivs = []
    for _ in range(dim):
        lo = draw(rationals)
        width = draw(st.fractions(min_value=0, max_value=4, max_denominator=3))
        ivs.append(Interval(lo, lo + width))
    return Box(tuple(ivs))


@st.composite
def descriptors_for(draw, dim: int):
    kind = draw(st.sampled_from(list(ClassKind)))
    if kind is ClassKind.ANCHORED_DEGENERATE_BALLS:
        use_origin = draw(st.booleans())
        if use_origin:
            return origin_anchored(dim)
        return anchored(draw(anchor_boxes(dim)))
    return ClassDescriptor(kind, dim)


@st.composite
def instances(draw, max_dim: int = 3, max_n: int = 5):
    ps = draw(point_sets(max_dim=max_dim, max_n=max_n))
    desc = draw(descriptors_for(ps.dim))
    mask = draw(st.integers(min_value=0, max_value=(1 << len(ps)) - 1))
    return ps, desc, mask


# ---------------------------------------------------------------------------
# deterministic random instance pools (heavier than hypothesis defaults)
# ---------------------------------------------------------------------------


def random_point_set(rng: random.Random, dim: int, n: int) -> PointSet:
    pts = set()
    while len(pts) < n:
        pts.add(
            tuple(
                Fraction(rng.randint(-8, 8), rng.choice((1, 1, 2, 3)))
                for _ in range(dim)
            )
        )
    return PointSet.of(sorted(pts))


def random_descriptor(rng: random.Random, dim: int) -> ClassDescriptor:
    roll = rng.randrange(6)
    if roll == 0:
        return boxes(dim)
    if roll == 1:
        return boxes(dim, nondegenerate=True)
    if roll == 2:
        return degenerate_balls(dim)
    if roll == 3:
        ivs = []
        for _ in range(dim):
            lo = Fraction(rng.randint(-5, 5), rng.choice((1, 2)))
            ivs.append(Interval(lo, lo + Fraction(rng.randint(0, 4), rng.choice((1, 2)))))
        return anchored(Box(tuple(ivs)))
    if roll == 4:
        return ClassDescriptor(ClassKind.AXIS_CUTS, dim)
    return cubes(dim)


@pytest.fixture(scope="session")
def rng_pool():
    return random.Random(0xC0FFEE)
