"""Shattering verdicts, certificates, coefficients, and the growth bound."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vclab import (
    CapExceededError,
    ClassDescriptor,
    ClassKind,
    DomainError,
    PointSet,
    boxes,
    canonical_mask_order,
    cubes,
    is_shattered,
    origin_anchored,
    origin_ball_witness,
    sauer_shelah_bound,
    shattering_count,
    vc_lower_bound_on,
)


@given(st.integers(min_value=1, max_value=6))
def test_mask_order_is_permutation(n):
    order = canonical_mask_order(n)
    assert sorted(order) == list(range(1 << n))


def test_mask_order_prioritizes_singletons():
    order = canonical_mask_order(3)
    head = order[: 3 + 3 + 1]
    singles = {0b001, 0b010, 0b100}
    co_singles = {0b110, 0b101, 0b011}
    assert singles <= set(head)
    assert co_singles <= set(head) or 0 in head  # cheap shapes come first


def test_witness_set_is_shattered_with_full_certificate():
    ps = origin_ball_witness(2)
    verdict = is_shattered(ps, origin_anchored(2))
    assert verdict.shattered
    cert = verdict.certificate
    assert cert is not None
    assert len(cert.witnesses) == 8
    assert cert.validate()
    for mask in range(8):
        w = cert.witness_for(mask)
        got = 0
        for i, p in enumerate(ps.points):
            if w.concept.contains(p):
                got |= 1 << i
        assert got == mask


def test_not_shattered_reports_the_failing_mask():
    ps = PointSet.of([(0,), (1,), (2,)])
    verdict = is_shattered(ps, boxes(1))
    assert not verdict.shattered
    assert verdict.failing_mask == 0b101  # the unique infeasible mask
    assert verdict.certificate is None


def test_cap_guards_exponential_blowup():
    ps = PointSet.of([(0,), (1,), (2,)])
    with pytest.raises(CapExceededError):
        is_shattered(ps, boxes(1), cap=2)


def test_shattering_count_boxes_three_collinear():
    ps = PointSet.of([(0,), (1,), (2,)])
    rep = shattering_count(ps, boxes(1))
    assert rep.realized == 7
    assert rep.total_masks == 8
    with_masks = shattering_count(ps, boxes(1), include_masks=True)
    assert with_masks.feasible_masks is not None
    assert len(with_masks.feasible_masks) == 7
    assert 0b101 not in with_masks.feasible_masks


def test_shattering_count_cuts():
    ps = PointSet.of([(0, 1), (1, 0)])
    rep = shattering_count(ps, ClassDescriptor(ClassKind.AXIS_CUTS, 2))
    assert rep.realized == 4  # {}, {0}, {1}, full — cuts shatter this pair


def test_shattered_set_realizes_all_masks():
    ps = origin_ball_witness(3)
    rep = shattering_count(ps, origin_anchored(3))
    assert rep.realized == rep.total_masks == 16


def test_vc_lower_bound_on_collinear_triple():
    ps = PointSet.of([(0,), (1,), (2,)])
    bound = vc_lower_bound_on(ps, boxes(1))
    assert bound.size == 2
    assert len(bound.indices) == 2
    assert bound.certificate.validate()
    assert set(bound.indices) <= {0, 1, 2}


def test_vc_lower_bound_full_on_witness():
    ps = origin_ball_witness(2)
    bound = vc_lower_bound_on(ps, origin_anchored(2))
    assert bound.size == 3
    assert bound.indices == (0, 1, 2)


def test_jobs_do_not_change_results():
    ps = origin_ball_witness(4)
    v1 = is_shattered(ps, origin_anchored(4), jobs=1)
    v2 = is_shattered(ps, origin_anchored(4), jobs=2)
    assert v1.shattered == v2.shattered
    assert [w.concept for w in v1.certificate.witnesses] == [
        w.concept for w in v2.certificate.witnesses
    ]
    bad = PointSet.of([(0,), (1,), (2,), (3,)])
    f1 = is_shattered(bad, boxes(1), jobs=1)
    f2 = is_shattered(bad, boxes(1), jobs=2)
    assert f1.failing_mask == f2.failing_mask


def test_sauer_bound_exact_rational():
    bound = sauer_shelah_bound(2, 3)
    assert isinstance(bound, Fraction)
    assert Fraction(1662, 100) < bound < Fraction(1663, 100)
    assert bound > 7  # the realized coefficient of boxes on 3 collinear points


def test_sauer_bound_monotone_in_n():
    assert sauer_shelah_bound(3, 5) < sauer_shelah_bound(3, 9)


def test_sauer_bound_domain():
    with pytest.raises(DomainError):
        sauer_shelah_bound(0, 3)
    with pytest.raises(DomainError):
        sauer_shelah_bound(4, 3)


def test_cube_shattering_d1_pair():
    ps = PointSet.of([(0,), (1,)])
    assert is_shattered(ps, cubes(1)).shattered
