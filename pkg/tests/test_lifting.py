import math
from fractions import Fraction

import numpy as np
import pytest

from spherediv.circle import ArcSet, divide_r3
from spherediv.lifting import (BaseCircleDivision, LiftedDivision,
                               PlaceholderDivision, descriptor_from_json, lift,
                               lift_from_circle, membership, verify_partition)

F = Fraction

THIRDS = (F(1, 3), F(2, 3), F(0))


def thirds_base():
    return BaseCircleDivision(THIRDS, divide_r3(*THIRDS))


def test_lift_shapes():
    desc, rot = lift(thirds_base(), 3)
    assert desc.dimension == 4 and desc.r == 3
    assert rot.circle_turn(1) == F(1, 3)
    assert rot.circle_turn(3) == 0
    mats = rot.float_matrices()
    assert len(mats) == 3 and mats[0].shape == (4, 4)
    # third rotation: identity circle block on the last two coordinates
    assert np.allclose(mats[2][-2:, -2:], np.eye(2))
    # block structure: lower rotations on the first two coordinates
    a = 2 * math.pi / 3
    assert np.allclose(mats[0][:2, :2],
                       [[math.cos(a), -math.sin(a)], [math.sin(a), math.cos(a)]])


def test_lift_r_mismatch():
    with pytest.raises(ValueError):
        lift(thirds_base(), 2)


def test_lift_rejects_unverified_lower():
    bad = BaseCircleDivision((F(1, 2), F(0)), ArcSet(((F(0), F(2, 5)),)),
                             verify=False)
    with pytest.raises(ValueError):
        lift(bad, 2)


def test_lift_chain_to_six_dimensions():
    desc, rot = lift_from_circle(THIRDS, divide_r3(*THIRDS), 6)
    assert desc.dimension == 6
    assert isinstance(desc.lower, LiftedDivision)
    assert rot.float_matrices()[0].shape == (6, 6)
    with pytest.raises(ValueError):
        lift_from_circle(THIRDS, divide_r3(*THIRDS), 5)


def test_membership_base():
    base = thirds_base()
    assert membership(base, F(1, 6)) == 3
    assert membership(base, F(1, 2)) == 1
    assert membership(base, F(5, 6)) == 2


def test_membership_lifted_polar():
    desc, _ = lift(thirds_base(), 3)
    assert membership(desc, (F(1, 2), None)) == 1
    assert membership(desc, (F(1, 6), None)) == 3
    assert membership(desc, (F(7, 9), None)) == 2


def test_circle_block_action_is_exact_turn_shift():
    # applying the i-th lifted rotation adds exactly i/r turns to the circle
    # coordinate, so membership shifts cyclically by i
    desc, rot = lift(thirds_base(), 3)
    r = desc.r
    angles = [F(k, 37) for k in range(37)]
    for theta in angles:
        base_piece = membership(desc, (theta, None))
        for i in range(1, r + 1):
            shifted = (theta + rot.circle_turn(i)) % 1
            got = membership(desc, (shifted, None))
            assert got == (base_piece + i - 1) % r + 1, (theta, i)


def test_membership_lifted_cartesian():
    desc, _ = lift(thirds_base(), 3)
    ang = 2 * math.pi * 0.5
    p = (0.6, 0.8 * math.sin(0.0), math.cos(ang) * 0.8, math.sin(ang) * 0.8)
    # normalize: x = (0.6, 0), y = 0.8 * (cos pi, sin pi)
    assert abs(sum(c * c for c in p) - 1.0) < 1e-12
    assert membership(desc, p) == 1


def test_membership_null_circle_block_recurses():
    desc, _ = lift(thirds_base(), 3)
    ang = 2 * math.pi / 6
    p = (math.cos(ang), math.sin(ang), 0.0, 0.0)
    assert membership(desc, p) == 3  # angle 1/6 of the base division


def test_membership_placeholder_flag():
    desc, _ = lift(PlaceholderDivision(dimension=3, r=3), 3)
    p = (1.0, 0.0, 0.0, 0.0, 0.0)
    assert membership(desc, p) is None


def test_membership_rejects_off_sphere():
    desc, _ = lift(thirds_base(), 3)
    with pytest.raises(ValueError):
        membership(desc, (1.0, 1.0, 1.0, 1.0))


def test_verify_base_division():
    rep = verify_partition(BaseCircleDivision((F(1, 2), F(0)),
                                              ArcSet(((F(0), F(1, 2)),))),
                           samples=20000, seed=0)
    assert rep.ok
    assert rep.retained > 19000


def test_verify_corrupted_arcs_reports_violations():
    bad = BaseCircleDivision((F(1, 2), F(0)), ArcSet(((F(0), F(2, 5)),)),
                             verify=False)
    rep = verify_partition(bad, samples=2000, seed=0)
    assert not rep.ok
    assert len(rep.violations) > 100


def test_verify_lifted_partitions():
    desc, _ = lift(thirds_base(), 3)
    rep = verify_partition(desc, samples=30000, seed=0)
    assert rep.ok and rep.retained > 29000
    # empirical measures within five standard errors of 1/3
    se = math.sqrt((1 / 3) * (2 / 3) / rep.retained)
    for count in rep.piece_counts:
        assert abs(count / rep.retained - 1 / 3) <= 5 * se


def test_verify_placeholder_rejected():
    with pytest.raises(ValueError):
        verify_partition(PlaceholderDivision(dimension=3, r=3), samples=10)


def test_verify_deterministic():
    desc, _ = lift(thirds_base(), 3)
    a = verify_partition(desc, samples=5000, seed=3)
    b = verify_partition(desc, samples=5000, seed=3)
    assert a.piece_counts == b.piece_counts and a.retained == b.retained


def test_descriptor_json_round_trip():
    desc, _ = lift_from_circle(THIRDS, divide_r3(*THIRDS), 6)
    again = descriptor_from_json(desc.to_json())
    assert again.dimension == 6 and again.r == 3
    assert isinstance(again.lower.lower, BaseCircleDivision)
    assert again.lower.lower.arcs == desc.lower.lower.arcs
    ph = PlaceholderDivision(dimension=5, r=4)
    assert descriptor_from_json(ph.to_json()) == ph
