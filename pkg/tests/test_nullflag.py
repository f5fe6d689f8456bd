"""Null flags: completion, the Lambda-to-V correspondence, nullity, dimensions."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conftest import by_id, discrepancies, failures
from f4prolong.control import bilinear_R
from f4prolong.nullflag import (
    DEPENDENT_COORDS,
    FREE_COORDS,
    complete_null_flag,
    eta_frames,
    lambda_to_v,
    q_pair,
    random_coords,
    verify_flag_nullity,
)


def _coords(rng):
    return random_coords(rng)


def test_completion_is_r_null():
    rng = random.Random(4)
    for _ in range(20):
        frame = complete_null_flag(_coords(rng))
        for fa in (frame.f1, frame.f2, frame.f3):
            for fb in (frame.f1, frame.f2, frame.f3):
                assert bilinear_R(list(fa), list(fb)) == 0


def test_completion_pivot_structure():
    rng = random.Random(9)
    frame = complete_null_flag(_coords(rng))
    assert frame.f1[1] == 1
    assert frame.f2[1] == 0 and frame.f2[2] == 1
    assert frame.f3[1] == 0 and frame.f3[2] == 0 and frame.f3[3] == 1


def test_lambda_to_v_is_q_null():
    rng = random.Random(7)
    for _ in range(20):
        v = lambda_to_v(complete_null_flag(_coords(rng)))
        for a in range(4):
            for b in range(a, 4):
                assert q_pair(v.etas[a], v.etas[b]) == 0


def test_base_point_etas():
    coords = {n: Fraction(0) for n in FREE_COORDS}
    v = lambda_to_v(complete_null_flag(coords))

    def e(k):
        return tuple(Fraction(1 if i == k else 0) for i in range(8))

    assert v.eta1 == e(4)
    assert v.eta2 == e(3)
    assert v.eta3 == e(2)
    assert v.eta4 == e(5)


def test_closed_form_matches_kernel_solve():
    rng = random.Random(13)
    for _ in range(20):
        coords = _coords(rng)
        v = lambda_to_v(complete_null_flag(coords))
        closed = eta_frames(coords)
        assert v.etas == closed.etas


def test_nullity_report_passes():
    rng = random.Random(21)
    items = verify_flag_nullity(lambda_to_v(complete_null_flag(_coords(rng))))
    assert not failures(items)


def test_lambda_to_v_rejects_non_null_frame():
    rng = random.Random(2)
    frame = complete_null_flag(_coords(rng))
    broken = type(frame)(
        tuple(list(frame.f1[:-1]) + [frame.f1[-1] + 1]), frame.f2, frame.f3, frame.coords
    )
    with pytest.raises(ValueError):
        lambda_to_v(broken)


def test_coordinate_partition():
    assert len(FREE_COORDS) == 9
    assert len(DEPENDENT_COORDS) == 6
    assert not set(FREE_COORDS) & set(DEPENDENT_COORDS)


def test_suite_statuses(nullflag_run):
    items, _ = nullflag_run
    assert not failures(items)
    assert {i.id for i in discrepancies(items)} == {"expansion:(f1|f1)"}
    ids = by_id(items)
    assert ids["dim:lambda-fiber"].status == "pass"
    assert ids["dim:v-fiber"].status == "pass"
    assert ids["samples:closed-form-crosscheck"].computed.startswith("0 ")
