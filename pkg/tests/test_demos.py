import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ghzbell.demos import PolarizerStack, Rotation3, polarizer_cascade, rotate_sequence

TOL = 1e-12


def test_rotation_order_matters():
    z = (0, 0, 1)
    xy = rotate_sequence([Rotation3("x", 90), Rotation3("y", 90)], z)
    yx = rotate_sequence([Rotation3("y", 90), Rotation3("x", 90)], z)
    assert np.allclose(xy, (0, -1, 0), atol=TOL, rtol=0)
    assert np.allclose(yx, (1, 0, 0), atol=TOL, rtol=0)


def test_inverse_pair_is_identity():
    v = np.array([0.3, -1.2, 2.5])
    assert np.allclose(rotate_sequence([Rotation3("x", 90), Rotation3("x", -90)], v), v, atol=TOL, rtol=0)


def test_rotation_validation():
    with pytest.raises(ValueError):
        Rotation3("w", 10)
    with pytest.raises(ValueError):
        Rotation3("x", float("nan"))
    with pytest.raises(ValueError):
        rotate_sequence([], (1, 2))


angles = st.floats(-720, 720, allow_nan=False)
vec = st.lists(st.floats(-10, 10, allow_nan=False), min_size=3, max_size=3)


@settings(max_examples=200, deadline=None)
@given(axis=st.sampled_from("xyz"), a=angles, b=angles, v=vec)
def test_rotations_preserve_norm_and_same_axis_commutes(axis, a, b, v):
    r1 = rotate_sequence([Rotation3(axis, a), Rotation3(axis, b)], v)
    r2 = rotate_sequence([Rotation3(axis, b), Rotation3(axis, a)], v)
    assert np.linalg.norm(r1) == pytest.approx(np.linalg.norm(v), abs=1e-12)
    assert np.allclose(r1, r2, atol=1e-12, rtol=0)


def test_polarizer_examples():
    assert polarizer_cascade(PolarizerStack(0, (45, 90))) == 0.25
    assert polarizer_cascade(PolarizerStack(0, (90, 45))) == 0.0
    assert polarizer_cascade(PolarizerStack(0, (0,))) == 1.0
    assert polarizer_cascade(PolarizerStack(0, (60,))) == pytest.approx(0.25, abs=1e-15)
    with pytest.raises(ValueError):
        PolarizerStack(0, ())


@settings(max_examples=200, deadline=None)
@given(initial=angles, stack=st.lists(angles, min_size=1, max_size=6))
def test_transmission_in_unit_interval(initial, stack):
    assert 0.0 <= polarizer_cascade(PolarizerStack(initial, tuple(stack))) <= 1.0
