import pytest
from hypothesis import given, settings, strategies as st

from defcms.bipart import (
    conjugate,
    extremal_pair,
    f_map,
    in_cross,
    in_hook,
    line_intersections,
    normalize_partition,
    partitions_upto,
    pi_inverse,
    pi_map,
    sigma_map,
    theta_flip,
    young_line,
)
from defcms.laurent import is_dominant
from defcms.verify import dominant_box

CASES = [(1, 1), (2, 1), (1, 2), (2, 2)]
PARTS = partitions_upto(5)


def test_partition_helpers():
    assert normalize_partition([3, 1, 0, 0]) == (3, 1)
    with pytest.raises(ValueError):
        normalize_partition([1, 2])
    assert conjugate((3, 1)) == (2, 1, 1)
    assert conjugate(()) == ()
    assert len(partitions_upto(4)) == 1 + 1 + 2 + 3 + 5


def test_hook_examples():
    assert in_hook((3, 1), 1, 1)
    assert not in_hook((2, 2), 1, 1)
    assert in_hook((), 0, 0)


def test_cross_examples():
    for n, m in CASES:
        assert in_cross((), (), n, m)
    assert in_cross((1,), (1,), 1, 1)
    assert not in_cross((2, 2), (2, 2), 1, 1)


def test_extremal_examples():
    assert extremal_pair((1,), (), 1, 1) == (1, 1)
    assert extremal_pair((), (), 1, 1) == (1, 1)
    assert extremal_pair((1,), (1,), 1, 1) == (1, 1)
    with pytest.raises(ValueError):
        extremal_pair((2, 2), (2, 2), 1, 1)


def test_f_map_examples():
    assert f_map((2, 1), (), 1, 1) == ((1,), (), 1, 0)
    assert f_map((), (), 2, 1) == ((), (), 2, 1)
    # lambda in H(n, 0) and mu in H(0, m): fixed point with extremal pair (n, m)
    lam, mu = (3, 2), (2, 2, 1)
    assert f_map(lam, mu, 2, 2) == (lam, mu, 2, 2)
    assert extremal_pair(lam, mu, 2, 2) == (2, 2)


def test_pi_examples():
    assert pi_map((), (), 2, 1) == (0, 0, 0)
    assert pi_map((1,), (), 1, 1) == (1, 0)
    assert pi_map((1,), (1,), 1, 1) == (1, -1)


def test_young_lines():
    box = (-1, 3, -1, 3)
    y0 = young_line((), box)
    assert (0, 0) in y0 and (0, 2) in y0 and (2, 0) in y0
    y1 = young_line((1,), box)
    for p in [(0, 1), (1, 1), (1, 0), (2, 0)]:
        assert p in y1
    assert (0, 0) not in y1
    assert (1, 1) in theta_flip(1, 1, y0)


def test_sigma_examples():
    assert sigma_map((), (), 2, 2) == (0, 0, 0, 0)
    assert sigma_map((1,), (1,), 1, 1) == (1, -1)


def test_pi_inverse_examples():
    assert pi_inverse((0, 0, 0), 2, 1) == ((), ())
    assert pi_inverse((1, -1), 1, 1) == ((1,), (1,))
    with pytest.raises(ValueError):
        pi_inverse((0, 1, 0), 2, 1)


@pytest.mark.parametrize("n,m", CASES)
def test_cross_iff_lines_meet(n, m):
    for lam in PARTS:
        for mu in PARTS:
            assert in_cross(lam, mu, n, m) == bool(line_intersections(lam, mu, n, m)[0])


@pytest.mark.parametrize("n,m", CASES)
def test_f_map_keeps_extremal_pair(n, m):
    for lam in PARTS:
        for mu in PARTS:
            if in_cross(lam, mu, n, m):
                lt, mt, nt, mt_ = f_map(lam, mu, n, m)
                assert in_cross(lt, mt, nt, mt_)
                assert extremal_pair(lt, mt, nt, mt_) == extremal_pair(lam, mu, n, m)


@pytest.mark.parametrize("n,m", CASES)
def test_maximal_intersection_point(n, m):
    for lam in PARTS:
        for mu in PARTS:
            if in_cross(lam, mu, n, m):
                p, s = extremal_pair(lam, mu, n, m)
                assert line_intersections(lam, mu, n, m)[0][0] == (m - s, p)


@pytest.mark.parametrize("n,m", CASES)
def test_roundtrip_on_dominant_box(n, m):
    for chi in dominant_box(n, m, 2):
        lam, mu = pi_inverse(chi, n, m)
        assert in_cross(lam, mu, n, m)
        assert pi_map(lam, mu, n, m) == chi


parts = st.sampled_from(partitions_upto(6))


@settings(max_examples=150, deadline=None)
@given(parts, parts, st.sampled_from(CASES))
def test_sigma_equals_pi(lam, mu, nm):
    n, m = nm
    if not in_cross(lam, mu, n, m):
        return
    chi = pi_map(lam, mu, n, m)
    assert is_dominant(chi, n, m)
    assert sigma_map(lam, mu, n, m) == chi
    assert pi_inverse(chi, n, m) == (lam, mu)
