import pytest
from hypothesis import given, strategies as st

from ulrich_forge.picard import (
    Divisor,
    Polarization,
    canonical,
    check_very_ample,
    intersect,
    is_very_ample,
    self_intersection,
)

es = st.integers(0, 6)
divs = st.builds(Divisor, st.integers(-20, 20), st.integers(-20, 20))

C0, F = Divisor(1, 0), Divisor(0, 1)


@pytest.mark.parametrize("e", range(6))
def test_generators(e):
    assert intersect(e, C0, C0) == -e
    assert intersect(e, C0, F) == 1
    assert intersect(e, F, F) == 0


@given(es, divs, divs, divs, st.integers(-5, 5))
def test_bilinear_symmetric(e, A, B, C, k):
    assert intersect(e, A, B) == intersect(e, B, A)
    assert intersect(e, A + B, C) == intersect(e, A, C) + intersect(e, B, C)
    assert intersect(e, k * A, B) == k * intersect(e, A, B)


@given(es)
def test_canonical_class(e):
    K = canonical(e)
    assert self_intersection(e, K) == 8
    # adjunction: C0 and f are smooth rational curves
    for C in (C0, F):
        assert intersect(e, C, C) + intersect(e, K, C) == -2


def test_canonical_examples():
    assert canonical(1) == Divisor(-2, -3)
    assert intersect(1, Divisor(3, 6), Divisor(3, 6)) == 27
    assert intersect(1, Divisor(3, 6), canonical(1)) == -15


@pytest.mark.parametrize(
    "e,h,ok",
    [(0, (1, 1), True), (1, (3, 6), True), (1, (3, 3), False), (2, (1, 3), True), (2, (1, 2), False), (0, (0, 5), False)],
)
def test_very_ample(e, h, ok):
    assert is_very_ample(e, h) is ok


def test_check_very_ample_message():
    with pytest.raises(ValueError, match="a > 0 and b > a\\*e"):
        check_very_ample(1, (3, 3))
    assert check_very_ample(1, (3, 6)) == Polarization(3, 6)


def test_bad_e_and_polarization():
    with pytest.raises(ValueError):
        check_very_ample(-1, (1, 1))
    with pytest.raises(ValueError):
        Polarization(0, 3)


@given(es, st.integers(1, 6), st.integers(0, 20))
def test_very_ample_has_positive_degree(e, a, extra):
    h = Divisor(a, a * e + 1 + extra)
    assert self_intersection(e, h) > 0
    assert intersect(e, h, C0) > 0 and intersect(e, h, F) > 0


def test_divisor_arithmetic():
    D = Divisor(2, -3)
    assert D + D == 2 * D == Divisor(4, -6)
    assert -D == Divisor(-2, 3)
    assert tuple(D) == (2, -3)
    assert str(D) == "(2,-3)"
