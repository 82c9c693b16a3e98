import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geocrystal.errors import DimensionMismatchError
from geocrystal.linalg import (
    RatMat,
    canonicalize,
    contains,
    embed,
    frac_str,
    full_space,
    intersect_and_sum,
    kernel_and_image,
    preimage,
    zero_space,
)


def test_frac_str_format():
    assert frac_str(Fraction(3)) == "3/1"
    assert frac_str(Fraction(-4, 6)) == "-2/3"


def test_ratmat_json_round_trip():
    m = RatMat([[1, Fraction(1, 2)], [0, -3]])
    payload = json.loads(json.dumps(m.to_json()))
    assert RatMat.from_json(payload) == m


def test_canonicalize_dependent_columns():
    s = canonicalize([(1, 1), (2, 2)], 2)
    assert s.dim == 1
    assert s.basis.column(0) == (Fraction(1), Fraction(1))


def test_canonicalize_empty_and_full():
    assert canonicalize([], 2).dim == 0
    s = canonicalize([(0, 1), (1, 0)], 2)
    assert s.dim == 2
    assert s.basis == RatMat.identity(2)


def test_kernel_and_image_examples():
    ker, img = kernel_and_image(RatMat([[1, 0], [0, 0]]))
    assert ker.basis.column(0) == (Fraction(0), Fraction(1))
    assert img.basis.column(0) == (Fraction(1), Fraction(0))

    ker, img = kernel_and_image(RatMat.zeros(3, 3))
    assert ker.dim == 3 and img.dim == 0

    ker, img = kernel_and_image(RatMat([[1, 1]]))
    assert ker.dim == 1 and img.dim == 1
    assert ker.basis.column(0) == (Fraction(1), Fraction(-1))


def test_intersect_and_sum_examples():
    s1 = canonicalize([(1, 0, 0), (0, 1, 0)], 3)
    s2 = canonicalize([(0, 1, 0), (0, 0, 1)], 3)
    meet, total = intersect_and_sum(s1, s2)
    assert meet.basis.column(0) == (Fraction(0), Fraction(1), Fraction(0))
    assert total.is_full()

    meet, total = intersect_and_sum(s1, zero_space(3))
    assert meet.is_zero() and total == s1

    meet, _ = intersect_and_sum(
        canonicalize([(1, 1)], 2), canonicalize([(1, -1)], 2)
    )
    assert meet.is_zero()


def test_preimage_examples():
    shift = RatMat([[0, 1], [0, 0]])  # e2 -> e1
    assert preimage(shift, canonicalize([(1, 0)], 2)).is_full()
    s = canonicalize([(1, 2)], 2)
    assert preimage(RatMat.identity(2), s) == s
    assert preimage(RatMat.zeros(2, 2), s).is_full()


def test_contains_examples():
    assert contains(full_space(3), canonicalize([(1, 5, -2)], 3))
    assert not contains(canonicalize([(1, 0)], 2), canonicalize([(1, 1)], 2))
    assert contains(
        canonicalize([(1, 0, 0), (0, 1, 0)], 3), canonicalize([(1, 1, 0)], 3)
    )


def test_ambient_mismatch_errors():
    with pytest.raises(DimensionMismatchError):
        intersect_and_sum(zero_space(2), zero_space(3))
    with pytest.raises(DimensionMismatchError):
        contains(zero_space(2), zero_space(3))
    with pytest.raises(DimensionMismatchError):
        canonicalize([(1, 0, 0)], 2)


def test_embed():
    s = canonicalize([(1, 1)], 2)
    big = embed(s, [0, 2], 4)
    assert big.ambient_dim == 4
    assert big.basis.column(0) == (
        Fraction(1),
        Fraction(0),
        Fraction(1),
        Fraction(0),
    )


def test_inverse():
    m = RatMat([[2, 1], [1, 1]])
    assert m * m.inverse() == RatMat.identity(2)
    with pytest.raises(DimensionMismatchError):
        RatMat([[1, 1], [1, 1]]).inverse()


@st.composite
def small_matrix(draw, max_dim=5):
    rows = draw(st.integers(min_value=1, max_value=max_dim))
    cols = draw(st.integers(min_value=1, max_value=max_dim))
    entries = [
        [draw(st.integers(min_value=-3, max_value=3)) for _ in range(cols)]
        for _ in range(rows)
    ]
    return RatMat(entries)


@settings(max_examples=100, deadline=None)
@given(small_matrix())
def test_rank_nullity(m):
    ker, img = kernel_and_image(m)
    assert ker.dim + img.dim == m.cols


@st.composite
def two_subspaces(draw):
    ambient = draw(st.integers(min_value=1, max_value=5))
    def space():
        k = draw(st.integers(min_value=0, max_value=ambient))
        vecs = [
            tuple(draw(st.integers(min_value=-2, max_value=2)) for _ in range(ambient))
            for _ in range(k)
        ]
        return canonicalize(vecs, ambient)
    return space(), space()


@settings(max_examples=100, deadline=None)
@given(two_subspaces())
def test_modular_dimension_law(pair):
    s1, s2 = pair
    meet, total = intersect_and_sum(s1, s2)
    assert meet.dim + total.dim == s1.dim + s2.dim
    assert contains(s1, meet) and contains(s2, meet)
    assert contains(total, s1) and contains(total, s2)


@st.composite
def map_and_subspace(draw):
    rows = draw(st.integers(min_value=1, max_value=4))
    cols = draw(st.integers(min_value=1, max_value=4))
    m = RatMat(
        [
            [draw(st.integers(min_value=-2, max_value=2)) for _ in range(cols)]
            for _ in range(rows)
        ]
    )
    k = draw(st.integers(min_value=0, max_value=rows))
    vecs = [
        tuple(draw(st.integers(min_value=-2, max_value=2)) for _ in range(rows))
        for _ in range(k)
    ]
    return m, canonicalize(vecs, rows)


@settings(max_examples=100, deadline=None)
@given(map_and_subspace())
def test_preimage_dimension_formula(pair):
    m, s = pair
    ker, img = kernel_and_image(m)
    meet, _ = intersect_and_sum(s, img)
    assert preimage(m, s).dim == ker.dim + meet.dim


@settings(max_examples=100, deadline=None)
@given(two_subspaces())
def test_canonical_form_is_representation_equality(pair):
    s1, _ = pair
    # re-span with random double vectors: canonical basis must be identical
    doubled = [tuple(2 * a for a in col) for col in s1.basis.columns()]
    again = canonicalize(doubled + s1.basis.columns(), s1.ambient_dim)
    assert again == s1
    assert json.dumps(again.to_json()) == json.dumps(s1.to_json())
