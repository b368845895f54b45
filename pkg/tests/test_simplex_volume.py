from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from simplex_metrics.errors import DimensionMismatch, EmptySimplex, InvalidDistanceData
from simplex_metrics.exact_linalg import RationalMatrix, det_exact, transpose
from simplex_metrics.simplex_volume import (
    Simplex,
    SquareDistanceData,
    cm_factor,
    cm_matrix,
    heron_triangle,
    square_distances_of,
    verify_comparison,
    vol2_cm,
    vol2_gram,
    vol2_metric_via_cm,
)

coord = st.integers(-9, 9)


def simplices(max_k=4, max_n=5):
    return st.integers(1, max_n).flatmap(lambda n: st.integers(0, min(max_k, n)).flatmap(
        lambda k: st.lists(st.lists(coord, min_size=n, max_size=n), min_size=k + 1, max_size=k + 1)
    )).map(lambda pts: Simplex(tuple(tuple(p) for p in pts)))


def test_factor_table():
    assert [cm_factor(k) for k in range(1, 5)] == [F(1, 2), F(-1, 16), F(1, 288), F(-1, 9216)]
    # with det [[0, 1], [1, 0]] = -1 a point has square volume 1
    assert cm_factor(0) == -1
    assert vol2_cm(SquareDistanceData(((0,),))) == 1


def test_three_four_five():
    d = SquareDistanceData.from_edges(2, {(0, 1): 9, (0, 2): 16, (1, 2): 25})
    assert vol2_cm(d) == 36
    assert heron_triangle(9, 16, 25) == 36


def test_unit_right_triangle():
    s = Simplex.of((0, 0), (1, 0), (0, 1))
    assert vol2_gram(s) == F(1, 4)
    assert vol2_cm(square_distances_of(s)) == F(1, 4)


def test_segment_is_half_twice_square_length():
    d = SquareDistanceData.from_edges(1, {(0, 1): F(7, 3)})
    assert vol2_cm(d) == F(7, 3)


def test_regular_tetrahedron():
    d = SquareDistanceData(tuple(tuple(0 if i == j else 1 for j in range(4)) for i in range(4)))
    # volume of unit regular tetrahedron is sqrt(2)/12
    assert vol2_cm(d) == F(2, 144)


def test_distance_data_validation():
    with pytest.raises(InvalidDistanceData):
        SquareDistanceData(())
    with pytest.raises(InvalidDistanceData):
        SquareDistanceData(((0, 1), (2, 0)))
    with pytest.raises(InvalidDistanceData):
        SquareDistanceData(((1, 1), (1, 0)))
    with pytest.raises(InvalidDistanceData):
        SquareDistanceData(((0, 1, 1), (1, 0, 1)))


def test_simplex_validation():
    with pytest.raises(EmptySimplex):
        Simplex(())
    with pytest.raises(DimensionMismatch):
        Simplex.of((0, 0), (1,))
    with pytest.raises(DimensionMismatch):
        vol2_gram(Simplex.of((0, 0), (1, 0)), RationalMatrix.identity(3))


def test_non_realizable_data_allowed():
    # triangle inequality violated: square volume comes out negative
    d = SquareDistanceData.from_edges(2, {(0, 1): 1, (0, 2): 1, (1, 2): 16})
    assert vol2_cm(d) < 0


@given(st.fractions(0, 50, max_denominator=20), st.fractions(0, 50, max_denominator=20), st.fractions(0, 50, max_denominator=20))
def test_heron_is_cm(a2, b2, c2):
    d = SquareDistanceData.from_edges(2, {(0, 1): c2, (0, 2): b2, (1, 2): a2})
    assert heron_triangle(a2, b2, c2) == vol2_cm(d)


@given(simplices())
def test_cm_matches_gram(s):
    report = verify_comparison(s)
    assert report.agree
    assert report.vol2_cm == report.vol2_gram


@given(simplices(max_k=3, max_n=3), st.data())
def test_permutation_invariance(s, data):
    order = data.draw(st.permutations(range(s.dim_k + 1)))
    assert vol2_gram(s.permuted(order)) == vol2_gram(s)
    d = square_distances_of(s)
    assert vol2_cm(d.permuted(order)) == vol2_cm(d)


@given(simplices(max_k=3, max_n=4), st.fractions(-5, 5, max_denominator=5))
def test_scaling(s, lam):
    scaled = Simplex(tuple(tuple(lam * c for c in p) for p in s.points))
    assert vol2_gram(scaled) == lam ** (2 * s.dim_k) * vol2_gram(s)


def test_squared_form_only_for_det_zero_or_one():
    r = verify_comparison(Simplex.of((0, 0), (2, 0), (0, 3)))
    assert r.agree and not r.printed_squared_form_holds
    r = verify_comparison(Simplex.of((0,), (1,)))
    assert r.agree and r.printed_squared_form_holds


def test_degenerate_simplex_both_zero():
    r = verify_comparison(Simplex.of((0, 0), (1, 1), (2, 2)))
    assert r.det_gram == 0 and r.det_cm_normalized == 0


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n),
    st.integers(1, n).flatmap(lambda k: st.lists(
        st.lists(coord, min_size=n, max_size=n), min_size=k + 1, max_size=k + 1)))))
def test_metric_change(pair):
    rows, pts = pair
    h = RationalMatrix.from_rows(rows)
    g = transpose(h) @ h
    s = Simplex(tuple(tuple(p) for p in pts))
    assert vol2_gram(s, g) == vol2_metric_via_cm(s, h)
    assert det_exact(g) == det_exact(h) ** 2


def test_cm_matrix_shape():
    c = cm_matrix(SquareDistanceData.from_edges(2, {(0, 1): 1, (0, 2): 1, (1, 2): 1}))
    assert c.k == 2
    assert c.matrix.row(0) == (0, 1, 1, 1)
