from fractions import Fraction as F
from itertools import permutations

import pytest

from simplex_metrics.errors import DimensionMismatch, NotSymmetric
from simplex_metrics.exact_linalg import RationalMatrix, transpose
from simplex_metrics.jet_algebra import make_context_infinitesimal, simplex_context
from simplex_metrics.poly import Poly
from simplex_metrics.riemannian import (
    FormField,
    InfinitesimalSimplex,
    MetricField,
    extend_form,
    g_pair,
    metric_from_document,
    metric_to_document,
    sigma_g,
    sigma_omega,
    volume_form_squared,
)
from simplex_metrics.simplex_volume import Simplex, vol2_gram


def test_euclidean_pair():
    ctx = make_context_infinitesimal(2, [("x", 2)])
    x = ctx.vector("x")
    g = MetricField.constant(RationalMatrix.identity(2))
    assert g_pair(g, ctx, ctx.zero_vector(), x) == x[0] * x[0] + x[1] * x[1]
    assert not g_pair(g, ctx, x, x)


def test_pair_metric_at_either_end():
    ctx = make_context_infinitesimal(2, [("u", 2), ("v", 2)], [({"v": 1, "u": -1}, 2)])
    g = MetricField.generic(2)
    u, v = ctx.vector("u"), ctx.vector("v")
    assert g_pair(g, ctx, u, v) == g_pair(g, ctx, v, u)


def test_metric_field_validation():
    x = Poly.var("X1")
    with pytest.raises(NotSymmetric):
        MetricField(2, ((1, x), (0, 1)))
    with pytest.raises(DimensionMismatch):
        MetricField(2, ((1, 0),))


def test_sigma_g_segment_is_pair():
    ctx = simplex_context(2, 1)
    s = InfinitesimalSimplex.from_context(ctx, 1)
    g = MetricField.generic(2)
    assert sigma_g(g, s) == g_pair(g, ctx, s.offsets[0], s.offsets[1])


def test_repeated_vertex_vanishes():
    ctx = simplex_context(2, 2)
    s = InfinitesimalSimplex.from_context(ctx, 2)
    rep = InfinitesimalSimplex(ctx, s.base, (s.offsets[0], s.offsets[1], s.offsets[1]))
    assert not sigma_g(MetricField.generic(2), rep)
    assert not sigma_omega(FormField.generic(2, 2), rep)


def test_sigma_g_symmetric_under_permutations():
    ctx = simplex_context(2, 2)
    s = InfinitesimalSimplex.from_context(ctx, 2)
    g = MetricField.generic(2)
    base = sigma_g(g, s)
    for p in permutations(range(3)):
        assert sigma_g(g, s.permuted(p)) == base


def test_sigma_omega_symmetric_under_permutations():
    ctx = simplex_context(2, 2)
    s = InfinitesimalSimplex.from_context(ctx, 2)
    om = FormField.generic(2, 2)
    base = sigma_omega(om, s)
    for p in permutations(range(3)):
        assert sigma_omega(om, s.permuted(p)) == base


def test_constant_metric_matches_gram():
    pts = [(0, 0, 0), (1, 2, 0), (0, 1, 3), (2, 0, 1)]
    h = RationalMatrix.from_rows([[1, 1, 0], [0, 2, 1], [1, 0, 1]])
    gm = transpose(h) @ h
    s = InfinitesimalSimplex.from_points(pts)
    assert sigma_g(MetricField.constant(gm), s) == vol2_gram(Simplex(tuple(pts)), gm)
    assert volume_form_squared(MetricField.constant(gm), s) == vol2_gram(Simplex(tuple(pts)), gm)


def test_volume_form_unit_triangle():
    s = InfinitesimalSimplex.from_points([(0, 0), (1, 0), (0, 1)])
    assert volume_form_squared(MetricField.constant(RationalMatrix.identity(2)), s) == F(1, 4)


def test_volume_form_needs_top_dimension():
    s = InfinitesimalSimplex.from_points([(0, 0), (1, 0)])
    with pytest.raises(DimensionMismatch):
        volume_form_squared(MetricField.constant(RationalMatrix.identity(2)), s)


def test_extend_form_top_form_is_det():
    s = InfinitesimalSimplex.from_points([(1, 1), (3, 2), (0, 5)])
    assert extend_form(FormField.volume(2), s) == (2 * 4 - 1 * -1)


def test_extend_form_alternates_in_last_vertices():
    ctx = simplex_context(2, 2)
    s = InfinitesimalSimplex.from_context(ctx, 2)
    om = FormField.generic(2, 2)
    assert extend_form(om, s.permuted([0, 2, 1])) == -extend_form(om, s)


def test_one_form_on_line():
    ctx = make_context_infinitesimal(1, [("x", 2)])
    s = InfinitesimalSimplex(ctx, (0,), (ctx.zero_vector(), ctx.vector("x")))
    x = ctx.gen("x")
    assert sigma_omega(FormField.volume(1), s) == x * x
    assert sigma_omega(FormField.volume(1), s.permuted([1, 0])) == x * x


def test_form_index_validation():
    with pytest.raises(ValueError):
        FormField(3, 2, {(1, 0): 1})
    with pytest.raises(DimensionMismatch):
        FormField(2, 1, {(2,): 1})


def test_metric_document_round_trip():
    doc = {"n": 2, "entries": [[{"const": "1", "linear": ["1/2", "0"]}, "0"],
                               ["0", {"const": "2", "linear": ["0", "-1"]}]]}
    g = metric_from_document(doc)
    assert g.entries[0][0] == 1 + Poly.var("X1") / 2
    assert metric_to_document(g) == doc
    assert not g.is_constant()
    assert g.at((0, 0)).as_rational_matrix() == RationalMatrix.diag([1, 2])


@pytest.mark.parametrize("doc", [
    {"entries": [["1", "2"], ["3", "1"]]},
    {"n": 2, "entries": [["1"]]},
    {"n": 1, "entries": [[1.5]]},
    {"n": 1, "entries": [[{"const": "1", "quad": []}]]},
    {"n": 1},
])
def test_metric_document_rejects(doc):
    with pytest.raises(ValueError):
        metric_from_document(doc)
