import pytest
from hypothesis import given, strategies as st

from simplex_metrics.errors import BadOrder, DegreeOverflow, OrderTooSmall, UnknownVector
from simplex_metrics.jet_algebra import (
    JetContext,
    MultiGradedElement,
    diff,
    make_context_infinitesimal,
    min_total_degree,
    multidegree_terms,
    rational_context,
    simplex_context,
    taylor_apply,
)
from simplex_metrics.poly import Poly


def line(thin=False, mode="full"):
    return make_context_infinitesimal(1, [("x", 2), ("y", 2)], [(diff("y", "x"), 2)],
                                      [("x", "y")] if thin else [], thin_mode=mode)


def test_line_example():
    ctx = line()
    x, y = ctx.gen("x"), ctx.gen("y")
    assert x ** 3 == 0
    assert x * x * y == x * y * y
    assert x * x * y
    thin = line(thin=True)
    tx, ty = thin.gen("x"), thin.gen("y")
    assert not tx * tx * ty
    assert tx * ty


def test_literal_thin_reading_keeps_x2y():
    # only the u_i v_j w_l products are imposed; on the line x^2 y survives
    ctx = line(thin=True, mode="literal")
    x, y = ctx.gen("x"), ctx.gen("y")
    assert x * x * y


def test_dimensions():
    assert line().dimension() == 7
    assert line(thin=True).dimension() == 6
    assert simplex_context(2, 2).dimension() == 24
    assert simplex_context(2, 2, thin=True).dimension() == 15


def test_order_one_vector():
    ctx = make_context_infinitesimal(2, [("u", 1)])
    u1, u2 = ctx.vector("u")
    assert not u1 * u2
    assert not u1 * u1
    assert u1 and u2
    assert ctx.dimension() == 3


def test_degree_bound_and_strict():
    ctx = make_context_infinitesimal(1, [("x", 1)], degree_bound=3)
    with pytest.raises(ValueError):
        make_context_infinitesimal(1, [("x", 2)], degree_bound=1)
    assert ctx.reduce(Poly.var("x") ** 2) == 0
    with pytest.raises(DegreeOverflow):
        ctx.reduce(Poly.var("x") ** 4, strict=True)


def test_validation():
    with pytest.raises(BadOrder):
        JetContext(1, [("x", 3)])
    with pytest.raises(UnknownVector):
        JetContext(1, [("x", 2)], [(diff("x", "y"), 2)])
    with pytest.raises(ValueError):
        JetContext(1, [("x", 2)], thin_mode="other")


def _elements(ctx):
    gens = [Poly.var(g) for g in ctx.generators]
    mono = st.tuples(st.integers(-3, 3), st.lists(st.sampled_from(range(len(gens))), max_size=4))
    return st.lists(mono, max_size=4).map(lambda ms: sum(
        (c * _prod(gens[i] for i in idx) for c, idx in ms), Poly()))


def _prod(it):
    out = Poly.const(1)
    for p in it:
        out = out * p
    return out


CTX = simplex_context(2, 2, thin=True)


@given(_elements(CTX), _elements(CTX), st.fractions(-3, 3, max_denominator=4))
def test_reduce_is_linear_and_idempotent(a, b, c):
    ra, rb = CTX.reduce(a), CTX.reduce(b)
    assert CTX.reduce(a + b * c) == ra + rb * c
    assert CTX.reduce(ra) == ra


@given(_elements(CTX), _elements(CTX))
def test_reduce_is_multiplicative(a, b):
    assert CTX.element(a) * CTX.element(b) == CTX.element(a * b)


@given(_elements(CTX))
def test_nilpotent_part_dies(a):
    e = CTX.element(a - Poly.const(a.constant_term()))
    assert not e ** (CTX.degree_bound + 1)


def test_free_symbols_are_coefficients():
    ctx = line()
    c = Poly.var("coef")
    x = Poly.var("x")
    assert ctx.reduce(c * x ** 3) == 0
    assert ctx.reduce(c * x) == c * x


def test_taylor_apply_matches_substitution():
    ctx = line()
    f = Poly.var("X") ** 4 + 3 * Poly.var("X")
    got = taylor_apply(f, ["X"], [2], [ctx.gen("x")], 4, ctx)
    assert got == ctx.element(f.subs({"X": Poly.const(2) + Poly.var("x")}))


def test_taylor_apply_order_too_small():
    ctx = line()
    f = Poly.var("X") ** 2
    with pytest.raises(OrderTooSmall):
        taylor_apply(f, ["X"], [0], [ctx.gen("x")], 1, ctx)


def test_rational_context_is_plain_polys():
    ctx = rational_context(2)
    assert ctx.element(Poly.const(5)) == 5
    assert ctx.dimension() == 1


def test_multigraded_degrees():
    w = MultiGradedElement.monomial([(1, 0), (0, 1)], 2)
    t = MultiGradedElement.monomial([(2, 0), (0, 1)], 1)
    delta = (w + t) ** 2 - w ** 2
    assert min_total_degree(delta) == 5
    assert min_total_degree(MultiGradedElement(2, 2)) == float("inf")
    assert multidegree_terms(w) == [((1, 1), 2)]


def test_multigraded_evaluate():
    ctx = simplex_context(1, 2)
    d1, d2 = ctx.vector("d1"), ctx.vector("d2")
    e = MultiGradedElement.monomial([(1,), (2,)], 3)
    assert e.evaluate([d1, d2], ctx) == d1[0] * d2[0] * d2[0] * 3
