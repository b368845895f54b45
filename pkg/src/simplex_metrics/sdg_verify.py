"""Exact verification of the synthetic-geometry identities behind the volume formulas.

Every check builds generic symbolic data (fresh coefficient symbols for
metric and form fields, free vertex coordinates for simplices), evaluates
both sides in a jet algebra and compares normal forms. A nonzero normal form
is a witness and is reported verbatim; nothing here uses tolerances.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import factorial
from typing import Callable, Dict, List, Optional, Sequence

from .exact_linalg import (
    RationalMatrix,
    det_exact,
    det_expand,
    rational_cholesky_if_exact,
    transpose,
)
from .jet_algebra import (
    JetContext,
    MultiGradedElement,
    coordinate_names,
    diff,
    make_context_infinitesimal,
    min_total_degree,
    simplex_context,
    taylor_apply,
)
from .poly import Poly
from .riemannian import (
    FormField,
    InfinitesimalSimplex,
    MetricField,
    evaluate_on_simplex,
    extend_form,
    g_pair,
    sigma_g,
    sigma_omega,
    square_distance_table,
    volume_form_squared,
)
from .simplex_volume import Simplex, cm_factor, cm_layout, vol2_gram, vol2_metric_via_cm

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class SubResult:
    name: str
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "status": PASS if self.ok else FAIL}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class VerificationReport:
    check_name: str
    statement: str
    status: str
    witness: Optional[str] = None
    parameters: Dict[str, object] = field(default_factory=dict)
    subresults: List[SubResult] = field(default_factory=list)

    def __post_init__(self):
        if self.status not in (PASS, FAIL, SKIPPED):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == FAIL and not self.witness:
            raise ValueError("a failing report needs a witness")

    @property
    def sort_key(self):
        return (self.check_name, json.dumps(self.parameters, sort_keys=True, default=str))

    def to_json(self) -> dict:
        return {
            "check": self.check_name,
            "statement": self.statement,
            "status": self.status,
            "witness": self.witness,
            "parameters": {k: _jsonable(v) for k, v in sorted(self.parameters.items())},
            "subresults": [s.to_json() for s in self.subresults],
        }

    def to_json_line(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    return v


class _Collector:
    """Accumulates sub-results; the first failure supplies the report's witness."""

    def __init__(self):
        self.subs: List[SubResult] = []
        self.witness: Optional[str] = None

    def zero(self, name: str, value) -> bool:
        ok = not value
        self._add(name, ok, "" if ok else f"nonzero residual: {value}")
        return ok

    def nonzero(self, name: str, value, why: str) -> bool:
        ok = bool(value)
        self._add(name, ok, f"witness: {value}" if ok else why)
        return ok

    def truth(self, name: str, ok: bool, detail: str = "", failure: str = "") -> bool:
        self._add(name, ok, detail if ok else (failure or detail or "condition violated"))
        return ok

    def _add(self, name, ok, detail):
        self.subs.append(SubResult(name, ok, detail))
        if not ok and self.witness is None:
            self.witness = f"{name}: {detail}"

    def report(self, check: str, statement: str, params: dict) -> VerificationReport:
        status = FAIL if self.witness else PASS
        return VerificationReport(check, statement, status, self.witness, params, self.subs)


def _skipped(check: str, statement: str, params: dict, why: str) -> VerificationReport:
    return VerificationReport(check, statement, SKIPPED, None, dict(params, reason=why))


# Euclidean symmetry checks -----------------------------------------------------

_CM_STATEMENT = "The Cayley-Menger determinant is invariant under all permutations of the vertices"


def check_cm_symmetry(k: int) -> VerificationReport:
    params = {"k": k}
    if not 1 <= k <= 4:
        return _skipped("check_cm_symmetry", _CM_STATEMENT, params, "needs 1 <= k <= 4")
    size = k + 1

    def sym(i, j):
        i, j = min(i, j), max(i, j)
        return f"g{i}{j}"

    table = [[Poly.var(sym(i, j)) if i != j else Poly() for j in range(size)] for i in range(size)]
    det = det_expand(cm_layout(table, Poly(), Poly.const(1)), Poly.const(1))
    col = _Collector()
    bad = 0
    for perm in permutations(range(size)):
        mapping = {sym(i, j): sym(perm[i], perm[j]) for i in range(size) for j in range(i + 1, size)}
        residual = det.rename(mapping) - det
        if residual:
            bad += 1
            col.zero(f"permutation {perm}", residual)
    col.truth("all permutations", bad == 0,
              f"{factorial(size)} permutations, determinant has {len(det)} terms",
              f"{bad} permutations changed the determinant")
    return col.report("check_cm_symmetry", _CM_STATEMENT, params)


_GRAM_STATEMENT = "The Gram determinant det(Y^T Y) is invariant under all permutations of the vertices"


def _vertex_symbols(k: int, n: int) -> List[List[Poly]]:
    return [[Poly.var(f"P{i}_{a + 1}") for a in range(n)] for i in range(k + 1)]


def _poly_matmul(a, b):
    return [[sum((a[i][t] * b[t][j] for t in range(len(b))), Poly()) for j in range(len(b[0]))]
            for i in range(len(a))]


def _gram_det(cols: Sequence[Sequence[Poly]]) -> Poly:
    k = len(cols)
    gram = [[sum((x * y for x, y in zip(cols[i], cols[j])), Poly()) for j in range(k)] for i in range(k)]
    return det_expand(gram, Poly.const(1))


def check_gram_symmetry(k: int, n: int) -> VerificationReport:
    params = {"k": k, "n": n}
    if not 1 <= k <= n <= 4:
        return _skipped("check_gram_symmetry", _GRAM_STATEMENT, params, "needs 1 <= k <= n <= 4")
    pts = _vertex_symbols(k, n)
    cols = [[p - q for p, q in zip(pts[j], pts[0])] for j in range(1, k + 1)]
    det = _gram_det(cols)
    y = [[cols[j][a] for j in range(k)] for a in range(n)]
    col = _Collector()
    renamed_bad = s_bad = 0
    for perm in permutations(range(k + 1)):
        mapping = {f"P{i}_{a + 1}": f"P{perm[i]}_{a + 1}" for i in range(k + 1) for a in range(n)}
        residual = det.rename(mapping) - det
        if residual:
            renamed_bad += 1
            col.zero(f"renaming {perm}", residual)
        # Y_perm = Y S with S[i-1][j-1] = [i == perm(j)] - [i == perm(0)], an integer matrix of det +-1
        s = [[(1 if i == perm[j] else 0) - (1 if i == perm[0] else 0) for j in range(1, k + 1)]
             for i in range(1, k + 1)]
        ys = _poly_matmul(y, [[Poly.const(v) for v in row] for row in s])
        direct = [[pts[perm[j]][a] - pts[perm[0]][a] for j in range(1, k + 1)] for a in range(n)]
        s_det = det_exact(RationalMatrix.from_rows(s))
        if any(ys[a][j] != direct[a][j] for a in range(n) for j in range(k)) or s_det * s_det != 1:
            s_bad += 1
            col.truth(f"S matrix {perm}", False, failure=f"Y S != Y_perm or det S = {s_det}")
    col.truth("renaming", renamed_bad == 0, f"{factorial(k + 1)} permutations",
              f"{renamed_bad} permutations changed the determinant")
    col.truth("s_matrix", s_bad == 0, "Y_perm = Y S with det S = +-1 for every permutation",
              f"{s_bad} permutations have no unimodular S")
    return col.report("check_gram_symmetry", _GRAM_STATEMENT, params)


# First-order structure of square-distance functions ---------------------------------------

_AB_STATEMENT = ("A function on second-order neighbour pairs vanishing on the diagonal is "
                 "symmetric iff it vanishes on first-order neighbour pairs")


def _form_value(omega: FormField, ctx: JetContext, base, at, vector) -> object:
    """``Omega(base + at; vector)`` for a 1-form, coefficients Taylor-applied."""
    total = ctx.zero()
    for (a,), c in omega.coefficients.items():
        if vector[a]:
            total = total + taylor_apply(c, omega.coords, base, at, c.degree(), ctx) * vector[a]
    return total


def _square_distance(field_: MetricField, omega: Optional[FormField], c_field: Optional[Poly],
                     ctx: JetContext, base, x, y):
    """``C(x) + Omega(x; y - x) + (y - x)^T G(x) (y - x)``."""
    value = g_pair(field_, ctx, x, y, base)
    d = [b - a for a, b in zip(x, y)]
    if omega is not None:
        value = value + _form_value(omega, ctx, base, x, d)
    if c_field is not None:
        value = value + taylor_apply(c_field, field_.coords, base, x, c_field.degree(), ctx)
    return value


def check_prop_ab(n: int) -> VerificationReport:
    params = {"n": n}
    if not 1 <= n <= 3:
        return _skipped("check_prop_ab", _AB_STATEMENT, params, "needs 1 <= n <= 3")
    g = MetricField.generic(n)
    omega = FormField.generic(n, 1)
    c_field = FormField.generic(n, 0, prefix="C").coefficients[()]
    base = (0,) * n
    col = _Collector()

    ctx2 = make_context_infinitesimal(n, [("u", 2)])
    o2, u2 = ctx2.zero_vector(), ctx2.vector("u")
    diag = _square_distance(g, omega, c_field, ctx2, base, o2, o2)
    c_at = taylor_apply(c_field, g.coords, base, o2, 1, ctx2)
    col.zero("diagonal_value_is_C", diag - c_at)
    col.nonzero("diagonal_forces_C_zero", c_at, "C(x) reduced to zero; vanishing on the diagonal is vacuous")

    forward = _square_distance(g, None, None, ctx2, base, o2, u2)
    backward = _square_distance(g, None, None, ctx2, base, u2, o2)
    col.zero("symmetric_when_omega_zero", forward - backward)
    moved = g_pair(g, ctx2, u2, o2, base)
    col.zero("metric_at_either_end", forward - moved)

    ctx1 = make_context_infinitesimal(n, [("u", 1)])
    o1, u1 = ctx1.zero_vector(), ctx1.vector("u")
    col.zero("vanishes_on_first_order_pairs", _square_distance(g, None, None, ctx1, base, o1, u1))
    forward = _square_distance(g, omega, None, ctx1, base, o1, u1)
    backward = _square_distance(g, omega, None, ctx1, base, u1, o1)
    om = _form_value(omega, ctx1, base, o1, u1)
    # Alternation of Omega is assumed: the residual equals 2 Omega(x; y - x) exactly
    col.zero("asymmetry_is_twice_omega", forward - backward - om * 2)
    col.nonzero("omega_detected", om, "Omega(x; y - x) reduced to zero on first-order pairs")
    return col.report("check_prop_ab", _AB_STATEMENT, params)


# Forms on second-order simplices -------------------------------------------------------------

_SQ_STATEMENT = ("The squared extension of a differential form is unchanged by swapping the "
                 "first two vertices of a second-order simplex")


def check_squaring(k: int, n: int, coeff_degree: int = 1) -> VerificationReport:
    params = {"k": k, "n": n, "coeff_degree": coeff_degree}
    if not (1 <= k <= 2 and 1 <= n <= 2 and k <= n):
        return _skipped("check_squaring", _SQ_STATEMENT, params, "needs 1 <= k <= n <= 2")
    ctx = simplex_context(n, k)
    s = InfinitesimalSimplex.from_context(ctx, k)
    swapped = s.permuted([1, 0] + list(range(2, k + 1)))
    col = _Collector()
    omega = FormField.generic(n, k, degree=coeff_degree)
    col.zero("squared_values_agree", sigma_omega(omega, swapped) - sigma_omega(omega, s))

    const = FormField.generic(n, k, degree=0, prefix="K")
    col.zero("constant_coefficients", sigma_omega(const, swapped) - sigma_omega(const, s))
    col.zero("constant_unsquared_alternates", extend_form(const, swapped) + extend_form(const, s))

    unsquared = extend_form(omega, swapped) + extend_form(omega, s)
    params["unsquared_asymmetry"] = "witness found" if unsquared else "no witness at this size"
    if unsquared:
        params["unsquared_witness"] = str(unsquared)

    if k == 1:
        # Omega(x1; x0 - x1) = A + B with A = Omega(x0; x0 - x1) and B the gradient term
        u = s.displacements()[0]
        minus_u = [-c for c in u]
        o = ctx.zero_vector()
        a_term = _form_value(omega, ctx, s.base, o, minus_u)
        b_term = ctx.zero()
        for (a,), c in omega.coefficients.items():
            for b, name in enumerate(omega.coords):
                slope = c.diff(name)
                if slope and minus_u[a] and u[b]:
                    b_term = b_term + ctx.element(slope.subs(dict(zip(omega.coords, s.base)))) \
                        * u[b] * minus_u[a]
        col.zero("expansion_matches", extend_form(omega, swapped) - a_term - b_term)
        col.zero("trilinear_term_vanishes", a_term * b_term)
        col.zero("quadrilinear_term_vanishes", b_term * b_term)
    return col.report("check_squaring", _SQ_STATEMENT, params)


_EXT_STATEMENT = ("Perturbing a multilinear form by terms of total degree >= k+1 changes its square only "
                  "in degree >= 2k+1, which vanishes on second-order k-simplices")


def random_multilinear(rng: random.Random, k: int, n: int) -> MultiGradedElement:
    terms = {}
    for dirs in product(range(n), repeat=k):
        c = rng.randint(-5, 5)
        if c:
            terms[tuple(tuple(1 if a == d else 0 for a in range(n)) for d in dirs)] = c
    return MultiGradedElement(k, n, terms)


def _random_factor(rng: random.Random, n: int, degree: int) -> tuple:
    exps = [0] * n
    for _ in range(degree):
        exps[rng.randrange(n)] += 1
    return tuple(exps)


def random_perturbation(rng: random.Random, k: int, n: int, max_terms: int = 4) -> MultiGradedElement:
    """Random element with every factor of degree >= 1 and total degree >= k + 1."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        degrees = [1] * k
        for _ in range(rng.randint(1, 2)):
            degrees[rng.randrange(k)] += 1
        key = tuple(_random_factor(rng, n, d) for d in degrees)
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        terms[key] = terms.get(key, 0) + c
    return MultiGradedElement(k, n, terms)


def check_extension_independence(k: int, n: int, trials: int = 50, seed: int = 0,
                                 evaluate_trials: int = 5) -> VerificationReport:
    params = {"k": k, "n": n, "trials": trials, "seed": seed}
    if not (1 <= k <= 3 and 1 <= n <= 3):
        return _skipped("check_extension_independence", _EXT_STATEMENT, params,
                        "needs 1 <= k <= 3 and 1 <= n <= 3")
    rng = random.Random(f"ext-{seed}-{k}-{n}")
    ctx = simplex_context(n, k)
    s = InfinitesimalSimplex.from_context(ctx, k)
    col = _Collector()
    omega = random_multilinear(rng, k, n)
    zero_theta = MultiGradedElement(k, n, {})
    col.truth("theta_zero", not ((omega + zero_theta) ** 2 - omega ** 2), "difference is zero")
    low = vanish_bad = 0
    worst = None
    for t in range(trials):
        theta = random_perturbation(rng, k, n)
        delta = (omega + theta) ** 2 - omega ** 2
        d = min_total_degree(delta)
        worst = d if worst is None else min(worst, d)
        if d < 2 * k + 1:
            low += 1
            col.truth(f"trial {t} degree", False, failure=f"min total degree {d} < {2 * k + 1}")
        if t < evaluate_trials:
            value = evaluate_on_simplex(delta, s)
            if value:
                vanish_bad += 1
                col.zero(f"trial {t} vanishes", value)
    params["min_degree_seen"] = worst
    col.truth("degree_bound", low == 0, f"min total degree >= {2 * k + 1} in all {trials} trials",
              f"{low} trials below the bound")
    col.truth("vanishes_on_simplex", vanish_bad == 0,
              f"evaluated {min(trials, evaluate_trials)} differences on a generic simplex",
              f"{vanish_bad} differences did not vanish")
    return col.report("check_extension_independence", _EXT_STATEMENT, params)


# Thinness ---------------------------------------------------------------------------------------------

_THIN_STATEMENT = ("On a thin 2-simplex (x, y, z) the square distance g(y, z) can use the "
                   "metric at x in place of the metric at y")


def check_thin_lemma(n: int, thin: bool = True, thin_mode: str = "full") -> VerificationReport:
    params = {"n": n, "thin": thin}
    if thin_mode != "full":
        params["thin_mode"] = thin_mode
    if not 1 <= n <= 3:
        return _skipped("check_thin_lemma", _THIN_STATEMENT, params, "needs 1 <= n <= 3")
    g = MetricField.generic(n)
    col = _Collector()

    def residual(field_, ctx):
        s = InfinitesimalSimplex.from_context(ctx, 2)
        _, y, z = s.offsets
        return g_pair(field_, ctx, y, z, s.base) - g_pair(field_.at(s.base), ctx, y, z, s.base)

    thin_ctx = simplex_context(n, 2, thin=thin, thin_mode=thin_mode)
    col.zero("metric_at_first_vertex", residual(g, thin_ctx))
    const = MetricField.generic(n, degree=0, prefix="K")
    col.zero("constant_metric", residual(const, thin_ctx))
    plain = simplex_context(n, 2, thin=False)
    col.nonzero("fails_without_thinness", residual(g, plain),
                "residual vanished without thinness; the hypothesis looks unnecessary")
    return col.report("check_thin_lemma", _THIN_STATEMENT, params)


_EX_STATEMENT = ("On the line, 2-infinitesimal (0, x, y) forces x^2 y = x y^2 but not x^2 y = 0, "
                 "thinness forces x^2 y = 0, and first-order whiskers are thin")


def _thin_generators(ctx: JetContext, names: Sequence[str]) -> List:
    coords = []
    for nm in names:
        coords.extend(ctx.gen(c) for c in coordinate_names(nm, ctx.n_dim))
    return coords


def check_thin_examples(thin: bool = True, whisker_n: int = 2,
                        thin_mode: str = "full") -> VerificationReport:
    params = {"thin": thin, "whisker_n": whisker_n}
    if thin_mode != "full":
        params["thin_mode"] = thin_mode
    col = _Collector()
    pair = [("x", 2), ("y", 2)]
    plain = make_context_infinitesimal(1, pair, [(diff("y", "x"), 2)])
    x, y = plain.gen("x"), plain.gen("y")
    col.zero("x2y_eq_xy2", x * x * y - x * y * y)
    free = col.nonzero("x2y_nonzero_without_thinness", x * x * y,
                       "x^2 y vanished without thinness")
    thin_ctx = make_context_infinitesimal(1, pair, [(diff("y", "x"), 2)],
                                          [("x", "y")] if thin else [], thin_mode=thin_mode)
    tx, ty = thin_ctx.gen("x"), thin_ctx.gen("y")
    forced = col.zero("x2y_zero_with_thinness", tx * tx * ty)
    col.subs.append(SubResult("x2y_needs_thinness", free and forced))

    n = whisker_n
    whisker = make_context_infinitesimal(n, [("u", 1), ("v", 1)], [(diff("v", "u"), 2)])
    u, v = whisker.vector("u"), whisker.vector("v")
    w = [b - a for a, b in zip(u, v)]
    bad_tri = [(i, j, l) for i in range(n) for j in range(n) for l in range(n) if u[i] * v[j] * w[l]]
    coords = u + v
    cubic_left = 0
    for i in range(len(coords)):
        for j in range(i, len(coords)):
            for l in range(j, len(coords)):
                if coords[i] * coords[j] * coords[l]:
                    cubic_left += 1
    col.truth("whisker_is_thin", not bad_tri and not cubic_left,
              f"all trilinear and cubic relations already hold for n={n}",
              f"{len(bad_tri)} trilinear and {cubic_left} cubic products survive")
    return col.report("check_thin_examples", _EX_STATEMENT, params)


# Volume form ---------------------------------------------------------------------------------

_VF_STATEMENT = ("The metric square-density and the square of sqrt(det G) det(Y) / n! agree on thin "
                 "n-simplices")


def _frozen_cm(field_: MetricField, s: InfinitesimalSimplex):
    frozen = field_.at(s.base)
    table = square_distance_table(frozen, s)
    ctx = s.ctx
    return det_expand(cm_layout(table, ctx.zero(), ctx.one()), ctx.one()) * cm_factor(s.dim_k)


def _random_integer_simplex(rng: random.Random, k: int, n: int) -> Simplex:
    return Simplex(tuple(tuple(rng.randint(-9, 9) for _ in range(n)) for _ in range(k + 1)))


def _random_upper(rng: random.Random, n: int) -> RationalMatrix:
    return RationalMatrix.from_rows(
        [[rng.randint(1, 5) if i == j else (rng.randint(-4, 4) if j > i else 0) for j in range(n)]
         for i in range(n)])


def _random_invertible(rng: random.Random, n: int) -> RationalMatrix:
    while True:
        h = RationalMatrix.from_rows([[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])
        if det_exact(h):
            return h


def check_volume_form_theorem(n: int, thin: bool = True, trials: int = 20,
                              seed: int = 0) -> VerificationReport:
    params = {"n": n, "thin": thin, "trials": trials, "seed": seed}
    if not 1 <= n <= 3:
        return _skipped("check_volume_form_theorem", _VF_STATEMENT, params, "needs 1 <= n <= 3")
    g = MetricField.generic(n)
    col = _Collector()

    ctx = simplex_context(n, n, thin=thin)
    s = InfinitesimalSimplex.from_context(ctx, n)
    sg = sigma_g(g, s)
    vf = volume_form_squared(g, s)
    col.zero("thin_simplex" if thin else "simplex", sg - vf)
    params["thin_sides_vanish"] = not sg and not vf
    col.zero("metric_frozen_at_base", sg - _frozen_cm(g, s))

    plain = simplex_context(n, n)
    sp = InfinitesimalSimplex.from_context(plain, n)
    sgp = sigma_g(g, sp)
    col.zero("second_order_simplex", sgp - volume_form_squared(g, sp))
    col.nonzero("second_order_nonvacuous", sgp, "both sides vanished on the plain simplex")

    # symbolic Gram step: frozen Cayley-Menger equals det(Y^T G(x0) Y) / (n!)^2
    frozen = g.at(sp.base)
    g0 = frozen.jet_matrix(plain, sp.base, sp.offsets[0])
    cols = sp.displacements()
    gram = [[sum((cols[i][a] * g0[a][b] * cols[j][b] for a in range(n) for b in range(n)
                  if cols[i][a] and cols[j][b] and g0[a][b]), plain.zero())
             for j in range(n)] for i in range(n)]
    col.zero("frozen_gram_step",
             _frozen_cm(g, sp) - det_expand(gram, plain.one()) * Fraction(1, factorial(n) ** 2))

    rng = random.Random(f"vf-{seed}-{n}")
    bad = 0
    for t in range(trials):
        h = _random_upper(rng, n) if t % 2 == 0 else _random_invertible(rng, n)
        gm = transpose(h) @ h
        simplex = _random_integer_simplex(rng, n, n)
        chol = rational_cholesky_if_exact(gm)
        lhs = vol2_gram(simplex, gm)
        rhs = vol2_metric_via_cm(simplex, h)
        ok = lhs == rhs and det_exact(gm) == det_exact(h) ** 2
        if chol is not None:
            ok = ok and transpose(chol) @ chol == gm and vol2_metric_via_cm(simplex, chol) == lhs
        elif t % 2 == 0:
            ok = False
        if not ok:
            bad += 1
            col.truth(f"instance {t}", False, failure=f"H={h.to_rows()}, points={simplex.points}")
    col.truth("cholesky_instances", bad == 0, f"{trials} exact instances of G = H^T H",
              f"{bad} instances disagree")
    return col.report("check_volume_form_theorem", _VF_STATEMENT, params)


# Runner -----------------------------------------------------------------------------------------

CHECKS: Dict[str, Callable] = {
    "check_cm_symmetry": check_cm_symmetry,
    "check_gram_symmetry": check_gram_symmetry,
    "check_prop_ab": check_prop_ab,
    "check_squaring": check_squaring,
    "check_extension_independence": check_extension_independence,
    "check_thin_lemma": check_thin_lemma,
    "check_thin_examples": check_thin_examples,
    "check_volume_form_theorem": check_volume_form_theorem,
}

# largest sizes each check supports; the grid is fixed so reports line up across runs
_GRID = {
    "check_cm_symmetry": [{"k": k} for k in range(1, 5)],
    "check_gram_symmetry": [{"k": k, "n": n} for n in range(1, 5) for k in range(1, n + 1)],
    "check_prop_ab": [{"n": n} for n in range(1, 4)],
    "check_squaring": [{"k": k, "n": n} for n in range(1, 3) for k in range(1, n + 1)],
    "check_extension_independence": [{"k": k, "n": n} for n in range(1, 4) for k in range(1, 4)],
    "check_thin_lemma": [{"n": n} for n in range(1, 4)],
    "check_thin_examples": [{}],
    "check_volume_form_theorem": [{"n": n} for n in range(1, 4)],
}

_SEEDED = {"check_extension_independence", "check_volume_form_theorem"}


def run_all(max_n: int = 3, max_k: int = 3, seed: int = 0,
            only: Optional[str] = None) -> List[VerificationReport]:
    """Run every check over the fixed size grid; sizes beyond the limits are skipped."""
    if only is not None and only not in CHECKS:
        raise KeyError(only)
    reports = []
    for name, grid in _GRID.items():
        if only is not None and name != only:
            continue
        fn = CHECKS[name]
        for params in grid:
            if params.get("n", 0) > max_n or params.get("k", 0) > max_k:
                reports.append(_skipped(name, _statement_of(name), params, "outside the requested sizes"))
                continue
            kwargs = dict(params)
            if name in _SEEDED:
                kwargs["seed"] = seed
            reports.append(fn(**kwargs))
    reports.sort(key=lambda r: r.sort_key)
    return reports


def _statement_of(name: str) -> str:
    return {
        "check_cm_symmetry": _CM_STATEMENT,
        "check_gram_symmetry": _GRAM_STATEMENT,
        "check_prop_ab": _AB_STATEMENT,
        "check_squaring": _SQ_STATEMENT,
        "check_extension_independence": _EXT_STATEMENT,
        "check_thin_lemma": _THIN_STATEMENT,
        "check_thin_examples": _EX_STATEMENT,
        "check_volume_form_theorem": _VF_STATEMENT,
    }[name]
