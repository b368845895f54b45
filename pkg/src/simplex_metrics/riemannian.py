"""Metric and form fields on one chart, evaluated on infinitesimal simplices.

A metric field ``G(x)`` and a k-form field ``Omega(x; v_1, ..., v_k)`` have
polynomial coefficients in the chart coordinates ``X1, ..., Xn``. Simplices
are given by a base point ``p`` (rationals or free symbols) and one offset
vector per vertex, so vertex ``i`` is ``p + offsets[i]``. Offsets are jet
elements, so evaluating a field at a vertex is a Taylor expansion around
``p`` reduced in the simplex's context.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import DimensionMismatch, NotSymmetric
from .exact_linalg import RationalMatrix, det_expand, parse_rational, to_rational
from .jet_algebra import (
    JetContext,
    JetElement,
    MultiGradedElement,
    rational_context,
    taylor_apply,
)
from .poly import Poly
from .simplex_volume import cm_factor, cm_layout


def chart_coordinates(n: int) -> Tuple[str, ...]:
    return tuple(f"X{a + 1}" for a in range(n))


def _generic_poly(name: str, coords: Sequence[str], degree: int) -> Poly:
    """``sum_alpha name_alpha * X^alpha`` over all multi-indices up to ``degree``."""
    n = len(coords)
    out = Poly.var(name)
    for d in range(1, degree + 1):
        for combo in _multisets(n, d):
            exps: Dict[str, int] = {}
            for a in combo:
                exps[coords[a]] = exps.get(coords[a], 0) + 1
            suffix = "".join(str(a + 1) for a in combo)
            out = out + Poly.var(f"d{name}_{suffix}") * Poly.monomial(exps)
    return out


def _multisets(n: int, d: int):
    def rec(start, left):
        if left == 0:
            yield ()
            return
        for a in range(start, n):
            for rest in rec(a, left - 1):
                yield (a,) + rest
    return rec(0, d)


@dataclass(frozen=True)
class MetricField:
    n_dim: int
    entries: tuple
    coords: tuple = None

    def __post_init__(self):
        n = self.n_dim
        coords = tuple(self.coords) if self.coords else chart_coordinates(n)
        if len(coords) != n:
            raise DimensionMismatch("one chart coordinate per dimension")
        entries = tuple(tuple(Poly.lift(e) if not isinstance(e, Poly) else e for e in row)
                        for row in self.entries)
        if len(entries) != n or any(len(r) != n for r in entries):
            raise DimensionMismatch(f"metric field must be {n}x{n}")
        for i in range(n):
            for j in range(i):
                if entries[i][j] != entries[j][i]:
                    raise NotSymmetric(f"G[{i}][{j}] != G[{j}][{i}]")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "coords", coords)

    @classmethod
    def constant(cls, g: RationalMatrix) -> "MetricField":
        if not g.is_square:
            raise DimensionMismatch("metric must be square")
        return cls(g.rows, tuple(tuple(Poly.const(g[i, j]) for j in range(g.cols))
                                 for i in range(g.rows)))

    @classmethod
    def generic(cls, n: int, degree: int = 1, prefix: str = "G") -> "MetricField":
        """Symmetric field whose entries have fresh symbolic coefficients."""
        coords = chart_coordinates(n)
        rows = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                p = _generic_poly(f"{prefix}{i + 1}{j + 1}", coords, degree)
                rows[i][j] = rows[j][i] = p
        return cls(n, tuple(tuple(r) for r in rows), coords)

    @property
    def max_entry_degree(self) -> int:
        return max((e.degree() for r in self.entries for e in r), default=0)

    def is_constant(self) -> bool:
        names = set(self.coords)
        return all(not (e.variables() & names) for r in self.entries for e in r)

    def at(self, point: Sequence) -> "MetricField":
        """The constant field with value ``G(point)``."""
        sub = dict(zip(self.coords, point))
        return MetricField(self.n_dim, tuple(tuple(e.subs(sub) for e in r) for r in self.entries),
                           self.coords)

    def as_rational_matrix(self) -> RationalMatrix:
        if not all(e.is_constant() for r in self.entries for e in r):
            raise ValueError("metric field is not a rational constant")
        return RationalMatrix.from_rows([[e.constant_term() for e in r] for r in self.entries])

    def jet_matrix(self, ctx: JetContext, base: Sequence, offset: Sequence[JetElement]):
        """Matrix of ``G(base + offset)`` entries as jet elements."""
        out = []
        for i in range(self.n_dim):
            row = []
            for j in range(self.n_dim):
                if j < i:
                    row.append(out[j][i])
                    continue
                e = self.entries[i][j]
                order = min(e.degree(), ctx.degree_bound) if e else 0
                row.append(taylor_apply(e, self.coords, base, offset, max(order, 0), ctx))
            out.append(row)
        return out


@dataclass(frozen=True)
class FormField:
    """Alternating k-form ``sum_I c_I(x) dx_I`` over increasing index tuples ``I``."""

    n_dim: int
    arity: int
    coefficients: Mapping[tuple, Poly]
    coords: tuple = None

    def __post_init__(self):
        coords = tuple(self.coords) if self.coords else chart_coordinates(self.n_dim)
        coeffs = {}
        for idx, c in dict(self.coefficients).items():
            idx = tuple(idx)
            if len(idx) != self.arity or list(idx) != sorted(set(idx)):
                raise ValueError(f"form index {idx} must be strictly increasing of length {self.arity}")
            if any(not 0 <= a < self.n_dim for a in idx):
                raise DimensionMismatch(f"form index {idx} out of range")
            c = Poly.lift(c)
            if c:
                coeffs[idx] = c
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "coords", coords)

    @classmethod
    def generic(cls, n: int, k: int, degree: int = 1, prefix: str = "W") -> "FormField":
        coords = chart_coordinates(n)
        coeffs = {}
        for idx in combinations(range(n), k):
            tag = "".join(str(a + 1) for a in idx)
            coeffs[idx] = _generic_poly(f"{prefix}{tag}", coords, degree)
        return cls(n, k, coeffs, coords)

    @classmethod
    def volume(cls, n: int, scale=1) -> "FormField":
        return cls(n, n, {tuple(range(n)): Poly.lift(scale)})

    def at(self, point: Sequence) -> "FormField":
        sub = dict(zip(self.coords, point))
        return FormField(self.n_dim, self.arity,
                         {i: c.subs(sub) for i, c in self.coefficients.items()}, self.coords)

    def multilinear_part(self, point: Sequence) -> MultiGradedElement:
        """``Omega(point; -, ..., -)`` as an element of multidegree (1, ..., 1)."""
        k, n = self.arity, self.n_dim
        sub = dict(zip(self.coords, point))
        terms: Dict[tuple, object] = {}
        for idx, c in self.coefficients.items():
            value = c.subs(sub)
            if value.is_constant():
                value = value.constant_term()
            for perm in _permutations_with_sign(k):
                sign, order = perm
                key = tuple(
                    tuple(1 if a == idx[order[j]] else 0 for a in range(n)) for j in range(k)
                )
                terms[key] = terms.get(key, 0) + sign * value
        return MultiGradedElement(k, n, terms)


def _permutations_with_sign(k: int):
    from itertools import permutations
    for p in permutations(range(k)):
        inversions = sum(1 for i in range(k) for j in range(i + 1, k) if p[i] > p[j])
        yield (-1 if inversions % 2 else 1), p


@dataclass(frozen=True)
class InfinitesimalSimplex:
    ctx: JetContext
    base: tuple
    offsets: tuple

    def __post_init__(self):
        n = self.ctx.n_dim
        base = tuple(self.base)
        if len(base) != n:
            raise DimensionMismatch(f"base point needs {n} coordinates")
        offsets = tuple(tuple(v) for v in self.offsets)
        if not offsets or any(len(v) != n for v in offsets):
            raise DimensionMismatch(f"each offset needs {n} coordinates")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "offsets", offsets)

    @classmethod
    def from_context(cls, ctx: JetContext, k: int, prefix: str = "d",
                     base: Optional[Sequence] = None) -> "InfinitesimalSimplex":
        """Vertices ``p, p + d1, ..., p + dk`` using the context's vectors."""
        n = ctx.n_dim
        offsets = [ctx.zero_vector()] + [ctx.vector(f"{prefix}{i}") for i in range(1, k + 1)]
        return cls(ctx, tuple(base) if base is not None else (0,) * n, tuple(offsets))

    @classmethod
    def from_points(cls, points: Sequence[Sequence]) -> "InfinitesimalSimplex":
        """A simplex of ordinary rational points (no infinitesimals)."""
        pts = [[to_rational(c) for c in p] for p in points]
        n = len(pts[0])
        ctx = rational_context(n)
        x0 = pts[0]
        offsets = [[ctx.element(Poly.const(a - b)) for a, b in zip(p, x0)] for p in pts]
        return cls(ctx, tuple(x0), tuple(offsets))

    @property
    def dim_k(self) -> int:
        return len(self.offsets) - 1

    def permuted(self, order: Sequence[int]) -> "InfinitesimalSimplex":
        if sorted(order) != list(range(len(self.offsets))):
            raise ValueError(f"{order} is not a permutation of the vertices")
        return InfinitesimalSimplex(self.ctx, self.base, tuple(self.offsets[i] for i in order))

    def displacements(self) -> List[List[JetElement]]:
        """Edge vectors ``x_i - x_0`` for i = 1..k."""
        o = self.offsets[0]
        return [[a - b for a, b in zip(v, o)] for v in self.offsets[1:]]


def _quadratic(vec_: Sequence[JetElement], matrix) -> JetElement:
    n = len(vec_)
    total = None
    for a in range(n):
        if not vec_[a]:
            continue
        for b in range(n):
            if not vec_[b] or not matrix[a][b]:
                continue
            t = vec_[a] * matrix[a][b] * vec_[b]
            total = t if total is None else total + t
    if total is None:
        return vec_[0] - vec_[0]
    return total


def g_pair(field_: MetricField, ctx: JetContext, u: Sequence[JetElement],
           v: Sequence[JetElement], base: Optional[Sequence] = None) -> JetElement:
    """``(v - u)^T G(p + u) (v - u)``: the square distance from ``p + u`` to ``p + v``."""
    if field_.n_dim != ctx.n_dim:
        raise DimensionMismatch("metric and context dimensions differ")
    base = tuple(base) if base is not None else (0,) * ctx.n_dim
    g = field_.jet_matrix(ctx, base, u)
    return _quadratic([b - a for a, b in zip(u, v)], g)


def square_distance_table(field_: MetricField, simplex: InfinitesimalSimplex) -> List[List[JetElement]]:
    """``g(x_i, x_j)`` with the metric taken at ``x_i``."""
    ctx = simplex.ctx
    size = len(simplex.offsets)
    mats = [field_.jet_matrix(ctx, simplex.base, o) for o in simplex.offsets]
    table = [[ctx.zero() for _ in range(size)] for _ in range(size)]
    for i in range(size):
        for j in range(size):
            if i != j:
                d = [b - a for a, b in zip(simplex.offsets[i], simplex.offsets[j])]
                table[i][j] = _quadratic(d, mats[i])
    return table


def sigma_g(field_: MetricField, simplex: InfinitesimalSimplex) -> JetElement:
    """Cayley-Menger square volume of the simplex under the metric field."""
    ctx = simplex.ctx
    table = square_distance_table(field_, simplex)
    rows = cm_layout(table, ctx.zero(), ctx.one())
    return det_expand(rows, ctx.one()) * cm_factor(simplex.dim_k)


def _column_minor_det(cols: Sequence[Sequence[JetElement]], rows_idx: Sequence[int], one):
    return det_expand([[c[r] for c in cols] for r in rows_idx], one)


def extend_form(omega: FormField, simplex: InfinitesimalSimplex) -> JetElement:
    """``Omega(x_0; x_1 - x_0, ..., x_k - x_0)`` with coefficients Taylor-applied at ``x_0``."""
    ctx = simplex.ctx
    if omega.n_dim != ctx.n_dim:
        raise DimensionMismatch("form and context dimensions differ")
    if omega.arity != simplex.dim_k:
        raise DimensionMismatch(f"{omega.arity}-form on a {simplex.dim_k}-simplex")
    cols = simplex.displacements()
    x0 = simplex.offsets[0]
    total = ctx.zero()
    for idx, c in omega.coefficients.items():
        order = min(c.degree(), ctx.degree_bound)
        coef = taylor_apply(c, omega.coords, simplex.base, x0, max(order, 0), ctx)
        if not coef:
            continue
        total = total + coef * _column_minor_det(cols, idx, ctx.one())
    return total


def sigma_omega(omega: FormField, simplex: InfinitesimalSimplex) -> JetElement:
    value = extend_form(omega, simplex)
    return value * value


def volume_form_squared(field_: MetricField, simplex: InfinitesimalSimplex) -> JetElement:
    """``det G(x_0) * det(Y)**2 / (n!)**2``, the square of the volume form's extension."""
    ctx = simplex.ctx
    n = ctx.n_dim
    if simplex.dim_k != n:
        raise DimensionMismatch(f"volume form needs an n-simplex, got k={simplex.dim_k}, n={n}")
    g0 = field_.jet_matrix(ctx, simplex.base, simplex.offsets[0])
    det_g = det_expand(g0, ctx.one())
    cols = simplex.displacements()
    det_y = _column_minor_det(cols, range(n), ctx.one())
    return det_g * det_y * det_y * Fraction(1, factorial(n) ** 2)


def evaluate_on_simplex(theta: MultiGradedElement, simplex: InfinitesimalSimplex) -> JetElement:
    """Substitute the simplex's edge vectors into the tensor factors of ``theta``."""
    return theta.evaluate(simplex.displacements(), simplex.ctx)


# JSON documents --------------------------------------------------------------

def _parse_entry(raw, coords: Sequence[str]) -> Poly:
    if isinstance(raw, str):
        return Poly.const(parse_rational(raw))
    if isinstance(raw, int) and not isinstance(raw, bool):
        return Poly.const(raw)
    if isinstance(raw, dict):
        unknown = set(raw) - {"const", "linear"}
        if unknown:
            raise ValueError(f"unknown metric entry keys {sorted(unknown)}")
        p = Poly.const(_rational_field(raw.get("const", "0")))
        lin = raw.get("linear", [])
        if not isinstance(lin, list):
            raise ValueError("'linear' must be a list")
        if lin and len(lin) != len(coords):
            raise DimensionMismatch(f"'linear' needs {len(coords)} coefficients")
        for name, c in zip(coords, lin):
            p = p + Poly.var(name) * _rational_field(c)
        return p
    raise ValueError(f"bad metric entry {raw!r}")


def _rational_field(raw) -> Fraction:
    if isinstance(raw, str):
        return parse_rational(raw)
    if isinstance(raw, int) and not isinstance(raw, bool):
        return Fraction(raw)
    raise ValueError(f"rationals must be strings like 'p/q', got {raw!r}")


def metric_from_document(doc: Mapping) -> MetricField:
    """Parse ``{"n": n, "entries": [[entry, ...], ...]}``.

    An entry is a rational string or ``{"const": r, "linear": [c_1, ..., c_n]}``.
    """
    if not isinstance(doc, Mapping) or "entries" not in doc:
        raise ValueError("metric document needs 'entries'")
    entries = doc["entries"]
    if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
        raise ValueError("'entries' must be a list of lists")
    n = doc.get("n", len(entries))
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError("'n' must be an integer")
    if len(entries) != n or any(len(r) != n for r in entries):
        raise DimensionMismatch(f"metric entries must be {n}x{n}")
    coords = chart_coordinates(n)
    return MetricField(n, tuple(tuple(_parse_entry(e, coords) for e in r) for r in entries), coords)


def metric_to_document(g: MetricField) -> dict:
    rows = []
    for r in g.entries:
        row = []
        for e in r:
            if e.degree() > 1 or e.variables() - set(g.coords):
                raise ValueError("only rational fields of degree <= 1 serialize")
            const = e.constant_term()
            lin = [e.diff(c).constant_term() for c in g.coords]
            if any(lin):
                row.append({"const": str(Fraction(const)), "linear": [str(Fraction(x)) for x in lin]})
            else:
                row.append(str(Fraction(const)))
        rows.append(row)
    return {"n": g.n_dim, "entries": rows}
