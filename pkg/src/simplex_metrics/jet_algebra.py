"""Finite-dimensional nilpotent quotient algebras over the rationals.

A :class:`JetContext` declares infinitesimal vectors in an ``n``-dimensional
chart. Vector ``a`` contributes generators ``a_1, ..., a_n`` (just ``a`` when
``n == 1``). Relations say which combinations are nilpotent:

* a vector of order ``r`` has all products of ``r + 1`` of its coordinates
  equal to zero;
* a constraint ``(expr, r)`` imposes the same on a linear combination of
  vectors, e.g. ``diff("b", "a")`` for the pair ``(x_a, x_b)``;
* a thin triple ``(u, v)`` with ``w = v - u`` says every trilinear map
  vanishes on every triple drawn from ``{u, v, w}``, repetitions allowed.
  That is the span of all cubic products of coordinates of ``u`` and ``v``.
  ``thin_mode="literal"`` keeps only the products ``u_i * v_j * w_l``; that
  weaker ideal does not kill ``x^2 y`` on the line and is kept for
  comparison.

Every relation is homogeneous in total degree and in coordinate weight (the
multi-index counting how often each coordinate direction appears), so the
ideal is computed class by class: the span of ``monomial * relation`` inside
one ``(weight)`` class is row-reduced once, with the graded-lex largest
monomial as pivot, and cached. Normal forms are the fully reduced remainders,
so two polynomials are congruent iff their normal forms are equal.

Variables that are not generators of the context (metric coefficients,
form coefficients, base-point symbols) are free: reduction is linear over
them.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import BadOrder, DegreeOverflow, DimensionMismatch, OrderTooSmall, UnknownVector
from .kernels import poly_mul_graded
from .poly import FIELD, Poly, mono_degree, shift, taylor_coefficients

VecExpr = Union[str, Mapping[str, object]]


def vec(expr: VecExpr) -> Dict[str, Fraction]:
    """Normalize a vector expression to ``{vector_name: coefficient}``."""
    if isinstance(expr, str):
        return {expr: Fraction(1)}
    out = {}
    for name, c in expr.items():
        c = Fraction(c)
        if c:
            out[name] = out.get(name, Fraction(0)) + c
    return {k: v for k, v in out.items() if v}


def diff(a: VecExpr, b: Optional[VecExpr] = None) -> Dict[str, Fraction]:
    """The vector expression ``a - b``; ``None`` stands for the zero vector."""
    out = dict(vec(a)) if a is not None else {}
    if b is not None:
        for name, c in vec(b).items():
            out[name] = out.get(name, Fraction(0)) - c
    return {k: v for k, v in out.items() if v}


def coordinate_names(name: str, n_dim: int) -> List[str]:
    if n_dim == 1:
        return [name]
    return [f"{name}_{a + 1}" for a in range(n_dim)]


class JetContext:
    """Quotient of a polynomial ring by nilpotency and thinness relations.

    Immutable once built; the per-class row reductions are computed lazily
    under a lock and cached.
    """

    def __init__(
        self,
        n_dim: int,
        vectors: Sequence[Tuple[str, int]],
        constraints: Sequence[Tuple[VecExpr, int]] = (),
        thin_triples: Sequence[Tuple[VecExpr, VecExpr]] = (),
        degree_bound: Optional[int] = None,
        thin_mode: str = "full",
    ):
        if thin_mode not in ("full", "literal"):
            raise ValueError(f"unknown thin_mode {thin_mode!r}")
        self.thin_mode = thin_mode
        if n_dim < 1:
            raise DimensionMismatch("n_dim must be at least 1")
        self.n_dim = n_dim
        self.orders: Dict[str, int] = {}
        for name, r in vectors:
            if r not in (1, 2):
                raise BadOrder(f"vector {name!r}: order must be 1 or 2, got {r!r}")
            if name in self.orders:
                raise ValueError(f"vector {name!r} declared twice")
            self.orders[name] = r
        self.constraints = tuple((vec(e), r) for e, r in constraints)
        for e, r in self.constraints:
            if r not in (1, 2):
                raise BadOrder(f"constraint order must be 1 or 2, got {r!r}")
            self._check_known(e)
        self.thin_triples = tuple((vec(u), vec(v)) for u, v in thin_triples)
        for u, v in self.thin_triples:
            self._check_known(u)
            self._check_known(v)

        gens = []
        for name in self.orders:
            for a, g in enumerate(coordinate_names(name, n_dim)):
                gens.append((g, name, a))
        gens.sort()
        self.generators: Tuple[str, ...] = tuple(g for g, _, _ in gens)
        self._gen_block = [self._block_index(b) for _, b, _ in gens]
        self._gen_coord = [a for _, _, a in gens]
        self._block_caps = [self.orders[b] for b in self.orders]
        self._shifts = [shift(g) for g in self.generators]
        self.mask = sum(FIELD << s for s in self._shifts)

        auto = sum(self.orders.values())
        if degree_bound is None:
            degree_bound = auto
        elif degree_bound < auto:
            raise ValueError(
                f"degree_bound {degree_bound} is below the nilpotency degree {auto}"
            )
        self.degree_bound = degree_bound

        self.relations: Tuple[Poly, ...] = tuple(self._build_relations())
        self._monomial_rels: List[tuple] = []
        self._other_rels: List[Tuple[dict, tuple, int]] = []
        for rel in self.relations:
            dense = self._dense_poly(rel)
            if not dense:
                continue
            if len(dense) == 1:
                self._monomial_rels.append(next(iter(dense)))
            else:
                weight = self._weight(next(iter(dense)))
                degree = sum(next(iter(dense)))
                self._other_rels.append((dense, weight, degree))

        self._lock = threading.RLock()
        self._classes: Dict[tuple, dict] = {}
        self._standard: Dict[tuple, list] = {}
        self._nf_cache: Dict[int, object] = {}

    # construction helpers -------------------------------------------------
    def _block_index(self, name: str) -> int:
        return list(self.orders).index(name)

    def _check_known(self, e: Mapping[str, Fraction]) -> None:
        for name in e:
            if name not in self.orders:
                raise UnknownVector(name)

    def _coords_of(self, e: Mapping[str, Fraction]) -> List[Poly]:
        out = []
        for a in range(self.n_dim):
            p = Poly()
            for name, c in e.items():
                p = p + Poly.var(coordinate_names(name, self.n_dim)[a]) * c
            out.append(p)
        return out

    def _build_relations(self) -> Iterable[Poly]:
        seen = set()

        def emit(p: Poly):
            if not p:
                return
            key = frozenset(p.terms.items())
            if key not in seen:
                seen.add(key)
                yield p

        for name, r in self.orders.items():
            yield from self._power_relations(self._coords_of({name: 1}), r, emit)
        for e, r in self.constraints:
            yield from self._power_relations(self._coords_of(e), r, emit)
        for u, v in self.thin_triples:
            w = diff(v, u)
            cu, cv, cw = self._coords_of(u), self._coords_of(v), self._coords_of(w)
            if self.thin_mode == "literal":
                for i, j, l in product(range(self.n_dim), repeat=3):
                    yield from emit(cu[i] * cv[j] * cw[l])
            else:
                yield from self._power_relations(cu + cv, 2, emit)

    def _power_relations(self, coords: List[Poly], r: int, emit) -> Iterable[Poly]:
        n = len(coords)

        def rec(start, depth, acc):
            if depth == r + 1:
                yield from emit(acc)
                return
            for a in range(start, n):
                yield from rec(a, depth + 1, acc * coords[a])

        yield from rec(0, 0, Poly.const(1))

    # dense exponent tuples ------------------------------------------------
    def _dense(self, m: int) -> tuple:
        return tuple((m >> s) & FIELD for s in self._shifts)

    def _pack(self, exps: tuple) -> int:
        return sum(e << s for e, s in zip(exps, self._shifts) if e)

    def _dense_poly(self, p: Poly) -> Dict[tuple, Fraction]:
        out = {}
        for m, c in p.terms.items():
            if m & ~self.mask:
                raise ValueError("relation mentions a non-generator variable")
            out[self._dense(m)] = c
        return out

    def _weight(self, exps: tuple) -> tuple:
        w = [0] * self.n_dim
        for e, a in zip(exps, self._gen_coord):
            w[a] += e
        return tuple(w)

    def _killed(self, exps: tuple) -> bool:
        if sum(exps) > self.degree_bound:
            return True
        load = [0] * len(self._block_caps)
        for e, b in zip(exps, self._gen_block):
            load[b] += e
        if any(x > cap for x, cap in zip(load, self._block_caps)):
            return True
        for rel in self._monomial_rels:
            if all(e >= f for e, f in zip(exps, rel)):
                return True
        return False

    def _order_key(self, exps: tuple):
        # graded lex on generator names: generators are stored sorted by name
        return (sum(exps), exps)

    def _standard_monomials(self, weight: tuple) -> list:
        """Monomials of the given coordinate weight not in the monomial ideal."""
        hit = self._standard.get(weight)
        if hit is not None:
            return hit
        per_coord = [[g for g, a in enumerate(self._gen_coord) if a == c] for c in range(self.n_dim)]
        ngen = len(self.generators)
        results = []

        def compositions(total, slots):
            if slots == 0:
                if total == 0:
                    yield ()
                return
            if slots == 1:
                yield (total,)
                return
            for first in range(total, -1, -1):
                for rest in compositions(total - first, slots - 1):
                    yield (first,) + rest

        if any(weight[c] and not per_coord[c] for c in range(self.n_dim)):
            self._standard[weight] = []
            return []
        choices = [list(compositions(weight[c], len(per_coord[c]))) for c in range(self.n_dim)]
        for combo in product(*choices):
            exps = [0] * ngen
            for c, parts in enumerate(combo):
                for g, e in zip(per_coord[c], parts):
                    exps[g] = e
            exps = tuple(exps)
            if not self._killed(exps):
                results.append(exps)
        self._standard[weight] = results
        return results

    def _class(self, weight: tuple) -> dict:
        """Row-reduced ideal span inside one weight class: ``{pivot: row}``."""
        hit = self._classes.get(weight)
        if hit is not None:
            return hit
        with self._lock:
            hit = self._classes.get(weight)
            if hit is not None:
                return hit
            columns = self._standard_monomials(weight)
            pivots: Dict[tuple, Dict[tuple, Fraction]] = {}
            if columns:
                colset = set(columns)
                for rel, rweight, rdeg in self._other_rels:
                    rest = tuple(w - b for w, b in zip(weight, rweight))
                    if any(x < 0 for x in rest):
                        continue
                    for q in self._standard_monomials(rest):
                        row = {}
                        for t, c in rel.items():
                            m = tuple(x + y for x, y in zip(q, t))
                            if m in colset:
                                row[m] = row.get(m, 0) + c
                        row = {m: c for m, c in row.items() if c}
                        if row:
                            self._insert_row(pivots, row)
                        if len(pivots) == len(columns):
                            break
                    if len(pivots) == len(columns):
                        break
            self._classes[weight] = pivots
            return pivots

    def _insert_row(self, pivots: dict, row: dict) -> None:
        for p in [m for m in row if m in pivots]:
            c = row.get(p)
            if not c:
                continue
            for m, v in pivots[p].items():
                x = row.get(m, 0) - c * v
                if x:
                    row[m] = x
                else:
                    row.pop(m, None)
        if not row:
            return
        lead = max(row, key=self._order_key)
        inv = 1 / Fraction(row[lead])
        row = {m: c * inv for m, c in row.items()}
        for prow in pivots.values():
            c = prow.get(lead)
            if c:
                for m, v in row.items():
                    x = prow.get(m, 0) - c * v
                    if x:
                        prow[m] = x
                    else:
                        prow.pop(m, None)
        pivots[lead] = row

    # normal forms ---------------------------------------------------------
    _IDENTITY = object()

    def _nf_monomial(self, inf: int):
        """Normal form of a pure generator monomial as ``[(packed, coeff)]``."""
        hit = self._nf_cache.get(inf)
        if hit is not None:
            return hit
        exps = self._dense(inf)
        if self._killed(exps):
            nf = []
        else:
            pivots = self._class(self._weight(exps))
            row = pivots.get(exps)
            if row is None:
                nf = self._IDENTITY
            else:
                nf = [(self._pack(m), _tidy(-c)) for m, c in row.items() if m != exps]
        self._nf_cache[inf] = nf
        return nf

    def reduce(self, p: Poly, strict: bool = False) -> Poly:
        """Canonical representative of ``p`` modulo the ideal.

        With ``strict=True`` a term above ``degree_bound`` raises
        :class:`DegreeOverflow` instead of being discarded.
        """
        mask = self.mask
        bound = self.degree_bound
        out: Dict[int, object] = {}
        for m, c in p.terms.items():
            inf = m & mask
            if strict and mono_degree(inf) > bound:
                raise DegreeOverflow(f"term of degree {mono_degree(inf)} exceeds bound {bound}")
            nf = self._nf_monomial(inf)
            if nf is self._IDENTITY:
                v = out.get(m, 0) + c
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
                continue
            rest = m - inf
            for m2, q in nf:
                key = rest + m2
                v = out.get(key, 0) + c * q
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return Poly._raw({m: _tidy(c) for m, c in out.items()})

    def element(self, p, strict: bool = False) -> "JetElement":
        return JetElement(self, self.reduce(Poly.lift(p), strict=strict))

    def zero(self) -> "JetElement":
        return JetElement(self, Poly())

    def one(self) -> "JetElement":
        return JetElement(self, Poly.const(1))

    def gen(self, name: str) -> "JetElement":
        if name not in self.generators:
            raise UnknownVector(name)
        return self.element(Poly.var(name))

    def vector(self, expr: VecExpr) -> List["JetElement"]:
        """Coordinates of a linear combination of declared vectors."""
        e = vec(expr)
        self._check_known(e)
        return [self.element(p) for p in self._coords_of(e)]

    def zero_vector(self) -> List["JetElement"]:
        return [self.zero() for _ in range(self.n_dim)]

    def basis(self, degree: Optional[int] = None) -> List[Poly]:
        """Monomials spanning the quotient (non-pivot standard monomials)."""
        degrees = range(self.degree_bound + 1) if degree is None else [degree]
        out = []
        for d in degrees:
            for w in _weights(d, self.n_dim):
                pivots = self._class(w)
                for exps in self._standard_monomials(w):
                    if exps not in pivots:
                        out.append(Poly({self._pack(exps): 1}))
        return out

    def dimension(self) -> int:
        return len(self.basis())

    def inf_degree(self, m: int) -> int:
        return mono_degree(m & self.mask)

    def __repr__(self):
        return (f"JetContext(n_dim={self.n_dim}, vectors={self.orders}, "
                f"constraints={len(self.constraints)}, thin={len(self.thin_triples)}, "
                f"degree_bound={self.degree_bound})")


def _tidy(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _weights(total: int, n: int):
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _weights(total - first, n - 1):
            yield (first,) + rest


class JetElement:
    """Element of a :class:`JetContext`, always stored in normal form."""

    __slots__ = ("ctx", "poly")

    def __init__(self, ctx: JetContext, poly: Poly):
        self.ctx = ctx
        self.poly = poly

    def _lift(self, other) -> Optional[Poly]:
        if isinstance(other, JetElement):
            if other.ctx is not self.ctx:
                raise ValueError("jet elements from different contexts")
            return other.poly
        if isinstance(other, Poly):
            return other
        try:
            return Poly.const(other)
        except TypeError:
            return None

    def __add__(self, other):
        p = self._lift(other)
        if p is None:
            return NotImplemented
        if isinstance(other, JetElement):
            return JetElement(self.ctx, self.poly + p)
        return self.ctx.element(self.poly + p)

    __radd__ = __add__

    def __neg__(self):
        return JetElement(self.ctx, -self.poly)

    def __sub__(self, other):
        p = self._lift(other)
        if p is None:
            return NotImplemented
        if isinstance(other, JetElement):
            return JetElement(self.ctx, self.poly - p)
        return self.ctx.element(self.poly - p)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        p = self._lift(other)
        if p is None:
            return NotImplemented
        if not self.poly or not p:
            return self.ctx.zero()
        if p.is_constant():
            return JetElement(self.ctx, self.poly * p.constant_term())
        ctx = self.ctx
        mask = ctx.mask
        a = [(m, c, mono_degree(m & mask)) for m, c in self.poly.terms.items()]
        b = [(m, c, mono_degree(m & mask)) for m, c in p.terms.items()]
        raw = poly_mul_graded(a, b, ctx.degree_bound)
        return JetElement(ctx, ctx.reduce(Poly._raw(raw)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return JetElement(self.ctx, self.poly / other)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only non-negative integer powers")
        result = self.ctx.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        p = self._lift(other)
        if p is None:
            return NotImplemented
        if not isinstance(other, JetElement):
            p = self.ctx.reduce(p)
        return self.poly == p

    __hash__ = None

    def __bool__(self):
        return bool(self.poly)

    def is_zero(self) -> bool:
        return not self.poly

    def min_inf_degree(self) -> float:
        return min((self.ctx.inf_degree(m) for m in self.poly.terms), default=math.inf)

    def __str__(self):
        return str(self.poly)

    def __repr__(self):
        return f"JetElement({self.poly!s})"


def make_context_infinitesimal(
    n_dim: int,
    vectors: Sequence[Tuple[str, int]],
    constraints: Sequence[Tuple[VecExpr, int]] = (),
    thin_triples: Sequence[Tuple[VecExpr, VecExpr]] = (),
    degree_bound: Optional[int] = None,
    thin_mode: str = "full",
) -> JetContext:
    return JetContext(n_dim, vectors, constraints, thin_triples, degree_bound, thin_mode)


def simplex_context(n_dim: int, k: int, order: int = 2, thin: bool = False,
                    prefix: str = "d", thin_mode: str = "full") -> JetContext:
    """Context for an ``order``-infinitesimal k-simplex ``(x_0, x_0 + d1, ..., x_0 + dk)``.

    Every edge difference gets the order constraint; with ``thin=True`` every
    face 2-simplex gets the thinness relations.
    """
    names = [f"{prefix}{i}" for i in range(1, k + 1)]
    vertex = [None] + names
    constraints = [(diff(vertex[j], vertex[i]), order)
                   for i in range(1, k + 1) for j in range(i + 1, k + 1)]
    triples = []
    if thin:
        for i in range(k + 1):
            for j in range(i + 1, k + 1):
                for l in range(j + 1, k + 1):
                    triples.append((diff(vertex[j], vertex[i]), diff(vertex[l], vertex[i])))
    return JetContext(n_dim, [(nm, order) for nm in names], constraints, triples,
                      thin_mode=thin_mode)


def rational_context(n_dim: int) -> JetContext:
    """Context with no infinitesimals; its elements are ordinary polynomials."""
    return JetContext(n_dim, [])


def reduce(e: Poly, ctx: JetContext, strict: bool = False) -> JetElement:
    return ctx.element(e, strict=strict)


def is_zero(e: JetElement) -> bool:
    return e.is_zero()


def taylor_apply(
    f: Poly,
    coords: Sequence[str],
    base: Sequence,
    displacement: Sequence[JetElement],
    order: int,
    ctx: JetContext,
) -> JetElement:
    """``f(base + displacement)`` as a truncated Taylor sum, reduced in ``ctx``.

    Terms of multi-index order above ``order`` are computed anyway and must
    reduce to zero; otherwise :class:`OrderTooSmall` is raised.
    """
    if not (len(coords) == len(base) == len(displacement)):
        raise DimensionMismatch("coordinates, base point and displacement differ in length")
    full = max(f.degree(), 0)
    at_base = dict(zip(coords, base))
    powers: Dict[Tuple[int, int], JetElement] = {}

    def power(a, e):
        key = (a, e)
        hit = powers.get(key)
        if hit is None:
            hit = displacement[a] ** e
            powers[key] = hit
        return hit

    result = ctx.zero()
    for alpha, coef in taylor_coefficients(f, coords, full):
        if not coef:
            continue
        value = coef.subs(at_base)
        if not value:
            continue
        term = ctx.element(value)
        for a, e in enumerate(alpha):
            if e:
                term = term * power(a, e)
                if not term:
                    break
        if sum(alpha) <= order:
            result = result + term
        elif term:
            raise OrderTooSmall(
                f"Taylor term of order {sum(alpha)} does not vanish: {term}"
            )
    return result


class MultiGradedElement:
    """Element of a k-fold tensor power of a polynomial algebra in ``n`` variables.

    ``terms`` maps a k-tuple of exponent tuples (one per tensor factor) to a
    rational coefficient.
    """

    __slots__ = ("k", "n", "terms")

    def __init__(self, k: int, n: int, terms: Mapping[tuple, object] = None):
        self.k = k
        self.n = n
        clean = {}
        for key, c in (terms or {}).items():
            key = tuple(tuple(e) for e in key)
            if len(key) != k or any(len(e) != n for e in key):
                raise DimensionMismatch(f"term key {key} does not match k={k}, n={n}")
            if c:
                clean[key] = clean.get(key, 0) + c
        self.terms = {key: c for key, c in clean.items() if c}

    @classmethod
    def monomial(cls, exps: Sequence[Sequence[int]], coeff=1) -> "MultiGradedElement":
        return cls(len(exps), len(exps[0]), {tuple(tuple(e) for e in exps): coeff})

    def _same(self, other):
        if (other.k, other.n) != (self.k, self.n):
            raise DimensionMismatch("multigraded elements of different shape")

    def __add__(self, other):
        self._same(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return MultiGradedElement(self.k, self.n, out)

    def __neg__(self):
        return MultiGradedElement(self.k, self.n, {key: -c for key, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, MultiGradedElement):
            return MultiGradedElement(self.k, self.n, {key: c * other for key, c in self.terms.items()})
        self._same(other)
        out = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                key = tuple(tuple(x + y for x, y in zip(ea, eb)) for ea, eb in zip(ka, kb))
                out[key] = out.get(key, 0) + ca * cb
        return MultiGradedElement(self.k, self.n, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = MultiGradedElement(self.k, self.n, {((0,) * self.n,) * self.k: 1})
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiGradedElement):
            return NotImplemented
        return (self.k, self.n, self.terms) == (other.k, other.n, other.terms)

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"MultiGradedElement(k={self.k}, n={self.n}, terms={len(self.terms)})"

    def evaluate(self, vectors: Sequence[Sequence[JetElement]], ctx: JetContext) -> JetElement:
        """Substitute factor ``i``'s variables by the coordinates ``vectors[i]``."""
        if len(vectors) != self.k or any(len(v) != self.n for v in vectors):
            raise DimensionMismatch("need k vectors of length n")
        cache: Dict[tuple, JetElement] = {}

        def power(i, a, e):
            key = (i, a, e)
            hit = cache.get(key)
            if hit is None:
                hit = vectors[i][a] ** e
                cache[key] = hit
            return hit

        total = ctx.zero()
        for key, c in self.terms.items():
            term = ctx.element(Poly.lift(c))
            for i, exps in enumerate(key):
                for a, e in enumerate(exps):
                    if e:
                        term = term * power(i, a, e)
                if not term:
                    break
            total = total + term
        return total


def multidegree_terms(e: MultiGradedElement) -> List[Tuple[tuple, int]]:
    out = []
    for key in e.terms:
        md = tuple(sum(x) for x in key)
        out.append((md, sum(md)))
    return sorted(out)


def min_total_degree(e: MultiGradedElement) -> float:
    return min((t for _, t in multidegree_terms(e)), default=math.inf)
