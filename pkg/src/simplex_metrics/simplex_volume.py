"""Square-volumes of simplices: Heron, Cayley-Menger and Gram formulas.

The Cayley-Menger matrix of a k-simplex is the (k+1)x(k+1) table of square
distances bordered by a row and a column ``(0, 1, ..., 1)``, stored with the
border at index 0.

The square volume is ``det(CM) / (-(-2)**k * (k!)**2)``, which gives the
factors 1/2, -1/16, 1/288 for k = 1, 2, 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import DimensionMismatch, EmptySimplex, InvalidDistanceData
from .exact_linalg import (
    RationalMatrix,
    det_exact,
    mat_mul,
    to_rational,
    transpose,
)


@dataclass(frozen=True)
class Simplex:
    points: tuple

    def __post_init__(self):
        pts = tuple(tuple(to_rational(c) for c in p) for p in self.points)
        if not pts:
            raise EmptySimplex("a simplex needs at least one point")
        n = len(pts[0])
        if any(len(p) != n for p in pts):
            raise DimensionMismatch("all points of a simplex must have the same length")
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, *points: Sequence) -> "Simplex":
        return cls(tuple(points))

    @property
    def dim_k(self) -> int:
        return len(self.points) - 1

    @property
    def n(self) -> int:
        return len(self.points[0])

    def permuted(self, order: Sequence[int]) -> "Simplex":
        return Simplex(tuple(self.points[i] for i in order))

    def transformed(self, h: RationalMatrix) -> "Simplex":
        """The image ``(H x_0, ..., H x_k)``."""
        if h.cols != self.n:
            raise DimensionMismatch(f"{h.rows}x{h.cols} map applied to points of length {self.n}")
        return Simplex(tuple(
            tuple(sum((a * b for a, b in zip(h.row(i), p)), Fraction(0)) for i in range(h.rows))
            for p in self.points
        ))


@dataclass(frozen=True)
class SquareDistanceData:
    g: tuple

    def __post_init__(self):
        table = tuple(tuple(to_rational(v) for v in row) for row in self.g)
        size = len(table)
        if size == 0:
            raise InvalidDistanceData("empty square-distance table")
        if any(len(row) != size for row in table):
            raise InvalidDistanceData("square-distance table must be square")
        for i in range(size):
            if table[i][i] != 0:
                raise InvalidDistanceData(f"nonzero diagonal entry g[{i}][{i}]")
            for j in range(i):
                if table[i][j] != table[j][i]:
                    raise InvalidDistanceData(f"g[{i}][{j}] != g[{j}][{i}]")
        object.__setattr__(self, "g", table)

    @property
    def dim_k(self) -> int:
        return len(self.g) - 1

    @classmethod
    def from_edges(cls, k: int, edges) -> "SquareDistanceData":
        """Build from ``{(i, j): g_ij}`` with i < j."""
        table = [[0] * (k + 1) for _ in range(k + 1)]
        for (i, j), v in edges.items():
            table[i][j] = table[j][i] = v
        return cls(tuple(tuple(r) for r in table))

    def permuted(self, order: Sequence[int]) -> "SquareDistanceData":
        return SquareDistanceData(tuple(
            tuple(self.g[i][j] for j in order) for i in order
        ))


@dataclass(frozen=True)
class CayleyMengerMatrix:
    matrix: RationalMatrix

    @property
    def k(self) -> int:
        return self.matrix.rows - 2


def heron_triangle(a2, b2, c2) -> Fraction:
    """Square area of a triangle from its three square side lengths."""
    a2, b2, c2 = to_rational(a2), to_rational(b2), to_rational(c2)
    return -(a2 * a2 + b2 * b2 + c2 * c2 - 2 * a2 * b2 - 2 * a2 * c2 - 2 * b2 * c2) / 16


def cm_layout(table: Sequence[Sequence], zero, one) -> list:
    """Border a square-distance table; works for any ring elements."""
    size = len(table)
    rows = [[zero] + [one] * size]
    for i in range(size):
        rows.append([one] + [table[i][j] for j in range(size)])
    return rows


def cm_matrix(d: SquareDistanceData) -> CayleyMengerMatrix:
    if not isinstance(d, SquareDistanceData):
        d = SquareDistanceData(d)
    rows = cm_layout(d.g, Fraction(0), Fraction(1))
    return CayleyMengerMatrix(RationalMatrix.from_rows(rows))


def cm_factor(k: int) -> Fraction:
    if k < 0:
        raise ValueError("k must be non-negative")
    return Fraction(1, -((-2) ** k) * factorial(k) ** 2)


def cm_normalizer(k: int) -> int:
    """``-(-2)**k``, the constant relating det(CM) to the Gram determinant."""
    return -((-2) ** k)


def vol2_cm(d: SquareDistanceData) -> Fraction:
    c = cm_matrix(d)
    return cm_factor(c.k) * det_exact(c.matrix)


def difference_matrix(s: Simplex) -> RationalMatrix:
    """n x k matrix with columns ``x_j - x_0``."""
    if s.dim_k == 0:
        raise EmptySimplex("a 0-simplex has no edge vectors")
    x0 = s.points[0]
    cols = [[a - b for a, b in zip(p, x0)] for p in s.points[1:]]
    return RationalMatrix.from_rows([[c[i] for c in cols] for i in range(s.n)], cols=s.dim_k)


def _check_metric(g_metric: RationalMatrix, n: int) -> None:
    if g_metric.rows != n or g_metric.cols != n:
        raise DimensionMismatch(f"metric is {g_metric.rows}x{g_metric.cols}, points have length {n}")


def gram_matrix(s: Simplex, g_metric: RationalMatrix = None) -> RationalMatrix:
    if g_metric is None:
        g_metric = RationalMatrix.identity(s.n)
    _check_metric(g_metric, s.n)
    y = difference_matrix(s)
    return mat_mul(mat_mul(transpose(y), g_metric), y)


def vol2_gram(s: Simplex, g_metric: RationalMatrix = None) -> Fraction:
    if s.dim_k == 0:
        if g_metric is not None:
            _check_metric(g_metric, s.n)
        return Fraction(1)
    k = s.dim_k
    return det_exact(gram_matrix(s, g_metric)) / factorial(k) ** 2


def square_distances_of(s: Simplex, g_metric: RationalMatrix = None) -> SquareDistanceData:
    if g_metric is None:
        g_metric = RationalMatrix.identity(s.n)
    _check_metric(g_metric, s.n)
    size = s.dim_k + 1
    table = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            diff = [a - b for a, b in zip(s.points[i], s.points[j])]
            v = sum(
                (diff[a] * g_metric[a, b] * diff[b]
                 for a in range(s.n) for b in range(s.n) if diff[a] and diff[b]),
                Fraction(0),
            )
            table[i][j] = table[j][i] = v
    return SquareDistanceData(tuple(tuple(r) for r in table))


def vol2_metric_via_cm(s: Simplex, h: RationalMatrix) -> Fraction:
    """Square volume for ``G = H^T H`` through the standard Cayley-Menger determinant."""
    if h.rows != h.cols or h.cols != s.n:
        raise DimensionMismatch(f"H must be {s.n}x{s.n}, got {h.rows}x{h.cols}")
    return vol2_cm(square_distances_of(s.transformed(h)))


@dataclass(frozen=True)
class ComparisonReport:
    k: int
    n: int
    det_cm_normalized: Fraction
    det_gram: Fraction
    agree: bool
    printed_squared_form_holds: bool
    vol2_cm: Fraction
    vol2_gram: Fraction

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "det_cm_normalized": str(self.det_cm_normalized),
            "det_gram": str(self.det_gram),
            "agree": self.agree,
            "squared_form_holds": self.printed_squared_form_holds,
            "vol2_cm": str(self.vol2_cm),
            "vol2_gram": str(self.vol2_gram),
        }


def verify_comparison(s: Simplex) -> ComparisonReport:
    """Compare ``det(CM) / (-(-2)**k)`` with ``det(Y^T Y)`` exactly.

    The report also evaluates the variant with the Gram determinant squared,
    which only holds when that determinant is 0 or 1.
    """
    k = s.dim_k
    d = square_distances_of(s)
    dc = det_exact(cm_matrix(d).matrix) / cm_normalizer(k)
    dg = det_exact(gram_matrix(s)) if k else Fraction(1)
    return ComparisonReport(
        k=k,
        n=s.n,
        det_cm_normalized=dc,
        det_gram=dg,
        agree=dc == dg,
        printed_squared_form_holds=dc == dg * dg,
        vol2_cm=cm_factor(k) * det_exact(cm_matrix(d).matrix),
        vol2_gram=vol2_gram(s),
    )
