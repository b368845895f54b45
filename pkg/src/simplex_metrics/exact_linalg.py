"""Exact rational matrices, determinants and Cholesky factorization.

Determinants of rational matrices go through fraction-free Bareiss
elimination on a row-scaled integer copy. ``det_cofactor`` is a plain Laplace
expansion kept as an independent oracle, and ``det_expand`` computes the
determinant over any commutative ring whose elements support ``+``, ``-`` and
``*`` (polynomials, jet elements).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, NonSquare, NotPositiveDefinite, NotSymmetric
from .kernels import bareiss_det


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a normalized Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational literal: {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(value) -> str:
    return str(Fraction(value))


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatch("negative matrix dimension")
        entries = tuple(to_rational(e) for e in self.entries)
        if len(entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{len(entries)} entries for a {self.rows}x{self.cols} matrix"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatch("ragged rows")
        return cls(len(rows), cols, tuple(e for r in rows for e in r))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diag(cls, values: Sequence) -> "RationalMatrix":
        n = len(values)
        return cls(n, n, tuple(values[i] if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def column(cls, values: Sequence) -> "RationalMatrix":
        return cls(len(values), 1, tuple(values))

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i)
        )

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        return mat_mul(self, other)

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(self.rows, self.cols, tuple(-e for e in self.entries))

    def scaled(self, c) -> "RationalMatrix":
        c = to_rational(c)
        return RationalMatrix(self.rows, self.cols, tuple(c * e for e in self.entries))

    def __str__(self) -> str:
        return "[" + ", ".join(
            "[" + ", ".join(format_rational(e) for e in self.row(i)) + "]"
            for i in range(self.rows)
        ) + "]"


@dataclass(frozen=True)
class FloatMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        entries = tuple(float(e) for e in self.entries)
        if len(entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{len(entries)} entries for a {self.rows}x{self.cols} matrix"
            )
        if not all(math.isfinite(e) for e in entries):
            raise ValueError("matrix entries must be finite")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float]]) -> "FloatMatrix":
        rows = [list(r) for r in rows]
        cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(len(rows), cols, tuple(e for r in rows for e in r))

    @classmethod
    def from_rational(cls, m: RationalMatrix) -> "FloatMatrix":
        return cls(m.rows, m.cols, tuple(float(e) for e in m.entries))

    def __getitem__(self, ij) -> float:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def max_norm(self) -> float:
        return max((abs(e) for e in self.entries), default=0.0)


def transpose(m: RationalMatrix) -> RationalMatrix:
    return RationalMatrix(
        m.cols, m.rows, tuple(m[i, j] for j in range(m.cols) for i in range(m.rows))
    )


def mat_mul(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    bcols = [b.col(j) for j in range(b.cols)]
    out = []
    for i in range(a.rows):
        r = a.row(i)
        for c in bcols:
            out.append(sum((x * y for x, y in zip(r, c) if x and y), Fraction(0)))
    return RationalMatrix(a.rows, b.cols, tuple(out))


def _integer_rows(m: RationalMatrix):
    """Scale each row to integers; returns the rows and the product of scales."""
    rows = []
    scale = 1
    for i in range(m.rows):
        r = m.row(i)
        d = math.lcm(*(e.denominator for e in r)) if r else 1
        rows.append([int(e * d) for e in r])
        scale *= d
    return rows, scale


def det_exact(m: RationalMatrix) -> Fraction:
    """Exact determinant via Bareiss elimination. The 0x0 determinant is 1."""
    if not m.is_square:
        raise NonSquare(f"determinant of a {m.rows}x{m.cols} matrix")
    rows, scale = _integer_rows(m)
    return Fraction(bareiss_det(rows), scale)


def det_cofactor(m, max_size: int = 6) -> Fraction:
    """Naive first-row Laplace expansion; an oracle for small matrices."""
    rows = m.to_rows() if isinstance(m, RationalMatrix) else [list(r) for r in m]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NonSquare("cofactor expansion needs a square matrix")
    if n > max_size:
        raise ValueError(f"cofactor oracle limited to {max_size}x{max_size}")

    def rec(rs):
        if not rs:
            return Fraction(1)
        total = Fraction(0)
        for j, a in enumerate(rs[0]):
            if a == 0:
                continue
            minor = [r[:j] + r[j + 1:] for r in rs[1:]]
            term = a * rec(minor)
            total = total + term if j % 2 == 0 else total - term
        return total

    return rec(rows)


def det_expand(rows: Sequence[Sequence], one=1):
    """Division-free determinant over a commutative ring.

    Laplace expansion along rows with every minor memoized by its column set,
    so an n x n matrix costs about n * 2**n ring multiplications. Entries are
    skipped when falsy, so ring elements should define ``__bool__``.
    """
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NonSquare("determinant needs a square matrix")
    # minors[S] = det of rows 0..|S|-1 restricted to column set S (bitmask)
    minors = {0: one}
    for size in range(1, n + 1):
        row = rows[size - 1]
        nxt = {}
        for mask, sub in minors.items():
            if not sub:
                continue
            # place column j (not in mask) in position ``size - 1``
            above = 0
            for j in range(n):
                bit = 1 << j
                if mask & bit:
                    above += 1
                    continue
                a = row[j]
                if not a:
                    continue
                # sign of moving column j past the columns of mask greater than j
                larger = (size - 1) - above
                term = a * sub
                key = mask | bit
                if larger % 2:
                    term = -term
                prev = nxt.get(key)
                nxt[key] = term if prev is None else prev + term
        minors = nxt
    full = (1 << n) - 1
    result = minors.get(full)
    if result is None:
        return one - one
    return result


def cholesky(g: FloatMatrix, tol: float = 1e-9) -> FloatMatrix:
    """Upper-triangular ``H`` with ``H^T H = g`` and positive diagonal.

    Symmetry is checked as ``|g_ij - g_ji| <= tol * (1 + max|g|)``; a pivot
    must exceed ``tol * max(diag g)``.
    """
    if g.rows != g.cols:
        raise NonSquare(f"Cholesky of a {g.rows}x{g.cols} matrix")
    n = g.rows
    scale = g.max_norm()
    for i in range(n):
        for j in range(i):
            if abs(g[i, j] - g[j, i]) > tol * (1.0 + scale):
                raise NotSymmetric(f"entries ({i},{j}) and ({j},{i}) differ")
    max_diag = max((g[i, i] for i in range(n)), default=0.0)
    threshold = tol * max(max_diag, 0.0)
    h = [[0.0] * n for _ in range(n)]
    for j in range(n):
        pivot = g[j, j] - sum(h[k][j] ** 2 for k in range(j))
        if not pivot > threshold or pivot <= 0.0:
            raise NotPositiveDefinite(f"pivot {pivot!r} at index {j}")
        d = math.sqrt(pivot)
        h[j][j] = d
        for i in range(j + 1, n):
            h[j][i] = (g[j, i] - sum(h[k][j] * h[k][i] for k in range(j))) / d
    return FloatMatrix.from_rows(h) if n else FloatMatrix(0, 0, ())


def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    p, d = q.numerator, q.denominator
    rp, rd = math.isqrt(p), math.isqrt(d)
    if rp * rp == p and rd * rd == d:
        return Fraction(rp, rd)
    return None


def rational_cholesky_if_exact(g: RationalMatrix) -> Optional[RationalMatrix]:
    """Exact upper-triangular Cholesky factor, or ``None`` if a root is irrational."""
    if not g.is_square:
        raise NonSquare(f"Cholesky of a {g.rows}x{g.cols} matrix")
    if not g.is_symmetric():
        raise NotSymmetric("rational Cholesky needs a symmetric matrix")
    n = g.rows
    h = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        pivot = g[j, j] - sum(h[k][j] ** 2 for k in range(j))
        if pivot <= 0:
            raise NotPositiveDefinite(f"pivot {pivot} at index {j}")
        d = _rational_sqrt(pivot)
        if d is None:
            return None
        h[j][j] = d
        for i in range(j + 1, n):
            h[j][i] = (g[j, i] - sum(h[k][j] * h[k][i] for k in range(j))) / d
    return RationalMatrix.from_rows(h, cols=n)


def is_upper_triangular(m: RationalMatrix) -> bool:
    return all(m[i, j] == 0 for i in range(m.rows) for j in range(min(i, m.cols)))


def gram(a: RationalMatrix, g: RationalMatrix) -> RationalMatrix:
    """``a^T g a``."""
    return mat_mul(mat_mul(transpose(a), g), a)


def matrix_from(values: Iterable[Iterable]) -> RationalMatrix:
    return RationalMatrix.from_rows([list(r) for r in values])
