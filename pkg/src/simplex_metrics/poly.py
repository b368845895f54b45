"""Sparse multivariate polynomials over the rationals.

Variables are interned by name into a process-wide table. A monomial is a
Python int holding one 16-bit exponent field per interned variable, so the
product of two monomials is the sum of their ints and a polynomial is a plain
``{monomial: coefficient}`` dict. Coefficients are ints or Fractions.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import factorial
from numbers import Rational
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .kernels import poly_mul

BITS = 16
FIELD = (1 << BITS) - 1
MAX_EXPONENT = FIELD

_lock = threading.Lock()
_names: list = []
_index: Dict[str, int] = {}


def var_index(name: str) -> int:
    idx = _index.get(name)
    if idx is None:
        with _lock:
            idx = _index.get(name)
            if idx is None:
                idx = len(_names)
                _names.append(name)
                _index[name] = idx
    return idx


def var_name(idx: int) -> str:
    return _names[idx]


def shift(name: str) -> int:
    """Bit offset of a variable's exponent field."""
    return BITS * var_index(name)


def pack(exponents: Mapping[str, int]) -> int:
    m = 0
    for name, e in exponents.items():
        if e < 0 or e > MAX_EXPONENT:
            raise ValueError(f"exponent {e} out of range for {name}")
        if e:
            m += e << shift(name)
    return m


@lru_cache(maxsize=None)
def unpack(m: int) -> Tuple[Tuple[str, int], ...]:
    """Monomial as ``((name, exponent), ...)`` sorted by name."""
    out = []
    idx = 0
    while m:
        e = m & FIELD
        if e:
            out.append((_names[idx], e))
        m >>= BITS
        idx += 1
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def mono_degree(m: int) -> int:
    d = 0
    while m:
        d += m & FIELD
        m >>= BITS
    return d


def _coerce(c):
    if isinstance(c, bool) or not isinstance(c, Rational):
        raise TypeError(f"polynomial coefficients must be rational, got {c!r}")
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _mono_str(m: int) -> str:
    parts = []
    for name, e in unpack(m):
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def _grlex_key(m: int):
    """Ascending sort key that lists monomials in descending grlex order."""
    return (-mono_degree(m), tuple((n, -e) for n, e in unpack(m)))


class Poly:
    """Immutable sparse polynomial. Use the constructors, not ``terms`` directly."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, object] = None):
        if terms:
            self.terms = {m: _coerce(c) for m, c in terms.items() if c}
        else:
            self.terms = {}

    @classmethod
    def _raw(cls, terms: dict) -> "Poly":
        p = object.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls._raw({1 << shift(name): 1})

    @classmethod
    def const(cls, c) -> "Poly":
        c = _coerce(c)
        return cls._raw({0: c} if c else {})

    @classmethod
    def monomial(cls, exponents: Mapping[str, int], coeff=1) -> "Poly":
        return cls({pack(exponents): coeff})

    @classmethod
    def lift(cls, x) -> "Poly":
        return x if isinstance(x, Poly) else cls.const(x)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, Rational):
                other = Poly.const(other)
            else:
                return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, Rational):
                other = Poly.const(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            if not self.terms or not other.terms:
                return Poly._raw({})
            return Poly._raw(poly_mul(self.terms, other.terms))
        if isinstance(other, Rational) and not isinstance(other, bool):
            c = _coerce(other)
            if not c:
                return Poly._raw({})
            return Poly._raw({m: v * c for m, v in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Rational) and not isinstance(other, bool):
            return self * _inv(other)
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only non-negative integer powers")
        result = Poly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, Rational):
            return self.terms == ({0: _coerce(other)} if other else {})
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    # inspection ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {0}

    def constant_term(self):
        return self.terms.get(0, 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((mono_degree(m) for m in self.terms), default=-1)

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            out.update(n for n, _ in unpack(m))
        return out

    def items(self) -> Iterable[Tuple[Tuple[Tuple[str, int], ...], object]]:
        for m, c in self.terms.items():
            yield unpack(m), c

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_grlex_key):
            c = self.terms[m]
            mono = _mono_str(m)
            if not mono:
                body = str(c)
            elif c == 1:
                body = mono
            elif c == -1:
                body = "-" + mono
            else:
                body = f"{c}*{mono}"
            parts.append(body)
        return " + ".join(parts).replace("+ -", "- ")

    # calculus and substitution -------------------------------------------
    def diff(self, name: str) -> "Poly":
        s = shift(name)
        unit = 1 << s
        out = {}
        for m, c in self.terms.items():
            e = (m >> s) & FIELD
            if e:
                out[m - unit] = c * e
        return Poly._raw(out)

    def subs(self, mapping: Mapping[str, object]) -> "Poly":
        """Substitute polynomials or rationals for variables, simultaneously."""
        if not mapping:
            return self
        repl = {name: Poly.lift(v) for name, v in mapping.items()}
        shifts = {name: shift(name) for name in repl}
        powers: Dict[Tuple[str, int], Poly] = {}

        def power(name, e):
            key = (name, e)
            p = powers.get(key)
            if p is None:
                p = repl[name] ** e
                powers[key] = p
            return p

        out = Poly._raw({})
        for m, c in self.terms.items():
            rest = m
            factor = None
            for name, s in shifts.items():
                e = (m >> s) & FIELD
                if e:
                    rest -= e << s
                    f = power(name, e)
                    factor = f if factor is None else factor * f
            term = Poly._raw({rest: c})
            out = out + (term if factor is None else term * factor)
        return out

    def rename(self, mapping: Mapping[str, str]) -> "Poly":
        """Rename variables; targets may overlap sources (a permutation)."""
        shifts = [(shift(a), shift(b)) for a, b in mapping.items() if a != b]
        if not shifts:
            return self
        out = {}
        for m, c in self.terms.items():
            new = m
            for s, _ in shifts:
                new -= ((m >> s) & FIELD) << s
            for s, t in shifts:
                new += ((m >> s) & FIELD) << t
            v = out.get(new, 0) + c
            if v:
                out[new] = v
            else:
                out.pop(new, None)
        return Poly._raw(out)

    def evaluate(self, values: Mapping[str, object]):
        """Rational value when every variable is assigned."""
        r = self.subs(values)
        if not r.is_constant():
            raise ValueError(f"unassigned variables {sorted(r.variables())}")
        return r.constant_term()


def _inv(c):
    c = Fraction(c)
    if not c:
        raise ZeroDivisionError("division of a polynomial by zero")
    return _coerce(1 / c)


def symbols(*names: str) -> Tuple[Poly, ...]:
    return tuple(Poly.var(n) for n in names)


def taylor_coefficients(f: Poly, coords: Sequence[str], max_order: int):
    """Yield ``(alpha, d^alpha f / alpha!)`` for all multi-indices up to ``max_order``."""
    n = len(coords)

    def rec(i, remaining, alpha, g):
        if i == n:
            denom = 1
            for a in alpha:
                denom *= factorial(a)
            yield tuple(alpha), g * Fraction(1, denom)
            return
        h = g
        for a in range(remaining + 1):
            if a:
                h = h.diff(coords[i])
                if not h:
                    break
            yield from rec(i + 1, remaining - a, alpha + [a], h)

    yield from rec(0, max_order, [], f)
