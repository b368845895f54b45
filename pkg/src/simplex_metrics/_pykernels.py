"""Pure-Python hot kernels.

Reference implementation and fallback for ``_ckernels``. Both modules expose
the same three functions with identical semantics:

* ``poly_mul(a, b)`` multiplies two sparse polynomials stored as
  ``{packed_monomial: coefficient}`` dicts. Packed monomials are Python ints,
  so monomial multiplication is integer addition.
* ``poly_mul_graded(a, b, bound)`` does the same for lists of
  ``(monomial, coefficient, grade)`` triples and skips every product whose
  grade sum exceeds ``bound``. Grades are precomputed by the caller.
* ``bareiss_det(rows)`` is the fraction-free determinant of a square integer
  matrix given as a list of lists. The input is not modified.
"""


def poly_mul(a, b):
    out = {}
    get = out.get
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = ma + mb
            out[m] = get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


def poly_mul_graded(a, b, bound):
    out = {}
    get = out.get
    for ma, ca, da in a:
        room = bound - da
        if room < 0:
            continue
        for mb, cb, db in b:
            if db > room:
                continue
            m = ma + mb
            out[m] = get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


def bareiss_det(rows):
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]
