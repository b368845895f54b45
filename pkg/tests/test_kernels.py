import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from simplex_metrics import _pykernels, kernels

try:
    from simplex_metrics import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")

terms = st.dictionaries(st.integers(0, 1 << 40), st.integers(-50, 50).filter(bool), max_size=8)
int_rows = st.integers(0, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-20, 20), min_size=n, max_size=n), min_size=n, max_size=n))


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


def test_pure_env_forces_fallback():
    out = subprocess.run(
        [sys.executable, "-c", "from simplex_metrics import BACKEND; print(BACKEND)"],
        env=dict(os.environ, SIMPLEX_METRICS_PURE="1"), capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_bareiss_small_cases():
    assert _pykernels.bareiss_det([]) == 1
    assert _pykernels.bareiss_det([[7]]) == 7
    assert _pykernels.bareiss_det([[0, 1], [1, 0]]) == -1
    assert _pykernels.bareiss_det([[1, 2], [2, 4]]) == 0
    assert _pykernels.bareiss_det([[2, 0, 0], [0, 3, 0], [0, 0, 4]]) == 24


def test_poly_mul_cancels():
    # (a + b)(a - b) with a, b as packed monomials 1 and 1 << 16
    a, b = 1, 1 << 16
    out = _pykernels.poly_mul({a: 1, b: 1}, {a: 1, b: -1})
    assert out == {2 * a: 1, 2 * b: -1}


def test_graded_product_truncates():
    a = [(1, 1, 1), (2, 3, 2)]
    out = _pykernels.poly_mul_graded(a, a, 3)
    assert out == {2: 1, 3: 6}


@needs_ext
@given(int_rows)
def test_bareiss_backends_agree(rows):
    assert _ckernels.bareiss_det([r[:] for r in rows]) == _pykernels.bareiss_det([r[:] for r in rows])


@needs_ext
@given(terms, terms)
def test_poly_mul_backends_agree(a, b):
    assert _ckernels.poly_mul(a, b) == _pykernels.poly_mul(a, b)


@needs_ext
@given(terms, terms, st.integers(0, 6))
def test_graded_backends_agree(a, b, bound):
    la = [(m, c, m % 5) for m, c in a.items()]
    lb = [(m, c, m % 3) for m, c in b.items()]
    assert _ckernels.poly_mul_graded(la, lb, bound) == _pykernels.poly_mul_graded(la, lb, bound)


@needs_ext
def test_big_integers_survive_compiled_path():
    big = 10 ** 40
    assert _ckernels.bareiss_det([[big, 1], [1, big]]) == big * big - 1
    assert _ckernels.poly_mul({0: big}, {0: big}) == {0: big * big}
