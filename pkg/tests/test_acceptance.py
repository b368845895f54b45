"""One test per acceptance criterion; the conftest prints a PASS/FAIL line for each."""

import random
from fractions import Fraction as F

from simplex_metrics import sdg_verify as V
from simplex_metrics.cli import main
from simplex_metrics.exact_linalg import RationalMatrix, det_exact, transpose
from simplex_metrics.jet_algebra import (
    diff,
    make_context_infinitesimal,
    min_total_degree,
)
from simplex_metrics.simplex_volume import (
    Simplex,
    SquareDistanceData,
    heron_triangle,
    verify_comparison,
    vol2_cm,
    vol2_gram,
    vol2_metric_via_cm,
)


def _rng(tag):
    return random.Random(f"acceptance-{tag}")


def test_criterion_1_factor_table(capsys):
    assert main(["factors", "--max-k", "3"]) == 0
    rows = dict(line.split("\t") for line in capsys.readouterr().out.splitlines())
    assert (rows["1"], rows["2"], rows["3"]) == ("1/2", "-1/16", "1/288")


def test_criterion_2_heron_agreement():
    rng = _rng(2)
    for _ in range(1000):
        a2, b2, c2 = (F(rng.randint(0, 400), rng.randint(1, 30)) for _ in range(3))
        d = SquareDistanceData.from_edges(2, {(0, 1): c2, (0, 2): b2, (1, 2): a2})
        assert heron_triangle(a2, b2, c2) == vol2_cm(d)


def test_criterion_3_comparison_identity():
    rng = _rng(3)
    seen = set()
    for _ in range(500):
        n = rng.randint(1, 5)
        k = rng.randint(1, n)
        s = Simplex(tuple(tuple(rng.randint(-9, 9) for _ in range(n)) for _ in range(k + 1)))
        r = verify_comparison(s)
        assert r.det_cm_normalized == r.det_gram
        assert r.vol2_cm == r.vol2_gram
        seen.add((k, n))
    assert len(seen) == 15


def test_criterion_4_metric_change():
    rng = _rng(4)
    for _ in range(200):
        n = rng.randint(1, 4)
        h = RationalMatrix.from_rows([[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)])
        g = transpose(h) @ h
        k = rng.randint(1, n)
        s = Simplex(tuple(tuple(rng.randint(-9, 9) for _ in range(n)) for _ in range(k + 1)))
        assert vol2_gram(s, g) == vol2_metric_via_cm(s, h)
        assert det_exact(g) == det_exact(h) ** 2


def test_criterion_5_permutation_invariance():
    for k in (1, 2, 3):
        assert V.check_cm_symmetry(k).status == V.PASS
    for n in range(1, 5):
        for k in range(1, min(3, n) + 1):
            assert V.check_gram_symmetry(k, n).status == V.PASS


def test_criterion_6_sdg_suite():
    reports = V.run_all(max_n=3, max_k=3, seed=0)
    required = {
        "check_prop_ab",
        "check_squaring",
        "check_extension_independence",
        "check_thin_lemma",
        "check_thin_examples",
        "check_volume_form_theorem",
    }
    ran = {}
    for r in reports:
        if r.check_name in required and r.status != V.SKIPPED:
            assert r.status == V.PASS, (r.check_name, r.parameters, r.witness)
            ran.setdefault(r.check_name, []).append(r.parameters)
    assert set(ran) == required
    assert any(p["k"] == 1 for p in ran["check_squaring"])


def test_criterion_7_negative_controls():
    r = V.check_thin_lemma(2, thin=False)
    assert r.status == V.FAIL and "nonzero residual" in r.witness
    ctx = make_context_infinitesimal(1, [("x", 2), ("y", 2)], [(diff("y", "x"), 2)])
    x, y = ctx.gen("x"), ctx.gen("y")
    assert x * x * y
    assert V.check_thin_examples(thin=False).status == V.FAIL


def test_criterion_8_appendix_lemma():
    for k in (1, 2, 3):
        for n in (1, 2, 3):
            rng = _rng(f"8-{k}-{n}")
            omega = V.random_multilinear(rng, k, n)
            for _ in range(50):
                theta = V.random_perturbation(rng, k, n)
                assert min_total_degree((omega + theta) ** 2 - omega ** 2) >= 2 * k + 1
