import json
from fractions import Fraction
from math import comb, factorial, isqrt

import mpmath
import pytest

from snorbit.qbinomial import Composition, compositions, q_binomial, q_multinomial
from snorbit.qpoly import max_coeff
from snorbit.symmetric import orbit_count
from snorbit.verify import (
    DEFAULT_SEARCH_VECTORS, FAILS, HOLDS, SKIPPED, antichain_suite, check_falling_factorial_inequality,
    check_main_theorem, check_maxcoeff_inequality, check_refinement, check_refinement_pair,
    check_residue_inequality, composition_maximum, main_theorem_value, maxcoeff_suite, refines,
    residue_suite, run_suite,
)


def test_residue_example():
    rows = check_residue_inequality(4, 2)
    assert [r.params["i"] for r in rows] == [0, 1, 2, 3]
    # s_2 = 2: |2 - 6/4| = 1/2 and (1/2)^2 <= 3/2
    assert rows[2].status == HOLDS and rows[2].margin == Fraction(3, 2) - Fraction(1, 4)


def test_residue_example_values():
    rows = {r.params["i"]: r for r in check_residue_inequality(5, 2)}
    # residue sums of [5 choose 2]_q are all 2 since gcd(5,2)=1
    assert all(r.margin == Fraction(2) for r in rows.values())


def test_residue_skips():
    assert check_residue_inequality(6, 5)[0].status == SKIPPED
    assert check_residue_inequality(6, 1)[0].status == SKIPPED


def test_residue_margin_independent_oracle():
    # |C/n - s_i| <= sqrt(C/n) via an integer square-root comparison
    for n in range(4, 40):
        for k in range(2, n - 1):
            f = q_binomial(n, k)
            C = comb(n, k)
            for row in check_residue_inequality(n, k, f):
                i = row.params["i"]
                s = sum(f.coeffs[i::n])
                lhs2 = (C - n * s) ** 2  # (n * |C/n - s|)^2
                assert (lhs2 <= n * C) == (row.status == HOLDS)


def test_maxcoeff_examples():
    r = check_maxcoeff_inequality(8, 3)
    assert r.status == HOLDS and r.margin == Fraction(56, 8) - max_coeff(q_binomial(8, 3))
    r = check_maxcoeff_inequality(6, 3)
    assert max_coeff(q_binomial(6, 3)) == 3 and r.margin == Fraction(20, 6) - 3
    assert check_maxcoeff_inequality(6, 2).status == SKIPPED


def test_maxcoeff_tight_case():
    r = check_maxcoeff_inequality(7, 3)
    assert r.status == HOLDS and r.margin == 0


def test_maxcoeff_gcd_shortcut_marks_coprime_pairs():
    r = check_maxcoeff_inequality(11, 4, use_gcd_shortcut=True)
    assert r.status == SKIPPED and r.note.startswith("gcd(n,k)=1")
    assert check_maxcoeff_inequality(12, 4, use_gcd_shortcut=True).status == HOLDS


def test_maxcoeff_suite_row_values_match_direct():
    rep = maxcoeff_suite(30)
    for c in rep.cases:
        n, k = c.params["n"], c.params["k"]
        assert c.margin == Fraction(comb(n, k), n) - max_coeff(q_binomial(n, k))


def test_refines():
    assert refines((1, 7, 1, 2), (1, 4, 3, 1, 2))
    assert not refines((1, 4, 3, 1, 2), (1, 7, 1, 2))
    assert refines((3, 2), (3, 2))
    assert not refines((2, 3), (3, 2))


def test_refinement_examples():
    r = check_refinement_pair((1, 7, 1, 2), (1, 4, 3, 1, 2))
    assert r.status == HOLDS and r.margin > 0
    assert check_refinement_pair((3, 2), (3, 2)).margin == 0
    with pytest.raises(ValueError):
        check_refinement_pair((2, 3), (3, 2))


def test_refinement_row_counts():
    # each composition with parts a_i has sum(a_i - 1) single splits
    for n in range(1, 9):
        expected = sum(sum(a - 1 for a in alpha) for alpha in compositions(n))
        rows = check_refinement(n)
        assert len(rows) == expected and all(r.status == HOLDS for r in rows)


def test_falling_examples():
    r = check_falling_factorial_inequality(10, 4, 1)
    assert r.status == HOLDS
    lhs = Fraction(84 ** 2, 210)
    assert lhs == Fraction(168, 5)
    assert mpmath.almosteq(r.margin, mpmath.log(lhs.numerator / lhs.denominator)
                           - 2 * mpmath.log(2) * mpmath.log(2.5), 1e-12)
    r = check_falling_factorial_inequality(9, 4, 2)
    assert r.status == HOLDS and r.margin == Fraction(comb(7, 2) ** 2, comb(9, 4)) - 1
    r = check_falling_factorial_inequality(6, 6, 2)
    assert r.status == HOLDS and r.margin == 0
    assert check_falling_factorial_inequality(5, 1, 1).status == SKIPPED


def test_falling_agrees_with_direct_power_oracle():
    with mpmath.workdps(120):
        for n in range(2, 30):
            for k in range(2, n + 1):
                for j in range(1, k // 2 + 1):
                    L = mpmath.mpf(comb(n - j, k - j) ** 2) / comb(n, k)
                    R = (mpmath.mpf(n) / k) ** (mpmath.log(2) * (k - 2 * j))
                    expect = HOLDS if L >= R or mpmath.almosteq(L, R, 1e-100) else FAILS
                    assert check_falling_factorial_inequality(n, k, j).status == expect


def test_main_theorem_values():
    assert [main_theorem_value(n) for n in range(3, 8)] == [2, 8, 24, 144, 720]
    for n in range(3, 12, 2):
        assert main_theorem_value(n) == factorial(n - 1)
    for n in range(3, 10):
        # the k = 1 column gives (n-1)!
        assert factorial(n - 1) * max_coeff(q_binomial(n, 1)) == factorial(n - 1)


def test_composition_maximum_independent():
    for n in range(3, 9):
        best = max(a.factorial * max_coeff(q_multinomial(a)) for a in compositions(n, min_length=2))
        value, arg = composition_maximum(n)
        assert value == best == main_theorem_value(n)
        assert Composition((2, n - 2)) in arg


def test_check_main_theorem_with_search():
    rows = check_main_theorem(3)
    assert all(r.status == HOLDS for r in rows)
    for r in rows[1:]:
        v = tuple(Fraction(x) for x in r.params["v"])
        assert orbit_count(v, r.params["witness"]) == r.params["value"] == 2
    with pytest.raises(ValueError):
        check_main_theorem(13)


def test_default_search_vectors_are_valid():
    for n, vs in DEFAULT_SEARCH_VECTORS.items():
        assert len(vs) >= 3
        for v in vs:
            assert len(v) == n and len(set(v)) == n and sum(v) != 0


def test_reports_are_deterministic():
    a, b = residue_suite(30), residue_suite(30)
    assert a == b and a.records() == b.records()
    c = residue_suite(30, workers=2)
    assert c.records() == a.records()
    x, y = antichain_suite(50, seed=4), antichain_suite(50, seed=4)
    assert x.records() == y.records()


def test_records_are_json_lines():
    rep = run_suite("refinement", 5)
    lines = rep.records()
    recs = [json.loads(line) for line in lines]
    assert recs[-1]["case"] == "summary" and recs[-1]["passed"] is True
    assert all(r["suite"] == "refinement" for r in recs)


def test_suite_pass_means_no_failures():
    rep = antichain_suite(200, seed=0, transport="literal")
    assert not rep.passed and rep.count(FAILS) > 0
    assert antichain_suite(200, seed=0).passed
    with pytest.raises(KeyError):
        run_suite("nope", 5)
