from fractions import Fraction
from math import comb, gcd

import pytest

from snorbit.cyclotomic import (
    F, F_with_choice, admissible_e, congruence_rhs, check_F_coeff_bound, cyclotomic, kit, verify_congruence,
    verify_F_delta,
)
from snorbit.qbinomial import q_binomial, q_int
from snorbit.qpoly import IntPolynomial as P, RatPolynomial as R


def naive_mobius(n):
    f, m, p = 0, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            f += 1
        p += 1
    if m > 1:
        f += 1
    return -1 if f % 2 else 1


def test_number_theory_against_naive():
    for n in range(1, 400):
        assert kit.mobius(n) == naive_mobius(n)
        assert kit.totient(n) == sum(1 for i in range(1, n + 1) if gcd(i, n) == 1)
        assert kit.divisors(n) == [d for d in range(1, n + 1) if n % d == 0]
    assert kit.factorize(5000) == {2: 3, 5: 4}


def test_cyclotomic_examples():
    assert cyclotomic(1) == P([-1, 1])
    assert cyclotomic(2) == P([1, 1])
    assert cyclotomic(6) == P([1, -1, 1])


def test_cyclotomic_product_identity():
    for n in range(1, 201):
        prod = P([1])
        for d in kit.divisors(n):
            prod = prod * cyclotomic(d)
        assert prod == P([-1] + [0] * (n - 1) + [1])


def test_F_examples():
    for n in range(1, 12):
        assert F(n, 1) == R(q_int(n).coeffs) * Fraction(1, n)
    assert F(2, 2) == R([Fraction(1, 2), Fraction(-1, 2)])
    assert F(4, 4) == R([Fraction(1, 2), 0, Fraction(-1, 2)])
    assert F(4, 2) == R([Fraction(1, 4), Fraction(-1, 4), Fraction(1, 4), Fraction(-1, 4)])
    with pytest.raises(ValueError):
        F(6, 4)


def _all_choices(n, d):
    """Every F_{n,d} obtainable by some sequence of admissible e."""
    if kit.is_squarefree(d):
        return {F_with_choice(n, d)}
    out = set()
    for e in admissible_e(d):
        out |= {f.substitute_power(e) for f in _all_choices(n // e, d // e)}
    return out


def test_F_independent_of_e_choice():
    nontrivial = 0
    for n in range(1, 61):
        for d in kit.divisors(n):
            results = _all_choices(n, d)
            assert results == {F(n, d)}
            nontrivial += len(admissible_e(d)) > 1
    assert nontrivial > 0


def test_F_delta_examples():
    assert verify_F_delta(4, 4, 4)
    assert verify_F_delta(4, 4, 2)
    assert verify_F_delta(9, 1, 1)
    assert F(4, 4) % R(cyclotomic(4).coeffs) == R([1])


def test_F_delta_characterizes_F():
    for n in range(1, 31):
        for d in kit.divisors(n):
            assert F(n, d).degree < n
            for c in kit.divisors(n):
                assert verify_F_delta(n, d, c)


def test_F_coeff_bound_examples():
    assert check_F_coeff_bound(4, 2)
    assert check_F_coeff_bound(4, 4)
    assert check_F_coeff_bound(7, 1)
    assert max(abs(x) for x in F(7, 1).coeffs) == Fraction(1, 7)


def test_verify_congruence_examples():
    ok, diff = verify_congruence(4, 2)
    assert ok and not diff
    assert F(4, 1) * 6 + F(4, 2) * 2 == R([2, 1, 2, 1])
    assert verify_congruence(9, 0)[0]
    with pytest.raises(ValueError):
        verify_congruence(0, 0)


def test_coprime_case_has_equal_residue_sums():
    for n in range(2, 30):
        for k in range(1, n):
            if gcd(n, k) == 1:
                assert verify_congruence(n, k)[0]
                assert comb(n, k) % n == 0


def test_verify_congruence_up_to_30():
    assert all(verify_congruence(n, k)[0] for n in range(1, 31) for k in range(n + 1))


def test_congruence_rhs_is_integral_and_reduced():
    from snorbit.qpoly import reduce_mod_qn_minus_1
    for n, k in [(6, 2), (12, 4), (9, 3)]:
        rhs = congruence_rhs(n, k)
        assert rhs.is_integral() and rhs.degree < n
        assert rhs.to_int() == reduce_mod_qn_minus_1(q_binomial(n, k), n)
        assert rhs + R([1]) != rhs
