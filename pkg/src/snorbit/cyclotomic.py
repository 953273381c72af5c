"""Cyclotomic polynomials and the rational polynomials ``F_{n,d}``.

``F_{n,d}`` has degree ``< n`` and satisfies ``F_{n,d} = delta_{cd} (mod Phi_c)``
for every ``c | n``; summing them with binomial weights reproduces
``[n choose k]_q`` modulo ``q**n - 1``.  All checks here are polynomial
remainder identities over the rationals, never evaluations at complex roots
of unity.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd

from .qbinomial import q_binomial
from .qpoly import IntPolynomial, RatPolynomial, divide_exact, reduce_mod_qn_minus_1

__all__ = [
    "NumberTheoryKit", "kit", "cyclotomic", "F", "F_with_choice", "admissible_e",
    "congruence_rhs", "verify_congruence", "verify_F_delta", "check_F_coeff_bound",
]


class NumberTheoryKit:
    """Smallest-prime-factor sieve with Möbius, totient and divisor helpers."""

    def __init__(self, bound: int = 1024):
        self.bound = 0
        self._spf: list[int] = []
        self._grow(max(bound, 2))

    def _grow(self, bound: int) -> None:
        spf = list(range(bound + 1))
        for p in range(2, int(bound**0.5) + 1):
            if spf[p] == p:
                for m in range(p * p, bound + 1, p):
                    if spf[m] == m:
                        spf[m] = p
        self._spf, self.bound = spf, bound

    def factorize(self, n: int) -> dict[int, int]:
        if n < 1:
            raise ValueError("n must be positive")
        if n > self.bound:
            self._grow(max(n, 2 * self.bound))
        out: dict[int, int] = {}
        while n > 1:
            p = self._spf[n]
            out[p] = out.get(p, 0) + 1
            n //= p
        return out

    def mobius(self, n: int) -> int:
        f = self.factorize(n)
        if any(e > 1 for e in f.values()):
            return 0
        return -1 if len(f) % 2 else 1

    def totient(self, n: int) -> int:
        out = n
        for p in self.factorize(n):
            out = out // p * (p - 1)
        return out

    def divisors(self, n: int) -> list[int]:
        divs = [1]
        for p, e in self.factorize(n).items():
            divs = [d * p**i for d in divs for i in range(e + 1)]
        return sorted(divs)

    def is_squarefree(self, n: int) -> bool:
        return all(e == 1 for e in self.factorize(n).values())

    def smallest_square_prime(self, n: int) -> int | None:
        """Smallest prime ``p`` with ``p*p | n``, or None."""
        sq = [p for p, e in self.factorize(n).items() if e > 1]
        return min(sq) if sq else None

    gcd = staticmethod(gcd)


kit = NumberTheoryKit()


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> IntPolynomial:
    """``Phi_d`` as ``(q**d - 1) / prod_{c | d, c < d} Phi_c``."""
    if d < 1:
        raise ValueError("d must be >= 1")
    num = IntPolynomial([-1] + [0] * (d - 1) + [1])
    den = IntPolynomial([1])
    for c in kit.divisors(d)[:-1]:
        den = den * cyclotomic(c)
    return divide_exact(num, den)


def _squarefree_F(n: int, d: int) -> RatPolynomial:
    coeffs = []
    for i in range(n):
        g = gcd(d, i)  # gcd(d, 0) == d
        coeffs.append(Fraction(kit.mobius(d // g) * kit.totient(g), n))
    return RatPolynomial(coeffs)


def admissible_e(d: int) -> list[int]:
    """All ``e > 1`` with ``e*e | d``."""
    return [e for e in range(2, int(d**0.5) + 1) if d % (e * e) == 0]


def F_with_choice(n: int, d: int, choose=None) -> RatPolynomial:
    """``F_{n,d}`` where ``choose(d)`` picks ``e`` in the non-squarefree branch.

    The default picks the smallest prime whose square divides ``d``.
    """
    if n < 1 or d < 1 or n % d:
        raise ValueError(f"F_{{n,d}} needs d | n, got n={n}, d={d}")
    if kit.is_squarefree(d):
        return _squarefree_F(n, d)
    e = kit.smallest_square_prime(d) if choose is None else choose(d)
    if e <= 1 or d % (e * e):
        raise ValueError(f"e={e} is not admissible for d={d}")
    return F_with_choice(n // e, d // e, choose).substitute_power(e)


@lru_cache(maxsize=None)
def F(n: int, d: int) -> RatPolynomial:
    return F_with_choice(n, d)


def congruence_rhs(n: int, k: int) -> RatPolynomial:
    """``sum_{d | (n,k)} C(n/d, k/d) F_{n,d}``."""
    out = RatPolynomial()
    for d in kit.divisors(gcd(n, k)):
        out = out + F(n, d) * comb(n // d, k // d)
    return out


def verify_congruence(n: int, k: int) -> tuple[bool, RatPolynomial]:
    """Compare ``[n choose k]_q mod (q**n - 1)`` with :func:`congruence_rhs`.

    Returns ``(holds, lhs - rhs)``; ``holds`` also requires the right side to
    be integral.  ``n = 0`` is excluded (there is no modulus).
    """
    if n < 1 or not 0 <= k <= n:
        raise ValueError(f"need n >= 1 and 0 <= k <= n, got n={n}, k={k}")
    lhs = RatPolynomial(reduce_mod_qn_minus_1(q_binomial(n, k), n).coeffs)
    rhs = congruence_rhs(n, k)
    diff = lhs - rhs
    return (not diff) and rhs.is_integral(), diff


def verify_F_delta(n: int, d: int, c: int) -> bool:
    """``F_{n,d} mod Phi_c`` equals the constant ``delta_{cd}``."""
    if n % d or n % c:
        raise ValueError("need d | n and c | n")
    rem = F(n, d) % RatPolynomial(cyclotomic(c).coeffs)
    return rem == (1 if c == d else 0)


def check_F_coeff_bound(n: int, d: int) -> bool:
    """Every coefficient of ``F_{n,d}`` is at most ``d/n`` in absolute value."""
    bound = Fraction(d, n)
    return all(abs(x) <= bound for x in F(n, d).coeffs)
