"""Gaussian binomial and q-multinomial coefficients.

The coefficient of ``q**r`` in ``q_binomial(n, k)`` counts partitions of ``r``
fitting in a ``k x (n-k)`` box; :func:`partition_count` computes that number
by an independent recurrence and serves as an oracle in the tests.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial, prod
from typing import Iterable

from .qpoly import IntPolynomial, div_one_minus_qk, mul_one_minus_qk, reduce_mod_qn_minus_1

__all__ = [
    "Composition", "QBinomialFamily", "compositions",
    "q_int", "q_factorial", "q_binomial", "q_multinomial",
    "partition_count", "coeff_residue_sums",
    "is_unimodal", "is_palindromic", "next_k", "binomial_family",
]


@dataclass(frozen=True, order=True)
class Composition:
    """An ordered sequence of positive integers."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise ValueError("a composition needs at least one part")
        for p in parts:
            if isinstance(p, bool) or not isinstance(p, int) or p < 1:
                raise ValueError(f"composition parts must be positive integers, got {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Composition":
        try:
            return cls(tuple(int(x) for x in text.split(",")))
        except ValueError as exc:
            raise ValueError(f"malformed composition {text!r}: {exc}") from None

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    @property
    def factorial(self) -> int:
        """``alpha! = prod(alpha_i!)``, the order of the Young subgroup."""
        return prod(factorial(p) for p in self.parts)

    def partial_sums(self) -> list[int]:
        out, s = [], 0
        for p in self.parts:
            s += p
            out.append(s)
        return out

    def intervals(self) -> list[range]:
        """Position intervals ``[s_{i-1}+1, s_i]`` (1-based) of the Young subgroup."""
        out, lo = [], 1
        for p in self.parts:
            out.append(range(lo, lo + p))
            lo += p
        return out

    def splits(self) -> Iterable["Composition"]:
        """Compositions obtained by splitting one part ``g`` into ``(g-p, p)``."""
        for i, g in enumerate(self.parts):
            for p in range(1, g):
                yield Composition(self.parts[:i] + (g - p, p) + self.parts[i + 1:])

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def compositions(n: int, min_length: int = 1) -> Iterable[Composition]:
    """All compositions of ``n`` (``2**(n-1)`` of them), in a fixed order."""
    if n < 1:
        return
    for mask in range(1 << (n - 1)):
        parts, run = [], 1
        for i in range(n - 1):
            if mask >> i & 1:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        if len(parts) >= min_length:
            yield Composition(tuple(parts))


def _as_composition(alpha) -> Composition:
    return alpha if isinstance(alpha, Composition) else Composition(tuple(alpha))


def q_int(n: int) -> IntPolynomial:
    """``[n]_q = 1 + q + ... + q**(n-1)``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return IntPolynomial([1] * n)


def q_factorial(n: int) -> IntPolynomial:
    if n < 0:
        raise ValueError("n must be >= 0")
    out = IntPolynomial([1])
    for i in range(2, n + 1):
        out = out * q_int(i)
    return out


def _qbinom_coeffs(n: int, k: int, limit: int | None = None) -> list[int]:
    # prod_{i=1..k} (1 - q^{n-k+i}) / (1 - q^i); each step is exact
    k = min(k, n - k)
    c = [1]
    for i in range(1, k + 1):
        c = mul_one_minus_qk(c, n - k + i, limit)
        c = div_one_minus_qk(c, i, limit)
    return c


@lru_cache(maxsize=4096)
def q_binomial(n: int, k: int) -> IntPolynomial:
    """Gaussian binomial coefficient ``[n choose k]_q``."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    return IntPolynomial(_qbinom_coeffs(n, k))


@lru_cache(maxsize=4096)
def _q_multinomial(parts: tuple[int, ...]) -> IntPolynomial:
    out = IntPolynomial([1])
    total = 0
    for p in parts:
        total += p
        out = out * q_binomial(total, p)
    return out


def q_multinomial(alpha) -> IntPolynomial:
    """``[n]_q! / prod [alpha_i]_q!`` as a telescoping product of q-binomials."""
    return _q_multinomial(_as_composition(alpha).parts)


def partition_count(r: int, k: int, m: int) -> int:
    """Number of partitions of ``r`` with at most ``k`` parts, each at most ``m``.

    Deliberately independent of the polynomial code: it is used as an oracle.
    """
    if min(r, k, m) < 0:
        raise ValueError("arguments must be nonnegative")
    return _pc(r, k, m)


@lru_cache(maxsize=None)
def _pc(r: int, k: int, m: int) -> int:
    if r == 0:
        return 1
    if k == 0 or m == 0 or r > k * m:
        return 0
    # either no part equals m, or remove one part of size m
    return _pc(r, k, m - 1) + _pc(r - m, k - 1, m)


def coeff_residue_sums(f: IntPolynomial, n: int) -> list[int]:
    """Entry ``i`` is the sum of the coefficients of ``q**r`` over ``r = i mod n``."""
    red = reduce_mod_qn_minus_1(f, n).coeffs
    return list(red) + [0] * (n - len(red))


def is_palindromic(f: IntPolynomial) -> bool:
    c = f.coeffs
    return c == c[::-1]


def is_unimodal(f: IntPolynomial) -> bool:
    """Weakly increasing then weakly decreasing over ``[0, degree]``."""
    c = f.coeffs
    i = 1
    while i < len(c) and c[i] >= c[i - 1]:
        i += 1
    while i < len(c) and c[i] <= c[i - 1]:
        i += 1
    return i >= len(c)


@dataclass
class QBinomialFamily:
    """Column ``k -> [n choose k]_q`` for a fixed ``n``, advanced one ``k`` at a time."""

    n: int
    k: int = 0
    coeffs: IntPolynomial = field(default_factory=lambda: IntPolynomial([1]))

    @property
    def midpoint(self) -> int:
        return self.k * (self.n - self.k) // 2

    def __iter__(self):
        fam = self
        while True:
            yield fam
            if fam.k >= fam.n:
                return
            fam = next_k(fam)


def binomial_family(n: int) -> QBinomialFamily:
    if n < 0:
        raise ValueError("n must be >= 0")
    return QBinomialFamily(n)


def next_k(fam: QBinomialFamily) -> QBinomialFamily:
    """Advance ``[n choose k]_q`` to ``[n choose k+1]_q``.

    Uses ``[n, k+1] = [n, k] * (1 - q**(n-k)) / (1 - q**(k+1))``.
    """
    n, k = fam.n, fam.k
    if k >= n:
        raise ValueError("family already at k = n")
    c = mul_one_minus_qk(fam.coeffs.coeffs, n - k)
    c = div_one_minus_qk(c, k + 1)
    return QBinomialFamily(n, k + 1, IntPolynomial(c))

