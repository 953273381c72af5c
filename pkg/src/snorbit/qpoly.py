"""Dense exact polynomials in one variable ``q``.

Two coefficient rings are supported: arbitrary-precision integers
(:class:`IntPolynomial`) and rationals (:class:`RatPolynomial`).  Index ``r``
of ``coeffs`` holds the coefficient of ``q**r``; trailing zeros are always
stripped, so equal polynomials have equal ``coeffs`` tuples.

>>> f = IntPolynomial([1, 1]) * IntPolynomial([1, 1, 1])
>>> f
IntPolynomial([1, 2, 2, 1])
>>> divide_exact(f, IntPolynomial([1, 1]))
IntPolynomial([1, 1, 1])
"""
from __future__ import annotations

from fractions import Fraction
from itertools import accumulate
from numbers import Rational
from operator import add as _add, sub as _sub
from typing import Iterable, Sequence

__all__ = [
    "IntPolynomial", "RatPolynomial", "NotDivisibleError",
    "add", "mul", "divide_exact", "reduce_mod_qn_minus_1",
    "max_coeff", "eval_at_one",
    "mul_one_minus_qk", "div_one_minus_qk",
]


class NotDivisibleError(ArithmeticError):
    """Raised when an exact division leaves a nonzero remainder."""


def _strip(c: list) -> tuple:
    end = len(c)
    while end and not c[end - 1]:
        end -= 1
    return tuple(c[:end])


class _DensePolynomial:
    __slots__ = ("coeffs",)

    coeffs: tuple

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _strip([self._coerce(c) for c in coeffs]))

    @staticmethod
    def _coerce(c):
        raise NotImplementedError

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def monomial(cls, r: int, c=1):
        return cls([0] * r + [c])

    @classmethod
    def constant(cls, c):
        return cls([c])

    # -- basic protocol ------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, r: int):
        """Coefficient of ``q**r`` (zero outside the stored range)."""
        if 0 <= r < len(self.coeffs):
            return self.coeffs[r]
        return self._coerce(0)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, _DensePolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _strip([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for r, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if r == 0 else ("q" if r == 1 else f"q^{r}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            elif mono:
                terms.append(f"{c}*{mono}")
            else:
                terms.append(str(c))
        return " + ".join(terms).replace("+ -", "- ")

    # -- arithmetic ----------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, _DensePolynomial):
            if isinstance(other, type(self)):
                return other
            if isinstance(self, RatPolynomial):
                return RatPolynomial(other.coeffs)
            return NotImplemented
        if isinstance(other, int) or (isinstance(other, Rational) and isinstance(self, RatPolynomial)):
            return type(self)([other])
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        out[: len(b)] = map(_add, a, b)
        return type(self)(out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if isinstance(other, Fraction) and isinstance(self, IntPolynomial):
                return RatPolynomial(self.coeffs) * other
            return type(self)([c * other for c in self.coeffs])
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return type(self)()
        if len(a) < len(b):
            a, b = b, a
        out = [self._coerce(0)] * (len(a) + len(b) - 1)
        for j, c in enumerate(b):
            if not c:
                continue
            seg = out[j: j + len(a)]
            out[j: j + len(a)] = [s + c * x for s, x in zip(seg, a)]
        return type(self)(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = type(self)([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, r: int):
        """Multiply by ``q**r``."""
        if not self.coeffs:
            return self
        return type(self)([0] * r + list(self.coeffs))

    def substitute_power(self, e: int):
        """Return ``f(q**e)``."""
        if e < 1:
            raise ValueError("e must be positive")
        if not self.coeffs:
            return self
        out = [self._coerce(0)] * (e * self.degree + 1)
        out[::e] = self.coeffs
        return type(self)(out)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, g):
        """Schoolbook long division ``self = g*h + rem`` with ``deg rem < deg g``."""
        g = self._lift(g)
        if not g.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dg = g.degree
        lead = g.coeffs[-1]
        if len(rem) <= dg:
            return type(self)(), type(self)(rem)
        quot = [self._coerce(0)] * (len(rem) - dg)
        gc = g.coeffs
        for i in range(len(rem) - 1, dg - 1, -1):
            c = rem[i]
            if not c:
                continue
            if isinstance(self, IntPolynomial):
                t, r = divmod(c, lead)
                if r:
                    raise NotDivisibleError(f"leading coefficient {lead} does not divide {c}")
            else:
                t = c / lead
            quot[i - dg] = t
            base = i - dg
            for j in range(dg + 1):
                rem[base + j] -= t * gc[j]
        return type(self)(quot), type(self)(rem[:dg])

    def __mod__(self, g):
        return self.divmod(g)[1]


class IntPolynomial(_DensePolynomial):
    """Polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ()

    @staticmethod
    def _coerce(c):
        if isinstance(c, bool) or not isinstance(c, int):
            if isinstance(c, Fraction) and c.denominator == 1:
                return int(c)
            raise TypeError(f"IntPolynomial coefficient must be an integer, got {c!r}")
        return c


class RatPolynomial(_DensePolynomial):
    """Polynomial with exact rational coefficients (``fractions.Fraction``)."""

    __slots__ = ()

    @staticmethod
    def _coerce(c):
        if isinstance(c, float):
            raise TypeError("floating-point coefficients are not allowed")
        return Fraction(c)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def to_int(self) -> IntPolynomial:
        if not self.is_integral():
            raise ValueError("polynomial has non-integral coefficients")
        return IntPolynomial(int(c) for c in self.coeffs)


# -- module-level operations --------------------------------------------------

def add(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    return f + g


def mul(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    return f * g


def divide_exact(f, g):
    """Return ``h`` with ``f == g*h``; raise :class:`NotDivisibleError` otherwise."""
    quot, rem = f.divmod(g)
    if rem:
        raise NotDivisibleError(f"{g} does not divide {f} (remainder {rem})")
    return quot


def reduce_mod_qn_minus_1(f, n: int):
    """Reduce ``f`` modulo ``q**n - 1`` by folding exponents modulo ``n``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    c = f.coeffs
    if len(c) <= n:
        return f
    out = list(c[:n])
    for start in range(n, len(c), n):
        chunk = c[start: start + n]
        out[: len(chunk)] = map(_add, out, chunk)
    return type(f)(out)


def max_coeff(f) -> int:
    """Largest coefficient value of a nonzero polynomial."""
    if not f.coeffs:
        raise ValueError("max_coeff of the zero polynomial is undefined")
    return max(f.coeffs)


def eval_at_one(f):
    return sum(f.coeffs)


# -- fast paths for (1 - q^k) factors ----------------------------------------
# These work on plain coefficient lists so callers can keep truncated buffers.
# Both maps are causal: output index r only depends on input indices <= r,
# which makes truncation to a prefix exact.

def mul_one_minus_qk(c: Sequence[int], k: int, limit: int | None = None) -> list[int]:
    """Coefficients of ``(1 - q**k) * f``, optionally truncated to ``limit`` terms."""
    size = len(c) + k if limit is None else limit
    out = list(c[:size])
    out.extend([0] * (size - len(out)))
    if k < size:
        src = list(c[: size - k])
        src.extend([0] * (size - k - len(src)))
        out[k:] = map(_sub, out[k:], src)
    return out


def div_one_minus_qk(c: Sequence[int], k: int, limit: int | None = None) -> list[int]:
    """Coefficients of ``f / (1 - q**k)`` via ``h[r] = f[r] + h[r-k]``.

    Without ``limit`` the division must be exact (the tail is checked).
    """
    size = len(c) if limit is None else limit
    buf = list(c[:size])
    buf.extend([0] * (size - len(buf)))
    for j in range(min(k, size)):
        buf[j::k] = accumulate(buf[j::k])
    if limit is None:
        # exact quotient has degree len(c)-1-k; everything above must vanish
        tail = buf[max(len(c) - k, 0):]
        if any(tail):
            raise NotDivisibleError(f"1 - q^{k} does not divide the given polynomial")
        buf = buf[: max(len(c) - k, 0)]
    return buf
