"""Batch verification suites for the finite checks behind the orbit bound.

Every suite returns a :class:`VerificationReport`.  Inequalities with square
roots are squared into exact rational comparisons; the one inequality with
an irrational exponent is decided with high-precision logarithms and, near
ties, with interval arithmetic.
"""
from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, gcd
from typing import Callable, Iterable, Sequence

import mpmath

from .cyclotomic import check_F_coeff_bound, kit, verify_congruence, verify_F_delta
from .qbinomial import (Composition, binomial_family, coeff_residue_sums, compositions,
                        q_binomial, q_multinomial)
from .qpoly import max_coeff
from .symmetric import comp, inverse, is_antichain, orbit_max_search, orbit_zero_set

__all__ = [
    "CaseResult", "VerificationReport", "SUITES", "run_suite",
    "check_residue_inequality", "check_maxcoeff_inequality", "check_refinement",
    "check_refinement_pair", "refines", "check_falling_factorial_inequality",
    "check_main_theorem", "composition_maximum", "main_theorem_value",
    "residue_suite", "maxcoeff_suite", "refinement_suite", "falling_suite",
    "congruence_suite", "main_suite", "antichain_suite", "random_orbit_pairs",
    "DEFAULT_SEARCH_VECTORS",
]

HOLDS, FAILS, SKIPPED = "holds", "fails", "skipped"

LOG_GUARD = mpmath.mpf("1e-9")

# distinct coordinates, nonzero sum; for n = 4 they also have v1 + v4 = v2 + v3
DEFAULT_SEARCH_VECTORS = {
    3: [(1, 2, 3), (1, 2, 4), (-1, 0, 2)],
    4: [(1, 2, 3, 4), (1, 2, 4, 5), (1, 3, 4, 6)],
    5: [(1, 2, 3, 4, 5), (1, 2, 3, 4, 6), (-2, 0, 1, 3, 5)],
}


def _fmt_margin(m) -> str | None:
    if m is None:
        return None
    if isinstance(m, Fraction):
        return str(m)
    if isinstance(m, int):
        return str(m)
    return mpmath.nstr(m, 30)


def _sort_key(m):
    # Fractions and ints compare exactly; only mpf margins need mpmath
    if isinstance(m, (int, Fraction)):
        return mpmath.mpf(m.numerator) / m.denominator if isinstance(m, Fraction) else mpmath.mpf(m)
    return m


@dataclass
class CaseResult:
    kind: str
    params: dict
    status: str
    margin: object = None
    note: str = ""

    def record(self, suite: str) -> dict:
        rec = {"suite": suite, "case": self.kind, "params": self.params,
               "status": self.status, "margin": _fmt_margin(self.margin)}
        if self.note:
            rec["note"] = self.note
        return rec


@dataclass
class VerificationReport:
    suite: str
    ranges: dict
    cases: list[CaseResult]
    extra: dict = field(default_factory=dict)
    elapsed: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return not any(c.status == FAILS for c in self.cases)

    def count(self, status: str) -> int:
        return sum(1 for c in self.cases if c.status == status)

    @property
    def worst(self) -> CaseResult | None:
        checked = [c for c in self.cases if c.margin is not None and c.status != SKIPPED]
        return min(checked, key=lambda c: _sort_key(c.margin), default=None)

    def records(self) -> list[str]:
        lines = [json.dumps(c.record(self.suite), sort_keys=True) for c in self.cases]
        summary = {"suite": self.suite, "case": "summary", "ranges": self.ranges,
                   "holds": self.count(HOLDS), "fails": self.count(FAILS),
                   "skipped": self.count(SKIPPED), "passed": self.passed}
        summary.update(self.extra)
        lines.append(json.dumps(summary, sort_keys=True))
        return lines

    def summary(self) -> str:
        w = self.worst
        out = [f"suite {self.suite} {self.ranges}: "
               f"{'PASS' if self.passed else 'FAIL'} "
               f"({self.count(HOLDS)} hold, {self.count(FAILS)} fail, {self.count(SKIPPED)} skipped) "
               f"in {self.elapsed:.2f}s"]
        if w is not None:
            out.append(f"  tightest case {w.kind} {w.params}: margin {_fmt_margin(w.margin)}")
        for key, val in self.extra.items():
            out.append(f"  {key}: {val}")
        for c in self.cases:
            if c.status == FAILS:
                out.append(f"  FAIL {c.kind} {c.params} margin {_fmt_margin(c.margin)} {c.note}".rstrip())
        return "\n".join(out)


def _run_rows(row: Callable[[int], list[CaseResult]], ns: Iterable[int], workers: int) -> list[CaseResult]:
    ns = list(ns)
    out: list[CaseResult] = []
    if workers > 1 and len(ns) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for rows in pool.map(row, ns):
                out.extend(rows)
    else:
        for n in ns:
            out.extend(row(n))
    return out


# -- residue-class sums -------------------------------------------------------

def check_residue_inequality(n: int, k: int, coeffs=None) -> list[CaseResult]:
    """``|C(n,k)/n - s_i| <= sqrt(C(n,k)/n)`` for each residue ``i``.

    ``s_i`` is the sum of the coefficients of ``q**r``, ``r = i mod n``.
    Compared squared; the margin is ``C/n - (C/n - s_i)**2``.
    """
    if not 1 < k < n - 1:
        return [CaseResult("residue", {"n": n, "k": k}, SKIPPED, note="requires 1 < k < n-1")]
    if coeffs is None:
        coeffs = q_binomial(n, k)
    C = comb(n, k)
    sums = coeff_residue_sums(coeffs, n)
    rows = []
    for i, s in enumerate(sums):
        margin = Fraction(n * C - (C - n * s) ** 2, n * n)
        rows.append(CaseResult("residue", {"n": n, "k": k, "i": i},
                               HOLDS if margin >= 0 else FAILS, margin))
    return rows


def _residue_row(n: int) -> list[CaseResult]:
    out = []
    for fam in binomial_family(n):
        k = fam.k
        if 1 < k < n - 1:
            rows = check_residue_inequality(n, k, fam.coeffs)
            out.append(min(rows, key=lambda c: c.margin))
        if k >= n - 2:
            break
    return out


def residue_suite(n_max: int, n_min: int = 4, workers: int = 1) -> VerificationReport:
    """Worst residue per ``(n, k)`` for all ``1 < k < n-1``, ``n_min <= n <= n_max``."""
    t0 = time.perf_counter()
    cases = _run_rows(_residue_row, range(max(n_min, 4), n_max + 1), workers)
    return VerificationReport("residue", {"n_min": n_min, "n_max": n_max}, cases,
                              elapsed=time.perf_counter() - t0)


# -- maximum coefficient ------------------------------------------------------

def _spot_checked(n: int, k: int) -> bool:
    # deterministic ~1% sample of the gcd-skipped cases
    return (n * 1_000_003 + k * 7919) * 2654435761 % 4294967291 % 100 == 0


def check_maxcoeff_inequality(n: int, k: int, use_gcd_shortcut: bool = False, M: int | None = None) -> CaseResult:
    """``n * M([n choose k]_q) <= C(n, k)`` for ``2 < k < n-2``; margin ``C/n - M``."""
    params = {"n": n, "k": k}
    if not 2 < k < n - 2:
        return CaseResult("maxcoeff", params, SKIPPED, note="requires 2 < k < n-2")
    shortcut = use_gcd_shortcut and gcd(n, k) == 1
    if shortcut and not _spot_checked(n, k):
        return CaseResult("maxcoeff", params, SKIPPED, note="gcd(n,k)=1")
    if M is None:
        M = max_coeff(q_binomial(n, k))
    margin = Fraction(comb(n, k), n) - M
    status = HOLDS if margin >= 0 else FAILS
    if shortcut and status == HOLDS:
        status = SKIPPED
        return CaseResult("maxcoeff", params, status, margin, note="gcd(n,k)=1, spot-checked")
    return CaseResult("maxcoeff", params, status, margin)


def _maxcoeff_row(n: int, use_gcd_shortcut: bool) -> list[CaseResult]:
    Ms: dict[int, int] = {}
    for fam in binomial_family(n):
        if fam.k > n // 2:
            break
        # unimodal and palindromic, so the maximum sits at the midpoint
        Ms[fam.k] = fam.coeffs[fam.midpoint]
    return [check_maxcoeff_inequality(n, k, use_gcd_shortcut, Ms[min(k, n - k)])
            for k in range(3, n - 2)]


def _maxcoeff_row_plain(n):
    return _maxcoeff_row(n, False)


def _maxcoeff_row_shortcut(n):
    return _maxcoeff_row(n, True)


def maxcoeff_suite(n_max: int, n_min: int = 6, use_gcd_shortcut: bool = False,
                   workers: int = 1) -> VerificationReport:
    t0 = time.perf_counter()
    row = _maxcoeff_row_shortcut if use_gcd_shortcut else _maxcoeff_row_plain
    cases = _run_rows(row, range(max(n_min, 6), n_max + 1), workers)
    extra = {}
    if use_gcd_shortcut:
        skipped = sum(1 for c in cases if c.note.startswith("gcd"))
        extra = {"gcd_skipped": skipped, "pairs": len(cases),
                 "skipped_fraction": round(skipped / len(cases), 4) if cases else 0.0,
                 "spot_checked": sum(1 for c in cases if c.note.endswith("spot-checked"))}
    return VerificationReport("maxcoeff", {"n_min": n_min, "n_max": n_max,
                                           "gcd_shortcut": use_gcd_shortcut},
                              cases, extra, elapsed=time.perf_counter() - t0)


# -- refinement ---------------------------------------------------------------

def _weighted_max(alpha: Composition) -> int:
    return alpha.factorial * max_coeff(q_multinomial(alpha))


def refines(alpha, beta) -> bool:
    """True iff ``beta`` arises from ``alpha`` by splitting parts (``alpha`` ≺ ``beta``)."""
    a, b = list(alpha), list(beta)
    if sum(a) != sum(b):
        return False
    pa = set(Composition(tuple(a)).partial_sums())
    pb = set(Composition(tuple(b)).partial_sums())
    return pa <= pb


def check_refinement_pair(alpha, beta) -> CaseResult:
    """``beta! M(beta) <= alpha! M(alpha)``; margin is the difference."""
    alpha = alpha if isinstance(alpha, Composition) else Composition(tuple(alpha))
    beta = beta if isinstance(beta, Composition) else Composition(tuple(beta))
    if not refines(alpha, beta):
        raise ValueError(f"{beta} does not refine {alpha}")
    margin = _weighted_max(alpha) - _weighted_max(beta)
    return CaseResult("refinement", {"alpha": list(alpha.parts), "beta": list(beta.parts)},
                      HOLDS if margin >= 0 else FAILS, margin)


def check_refinement(n: int) -> list[CaseResult]:
    """Every single-split pair of compositions of ``n``."""
    if n > 14:
        raise ValueError("refinement check is limited to n <= 14")
    return [check_refinement_pair(alpha, beta)
            for alpha in compositions(n) for beta in alpha.splits()]


def refinement_suite(n_max: int, n_min: int = 1, workers: int = 1) -> VerificationReport:
    t0 = time.perf_counter()
    cases = _run_rows(check_refinement, range(max(n_min, 1), n_max + 1), workers)
    return VerificationReport("refinement", {"n_min": n_min, "n_max": n_max}, cases,
                              elapsed=time.perf_counter() - t0)


# -- falling-factorial inequality ---------------------------------------------

def _log_margin_interval(L: Fraction, n: int, k: int, j: int, dps: int):
    with mpmath.workdps(dps):
        iv = mpmath.iv
        iv.dps = dps
        lhs = iv.log(iv.mpf(L.numerator)) - iv.log(iv.mpf(L.denominator))
        rhs = iv.log(2) * (k - 2 * j) * (iv.log(n) - iv.log(k))
        return lhs - rhs


def check_falling_factorial_inequality(n: int, k: int, j: int) -> CaseResult:
    """``C(n-j,k-j)**2 / C(n,k) >= (n/k)**(log(2)*(k-2j))`` for ``n >= k >= 2j >= 2``."""
    params = {"n": n, "k": k, "j": j}
    if not n >= k >= 2 * j >= 2:
        return CaseResult("falling", params, SKIPPED, note="requires n >= k >= 2j >= 2")
    L = Fraction(comb(n - j, k - j) ** 2, comb(n, k))
    if n == k or k == 2 * j:
        # right side is exactly 1
        margin = L - 1
        return CaseResult("falling", params, HOLDS if margin >= 0 else FAILS, margin)
    with mpmath.workdps(50):
        diff = (mpmath.log(L.numerator) - mpmath.log(L.denominator)
                - mpmath.log(2) * (k - 2 * j) * mpmath.log(mpmath.mpf(n) / k))
    if abs(diff) > LOG_GUARD:
        return CaseResult("falling", params, HOLDS if diff > 0 else FAILS, +diff)
    for dps in (100, 200, 400, 800):
        ivl = _log_margin_interval(L, n, k, j, dps)
        if ivl.a >= 0:
            return CaseResult("falling", params, HOLDS, mpmath.mpf(ivl.a), note=f"escalated dps={dps}")
        if ivl.b < 0:
            return CaseResult("falling", params, FAILS, mpmath.mpf(ivl.b), note=f"escalated dps={dps}")
    return CaseResult("falling", params, FAILS, diff, note="undecided after escalation")


def _falling_row(n: int) -> list[CaseResult]:
    return [check_falling_factorial_inequality(n, k, j)
            for k in range(2, n + 1) for j in range(1, k // 2 + 1)]


def falling_suite(n_max: int, n_min: int = 2, workers: int = 1) -> VerificationReport:
    t0 = time.perf_counter()
    cases = _run_rows(_falling_row, range(max(n_min, 2), n_max + 1), workers)
    return VerificationReport("falling", {"n_min": n_min, "n_max": n_max}, cases,
                              elapsed=time.perf_counter() - t0)


# -- cyclotomic congruence ----------------------------------------------------

def _congruence_row(n: int) -> list[CaseResult]:
    out = []
    for k in range(n + 1):
        ok, diff = verify_congruence(n, k)
        resid = max((abs(c) for c in diff.coeffs), default=Fraction(0))
        out.append(CaseResult("congruence", {"n": n, "k": k}, HOLDS if ok else FAILS, -resid))
    divs = kit.divisors(n)
    for d in divs:
        for c in divs:
            ok = verify_F_delta(n, d, c)
            out.append(CaseResult("F_delta", {"n": n, "d": d, "c": c}, HOLDS if ok else FAILS))
        ok = check_F_coeff_bound(n, d)
        out.append(CaseResult("F_bound", {"n": n, "d": d}, HOLDS if ok else FAILS))
    return out


def congruence_suite(n_max: int, n_min: int = 1, workers: int = 1) -> VerificationReport:
    t0 = time.perf_counter()
    cases = _run_rows(_congruence_row, range(max(n_min, 1), n_max + 1), workers)
    return VerificationReport("congruence", {"n_min": n_min, "n_max": n_max}, cases,
                              elapsed=time.perf_counter() - t0)


# -- the orbit bound ----------------------------------------------------------

def main_theorem_value(n: int) -> int:
    return 2 * (n // 2) * factorial(n - 2)


def composition_maximum(n: int) -> tuple[int, list[Composition]]:
    """Max of ``alpha! M(alpha)`` over compositions of ``n`` with at least two parts."""
    best, arg = -1, []
    for alpha in compositions(n, min_length=2):
        val = _weighted_max(alpha)
        if val > best:
            best, arg = val, [alpha]
        elif val == best:
            arg.append(alpha)
    return best, arg


def check_main_theorem(n: int, search: bool | None = None,
                       vectors: Sequence[Sequence] | None = None, workers: int = 1) -> list[CaseResult]:
    """Composition maximum (``3 <= n <= 12``) and, for ``n <= 5``, the geometric search."""
    if not 3 <= n <= 12:
        raise ValueError("check_main_theorem supports 3 <= n <= 12")
    target = main_theorem_value(n)
    best, arg = composition_maximum(n)
    two_split = Composition((2, n - 2))
    ok = best == target and two_split in arg
    rows = [CaseResult("composition_max", {"n": n, "value": best, "expected": target,
                                           "maximizers": [list(a.parts) for a in arg]},
                       HOLDS if ok else FAILS, target - best)]
    if search is None:
        search = n <= 5
    if search:
        for v in vectors or DEFAULT_SEARCH_VECTORS[n]:
            found, w = orbit_max_search(n, v, workers=workers)
            rows.append(CaseResult("orbit_search", {"n": n, "v": [str(x) for x in v], "value": found,
                                                    "witness": list(w), "expected": target},
                                   HOLDS if found == target else FAILS, target - found))
    return rows


def main_suite(n_max: int, n_min: int = 3, workers: int = 1, search_max: int = 5) -> VerificationReport:
    t0 = time.perf_counter()
    cases = []
    for n in range(max(n_min, 3), n_max + 1):
        cases.extend(check_main_theorem(n, search=n <= search_max, workers=workers))
    return VerificationReport("main", {"n_min": n_min, "n_max": n_max}, cases,
                              elapsed=time.perf_counter() - t0)


# -- antichain property on random pairs ----------------------------------------

def random_orbit_pairs(samples: int, seed: int, n_min: int = 3, n_max: int = 7):
    """Seeded (strictly increasing v, weakly increasing w) integer pairs.

    Small coordinate ranges make nonempty zero sets common.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < samples:
        n = rng.randint(n_min, n_max)
        v = tuple(sorted(rng.sample(range(-2 * n, 2 * n + 1), n)))
        w = tuple(sorted(rng.randint(-2, 2) for _ in range(n)))
        if len(set(w)) == 1:
            continue
        out.append((v, w))
    return out


def antichain_suite(samples: int = 1000, seed: int = 0, n_max: int = 7,
                    transport: str = "inverse") -> VerificationReport:
    """Zero sets of random pairs are antichains in the ``comp(w)``-Bruhat order.

    ``transport="inverse"`` checks ``{s^{-1}}``; ``"literal"`` checks the zero
    set itself, which is known to fail (see :mod:`snorbit.symmetric`).
    """
    if transport not in ("inverse", "literal"):
        raise ValueError("transport must be 'inverse' or 'literal'")
    t0 = time.perf_counter()
    cases = []
    for v, w in random_orbit_pairs(samples, seed, n_max=n_max):
        Z = orbit_zero_set(v, w)
        S = Z if transport == "literal" else {inverse(s) for s in Z}
        ok = is_antichain(S, comp(w))
        cases.append(CaseResult(f"antichain_{transport}", {"v": list(v), "w": list(w), "zero_set": len(Z)},
                                HOLDS if ok else FAILS))
    nonempty = sum(1 for c in cases if c.params["zero_set"] > 1)
    return VerificationReport("antichain", {"samples": samples, "seed": seed, "n_max": n_max,
                                            "transport": transport},
                              cases, {"zero_sets_with_2_or_more": nonempty},
                              elapsed=time.perf_counter() - t0)


SUITES = {
    "residue": residue_suite,
    "maxcoeff": maxcoeff_suite,
    "refinement": refinement_suite,
    "congruence": congruence_suite,
    "falling": falling_suite,
    "main": main_suite,
    "antichain": antichain_suite,
}


def run_suite(name: str, n_max: int, workers: int = 1, gcd_shortcut: bool = False,
              seed: int = 0, samples: int = 1000, literal: bool = False) -> VerificationReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    if name == "maxcoeff":
        return maxcoeff_suite(n_max, use_gcd_shortcut=gcd_shortcut, workers=workers)
    if name == "antichain":
        return antichain_suite(samples, seed, n_max, "literal" if literal else "inverse")
    return SUITES[name](n_max, workers=workers)
