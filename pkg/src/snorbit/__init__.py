"""Exact combinatorics for S_n-orbit points on hyperplanes.

Gaussian binomial and q-multinomial coefficients, the Bruhat order on
``S_n / S_alpha``, the cyclotomic decomposition of ``[n choose k]_q`` modulo
``q**n - 1``, batch verification of the coefficient inequalities and a
resumable log-concavity scan.
"""
from .qpoly import IntPolynomial, RatPolynomial, NotDivisibleError
from .qbinomial import Composition, q_binomial, q_multinomial, partition_count
from .symmetric import build_poset, orbit_zero_set, orbit_max_search, comp
from .cyclotomic import cyclotomic, F, verify_congruence

__version__ = "0.1.0"
