"""Permutations, ordered set partitions and the Bruhat order on ``S_n / S_alpha``.

Conventions
-----------
Permutations are tuples in one-line notation on ``{1..n}``.  Products are
composed right to left, ``(s * t)(i) = s(t(i))``; with this convention the
``(2,1)``-Bruhat order on ``S_3`` is the pair of chains
``123 < 132 < 231`` and ``213 < 312 < 321``.

A permutation acts on a vector by ``(s v)_i = v_{s^{-1}(i)}``, so
``w . s v = sum_j w_{s(j)} v_j``.

With these conventions the zero set ``{s : w . s v = 0}`` is *not* in general
an antichain of the ``comp(w)``-Bruhat order (``v = (1,2,3)``,
``w = (-1,1,1)`` gives the comparable pair ``231 < 321``).  Its image under
``s -> s^{-1}`` always is: ``w . s v`` only depends on the blocks
``s^{-1}(I_a)`` and strictly decreases along every defining relation.  See
:func:`zero_set_is_antichain`.
"""
from __future__ import annotations

import math
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Sequence

import numpy as np

from .qbinomial import Composition, _as_composition
from .qpoly import IntPolynomial

__all__ = [
    "Permutation", "OrderedSetPartition", "QuotientPoset", "SizeGuardError",
    "rational_vector", "parse_vector", "inverse", "compose", "transposition", "act", "dot",
    "comp", "s_set", "word", "decompose", "build_poset", "alpha_bruhat_less",
    "orbit_zero_set", "orbit_count", "is_antichain", "zero_set_is_antichain",
    "max_antichain_size", "orbit_max_search",
]

Permutation = tuple[int, ...]
RationalVector = tuple[Fraction, ...]

MAX_POSET_N = 9
MAX_ORBIT_N = 10
MAX_ANTICHAIN_ELEMENTS = 5000
MIN_SEARCH_N, MAX_SEARCH_N = 3, 5


class SizeGuardError(ValueError):
    """Input exceeds a combinatorial-explosion guard."""


# -- vectors and permutations -----------------------------------------------

def rational_vector(values: Iterable) -> RationalVector:
    """Exact rational vector; strings such as ``"1/2"`` or ``"0.5"`` are accepted."""
    out = []
    for x in values:
        if isinstance(x, str):
            x = x.strip()
        try:
            out.append(Fraction(x))
        except (ValueError, TypeError, ZeroDivisionError):
            raise ValueError(f"not an exact rational: {x!r}") from None
    return tuple(out)


def parse_vector(text: str) -> RationalVector:
    if not text.strip():
        raise ValueError("empty vector")
    return rational_vector(text.split(","))


def _integral(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Positive rescaling of ``v`` to integers (zero sets are scale-invariant)."""
    den = math.lcm(*(Fraction(x).denominator for x in v))
    return tuple(int(Fraction(x) * den) for x in v)


def check_permutation(s: Sequence[int]) -> Permutation:
    s = tuple(s)
    if sorted(s) != list(range(1, len(s) + 1)):
        raise ValueError(f"not a permutation of 1..{len(s)}: {s}")
    return s


def inverse(s: Permutation) -> Permutation:
    inv = [0] * len(s)
    for i, x in enumerate(s, 1):
        inv[x - 1] = i
    return tuple(inv)


def compose(s: Permutation, t: Permutation) -> Permutation:
    """``(s * t)(i) = s(t(i))``."""
    return tuple(s[x - 1] for x in t)


def transposition(n: int, i: int, j: int) -> Permutation:
    out = list(range(1, n + 1))
    out[i - 1], out[j - 1] = j, i
    return tuple(out)


def act(s: Permutation, v: Sequence) -> tuple:
    """``(s v)_i = v_{s^{-1}(i)}``."""
    out = [None] * len(v)
    for j, x in enumerate(s):
        out[x - 1] = v[j]
    return tuple(out)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def inversions(s: Sequence[int]) -> int:
    return sum(1 for i, j in combinations(range(len(s)), 2) if s[i] > s[j])


# -- compositions attached to vectors ----------------------------------------

def comp(w: Sequence) -> Composition:
    """Run lengths of the weakly increasing rearrangement of ``w``."""
    if not len(w):
        raise ValueError("comp of an empty vector")
    ws = sorted(Fraction(x) for x in w)
    parts, run = [], 1
    for a, b in zip(ws, ws[1:]):
        if a == b:
            run += 1
        else:
            parts.append(run)
            run = 1
    parts.append(run)
    return Composition(tuple(parts))


def s_set(alpha) -> set[int]:
    """Partial sums ``alpha_1 + ... + alpha_i`` for ``i < len(alpha)``."""
    return set(_as_composition(alpha).partial_sums()[:-1])


# -- ordered set partitions ---------------------------------------------------

@dataclass(frozen=True)
class OrderedSetPartition:
    blocks: tuple[frozenset[int], ...]
    type: Composition = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        blocks = tuple(frozenset(b) for b in self.blocks)
        if not blocks or any(not b for b in blocks):
            raise ValueError("blocks must be nonempty")
        union = set().union(*blocks)
        n = sum(len(b) for b in blocks)
        if len(union) != n or union != set(range(1, n + 1)):
            raise ValueError("blocks must be disjoint with union {1..n}")
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "type", Composition(tuple(len(b) for b in blocks)))

    @classmethod
    def from_word(cls, s: Sequence[int], alpha) -> "OrderedSetPartition":
        return cls(tuple(frozenset(s[i - 1] for i in iv) for iv in _as_composition(alpha).intervals()))

    @property
    def n(self) -> int:
        return self.type.n

    def apply(self, s: Permutation) -> "OrderedSetPartition":
        return OrderedSetPartition(tuple(frozenset(s[x - 1] for x in b) for b in self.blocks))

    def __str__(self) -> str:
        return "(" + ",".join("{" + ",".join(map(str, sorted(b))) + "}" for b in self.blocks) + ")"


def word(B: OrderedSetPartition) -> Permutation:
    """Concatenation of the sorted blocks: the minimal coset representative."""
    return tuple(x for b in B.blocks for x in sorted(b))


def decompose(s: Permutation, alpha) -> tuple[Permutation, Permutation]:
    """Write ``s = word(B) * pi`` with ``pi`` in ``S_alpha``; return ``(word(B), pi)``."""
    alpha = _as_composition(alpha)
    if alpha.n != len(s):
        raise ValueError("composition size does not match permutation length")
    tau: list[int] = []
    for iv in alpha.intervals():
        tau.extend(sorted(s[i - 1] for i in iv))
    tau_inv = inverse(tuple(tau))
    pi = tuple(tau_inv[x - 1] for x in s)
    return tuple(tau), pi


# -- the quotient poset -------------------------------------------------------

@dataclass
class QuotientPoset:
    """Bruhat order on ordered set partitions of type ``alpha``.

    Elements are stored as their words (minimal coset representatives).
    ``relations[i]`` lists the targets of the defining moves out of element
    ``i``; ``above[i]`` is a bitset of all elements strictly greater than ``i``.
    """

    alpha: Composition
    words: list[Permutation]
    index: dict[Permutation, int]
    rank: list[int]
    relations: list[list[int]]
    above: list[int]

    def __len__(self) -> int:
        return len(self.words)

    def element(self, i: int) -> OrderedSetPartition:
        return OrderedSetPartition.from_word(self.words[i], self.alpha)

    def less(self, i: int, j: int) -> bool:
        return bool(self.above[i] >> j & 1)

    def comparable(self, i: int, j: int) -> bool:
        return self.less(i, j) or self.less(j, i)

    def rank_generating_function(self) -> IntPolynomial:
        counts = [0] * (max(self.rank) + 1)
        for r in self.rank:
            counts[r] += 1
        return IntPolynomial(counts)

    def covers(self) -> list[tuple[int, int]]:
        """Relations whose endpoints differ by one in rank (the Hasse diagram)."""
        return [(i, j) for i, succ in enumerate(self.relations) for j in succ
                if self.rank[j] == self.rank[i] + 1]

    def comparable_pairs(self) -> Iterable[tuple[int, int]]:
        for i, bits in enumerate(self.above):
            j = 0
            while bits:
                if bits & 1:
                    yield i, j
                bits >>= 1
                j += 1


def _quotient_words(alpha: Composition) -> list[Permutation]:
    n = alpha.n

    def rec(remaining: tuple[int, ...], parts: tuple[int, ...]):
        if not parts:
            yield ()
            return
        for block in combinations(remaining, parts[0]):
            rest = tuple(x for x in remaining if x not in block)
            for tail in rec(rest, parts[1:]):
                yield block + tail

    return list(rec(tuple(range(1, n + 1)), alpha.parts))


@lru_cache(maxsize=64)
def _build_poset(parts: tuple[int, ...]) -> QuotientPoset:
    alpha = Composition(parts)
    words = _quotient_words(alpha)
    index = {w: i for i, w in enumerate(words)}
    rank = [inversions(w) for w in words]
    ivs = alpha.intervals()
    block_of_pos = [0] * alpha.n
    for a, iv in enumerate(ivs):
        for p in iv:
            block_of_pos[p - 1] = a
    relations: list[list[int]] = []
    for w in words:
        pos = inverse(w)
        succ = []
        for i in range(1, alpha.n + 1):
            for j in range(i + 1, alpha.n + 1):
                if block_of_pos[pos[i - 1] - 1] < block_of_pos[pos[j - 1] - 1]:
                    swapped = tuple(j if x == i else i if x == j else x for x in w)
                    tau, _ = decompose(swapped, alpha)
                    succ.append(index[tau])
        relations.append(succ)
    order = sorted(range(len(words)), key=rank.__getitem__, reverse=True)
    above = [0] * len(words)
    for i in order:
        bits = 0
        for j in relations[i]:
            if rank[j] <= rank[i]:
                raise AssertionError("Bruhat relation does not increase rank")
            bits |= (1 << j) | above[j]
        above[i] = bits
    return QuotientPoset(alpha, words, index, rank, relations, above)


def build_poset(alpha) -> QuotientPoset:
    """Explicit Bruhat order on ``S_n / S_alpha`` with ranks and transitive closure."""
    alpha = _as_composition(alpha)
    if alpha.n > MAX_POSET_N:
        raise SizeGuardError(f"|alpha| = {alpha.n} exceeds the poset guard {MAX_POSET_N}")
    return _build_poset(alpha.parts)


def alpha_bruhat_less(s: Permutation, t: Permutation, alpha) -> bool:
    """Strict comparison ``s <_alpha t`` in the alpha-Bruhat order on ``S_n``."""
    P = build_poset(alpha)
    tau_s, pi_s = decompose(s, P.alpha)
    tau_t, pi_t = decompose(t, P.alpha)
    return pi_s == pi_t and P.less(P.index[tau_s], P.index[tau_t])


def is_antichain(S: Iterable[Permutation], alpha) -> bool:
    """True iff no two distinct elements of ``S`` are comparable in ``<_alpha``."""
    P = build_poset(alpha)
    groups: dict[Permutation, int] = defaultdict(int)
    members: dict[Permutation, list[int]] = defaultdict(list)
    for s in set(S):
        tau, pi = decompose(s, P.alpha)
        i = P.index[tau]
        groups[pi] |= 1 << i
        members[pi].append(i)
    for pi, idx in members.items():
        mask = groups[pi]
        if any(P.above[i] & mask for i in idx):
            return False
    return True


def zero_set_is_antichain(v: Sequence, w: Sequence) -> bool:
    """Antichain check for ``{s^{-1} : w . s v = 0}`` in the ``comp(w)``-Bruhat order."""
    return is_antichain((inverse(s) for s in orbit_zero_set(v, w)), comp(w))


# -- orbit counting -----------------------------------------------------------

@lru_cache(maxsize=16)
def _perm_table(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.int64)


def _fits_int64(a: Sequence[int], b: Sequence[int]) -> bool:
    bound = max(map(abs, a), default=0) * max(map(abs, b), default=0) * max(len(a), 1)
    return bound < 2**62


def orbit_zero_set(v: Sequence, w: Sequence) -> set[Permutation]:
    """``{s in S_n : w . s v = 0}``, decided exactly."""
    if len(v) != len(w):
        raise ValueError("v and w must have the same length")
    n = len(v)
    if n > MAX_ORBIT_N:
        raise SizeGuardError(f"n = {n} exceeds the orbit guard {MAX_ORBIT_N}")
    vi, wi = _integral(rational_vector(v)), _integral(rational_vector(w))
    if not _fits_int64(vi, wi):
        # sum_j w_{s(j)} v_j with s(j) 1-based
        return {tuple(x + 1 for x in p) for p in permutations(range(n))
                if sum(wi[p[j]] * vi[j] for j in range(n)) == 0}
    table = _perm_table(n)
    vals = np.asarray(wi, dtype=np.int64)[table] @ np.asarray(vi, dtype=np.int64)
    return {tuple(int(x) + 1 for x in row) for row in table[vals == 0]}


def orbit_count(v: Sequence, w: Sequence) -> int:
    return len(orbit_zero_set(v, w))


def max_antichain_size(P: QuotientPoset, copies: int = 1) -> int:
    """Largest antichain in ``copies`` disjoint copies of ``P`` via Dilworth's theorem.

    The minimum chain cover has ``N - |M|`` chains, where ``M`` is a maximum
    matching of the bipartite graph ``x_left -> y_right`` for ``x < y``.
    """
    import networkx as nx
    from networkx.algorithms.bipartite import hopcroft_karp_matching

    if copies < 1:
        raise ValueError("copies must be >= 1")
    N = len(P) * copies
    if N > MAX_ANTICHAIN_ELEMENTS:
        raise SizeGuardError(f"{N} elements exceeds the antichain guard {MAX_ANTICHAIN_ELEMENTS}")
    pairs = list(P.comparable_pairs())
    G = nx.Graph()
    left = [("L", c, i) for c in range(copies) for i in range(len(P))]
    G.add_nodes_from(left)
    G.add_nodes_from(("R", c, i) for c in range(copies) for i in range(len(P)))
    for c in range(copies):
        G.add_edges_from((("L", c, i), ("R", c, j)) for i, j in pairs)
    matching = hopcroft_karp_matching(G, top_nodes=left)
    return N - len(matching) // 2


# -- exhaustive hyperplane search --------------------------------------------

def _primitive(w: list[int]) -> tuple[int, ...] | None:
    g = math.gcd(*w)
    if g == 0:
        return None
    w = [x // g for x in w]
    lead = next(x for x in w if x)
    if lead < 0:
        w = [-x for x in w]
    return tuple(w)


def _extend_wedge(wedge: dict, x: Sequence[int], cols: list[tuple[int, ...]]) -> dict:
    # Laplace expansion of the (m+1)x(m+1) minors along the new last row
    m = len(cols[0]) - 1
    out = {}
    for T in cols:
        acc = 0
        for pos, t in enumerate(T):
            sub = wedge.get(T[:pos] + T[pos + 1:], 0)
            if sub and x[t]:
                acc += (-1) ** (m + pos) * x[t] * sub
        if acc:
            out[T] = acc
    return out


def _normals_for_second(points: list[tuple[int, ...]], second: int) -> set[tuple[int, ...]]:
    """Primitive normals of hyperplanes spanned by ``points[0]``, ``points[second]`` and later points."""
    n = len(points[0])
    colsets = [list(combinations(range(n), m)) for m in range(n + 1)]
    base = {(t,): x for t, x in enumerate(points[0]) if x}
    w2 = _extend_wedge(base, points[second], colsets[2])
    found: set[tuple[int, ...]] = set()
    if not w2:
        return found

    def rec(wedge: dict, start: int, m: int):
        if m == n - 1:
            # normal component i: signed minor with column i deleted
            full = tuple(range(n))
            w = [(-1) ** (n - 1 + i) * wedge.get(full[:i] + full[i + 1:], 0) for i in range(n)]
            prim = _primitive(w)
            if prim is not None and len(set(prim)) > 1:
                found.add(prim)
            return
        for idx in range(start, len(points)):
            nxt = _extend_wedge(wedge, points[idx], colsets[m + 1])
            if nxt:
                rec(nxt, idx + 1, m + 1)

    rec(w2, second + 1, 2)
    return found


def _count_on_hyperplanes(normals: list[tuple[int, ...]], points: list[tuple[int, ...]]) -> list[int]:
    flat_n = [abs(x) for w in normals for x in w]
    flat_p = [abs(x) for p in points for x in p]
    if _fits_int64(flat_n or [0], flat_p or [0]) and max(flat_n or [0]) * max(flat_p) * len(points[0]) < 2**62:
        P = np.asarray(points, dtype=np.int64).T
        out: list[int] = []
        for start in range(0, len(normals), 4096):
            W = np.asarray(normals[start: start + 4096], dtype=np.int64)
            out.extend(int(c) for c in np.count_nonzero(W @ P == 0, axis=1))
        return out
    return [sum(1 for p in points if dot(w, p) == 0) for w in normals]


def orbit_max_search(n: int, v: Sequence, workers: int = 1) -> tuple[int, tuple[int, ...]]:
    """Maximum of ``O(v, w)`` over hyperplanes ``w . x = 0`` with ``w`` not a multiple of ``(1,...,1)``.

    A maximizing hyperplane is spanned by the orbit points it contains, and
    ``O(v, w) = O(v, s^{-1} w)``, so it suffices to enumerate hyperplanes
    spanned by ``v`` together with ``n - 2`` further orbit points.  Returns the
    maximum and the lexicographically smallest primitive integer normal that
    attains it.
    """
    v = rational_vector(v)
    if not MIN_SEARCH_N <= n <= MAX_SEARCH_N:
        raise SizeGuardError(f"orbit_max_search supports {MIN_SEARCH_N} <= n <= {MAX_SEARCH_N}, got {n}")
    if len(v) != n:
        raise ValueError(f"v has length {len(v)}, expected {n}")
    if len(set(v)) != n:
        raise ValueError("v must have distinct coordinates")
    if sum(v) == 0:
        raise ValueError("v must satisfy v . (1,...,1) != 0")
    vi = _integral(v)
    points = [act(s, vi) for s in permutations(range(1, n + 1))]
    # identity first so that points[0] == v
    points.sort(key=lambda p: p != vi)
    seconds = range(1, len(points))
    normals: set[tuple[int, ...]] = set()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for found in pool.map(_normals_for_second, [points] * len(seconds), seconds, chunksize=8):
                normals |= found
    else:
        for second in seconds:
            normals |= _normals_for_second(points, second)
    ordered = sorted(normals)
    counts = _count_on_hyperplanes(ordered, points)
    best = max(counts)
    witness = ordered[counts.index(best)]
    return best, witness
