"""Resumable scan for log-concavity failures of Gaussian binomial coefficients.

For each ``n`` the column ``k -> [n choose k]_q`` is generated incrementally
and only the lower half ``a_0 .. a_m`` (``m = k(n-k)//2``) is kept: the
polynomials are palindromic, and multiplying or dividing by ``1 - q**j`` is
causal, so truncating to a prefix is exact.

Checkpoint files are JSON lines::

    {"record": "header", "format": "snorbit-logconcave-scan", "version": 1, ...}
    {"record": "cell", "n": 45, "k": 13}
    {"record": "violation", "n": 45, "k": 13, "r": 30, "a_prev": "...", "a": "...", "a_next": "..."}

A cell is written as soon as it is finished; the file is rewritten in
canonical order at the start and end of every run.
"""
from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .qbinomial import q_binomial
from .qpoly import div_one_minus_qk, mul_one_minus_qk

__all__ = [
    "Violation", "ScanCheckpoint", "CheckpointError",
    "logconcave_violations", "half_coefficients", "run_scan", "run_scan_timed", "scan_row", "summarize",
    "FORMAT_NAME", "FORMAT_VERSION",
]

log = logging.getLogger(__name__)

FORMAT_NAME = "snorbit-logconcave-scan"
FORMAT_VERSION = 1

DEFAULT_N_MIN = 45
DEFAULT_K_MIN = 13
DEFAULT_R_MARGIN = 25


class CheckpointError(ValueError):
    """Checkpoint file is corrupt or belongs to a different scan."""


@dataclass(frozen=True, order=True)
class Violation:
    n: int
    k: int
    r: int
    a_prev: int
    a: int
    a_next: int

    def is_valid(self) -> bool:
        return self.a * self.a < self.a_prev * self.a_next

    def record(self) -> dict:
        return {"record": "violation", "n": self.n, "k": self.k, "r": self.r,
                "a_prev": str(self.a_prev), "a": str(self.a), "a_next": str(self.a_next)}


def half_coefficients(n: int, k_max: int | None = None):
    """Yield ``(k, [a_0, ..., a_m])`` with ``m = k(n-k)//2`` for ``k = 0 .. k_max``.

    ``k_max`` defaults to ``n // 2``; larger values are not supported because
    the midpoint would move backwards.
    """
    k_max = n // 2 if k_max is None else k_max
    if k_max > n // 2:
        raise ValueError("half_coefficients only walks k <= n // 2")
    half = [1]
    yield 0, half
    for k in range(k_max):
        D = k * (n - k)
        size = (k + 1) * (n - k - 1) // 2 + 1
        # rebuild a_{m+1} .. from the palindrome a_i = a_{D-i}
        ext = half + [half[D - i] if i <= D else 0 for i in range(len(half), size)]
        c = mul_one_minus_qk(ext, n - k, size)
        half = div_one_minus_qk(c, k + 1, size)
        yield k + 1, half


def _violations_from_half(n: int, k: int, half: list[int], r_lo: int, r_hi: int) -> list[tuple]:
    D = k * (n - k)
    m = D // 2

    def a(i):
        return half[i] if i <= m else half[D - i]

    out = []
    # r > m is handled through its mirror D - r
    for r in range(max(1, min(r_lo, D - r_hi)), min(m, max(r_hi, D - r_lo)) + 1):
        p, x, nx = half[r - 1], half[r], a(r + 1)
        if x * x < p * nx:
            if r_lo <= r <= r_hi:
                out.append((r, p, x, nx))
            if D - r != r and r_lo <= D - r <= r_hi:
                out.append((D - r, nx, x, p))
    return sorted(out)


def logconcave_violations(n: int, k: int, r_lo: int, r_hi: int) -> list[tuple[int, int, int, int]]:
    """All ``r_lo <= r <= r_hi`` with ``a_r**2 < a_{r-1} a_{r+1}``.

    Returns ``(r, a_{r-1}, a_r, a_{r+1})`` sorted by ``r``; an empty range
    gives an empty list.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    D = k * (n - k)
    if r_lo > r_hi:
        return []
    if r_lo < 1 or r_hi > D - 1:
        raise ValueError(f"need 0 < r_lo <= r_hi < k(n-k) = {D}")
    coeffs = q_binomial(n, k).coeffs
    return _violations_from_half(n, k, list(coeffs[: D // 2 + 1]), r_lo, r_hi)


@dataclass
class ScanCheckpoint:
    n_min: int
    n_max: int
    k_min: int = DEFAULT_K_MIN
    r_margin: int = DEFAULT_R_MARGIN
    cells: set[tuple[int, int]] = field(default_factory=set)
    violations: set[Violation] = field(default_factory=set)
    version: int = FORMAT_VERSION

    def header(self) -> dict:
        return {"record": "header", "format": FORMAT_NAME, "version": self.version,
                "n_min": self.n_min, "n_max": self.n_max,
                "k_min": self.k_min, "r_margin": self.r_margin}

    def grid(self) -> list[tuple[int, int]]:
        return [(n, k) for n in range(self.n_min, self.n_max + 1)
                for k in range(self.k_min, n - self.k_min + 1)]

    def is_complete(self) -> bool:
        return all(c in self.cells for c in self.grid())

    def serialize(self) -> str:
        lines = [json.dumps(self.header())]
        lines += [json.dumps({"record": "cell", "n": n, "k": k}) for n, k in sorted(self.cells)]
        lines += [json.dumps(v.record()) for v in sorted(self.violations)]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "ScanCheckpoint":
        if not text.strip():
            raise CheckpointError("checkpoint is empty (missing header)")
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        elif lines:
            # an interrupted append can leave a partial final line
            try:
                json.loads(lines[-1])
            except json.JSONDecodeError:
                log.warning("dropping truncated final checkpoint line")
                lines.pop()
        if not lines:
            raise CheckpointError("checkpoint is empty (missing header)")
        try:
            records = [json.loads(line) for line in lines]
        except json.JSONDecodeError as exc:
            raise CheckpointError(f"checkpoint line {exc.doc!r} is not valid JSON") from None
        head = records[0]
        if not isinstance(head, dict) or head.get("record") != "header" or head.get("format") != FORMAT_NAME:
            raise CheckpointError("first checkpoint line is not a scan header")
        if head.get("version") != FORMAT_VERSION:
            raise CheckpointError(f"unsupported checkpoint version {head.get('version')!r} "
                                  f"(expected {FORMAT_VERSION})")
        try:
            ck = cls(int(head["n_min"]), int(head["n_max"]), int(head["k_min"]), int(head["r_margin"]))
            for rec in records[1:]:
                kind = rec.get("record")
                if kind == "cell":
                    ck.cells.add((int(rec["n"]), int(rec["k"])))
                elif kind == "violation":
                    v = Violation(int(rec["n"]), int(rec["k"]), int(rec["r"]),
                                  int(rec["a_prev"]), int(rec["a"]), int(rec["a_next"]))
                    if not v.is_valid():
                        raise CheckpointError(f"violation record {rec} does not satisfy a_r^2 < a_(r-1) a_(r+1)")
                    ck.violations.add(v)
                else:
                    raise CheckpointError(f"unknown checkpoint record {rec!r}")
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            if isinstance(exc, CheckpointError):
                raise
            raise CheckpointError(f"malformed checkpoint record: {exc}") from None
        orphans = {(v.n, v.k) for v in ck.violations} - ck.cells
        if orphans:
            raise CheckpointError(f"violations recorded for unfinished cells {sorted(orphans)[:5]}")
        return ck

    @classmethod
    def load(cls, path) -> "ScanCheckpoint":
        return cls.parse(Path(path).read_text())

    def save(self, path) -> None:
        path = Path(path)
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_text(self.serialize())
        os.replace(tmp, path)


def _spot_check(n: int, k: int) -> bool:
    return (n * 7919 + k * 104729) % 100 == 0


def scan_row(n: int, k_min: int, r_margin: int, done=frozenset()) -> list[tuple[int, list[tuple]]]:
    """Scan every unfinished ``k_min <= k <= n // 2`` of row ``n``."""
    out = []
    for k, half in half_coefficients(n):
        if k < k_min or k > n - k_min or (n, k) in done:
            continue
        if _spot_check(n, k):
            D = k * (n - k)
            if list(q_binomial(n, k).coeffs[: D // 2 + 1]) != half:
                raise AssertionError(f"incremental coefficients disagree with q_binomial({n}, {k})")
        D = k * (n - k)
        out.append((k, _violations_from_half(n, k, half, r_margin + 1, D - r_margin - 1)))
    return out


def _scan_row_args(args):
    return scan_row(*args)


def run_scan(n_max: int, checkpoint_path, n_min: int = DEFAULT_N_MIN, k_min: int = DEFAULT_K_MIN,
             r_margin: int = DEFAULT_R_MARGIN, workers: int = 1, relax_bounds: bool = False,
             stop_after_cells: int | None = None) -> ScanCheckpoint:
    """Scan ``n_min <= n <= n_max``, ``k_min <= k <= n - k_min``, ``r_margin < r < k(n-k) - r_margin``.

    Resumes from ``checkpoint_path`` when it exists.  ``stop_after_cells``
    interrupts the run after that many new cells (used to test resumption).
    """
    if not relax_bounds and (n_min < DEFAULT_N_MIN or k_min < DEFAULT_K_MIN or r_margin < DEFAULT_R_MARGIN):
        raise ValueError("bounds below n >= 45, k >= 13, r > 25 require relax_bounds=True")
    if n_max < n_min:
        raise ValueError(f"n_max must be >= {n_min}")
    if 2 * k_min > n_min or k_min < 1 or r_margin < 0:
        raise ValueError("need 1 <= k_min <= n_min / 2 and r_margin >= 0")
    path = Path(checkpoint_path)
    if path.exists():
        ck = ScanCheckpoint.load(path)
        if (ck.n_min, ck.k_min, ck.r_margin) != (n_min, k_min, r_margin):
            raise CheckpointError(
                f"checkpoint bounds n_min={ck.n_min}, k_min={ck.k_min}, r_margin={ck.r_margin} "
                f"do not match the requested n_min={n_min}, k_min={k_min}, r_margin={r_margin}")
        ck.n_max = max(ck.n_max, n_max)
    else:
        ck = ScanCheckpoint(n_min, n_max, k_min, r_margin)
    ck.save(path)

    rows = [n for n in range(n_min, n_max + 1)
            if any((n, k) not in ck.cells for k in range(k_min, n // 2 + 1))]
    new_cells = 0
    with path.open("a") as fh:
        def record(n, k, viols):
            for kk in {k, n - k}:
                for r, p, x, nx in viols:
                    v = Violation(n, kk, r, p, x, nx)
                    ck.violations.add(v)
                    fh.write(json.dumps(v.record()) + "\n")
                ck.cells.add((n, kk))
                fh.write(json.dumps({"record": "cell", "n": n, "k": kk}) + "\n")
            fh.flush()

        if workers > 1 and stop_after_cells is None:
            args = [(n, k_min, r_margin, frozenset(c for c in ck.cells if c[0] == n)) for n in rows]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for n, result in zip(rows, pool.map(_scan_row_args, args)):
                    for k, viols in result:
                        record(n, k, viols)
        else:
            for n in rows:
                for k, viols in scan_row(n, k_min, r_margin, frozenset(ck.cells)):
                    record(n, k, viols)
                    new_cells += 1
                    if stop_after_cells is not None and new_cells >= stop_after_cells:
                        return ck
    ck.save(path)
    return ck


def summarize(ck: ScanCheckpoint, elapsed: float | None = None) -> str:
    lines = [f"log-concavity scan n={ck.n_min}..{ck.n_max}, k={ck.k_min}..n-{ck.k_min}, "
             f"{ck.r_margin} < r < k(n-k)-{ck.r_margin}",
             f"cells scanned: {len(ck.cells)}",
             f"violations: {len(ck.violations)}"]
    for v in sorted(ck.violations)[:20]:
        lines.append(f"  n={v.n} k={v.k} r={v.r}: {v.a}^2 < {v.a_prev}*{v.a_next}")
    if elapsed is not None:
        lines.append(f"wall time: {elapsed:.2f}s")
    return "\n".join(lines)


def run_scan_timed(*args, **kwargs) -> tuple[ScanCheckpoint, float]:
    t0 = time.perf_counter()
    ck = run_scan(*args, **kwargs)
    return ck, time.perf_counter() - t0
