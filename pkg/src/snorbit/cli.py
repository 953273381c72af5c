"""Command-line interface: ``snorbit <subcommand> ...``.

Exit status is 0 iff every requested check holds.  Failures of a check exit
with 1, argument errors with 2 (argparse), size-guard violations with 3,
malformed vectors or compositions with 4 and checkpoint problems with 5.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

from . import scan as scan_mod
from . import verify as verify_mod
from .qbinomial import Composition, q_binomial, q_multinomial
from .qpoly import max_coeff
from .symmetric import (
    SizeGuardError, build_poset, max_antichain_size, orbit_max_search, orbit_zero_set, parse_vector,
)

EXIT_OK, EXIT_FAILED, EXIT_GUARD, EXIT_MALFORMED, EXIT_CHECKPOINT = 0, 1, 3, 4, 5


@dataclass
class RunConfig:
    command: str
    fmt: str = "human"
    workers: int = 1
    seed: int = 0


class _MalformedInput(ValueError):
    pass


def _vector(text: str):
    try:
        return parse_vector(text)
    except ValueError as exc:
        raise _MalformedInput(f"malformed vector {text!r}: {exc}") from None


def _composition(text: str) -> Composition:
    try:
        return Composition.parse(text)
    except ValueError as exc:
        raise _MalformedInput(str(exc)) from None


def _emit(cfg: RunConfig, human: str, record: dict) -> None:
    if cfg.fmt == "records":
        print(json.dumps(record, sort_keys=True))
    else:
        print(human)


# -- subcommands ----------------------------------------------------------------

def cmd_qbinom(args, cfg: RunConfig) -> int:
    f = q_binomial(args.n, args.k)
    _emit(cfg, " ".join(map(str, f.coeffs)),
          {"command": "qbinom", "n": args.n, "k": args.k, "coeffs": [str(c) for c in f.coeffs]})
    return EXIT_OK


def cmd_qmultinomial(args, cfg: RunConfig) -> int:
    alpha = _composition(args.alpha)
    if alpha.n != args.n:
        raise _MalformedInput(f"composition {alpha} sums to {alpha.n}, not {args.n}")
    f = q_multinomial(alpha)
    _emit(cfg, " ".join(map(str, f.coeffs)),
          {"command": "qmultinomial", "n": args.n, "alpha": list(alpha.parts),
           "coeffs": [str(c) for c in f.coeffs]})
    return EXIT_OK


def cmd_orbit_count(args, cfg: RunConfig) -> int:
    v, w = _vector(args.v), _vector(args.w)
    if len(v) != len(w):
        raise _MalformedInput(f"--v has length {len(v)} but --w has length {len(w)}")
    Z = orbit_zero_set(v, w)
    human = str(len(Z))
    if args.list:
        human += "\n" + "\n".join("".join(map(str, s)) if len(s) < 10 else " ".join(map(str, s))
                                  for s in sorted(Z))
    _emit(cfg, human, {"command": "orbit-count", "v": [str(x) for x in v], "w": [str(x) for x in w],
                       "count": len(Z), "zero_set": [list(s) for s in sorted(Z)] if args.list else None})
    return EXIT_OK


def cmd_orbit_max(args, cfg: RunConfig) -> int:
    v = _vector(args.v)
    try:
        best, witness = orbit_max_search(args.n, v, workers=cfg.workers)
    except SizeGuardError:
        raise
    except ValueError as exc:
        raise _MalformedInput(str(exc)) from None
    expected = verify_mod.main_theorem_value(args.n)
    ok = best == expected
    _emit(cfg, f"max O(v,w) = {best} (bound {expected}) attained at w = {witness}",
          {"command": "orbit-max", "n": args.n, "v": [str(x) for x in v], "max": best,
           "witness": list(witness), "bound": expected, "attains_bound": ok})
    return EXIT_OK if best <= expected else EXIT_FAILED


def cmd_poset(args, cfg: RunConfig) -> int:
    alpha = _composition(args.alpha)
    P = build_poset(alpha)
    rgf = P.rank_generating_function()
    qm = q_multinomial(alpha)
    width = max_antichain_size(P, args.copies)
    M = max_coeff(qm)
    ok = rgf == qm and width == args.copies * M
    if cfg.fmt == "records":
        _emit(cfg, "", {"command": "poset", "alpha": list(alpha.parts), "size": len(P),
                        "ranks": P.rank, "rank_generating_function": list(rgf.coeffs),
                        "q_multinomial": list(qm.coeffs), "copies": args.copies,
                        "max_antichain": width, "max_coeff": M, "sperner": ok})
    else:
        lines = [f"S_{alpha.n}/S_{alpha}: {len(P)} elements"]
        if args.elements:
            for i, wd in enumerate(P.words):
                lines.append(f"  {P.element(i)}  word {''.join(map(str, wd))}  rank {P.rank[i]}")
        lines.append(f"rank generating function: {rgf}")
        lines.append(f"q-multinomial:             {qm}")
        lines.append(f"max antichain ({args.copies} cop{'y' if args.copies == 1 else 'ies'}): {width}"
                     f"  (copies * M = {args.copies * M})")
        print("\n".join(lines))
    return EXIT_OK if ok else EXIT_FAILED


def cmd_verify(args, cfg: RunConfig) -> int:
    report = verify_mod.run_suite(args.suite, args.n_max, workers=cfg.workers,
                                  gcd_shortcut=args.gcd_shortcut, seed=cfg.seed,
                                  samples=args.samples, literal=args.literal)
    if cfg.fmt == "records":
        print("\n".join(report.records()))
    else:
        print(report.summary())
        if args.suite == "main":
            for c in report.cases:
                if c.kind == "composition_max":
                    print(f"  n={c.params['n']}: {c.params['value']} (expected {c.params['expected']})")
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_scan(args, cfg: RunConfig) -> int:
    kwargs = {}
    if args.relax_bounds:
        kwargs = {"n_min": args.n_min, "k_min": args.k_min, "r_margin": args.r_margin, "relax_bounds": True}
    elif (args.n_min, args.k_min, args.r_margin) != (scan_mod.DEFAULT_N_MIN, scan_mod.DEFAULT_K_MIN,
                                                     scan_mod.DEFAULT_R_MARGIN):
        raise _MalformedInput("--n-min/--k-min/--r-margin need --relax-bounds")
    t0 = time.perf_counter()
    ck = scan_mod.run_scan(args.n_max, args.checkpoint, workers=cfg.workers, **kwargs)
    elapsed = time.perf_counter() - t0
    if cfg.fmt == "records":
        print(json.dumps({"command": "scan", "cells": len(ck.cells), "violations": len(ck.violations),
                          "complete": ck.is_complete(), **{k: v for k, v in ck.header().items()
                                                           if k not in ("record", "format")}},
                         sort_keys=True))
    else:
        print(scan_mod.summarize(ck, elapsed))
    # relaxed bounds explore where failures start; report them without failing
    if ck.violations and not args.relax_bounds:
        return EXIT_FAILED
    return EXIT_OK


# -- parser -------------------------------------------------------------------------

def _positive(text: str) -> int:
    try:
        val = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if val < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {val}")
    return val


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("human", "records"), default="human",
                        help="human-readable text or one JSON record per line")
    common.add_argument("--workers", type=int, default=1, help="worker processes for sweeps")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")

    parser = argparse.ArgumentParser(
        prog="snorbit",
        description="Exact computations around the maximum number of S_n-orbit points on a hyperplane.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qbinom", parents=[common],
                       help="coefficients of the Gaussian binomial [n choose k]_q",
                       description="Print the coefficients of the Gaussian binomial coefficient [n choose k]_q.")
    p.add_argument("n", type=_positive)
    p.add_argument("k", type=_positive)
    p.set_defaults(func=cmd_qbinom)

    p = sub.add_parser("qmultinomial", parents=[common],
                       help="coefficients of the q-multinomial [n; alpha]_q",
                       description="Print the coefficients of the q-multinomial coefficient "
                                   "[n]_q! / prod [alpha_i]_q!.")
    p.add_argument("n", type=_positive)
    p.add_argument("alpha", help="composition of n, e.g. 1,3,1,2")
    p.set_defaults(func=cmd_qmultinomial)

    p = sub.add_parser("orbit-count", parents=[common],
                       help="O(v,w): permutations s with w . s v = 0",
                       description="Count the permutations s in S_n with w . s v = 0, the orbit points "
                                   "of v on the hyperplane with normal w.")
    p.add_argument("--v", required=True, help="comma-separated rationals, e.g. 1,2,1/2")
    p.add_argument("--w", required=True, help="comma-separated rationals")
    p.add_argument("--list", action="store_true", help="also print the zero set")
    p.set_defaults(func=cmd_orbit_count)

    p = sub.add_parser("orbit-max", parents=[common],
                       help="maximum of O(v,w) over hyperplanes (n <= 5)",
                       description="Exhaustive search for the hyperplane through the origin (other than "
                                   "sum x_i = 0) containing the most orbit points of v; compared with "
                                   "the bound 2*floor(n/2)*(n-2)!.")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--v", required=True)
    p.set_defaults(func=cmd_orbit_max)

    p = sub.add_parser("poset", parents=[common],
                       help="Bruhat order on S_n/S_alpha: ranks, rank generating function, widest antichain",
                       description="Build the Bruhat order on ordered set partitions of type alpha and "
                                   "check the Sperner property against the q-multinomial.")
    p.add_argument("--alpha", required=True)
    p.add_argument("--copies", type=int, default=1, help="disjoint copies for the antichain computation")
    p.add_argument("--elements", action="store_true", help="list elements with their words and ranks")
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("verify", parents=[common],
                       help="verification suites for the q-binomial inequalities and the orbit bound",
                       description="residue: residue-class sums of [n choose k]_q within sqrt(C(n,k)/n); "
                                   "maxcoeff: n*M([n choose k]_q) <= C(n,k); refinement: beta!M <= alpha!M "
                                   "under splitting; congruence: the cyclotomic decomposition "
                                   "F_{n,d}; falling: C(n-j,k-j)^2/C(n,k) >= (n/k)^(log2 (k-2j)); "
                                   "main: the 2*floor(n/2)*(n-2)! maximum; antichain: zero sets in the "
                                   "alpha-Bruhat order.")
    p.add_argument("suite", choices=sorted(verify_mod.SUITES))
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--gcd-shortcut", action="store_true",
                   help="maxcoeff: skip coprime (n,k), spot-checking 1%% of them")
    p.add_argument("--samples", type=int, default=1000, help="antichain: number of random pairs")
    p.add_argument("--literal", action="store_true",
                   help="antichain: test the zero set itself instead of its inverses")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", parents=[common],
                       help="checkpointed log-concavity scan of [n choose k]_q coefficients",
                       description="Log-concavity scan: test a_r^2 >= a_(r-1) a_(r+1) for the coefficients of [n choose k]_q "
                                   "with n >= 45, 13 <= k <= n-13, 25 < r < k(n-k)-25; resumable.")
    p.add_argument("what", choices=("logconcave",))
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--relax-bounds", action="store_true", help="allow smaller n, k and r bounds")
    p.add_argument("--n-min", type=int, default=scan_mod.DEFAULT_N_MIN)
    p.add_argument("--k-min", type=int, default=scan_mod.DEFAULT_K_MIN)
    p.add_argument("--r-margin", type=int, default=scan_mod.DEFAULT_R_MARGIN)
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(args.command, args.fmt, max(1, args.workers), args.seed)
    try:
        return args.func(args, cfg)
    except SizeGuardError as exc:
        print(f"snorbit: size guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except scan_mod.CheckpointError as exc:
        print(f"snorbit: checkpoint error: {exc}", file=sys.stderr)
        return EXIT_CHECKPOINT
    except _MalformedInput as exc:
        print(f"snorbit: malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except ValueError as exc:
        print(f"snorbit: invalid arguments: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
