"""Grid verification and discovery of perfect-square window sums.

The (n, d) grid is scanned in d-major order: rows are independent, so a
row boundary is both the checkpoint granularity and the natural sharding
line. `verify_no_solutions` is the falsification harness for window
lengths where squares are impossible; it always scans the full grid and
never assumes the result it is checking. `find_solutions` discovers
square windows and can prune with the mod-p ratio sieve, which is
lossless: sieved and unsieved runs return identical solution lists.

Checkpoint files are line-oriented text. Line 1 is the parameter
fingerprint ``k=<k> n_max=<n> d_max=<d> sieve=<0|1>``; each subsequent
line is ``done d=<value>`` for a fully completed row. Resuming against a
file whose fingerprint does not match the requested run is a hard error.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass

from .apsum import APWindow, window_sum_sq_closed
from .exactarith import _SQ64_MASK
from .obstruction import residue_sieve
from .residues import is_prime, legendre_euler


class CheckpointMismatch(ValueError):
    """The checkpoint file does not belong to the requested run."""


@dataclass(frozen=True)
class SearchReport:
    """Outcome of one grid scan.

    `windows_checked` counts cells whose sum actually underwent a square
    decision; under the sieve it is the grid size minus the pruned
    cells. Every (n, d, t) in `solutions` was re-verified on insertion.
    `elapsed` is wall time of this invocation only and is excluded from
    serialized reports.
    """

    k: int
    n_range: tuple[int, int]
    d_range: tuple[int, int]
    windows_checked: int
    solutions: tuple[tuple[int, int, int], ...]
    sieve_used: bool
    elapsed: float
    checkpoint_state: str | None


def _validate_bounds(n_max: int, d_max: int) -> None:
    if n_max < 1 or d_max < 1:
        raise ValueError(f"search bounds must be positive, got n_max={n_max}, d_max={d_max}")


def _scan_row(k: int, d: int, n_lo: int, n_hi: int, step: int = 1) -> list[tuple[int, int]]:
    """Square-check S(n, d, k) for n in [n_lo, n_hi] stepping by `step`.

    Returns (n, root) pairs in ascending n. Exact throughout: the mod-64
    mask only skips values that cannot be squares.
    """
    b = k * (k - 1) * d
    c = d * d * (k * (k - 1) * (2 * k - 1) // 6)
    hits = []
    isqrt = math.isqrt
    mask = _SQ64_MASK
    for n in range(n_lo, n_hi + 1, step):
        s = k * n * n + b * n + c
        if (mask >> (s & 63)) & 1:
            r = isqrt(s)
            if r * r == s:
                hits.append((n, r))
    return hits


def _check_cell(k: int, n: int, d: int) -> int | None:
    s = k * n * n + k * (k - 1) * n * d + d * d * (k * (k - 1) * (2 * k - 1) // 6)
    if not (_SQ64_MASK >> (s & 63)) & 1:
        return None
    r = math.isqrt(s)
    return r if r * r == s else None


def _sieved_cell(k: int, n: int, d: int, admissible: frozenset[int]) -> tuple[int, int | None]:
    """Dispatch one grid cell under the ratio sieve.

    Common powers of k are stripped first: S(k*n', k*d', k) = k^2 *
    S(n', d', k), so the reduced cell decides the original one and the
    root scales back exactly. Returns (cells_checked, root) for the
    original (n, d); pruned cells report 0 checks.
    """
    scale = 1
    while n % k == 0 and d % k == 0:
        n //= k
        d //= k
        scale *= k
    nr = n % k
    dr = d % k
    if nr and dr and dr * pow(nr, -1, k) % k not in admissible:
        return 0, None
    root = _check_cell(k, n, d)
    return 1, None if root is None else root * scale


def _sieved_row(k: int, d: int, n_max: int, admissible: frozenset[int]) -> tuple[int, list[tuple[int, int]]]:
    """Scan one row under the sieve; returns (cells checked, hits)."""
    dr = d % k
    checked = 0
    hits: list[tuple[int, int]] = []
    if dr:
        # Coprime stratum: a square needs n = d * r^-1 (mod k) for an
        # admissible ratio r, so only those residue classes are touched;
        # the rest of the stratum is pruned without inspection. Class 0
        # is the mixed stratum (k | n only) and is always scanned.
        classes = {dr * pow(r, -1, k) % k for r in admissible}
        classes.add(0)
        for cls in classes:
            start = cls if cls else k
            hits.extend(_scan_row(k, d, start, n_max, step=k))
            checked += len(range(start, n_max + 1, k))
        hits.sort()
    else:
        for n in range(1, n_max + 1):
            counted, root = _sieved_cell(k, n, d, admissible)
            checked += counted
            if root is not None:
                hits.append((n, root))
    return checked, hits


def _record(solutions: list[tuple[int, int, int]], k: int, n: int, d: int, t: int) -> None:
    # Re-verify from scratch before accepting; a failure here means the
    # scan or the sieve reduction is broken, not the input.
    if window_sum_sq_closed(APWindow(n=n, d=d, k=k)) != t * t:
        raise RuntimeError(f"candidate ({n}, {d}, {t}) for k={k} failed re-verification")
    solutions.append((n, d, t))


def _fingerprint(k: int, n_max: int, d_max: int, sieve: bool) -> str:
    return f"k={k} n_max={n_max} d_max={d_max} sieve={int(sieve)}"


def _load_done_rows(path: str, fingerprint: str) -> set[int]:
    """Completed d rows recorded in a checkpoint file, if it has content."""
    if not os.path.exists(path) or os.path.getsize(path) == 0:
        return set()
    with open(path, encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if lines[0] != fingerprint:
        raise CheckpointMismatch(
            f"checkpoint fingerprint {lines[0]!r} does not match the requested run {fingerprint!r}"
        )
    done = set()
    for line in lines[1:]:
        if not line.startswith("done d="):
            raise CheckpointMismatch(f"malformed checkpoint line {line!r}")
        try:
            done.add(int(line[len("done d="):]))
        except ValueError as exc:
            raise CheckpointMismatch(f"malformed checkpoint line {line!r}") from exc
    return done


def verify_no_solutions(
    p: int,
    n_max: int,
    d_max: int,
    checkpoint: str | None = None,
) -> SearchReport:
    """Exhaustively confirm the absence of square windows of length p.

    Accepts p = 3 and primes p >= 5 with 3 a quadratic non-residue of p;
    for those lengths no square window exists, so a non-empty solution
    list is a counterexample and is reported rather than suppressed.
    The full grid is scanned without pruning. With `checkpoint`, rows are
    marked done as they complete and a resumed run reproduces the
    uninterrupted report; rows that contained a solution are never marked
    done, so a resume rediscovers them.
    """
    _validate_bounds(n_max, d_max)
    if p != 3:
        if p < 5 or not is_prime(p):
            raise ValueError(f"p must be 3 or a prime >= 5, got {p}")
        if legendre_euler(3, p) != -1:
            raise ValueError(
                f"3 is a quadratic residue mod {p}; square windows may exist "
                "there, use find_solutions instead"
            )
    start = time.perf_counter()
    fingerprint = _fingerprint(p, n_max, d_max, sieve=False)
    done = _load_done_rows(checkpoint, fingerprint) if checkpoint else set()

    solutions: list[tuple[int, int, int]] = []
    windows = 0
    ckpt = None
    try:
        if checkpoint:
            fresh = not os.path.exists(checkpoint) or os.path.getsize(checkpoint) == 0
            ckpt = open(checkpoint, "a", encoding="ascii")
            if fresh:
                ckpt.write(fingerprint + "\n")
                ckpt.flush()
        for d in range(1, d_max + 1):
            if d in done:
                windows += n_max
                continue
            hits = _scan_row(p, d, 1, n_max)
            windows += n_max
            for n, root in hits:
                _record(solutions, p, n, d, root)
            if ckpt is not None and not hits:
                ckpt.write(f"done d={d}\n")
                ckpt.flush()
    finally:
        if ckpt is not None:
            ckpt.close()
    return SearchReport(
        k=p,
        n_range=(1, n_max),
        d_range=(1, d_max),
        windows_checked=windows,
        solutions=tuple(solutions),
        sieve_used=False,
        elapsed=time.perf_counter() - start,
        checkpoint_state=checkpoint,
    )


def find_solutions(
    k: int,
    n_max: int,
    d_max: int,
    use_sieve: bool = False,
) -> SearchReport:
    """Every (n, d, t) in range with S(n, d, k) = t^2, ascending in (d, n).

    The sieve is applied only for prime k >= 5: the coprime stratum is
    restricted to the admissible d/n ratio classes (an empty set when 3
    is a non-residue of k, leaving only the k | n*d strata to scan) and
    cells with k dividing both n and d are reduced by exact scaling.
    Results are identical with and without the sieve.
    """
    if k < 2:
        raise ValueError(
            f"window length must be at least 2, got {k}; every length-1 sum "
            "is trivially a square"
        )
    _validate_bounds(n_max, d_max)
    start = time.perf_counter()
    sieve_active = bool(use_sieve) and k >= 5 and is_prime(k)

    solutions: list[tuple[int, int, int]] = []
    windows = 0
    if sieve_active:
        admissible = residue_sieve(k)
        for d in range(1, d_max + 1):
            checked, hits = _sieved_row(k, d, n_max, admissible)
            windows += checked
            for n, root in hits:
                _record(solutions, k, n, d, root)
    else:
        for d in range(1, d_max + 1):
            windows += n_max
            for n, root in _scan_row(k, d, 1, n_max):
                _record(solutions, k, n, d, root)
    return SearchReport(
        k=k,
        n_range=(1, n_max),
        d_range=(1, d_max),
        windows_checked=windows,
        solutions=tuple(solutions),
        sieve_used=sieve_active,
        elapsed=time.perf_counter() - start,
        checkpoint_state=None,
    )
