"""Sums of squares over arithmetic-progression windows.

A window is the k terms n, n+d, ..., n+(k-1)d of an increasing integer
progression. Its sum of squares has the closed form

    S = k*n^2 + k*(k-1)*n*d + [k*(k-1)*(2k-1)/6]*d^2

which this module evaluates exactly alongside the term-by-term sum, plus
the decision of whether S is a perfect square.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactarith import isqrt


@dataclass(frozen=True)
class APWindow:
    """k consecutive terms of an increasing arithmetic progression."""

    n: int
    d: int
    k: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"first term must be a positive integer, got {self.n}")
        if self.d < 1:
            raise ValueError(
                f"common difference must be a positive integer, got {self.d}; "
                "write a decreasing progression in reverse order"
            )
        if self.k < 1:
            raise ValueError(f"window length must be a positive integer, got {self.k}")


@dataclass(frozen=True)
class SquareOutcome:
    """A window's sum of squares, its floor root, and its exact root if any."""

    sum: int
    floor_root: int
    root: int | None


def sum_first_k(k: int) -> int:
    """1 + 2 + ... + k = k(k+1)/2."""
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    return k * (k + 1) // 2


def sum_sq_first_k(k: int) -> int:
    """1^2 + 2^2 + ... + k^2 = k(k+1)(2k+1)/6, always an exact integer."""
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    return k * (k + 1) * (2 * k + 1) // 6


def window_sum_sq_direct(window: APWindow) -> int:
    """Sum of squared terms, evaluated term by term."""
    n, d, k = window.n, window.d, window.k
    return sum((n + i * d) ** 2 for i in range(k))


def window_sum_sq_closed(window: APWindow) -> int:
    """Sum of squared terms via the closed form; equals the direct sum."""
    n, d, k = window.n, window.d, window.k
    # k(k-1)(2k-1) is always divisible by 6: k(k-1) is even, and one of
    # k-1, k, 2k-1 is divisible by 3.
    return k * n * n + k * (k - 1) * n * d + k * (k - 1) * (2 * k - 1) // 6 * d * d


def check_window_square(window: APWindow) -> SquareOutcome:
    """Decide whether the window's sum of squares is a perfect square."""
    total = window_sum_sq_closed(window)
    floor_root = isqrt(total)
    root = floor_root if floor_root * floor_root == total else None
    return SquareOutcome(sum=total, floor_root=floor_root, root=root)
