"""Shared oracle helpers, deliberately independent of the library code."""


def primes_below(limit: int) -> list[int]:
    """Sieve of Eratosthenes; the tests' independent prime oracle."""
    if limit <= 2:
        return []
    flags = bytearray([1]) * limit
    flags[0] = flags[1] = 0
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = b"\x00" * len(range(p * p, limit, p))
    return [i for i in range(limit) if flags[i]]


def direct_square_sum(n: int, d: int, k: int) -> int:
    """Term-by-term window sum; the tests' summation oracle."""
    return sum((n + i * d) ** 2 for i in range(k))
