"""Per-instance obstructions to perfect-square window sums.

For a window of prime length p whose sum of squares were a perfect
square, writing n = p^e*N, d = p^f*D with N, D coprime to p forces

    6*N^2 - 6*N*D + D^2 = 0  (mod p)        (when e = f)

and from that congruence [K*(3N - D)]^2 = 3 (mod p) with K the inverse
of N, i.e. 3 must be a quadratic residue of p. When 3 is a non-residue
the congruence is unsatisfiable, and the p-adic valuation of 6*S comes
out odd -- incompatible with a square. This module computes those
obstructions as checkable exact-integer reports, handles the length-3
case by its own mod-3 analysis, and inverts the congruence into a
residue sieve on the ratio d/n for primes where 3 is a residue.
"""

from __future__ import annotations

from dataclasses import dataclass

from .apsum import APWindow, window_sum_sq_closed
from .exactarith import PAdicSplit, modinv, padic_split
from .residues import is_prime, legendre_euler, sqrt_mod_prime

# Obstruction kinds carried by TraceReport. NONE is part of the report
# vocabulary but the tracing operations below never produce it: they
# refuse the configurations where a square (hence no obstruction) is
# possible at all.
VALUATION_PARITY = "VALUATION_PARITY"
MOD3_QUOTIENT = "MOD3_QUOTIENT"
NO_OBSTRUCTION = "NONE"


@dataclass(frozen=True)
class TraceReport:
    """The concrete obstruction refuting perfect-squareness of one window.

    Every integer in `details` is recomputable from the window alone:
    `valuation` is the p-adic valuation of the quantity that would have
    to have even valuation for a square (S itself for length 3, 6*S for
    prime lengths >= 5), and for length 3 `quotient` is S with all
    factors of 3 removed.
    """

    window: APWindow
    prime: int
    n_split: PAdicSplit
    d_split: PAdicSplit
    obstruction: str
    details: dict[str, int]


@dataclass(frozen=True)
class ObstructionWitness:
    """Residue data exhibiting 3 as a square mod p when the congruence holds."""

    prime: int
    n_residue: int
    d_residue: int
    inverse: int
    witness: int


def _require_unit_pair(n_unit: int, d_unit: int, p: int) -> None:
    if p < 5 or not is_prime(p):
        raise ValueError(f"a prime >= 5 is required, got {p}")
    if n_unit % p == 0 or d_unit % p == 0:
        raise ValueError(f"both residues must be coprime to {p}")


def square_sum_congruence_holds(n_unit: int, d_unit: int, p: int) -> bool:
    """Test 6*a^2 - 6*a*b + b^2 = 0 (mod p) for units a, b mod p.

    This is the condition the p-free parts of n and d must satisfy for a
    length-p window sum to be a perfect square.
    """
    _require_unit_pair(n_unit, d_unit, p)
    return (6 * n_unit * n_unit - 6 * n_unit * d_unit + d_unit * d_unit) % p == 0


def obstruction_witness(n_unit: int, d_unit: int, p: int) -> ObstructionWitness:
    """Exhibit [K*(3a - b)]^2 mod p, where K inverts a mod p.

    Whenever square_sum_congruence_holds(a, b, p), the witness equals 3,
    certifying that 3 is a quadratic residue of p.
    """
    _require_unit_pair(n_unit, d_unit, p)
    n_res = n_unit % p
    d_res = d_unit % p
    inverse = modinv(n_res, p)
    witness = (inverse * (3 * n_res - d_res)) ** 2 % p
    return ObstructionWitness(
        prime=p,
        n_residue=n_res,
        d_residue=d_res,
        inverse=inverse,
        witness=witness,
    )


def valuation_law(window: APWindow) -> TraceReport:
    """Obstruction for prime window lengths p >= 5 with 3 a non-residue.

    With e, f the p-adic valuations of n and d, the valuation of 6*S is
    exactly 2*min(e, f) + 1 -- odd, while 6 times a square has even
    p-adic valuation for p >= 5. The equality is re-derived here and a
    violation raises, since it would contradict the nonexistence result
    the law is distilled from.
    """
    p = window.k
    if not is_prime(p) or p < 5:
        raise ValueError(
            f"window length must be a prime >= 5, got {p}"
            + ("; length 3 is handled by trace_length3" if p == 3 else "")
        )
    if legendre_euler(3, p) != -1:
        raise ValueError(
            f"3 is a quadratic residue mod {p}; the valuation law is not "
            "guaranteed there and square windows may exist"
        )
    n_split = padic_split(window.n, p)
    d_split = padic_split(window.d, p)
    total = window_sum_sq_closed(window)
    scaled = padic_split(6 * total, p)
    min_exp = min(n_split.valuation, d_split.valuation)
    if scaled.valuation != 2 * min_exp + 1:
        raise RuntimeError(
            f"valuation law violated at {window}: v={scaled.valuation}, "
            f"expected {2 * min_exp + 1}; this would falsify the "
            "nonexistence result"
        )
    return TraceReport(
        window=window,
        prime=p,
        n_split=n_split,
        d_split=d_split,
        obstruction=VALUATION_PARITY,
        details={
            "sum": total,
            "valuation": scaled.valuation,
            "min_exponent": min_exp,
        },
    )


def trace_length3(window: APWindow) -> TraceReport:
    """Obstruction for 3-term windows.

    Let v be the 3-adic valuation of S and Q = S / 3^v. Either v is odd
    (valuation parity obstruction) or Q = 2 (mod 3); a perfect square
    has even valuation and a quotient of 1 mod 3, so exactly one of the
    two fires for every window.
    """
    if window.k != 3:
        raise ValueError(f"trace_length3 requires a window of length 3, got {window.k}")
    total = window_sum_sq_closed(window)
    split = padic_split(total, 3)
    v, quotient = split.valuation, split.unit
    if v % 2 == 0 and quotient % 3 != 2:
        raise RuntimeError(
            f"length-3 case analysis violated at {window}: v={v}, "
            f"Q={quotient}; this would falsify the nonexistence result"
        )
    kind = VALUATION_PARITY if v % 2 else MOD3_QUOTIENT
    return TraceReport(
        window=window,
        prime=3,
        n_split=padic_split(window.n, 3),
        d_split=padic_split(window.d, 3),
        obstruction=kind,
        details={
            "sum": total,
            "valuation": v,
            "quotient": quotient,
            "quotient_mod_3": quotient % 3,
        },
    )


def residue_sieve(p: int) -> frozenset[int]:
    """Admissible ratios d * n^-1 mod p for a square length-p window sum.

    Solving the unit congruence for the ratio r = b/a gives r = 3 -+ x
    with x^2 = 3 (mod p), so: empty when 3 is a non-residue of p, and
    exactly two residue classes otherwise. Any window with p dividing
    neither n nor d whose sum is a perfect square has its ratio in this
    set; windows divisible by p reduce to this case by exact scaling.
    """
    if p < 5 or not is_prime(p):
        raise ValueError(f"residue sieve requires a prime >= 5, got {p}")
    roots = sqrt_mod_prime(3, p)
    if roots is None:
        return frozenset()
    x = roots[0]
    return frozenset(((3 - x) % p, (3 + x) % p))
