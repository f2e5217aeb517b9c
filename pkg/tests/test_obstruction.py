"""Tests for the obstruction machinery."""

import math

import pytest
from conftest import direct_square_sum

from apsquares.apsum import APWindow
from apsquares.obstruction import (
    MOD3_QUOTIENT,
    VALUATION_PARITY,
    obstruction_witness,
    residue_sieve,
    square_sum_congruence_holds,
    trace_length3,
    valuation_law,
)

QNR_PRIMES = (5, 7, 17, 19, 29, 31)  # p = 5, 7 (mod 12): 3 a non-residue
QR_PRIMES = (11, 13, 23, 37)  # p = 1, 11 (mod 12): 3 a residue


def _vp(x: int, p: int) -> int:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def test_congruence_pinned_values():
    assert square_sum_congruence_holds(1, 12, 13)  # 6 - 72 + 144 == 6 * 13
    assert not square_sum_congruence_holds(1, 1, 5)  # 6 - 6 + 1 == 1
    assert square_sum_congruence_holds(1, 7, 13)  # 6 - 42 + 49 == 13


def test_congruence_domain():
    with pytest.raises(ValueError):
        square_sum_congruence_holds(13, 1, 13)
    with pytest.raises(ValueError):
        square_sum_congruence_holds(1, 26, 13)
    with pytest.raises(ValueError):
        square_sum_congruence_holds(1, 1, 9)
    with pytest.raises(ValueError):
        square_sum_congruence_holds(1, 1, 3)


def test_witness_pinned_values():
    assert obstruction_witness(1, 12, 13).witness == 3  # (3 - 12)^2 == 81 == 3 (mod 13)
    assert obstruction_witness(1, 1, 5).witness == 4  # (3 - 1)^2, congruence fails
    report = obstruction_witness(2, 1, 13)
    assert report.inverse == 7  # 2 * 7 == 14 == 1 (mod 13)
    assert report.witness == 3  # (7 * 5)^2 == 1225 == 94 * 13 + 3


def test_witness_residues_are_canonical():
    report = obstruction_witness(14, 25, 13)
    assert report.n_residue == 1 and report.d_residue == 12
    assert report == obstruction_witness(1, 12, 13)


def test_witness_exhaustive_soundness():
    # Wherever the congruence holds, the witness exhibits 3 as a square.
    for p in (5, 7, 11, 13, 17, 19, 23):
        for nu in range(1, p):
            for du in range(1, p):
                report = obstruction_witness(nu, du, p)
                assert report.n_residue * report.inverse % p == 1
                if square_sum_congruence_holds(nu, du, p):
                    assert report.witness == 3


def test_congruence_unsatisfiable_for_non_residue_primes():
    for p in QNR_PRIMES:
        assert not any(
            square_sum_congruence_holds(nu, du, p)
            for nu in range(1, p)
            for du in range(1, p)
        )


def test_valuation_law_pinned_values():
    report = valuation_law(APWindow(1, 1, 5))
    assert report.obstruction == VALUATION_PARITY
    assert report.details == {"sum": 55, "valuation": 1, "min_exponent": 0}
    assert report.n_split.valuation == 0 and report.d_split.valuation == 0

    assert valuation_law(APWindow(5, 1, 7)).details["valuation"] == 1  # 6 * 476 == 7 * 408

    report = valuation_law(APWindow(5, 5, 5))
    assert report.details["valuation"] == 3  # 6 * 1375 == 5^3 * 66
    assert report.n_split.valuation == 1 == report.d_split.valuation


def test_valuation_law_domain():
    with pytest.raises(ValueError):
        valuation_law(APWindow(1, 1, 4))  # composite length
    with pytest.raises(ValueError):
        valuation_law(APWindow(1, 1, 3))  # length 3 has its own trace
    with pytest.raises(ValueError):
        valuation_law(APWindow(18, 1, 11))  # 3 is a residue mod 11: unsupported


def test_valuation_law_reports_on_subgrid():
    for p in (5, 7):
        for n in range(1, 41):
            for d in range(1, 41):
                report = valuation_law(APWindow(n, d, p))
                assert report.obstruction == VALUATION_PARITY
                total = direct_square_sum(n, d, p)
                assert report.details["sum"] == total
                v = report.details["valuation"]
                assert v % 2 == 1
                assert v == _vp(6 * total, p)
                assert report.details["min_exponent"] == min(_vp(n, p), _vp(d, p))
                assert report.n_split.valuation == _vp(n, p)
                assert report.d_split.valuation == _vp(d, p)


def test_valuation_identity_exhaustive():
    # v_p(6 S) == 2 min(e, f) + 1 over the full square [1, 3p^2]^2.
    for p in (5, 7, 17, 19):
        limit = 3 * p * p
        c2 = p * (p - 1) * (2 * p - 1) // 6
        for d in range(1, limit + 1):
            b = p * (p - 1) * d
            c = c2 * d * d
            fd = _vp(d, p)
            for n in range(1, limit + 1):
                s6 = 6 * (p * n * n + b * n + c)
                assert _vp(s6, p) == 2 * min(_vp(n, p), fd) + 1


def test_valuation_law_negative_control():
    # For p = 11 (3 a residue) the law genuinely fails: (18, 1, 11) sums
    # to 77^2 and v_11(6 S) comes out even.
    total = direct_square_sum(18, 1, 11)
    assert total == 5929 == 77 * 77
    assert _vp(6 * total, 11) == 2


def test_trace_length3_pinned_values():
    report = trace_length3(APWindow(1, 1, 3))
    assert report.obstruction == MOD3_QUOTIENT
    assert report.details == {"sum": 14, "valuation": 0, "quotient": 14, "quotient_mod_3": 2}

    report = trace_length3(APWindow(1, 3, 3))
    assert report.obstruction == VALUATION_PARITY
    assert report.details["sum"] == 66  # 2 * 3 * 11
    assert report.details["valuation"] == 1

    report = trace_length3(APWindow(3, 3, 3))
    assert report.obstruction == MOD3_QUOTIENT
    assert report.details["valuation"] == 2
    assert report.details["quotient"] == 14


def test_trace_length3_rejects_other_lengths():
    for k in (1, 2, 5, 9):
        with pytest.raises(ValueError):
            trace_length3(APWindow(1, 1, k))


def test_trace_length3_total_on_grid():
    for n in range(1, 151):
        for d in range(1, 151):
            report = trace_length3(APWindow(n, d, 3))
            total = 3 * n * n + 6 * n * d + 5 * d * d
            v = _vp(total, 3)
            quotient = total // 3**v
            assert report.details["sum"] == total
            assert report.details["valuation"] == v
            assert report.details["quotient"] == quotient
            if report.obstruction == VALUATION_PARITY:
                assert v % 2 == 1
            else:
                assert report.obstruction == MOD3_QUOTIENT
                assert v % 2 == 0
                assert quotient % 3 == 2


def test_residue_sieve_pinned_values():
    assert residue_sieve(5) == frozenset()
    assert residue_sieve(11) == frozenset({8, 9})  # x = 5: 3 - 5 == 9, 3 + 5 == 8
    assert residue_sieve(23) == frozenset({10, 19})  # x = 7: 7^2 == 49 == 3


def test_residue_sieve_known_solutions_satisfy_it():
    assert 1 * pow(18, -1, 11) % 11 in residue_sieve(11)
    assert 1 * pow(7, -1, 23) % 23 in residue_sieve(23)


def test_residue_sieve_domain():
    for p in (1, 2, 3, 4, 9):
        with pytest.raises(ValueError):
            residue_sieve(p)


def test_residue_sieve_empty_iff_non_residue():
    for p in QNR_PRIMES:
        assert residue_sieve(p) == frozenset()
    for p in QR_PRIMES:
        ratios = residue_sieve(p)
        assert len(ratios) == 2
        for ratio in ratios:
            # admissible ratios are the roots of r^2 - 6r + 6 (mod p)
            assert (ratio * ratio - 6 * ratio + 6) % p == 0


def test_residue_sieve_soundness_brute_force():
    for p in (11, 13, 23, 37):
        ratios = residue_sieve(p)
        limit = 4 * p
        for n in range(1, limit + 1):
            for d in range(1, limit + 1):
                if n % p == 0 or d % p == 0:
                    continue
                total = direct_square_sum(n, d, p)
                root = math.isqrt(total)
                if root * root == total:
                    assert d * pow(n, -1, p) % p in ratios
