import random

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gdet import classification
from gdet.classification import (
    FactorizationError,
    ScanReport,
    brute_force_scan,
    factor_pair_search,
    factor_pairs,
    factorize,
    is_achievable,
    is_prime,
    two_adic_valuation,
)


def pairs_by_brute_force(n):
    out = []
    for d in range(-abs(n), abs(n) + 1):
        if d and n % d == 0:
            e = n // d
            if d % 16 == e % 16 and d % 16 in (3, 5):
                out.append((d, e))
    return sorted(out)


def test_factorize_examples():
    assert factorize(217).prime_powers == ((7, 1), (31, 1))
    r = factorize(-15)
    assert r.sign == -1 and r.prime_powers == ((3, 1), (5, 1))
    assert factorize(65536).prime_powers == ((2, 16),)
    assert factorize(1).prime_powers == ()
    assert factorize(-1).value() == -1
    with pytest.raises(ValueError):
        factorize(0)


@given(st.integers(-(2 ** 62), 2 ** 62).filter(bool))
@settings(max_examples=300, deadline=None)
def test_factorize_reconstructs(n):
    r = factorize(n)
    assert r.value() == n
    primes = r.primes
    assert list(primes) == sorted(set(primes))
    assert all(sympy.isprime(p) for p in primes)


def test_factorize_matches_sympy():
    rng = random.Random(12)
    for _ in range(300):
        n = rng.randrange(2, 2 ** 63)
        assert dict(factorize(n).prime_powers) == sympy.factorint(n)


def test_factorize_hard_semiprimes():
    p, q = 1000003, 2147483647
    assert factorize(p * q).prime_powers == ((p, 1), (q, 1))
    p, q = 4294967311, 4294967357  # both above 2^32, product above 2^63
    assert factorize(p * q).prime_powers == ((p, 1), (q, 1))
    assert factorize(p * p * q).prime_powers == ((p, 2), (q, 1))
    big = 1099511627791 * 1000000000000000003 * 3  # 40-bit and 60-bit prime factors
    assert factorize(big).prime_powers == ((3, 1), (1099511627791, 1), (1000000000000000003, 1))


def test_factorization_failure_is_explicit(monkeypatch):
    monkeypatch.setattr(classification, "_brent", lambda n, c, steps: None)
    classification.factorize.cache_clear()
    with pytest.raises(FactorizationError):
        factorize(4294967311 * 4294967357)
    classification.factorize.cache_clear()


def test_is_prime_matches_sympy():
    for n in range(-5, 20000):
        assert is_prime(n) == sympy.isprime(n)
    for n in (2 ** 61 - 1, 2 ** 61 + 1, 3215031751, 3825123056546413051):
        assert is_prime(n) == sympy.isprime(n)


def test_two_adic_valuation():
    assert two_adic_valuation(2 ** 16 * 3) == 16
    assert two_adic_valuation(-12) == 2
    with pytest.raises(ValueError):
        two_adic_valuation(0)


@pytest.mark.parametrize(
    "n, achievable, reason",
    [
        (17, True, "one_mod_16"),
        (-15, True, "one_mod_16"),
        (41, False, "nine_mod_16_rigid_primes"),
        (217, False, "nine_mod_16_rigid_primes"),
        (57, True, "nine_mod_16_with_flex_prime"),
        (2 ** 15, False, "even_bad_valuation"),
        (2, False, "even_bad_valuation"),
        (0, True, "multiple_of_2_16"),
        (-(2 ** 16) * 7, True, "multiple_of_2_16"),
        (3, False, "odd_bad_residue"),
        (-7, False, "nine_mod_16_rigid_primes"),
        (-39, True, "nine_mod_16_with_flex_prime"),
    ],
)
def test_is_achievable_examples(n, achievable, reason):
    r = is_achievable(n)
    assert r.achievable is achievable
    assert bool(r) is achievable
    assert r.reason == reason


def test_evidence():
    assert is_achievable(217).evidence["primes"] == [7, 31]
    ev = is_achievable(57).evidence
    assert ev["flex_primes"] == [3, 19] and ev["factor_pair"] == (3, 19)
    assert is_achievable(3 * 2 ** 10).evidence["valuation"] == 10


def test_factor_pair_examples():
    assert factor_pair_search(9) == (3, 3)
    assert factor_pair_search(25) == (5, 5)
    assert factor_pair_search(217) is None
    with pytest.raises(ValueError):
        factor_pair_search(17)


def test_factor_pair_preference():
    for n in (-19943, -19575, 19305, 19929, 57, -39, 9, 25):
        assert n % 16 == 9
        best = factor_pair_search(n)
        pairs = pairs_by_brute_force(n)
        assert best in pairs
        assert max(map(abs, best)) == min(max(map(abs, p)) for p in pairs)


def test_factor_pairs_match_brute_force():
    for n in range(-3000, 3001):
        if n and n % 16 == 9:
            assert sorted(factor_pairs(n)) == pairs_by_brute_force(n)


def test_remark_equivalence_small():
    for n in range(-20000, 20001):
        if n and n % 16 == 9:
            has_pair = factor_pair_search(n) is not None
            assert has_pair == (is_achievable(n).reason == "nine_mod_16_with_flex_prime")


def test_scan_binary_box():
    report = brute_force_scan((0, 1), budget=1 << 16, workers=1)
    assert report.mode == "exhaustive"
    assert report.candidates == 65536
    assert report.ok and report.violations == []
    assert report.odd_residues <= {1, 9}
    assert report.min_even_valuation is None or report.min_even_valuation >= 16


def test_scan_partition_independent_of_workers():
    box = [(0, 1)] * 10 + [(-1, 1)] * 6
    one = brute_force_scan(box, workers=1).summary()
    two = brute_force_scan(box, workers=2).summary()
    assert one == two
    assert one["candidates"] == 2 ** 10 * 3 ** 6


def test_scan_sampling_is_seeded():
    a = brute_force_scan((-3, 3), budget=5000, seed=7, workers=1)
    b = brute_force_scan((-3, 3), budget=5000, seed=7, workers=2)
    c = brute_force_scan((-3, 3), budget=5000, seed=8, workers=1)
    assert a.mode == "sampled" and a.candidates == 5000
    assert a.summary() == b.summary()
    assert a.values != c.values
    assert a.ok


def test_scan_object_path_matches_oracle():
    # |c| <= 2 is outside the int64 bound, exercises the Python-int path
    report = brute_force_scan((-2, 2), budget=2000, seed=3, workers=1, value_bound=1 << 80)
    rng = np.random.default_rng(np.random.SeedSequence(3, spawn_key=(0,)))
    coeffs = rng.integers(-2, 3, size=(2000, 16), dtype=np.int64)
    from gdet.frobenius import CoefficientTuple, factored_determinant

    expected = {factored_determinant(CoefficientTuple.from_flat(r)).value for r in coeffs.tolist()}
    assert report.values == expected


def test_scan_z2xd8_sample():
    report = brute_force_scan((-2, 2), group="z2xd8", budget=3000, seed=1, workers=1)
    assert report.candidates == 3000 and report.ok


def test_scan_rejects_bad_arguments():
    with pytest.raises(ValueError):
        brute_force_scan((0, 1), group="z2cubed")
    with pytest.raises(ValueError):
        brute_force_scan((1, 0))


def test_absorb_records_violations():
    report = ScanReport("sg16_13", "exhaustive")
    coeffs = np.zeros((4, 16), dtype=np.int64)
    coeffs[:, 0] = [1, 2, 3, 4]
    classification._absorb(report, coeffs, np.array([1, 2, 41, 2 ** 16], dtype=np.int64))
    assert report.violation_count == 2
    assert sorted(v for _, v in report.violations) == [2, 41]
    assert report.min_even_valuation == 1
    assert not report.ok


def test_factorize_reconstructs_random_50_bit():
    rng = random.Random(50)
    for _ in range(100_000):
        n = rng.randrange(1, 2 ** 50) * rng.choice((1, -1))
        r = factorize(n)
        assert r.value() == n
        assert all(is_prime(p) for p in r.primes)


def test_workers_env(monkeypatch):
    monkeypatch.setenv(classification.WORKERS_ENV, "3")
    assert classification.default_workers() == 3
    monkeypatch.delenv(classification.WORKERS_ENV)
    assert classification.default_workers() >= 1


def test_random_tuples_deterministic():
    a = list(classification.random_tuples(1000, 4, seed=1, batch=300))
    b = list(classification.random_tuples(1000, 4, seed=1, batch=300))
    assert a == b and len(a) == 1000
    assert all(len(r) == 16 and all(-4 <= v <= 4 for v in r) for r in a)
