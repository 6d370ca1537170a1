"""Which integers are group determinants of SmallGroup(16,13), and scans that test it.

Classification rule:

* an even n is a determinant iff 2^16 divides n (0 included);
* an odd n is a determinant iff n = 1 mod 16, or n = 9 mod 16 and some prime
  factor p of n has p mod 16 in {3, 5, 11, 13} (a "flex" prime).

Residues are always the nonnegative ones, so n % 16 in Python.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from .frobenius import LINEAR_FORMS, int64_safe, values_from_forms
from .groups import GroupRingElement, build_group, group_determinant

FLEX_RESIDUES = frozenset({3, 5, 11, 13})
TRIAL_LIMIT = 10 ** 6
EXACT_LIMIT = 2 ** 63
WORKERS_ENV = "GDET_WORKERS"


class FactorizationError(ArithmeticError):
    """Factorization gave up; only possible for |n| >= 2^63."""


# -- factorization -----------------------------------------------------------

def _sieve(limit: int) -> np.ndarray:
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime)


@lru_cache(maxsize=None)
def _trial_chunks(chunk: int = 256) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """Primes below TRIAL_LIMIT in blocks, each paired with the product of the block."""
    primes = [int(p) for p in _sieve(TRIAL_LIMIT)]
    out = []
    for i in range(0, len(primes), chunk):
        block = tuple(primes[i : i + chunk])
        out.append((math.prod(block), block))
    return tuple(out)


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller-Rabin with the first 13 prime bases.

    Deterministic for n < 3.3 * 10^24, which covers everything below 2^63;
    above that a composite passing all 13 bases is astronomically unlikely.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int, c: int, max_steps: int) -> int | None:
    """Pollard rho with Brent cycle detection; a nontrivial factor or None."""
    y, r, q, g = 2, 1, 1, 1
    m = 128
    steps = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
        steps += r
        if steps > max_steps:
            return None
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
    return g if g != n else None


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    root = math.isqrt(n)
    if root * root == n:
        _split(root, out)
        _split(root, out)
        return
    budget = 1 << 22 if n < EXACT_LIMIT else 1 << 24
    for c in range(1, 64):
        d = _brent(n, c, budget)
        if d:
            _split(d, out)
            _split(n // d, out)
            return
    raise FactorizationError(f"could not split the composite cofactor {n}")


@dataclass(frozen=True)
class FactorizationResult:
    sign: int
    prime_powers: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.prime_powers)

    def value(self) -> int:
        return self.sign * math.prod(p ** e for p, e in self.prime_powers)

    def divisors(self) -> list[int]:
        """Positive divisors of |n|, unsorted."""
        divs = [1]
        for p, e in self.prime_powers:
            divs = [d * p ** i for d in divs for i in range(e + 1)]
        return divs


@lru_cache(maxsize=1 << 16)
def factorize(n: int) -> FactorizationResult:
    """Complete prime factorization of a nonzero integer.

    Trial division by the primes below 10^6, then Miller-Rabin and Pollard
    rho (Brent) on whatever is left. Exact for |n| < 2^63; beyond that the
    result is correct whenever it is returned, but FactorizationError may be
    raised if rho stalls.

    >>> factorize(-15)
    FactorizationResult(sign=-1, prime_powers=((3, 1), (5, 1)))
    """
    n = int(n)
    if n == 0:
        raise ValueError("cannot factorize 0")
    sign = -1 if n < 0 else 1
    rest = abs(n)
    found: dict[int, int] = {}
    # a prime cofactor ends trial division early
    cofactor_prime = rest > TRIAL_LIMIT and is_prime(rest)
    for block_product, block in _trial_chunks():
        if cofactor_prime or block[0] * block[0] > rest:
            break
        if math.gcd(rest, block_product) == 1:
            continue
        for p in block:
            while rest % p == 0:
                rest //= p
                found[p] = found.get(p, 0) + 1
        cofactor_prime = rest > TRIAL_LIMIT and is_prime(rest)
    if rest > 1:
        if rest < TRIAL_LIMIT * TRIAL_LIMIT or is_prime(rest):
            # no prime factor below 10^6 left, so a cofactor below 10^12 is prime
            found[rest] = found.get(rest, 0) + 1
        else:
            _split(rest, found)
    return FactorizationResult(sign, tuple(sorted(found.items())))


# -- achievability -----------------------------------------------------------

ACHIEVABLE = "achievable"
NOT_ACHIEVABLE = "not_achievable"


@dataclass(frozen=True)
class AchievabilityResult:
    verdict: str
    reason: str
    evidence: dict = field(default_factory=dict)

    @property
    def achievable(self) -> bool:
        return self.verdict == ACHIEVABLE

    def __bool__(self) -> bool:
        return self.achievable


def two_adic_valuation(n: int) -> int:
    if n == 0:
        raise ValueError("0 has infinite 2-adic valuation")
    return (n & -n).bit_length() - 1


def is_achievable(n: int) -> AchievabilityResult:
    """Decide whether n is an integer group determinant of SmallGroup(16,13)."""
    n = int(n)
    if n == 0:
        return AchievabilityResult(ACHIEVABLE, "multiple_of_2_16", {"valuation": None})
    if n % 2 == 0:
        v = two_adic_valuation(n)
        if v >= 16:
            return AchievabilityResult(ACHIEVABLE, "multiple_of_2_16", {"valuation": v})
        return AchievabilityResult(NOT_ACHIEVABLE, "even_bad_valuation", {"valuation": v})
    r = n % 16
    if r == 1:
        return AchievabilityResult(ACHIEVABLE, "one_mod_16", {"residue_mod_16": 1})
    if r != 9:
        return AchievabilityResult(NOT_ACHIEVABLE, "odd_bad_residue", {"residue_mod_16": r})
    primes = factorize(n).primes
    flex = [p for p in primes if p % 16 in FLEX_RESIDUES]
    if flex:
        return AchievabilityResult(
            ACHIEVABLE,
            "nine_mod_16_with_flex_prime",
            {"residue_mod_16": 9, "flex_primes": flex, "factor_pair": factor_pair_search(n)},
        )
    return AchievabilityResult(
        NOT_ACHIEVABLE, "nine_mod_16_rigid_primes", {"residue_mod_16": 9, "primes": list(primes)}
    )


def factor_pairs(n: int) -> list[tuple[int, int]]:
    """All (d, e) with d * e = n and d = e = 3 or d = e = 5 (mod 16), signs allowed."""
    if n == 0 or n % 16 != 9:
        raise ValueError(f"factor pairs are defined for n = 9 mod 16, got {n}")
    target_sign = 1 if n > 0 else -1
    pairs = []
    for d in factorize(n).divisors():
        e = abs(n) // d
        for sd in (1, -1):
            dd, ee = sd * d, sd * target_sign * e
            if dd % 16 == ee % 16 and dd % 16 in (3, 5):
                pairs.append((dd, ee))
    return pairs


def factor_pair_search(n: int) -> tuple[int, int] | None:
    """The preferred factor pair of n, or None if there is none.

    Preference: smallest max(|d|, |e|), then the 3 mod 16 family, then d <= e.

    >>> factor_pair_search(57)
    (3, 19)
    """
    pairs = factor_pairs(n)
    if not pairs:
        return None
    return min(pairs, key=lambda de: (max(abs(de[0]), abs(de[1])), de[0] % 16 != 3, de[0], de[1]))


# -- scans -------------------------------------------------------------------

Box = Sequence[tuple[int, int]]
_INNER_LIMIT = 1 << 17
_SAMPLE_CHUNK = 1 << 15
_VIOLATION_KEEP = 1000


@dataclass
class ScanReport:
    group: str
    mode: str
    candidates: int = 0
    values: set[int] = field(default_factory=set)
    large_values: int = 0
    odd_residues: set[int] = field(default_factory=set)
    min_even_valuation: int | None = None
    zero_count: int = 0
    violation_count: int = 0
    violations: list[tuple[tuple[int, ...], int]] = field(default_factory=list)
    value_bound: int = 1 << 24

    def merge(self, other: ScanReport) -> None:
        self.candidates += other.candidates
        self.values |= other.values
        self.large_values += other.large_values
        self.odd_residues |= other.odd_residues
        if other.min_even_valuation is not None:
            if self.min_even_valuation is None or other.min_even_valuation < self.min_even_valuation:
                self.min_even_valuation = other.min_even_valuation
        self.zero_count += other.zero_count
        self.violation_count += other.violation_count
        self.violations = sorted(self.violations + other.violations)[:_VIOLATION_KEEP]

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    def summary(self) -> dict:
        return {
            "group": self.group,
            "mode": self.mode,
            "candidates": self.candidates,
            "distinct_small_values": len(self.values),
            "large_values": self.large_values,
            "zero_count": self.zero_count,
            "odd_residues_mod_16": sorted(self.odd_residues),
            "min_even_valuation": self.min_even_valuation,
            "violation_count": self.violation_count,
            "violations": [{"tuple": list(t), "value": v} for t, v in self.violations],
        }


@lru_cache(maxsize=1 << 20)
def _value_ok(v: int) -> bool:
    return is_achievable(v).achievable


def _absorb(report: ScanReport, coeffs: np.ndarray, values: np.ndarray) -> None:
    report.candidates += len(values)
    uniq, counts = np.unique(values, return_counts=True)
    bad = []
    for v, count in zip(uniq.tolist(), counts.tolist()):
        v = int(v)
        if abs(v) < report.value_bound:
            report.values.add(v)
        else:
            report.large_values += count
        if v == 0:
            report.zero_count += count
        elif v % 2:
            report.odd_residues.add(v % 16)
        else:
            val = two_adic_valuation(v)
            if report.min_even_valuation is None or val < report.min_even_valuation:
                report.min_even_valuation = val
        if not _value_ok(v):
            bad.append(v)
            report.violation_count += count
    if bad:
        rows = np.flatnonzero(np.isin(values, np.array(bad, dtype=values.dtype)))
        found = [(tuple(int(c) for c in coeffs[i]), int(values[i])) for i in rows[:_VIOLATION_KEEP]]
        report.violations = sorted(report.violations + found)[:_VIOLATION_KEEP]


def _normalize_box(box) -> tuple[tuple[int, int], ...]:
    if len(box) == 2 and all(isinstance(b, (int, np.integer)) for b in box):
        box = [tuple(box)] * 16
    box = tuple((int(lo), int(hi)) for lo, hi in box)
    if len(box) != 16 or any(lo > hi for lo, hi in box):
        raise ValueError("box must be (lo, hi) or 16 ranges with lo <= hi")
    return box


def _split_point(box) -> int:
    """Smallest s such that coordinates s..15 span at most _INNER_LIMIT tuples."""
    size = 1
    for s in range(15, -1, -1):
        size *= box[s][1] - box[s][0] + 1
        if size > _INNER_LIMIT:
            return s + 1
    return 0


def _grid(ranges) -> np.ndarray:
    axes = [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in ranges]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1) if mesh else np.zeros((1, 0), dtype=np.int64)


def _oracle_values(group: str, coeffs: np.ndarray) -> np.ndarray:
    G = build_group(group)
    out = np.empty(len(coeffs), dtype=object)
    for i, row in enumerate(coeffs.tolist()):
        out[i] = group_determinant(GroupRingElement(G, tuple(row)))
    return out


def _evaluate(group: str, coeffs: np.ndarray, safe: bool) -> np.ndarray:
    if group == "z2xd8":
        return _oracle_values(group, coeffs)
    if safe:
        return values_from_forms(coeffs @ LINEAR_FORMS.T)
    return values_from_forms(coeffs.astype(object).dot(LINEAR_FORMS.T.astype(object)))


def _exhaustive_unit(args) -> ScanReport:
    group, box, s, outer_points, value_bound = args
    report = ScanReport(group, "exhaustive", value_bound=value_bound)
    inner = _grid(box[s:])
    safe = int64_safe(max(max(abs(lo), abs(hi)) for lo, hi in box))
    if group == "sg16_13" and safe:
        inner_forms = inner @ LINEAR_FORMS[:, s:].T
    for outer in outer_points:
        outer_arr = np.array(outer, dtype=np.int64)
        coeffs = np.hstack([np.broadcast_to(outer_arr, (len(inner), s)), inner])
        if group == "sg16_13" and safe:
            values = values_from_forms(inner_forms + LINEAR_FORMS[:, :s] @ outer_arr)
        else:
            values = _evaluate(group, coeffs, safe)
        _absorb(report, coeffs, values)
    return report


def _sample_unit(args) -> ScanReport:
    group, box, seed, index, size, value_bound = args
    report = ScanReport(group, "sampled", value_bound=value_bound)
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))
    lo = np.array([b[0] for b in box], dtype=np.int64)
    hi = np.array([b[1] for b in box], dtype=np.int64)
    coeffs = rng.integers(lo, hi + 1, size=(size, 16), dtype=np.int64)
    safe = int64_safe(max(max(abs(a), abs(b)) for a, b in box))
    _absorb(report, coeffs, _evaluate(group, coeffs, safe))
    return report


def default_workers() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def brute_force_scan(
    box,
    group: str = "sg16_13",
    budget: int = 50_000_000,
    seed: int = 0,
    workers: int | None = None,
    value_bound: int = 1 << 24,
) -> ScanReport:
    """Evaluate every tuple in ``box`` (or ``budget`` seeded samples if the box is larger).

    ``box`` is either one ``(lo, hi)`` range for all sixteen coefficients or
    sixteen ranges. For ``sg16_13`` the closed form is used; for ``z2xd8`` the
    16x16 Cayley-matrix determinant, with the coefficients in element-index
    order. The box is cut into fixed units independent of ``workers`` and
    the per-unit reports are merged with order-independent unions, so the
    report does not depend on the worker count.
    """
    if group not in ("sg16_13", "z2xd8"):
        raise ValueError(f"scans support sg16_13 and z2xd8, not {group!r}")
    box = _normalize_box(box)
    total = math.prod(hi - lo + 1 for lo, hi in box)
    if total <= budget:
        s = _split_point(box)
        outer = list(product(*(range(lo, hi + 1) for lo, hi in box[:s])))
        per_unit = max(1, len(outer) // 256)
        units = [(group, box, s, outer[i : i + per_unit], value_bound) for i in range(0, len(outer), per_unit)]
        fn, mode = _exhaustive_unit, "exhaustive"
    else:
        sizes = [_SAMPLE_CHUNK] * (budget // _SAMPLE_CHUNK)
        if budget % _SAMPLE_CHUNK:
            sizes.append(budget % _SAMPLE_CHUNK)
        units = [(group, box, seed, i, size, value_bound) for i, size in enumerate(sizes)]
        fn, mode = _sample_unit, "sampled"

    workers = default_workers() if workers is None else max(1, workers)
    report = ScanReport(group, mode, value_bound=value_bound)
    if workers == 1 or len(units) == 1:
        for unit in units:
            report.merge(fn(unit))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(fn, units):
                report.merge(part)
    return report


def random_tuples(count: int, bound: int, seed: int, batch: int = 1 << 16):
    """Yield ``count`` seeded uniform tuples in [-bound, bound]^16 as lists of ints.

    Drawn in batches from a single generator, so the stream depends only on
    (count, bound, seed, batch) and memory stays flat for large counts.
    """
    rng = np.random.default_rng(seed)
    while count > 0:
        size = min(batch, count)
        yield from rng.integers(-bound, bound + 1, size=(size, 16), dtype=np.int64).tolist()
        count -= size
