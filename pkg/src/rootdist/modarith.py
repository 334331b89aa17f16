"""Integer plumbing: smallest-prime-factor sieve, factorization, CRT, primality.

The sieve table is a numpy array (4 bytes per entry below 2^31), which keeps
a 10^8-entry table around 400 MB; that is the practical cap.  Factoring
beyond the sieve limit falls back to trial division by sieved primes plus a
deterministic Miller-Rabin test, and inputs outside that range are rejected
rather than risked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidArgumentError, UnsupportedInputError

# Deterministic Miller-Rabin base set: correct for n < 3317044064679887385961981,
# which comfortably covers 64-bit inputs.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DETERMINISTIC_BOUND = 3317044064679887385961981


@dataclass(frozen=True)
class Factorization:
    """A positive integer as an ordered product of prime powers."""

    modulus: int
    parts: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.parts:
            if e < 1 or p <= last:
                raise InvalidArgumentError("factorization parts must have ascending primes and e >= 1")
            prod *= p**e
            last = p
        if prod != self.modulus:
            raise InvalidArgumentError("factorization does not reconstruct its modulus")

    @property
    def omega(self) -> int:
        return len(self.parts)

    @property
    def squarefree(self) -> bool:
        return all(e == 1 for _, e in self.parts)


class SpfSieve:
    """Smallest-prime-factor table for 2 <= n <= limit."""

    def __init__(self, limit: int):
        if limit < 2:
            raise InvalidArgumentError("sieve limit must be at least 2")
        self.limit = int(limit)
        dtype = np.int32 if self.limit < 2**31 else np.int64
        table = np.zeros(self.limit + 1, dtype=dtype)
        for p in range(2, math.isqrt(self.limit) + 1):
            if table[p] == 0:
                chunk = table[p * p :: p]
                chunk[chunk == 0] = p
        untouched = np.flatnonzero(table == 0)
        untouched = untouched[untouched >= 2]
        table[untouched] = untouched
        self._table = table
        self._list: list[int] | None = None
        self._primes: list[int] | None = None

    def __getitem__(self, n: int) -> int:
        if not 2 <= n <= self.limit:
            raise InvalidArgumentError(f"sieve lookup out of range: {n}")
        return int(self._table[n])

    def as_list(self) -> list[int]:
        """Plain-int copy of the table; faster for per-element lookups."""
        if self._list is None:
            self._list = self._table.tolist()
        return self._list

    def primes(self) -> list[int]:
        if self._primes is None:
            idx = np.flatnonzero(self._table == np.arange(self.limit + 1, dtype=self._table.dtype))
            self._primes = [int(p) for p in idx if p >= 2]
        return self._primes

    def prime_count(self) -> int:
        return len(self.primes())


def build_spf_sieve(limit: int) -> SpfSieve:
    """Build the smallest-prime-factor table for all n up to limit."""
    return SpfSieve(limit)


@lru_cache(maxsize=8)
def cached_sieve(limit: int) -> SpfSieve:
    """Shared sieve instances, reused across streams of the same size."""
    return SpfSieve(limit)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin below 3.3e24; raises beyond that range."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= _MR_DETERMINISTIC_BOUND:
        raise UnsupportedInputError(
            f"{n} exceeds the deterministic primality-testing range"
        )
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int, sieve: SpfSieve) -> Factorization:
    """Factor n using the sieve, with a trial-division fallback above its limit.

    A composite cofactor that survives trial division by every sieved prime
    is rejected (never guessed at).
    """
    if n < 1:
        raise InvalidArgumentError(f"cannot factorize {n}: need a positive integer")
    if n == 1:
        return Factorization(1, ())
    parts: list[tuple[int, int]] = []
    if n <= sieve.limit:
        table = sieve._table
        m = n
        while m > 1:
            p = int(table[m])
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            parts.append((p, e))
        parts.sort()
        return Factorization(n, tuple(parts))
    m = n
    for p in sieve.primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            parts.append((p, e))
    if m > 1:
        if is_prime(m):
            parts.append((m, 1))
        else:
            raise UnsupportedInputError(
                f"composite cofactor {m} of {n} is beyond factoring capability"
            )
    parts.sort()
    return Factorization(n, tuple(parts))


def inverse(a: int, m: int) -> int:
    """Multiplicative inverse of a mod m."""
    try:
        return pow(a, -1, m)
    except ValueError:
        raise InvalidArgumentError(f"{a} is not invertible mod {m}") from None


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """The unique r in [0, m1*m2) with r = r1 mod m1 and r = r2 mod m2."""
    if m1 < 1 or m2 < 1:
        raise InvalidArgumentError("moduli must be positive")
    if not (0 <= r1 < m1 and 0 <= r2 < m2):
        raise InvalidArgumentError("residues must lie in [0, modulus)")
    if math.gcd(m1, m2) != 1:
        raise InvalidArgumentError(f"moduli {m1} and {m2} are not coprime")
    return r1 + m1 * ((r2 - r1) * inverse(m1 % m2, m2) % m2)


def euler_phi(fact: Factorization) -> int:
    phi = 1
    for p, e in fact.parts:
        phi *= (p - 1) * p ** (e - 1)
    return phi
