"""Roots of f(x) = 0 mod p, mod p^e, and mod n, plus filtered streams over n.

Per-prime work is the expensive part, so root sets for primes and prime
powers are memoized in LRU stores shared by every stream in the process.
Correctness never depends on a cache hit: entries are pure functions of
(polynomial, prime, exponent, seed).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator

import numpy as np

from . import fppoly
from .errors import InvalidArgumentError, ResourceLimitError
from .intpoly import IntPolynomial, poly_eval_mod
from .modarith import Factorization, SpfSieve, cached_sieve, factorize, inverse, is_prime

# Below this bound roots mod p are found by scanning every residue; above it
# the gcd(x^p - x, f) route is used.  The scan also covers p = 2 and other
# tiny fields where randomized splitting has edge cases.
SCAN_LIMIT = 1 << 16

# Plain-python scan is faster than numpy dispatch for very small p.
_NUMPY_SCAN_MIN = 512

# Abort exhaustive lifting above a ramified prime once this many candidates
# would have to be enumerated at one level.
_LIFT_CANDIDATE_LIMIT = 10**6

_DEFAULT_SIEVE_LIMIT = 10**5


@dataclass(frozen=True)
class RootSet:
    """All roots of a fixed polynomial mod one modulus, sorted ascending."""

    modulus: int
    roots: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise InvalidArgumentError("modulus must be positive")

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)


@dataclass(frozen=True)
class LiftTree:
    """Roots mod p, p^2, ..., p^E with parent links between levels.

    levels[e-1] lists the roots mod p^e; parents[e-1][i] is the index into
    levels[e-2] of the residue the root reduces to (or -1 at level 1).
    """

    prime: int
    levels: tuple[tuple[int, ...], ...]
    parents: tuple[tuple[int, ...], ...]

    @property
    def depth(self) -> int:
        return len(self.levels)


def default_sieve() -> SpfSieve:
    return cached_sieve(_DEFAULT_SIEVE_LIMIT)


def _sieve_for(n: int, sieve: SpfSieve | None) -> SpfSieve:
    if sieve is not None:
        return sieve
    return default_sieve()


def _scan_roots(f: IntPolynomial, p: int) -> tuple[int, ...]:
    if p < _NUMPY_SCAN_MIN:
        return tuple(v for v in range(p) if poly_eval_mod(f, v, p) == 0)
    v = np.arange(p, dtype=np.int64)
    acc = np.full(p, f.coeffs[-1] % p, dtype=np.int64)
    for c in reversed(f.coeffs[:-1]):
        acc = (acc * v + c) % p
    return tuple(int(r) for r in np.flatnonzero(acc == 0))


def _split_into_roots(g: fppoly.Poly, p: int, rng: random.Random) -> list[int]:
    """Extract the roots of a monic product of distinct linear factors.

    Randomized equal-degree splitting: gcd with (x+s)^((p-1)/2) - 1 separates
    the roots a by whether a+s is a quadratic residue; random shifts s make
    a proper split likely at every try.
    """
    deg = fppoly.degree(g)
    if deg <= 0:
        return []
    if deg == 1:
        return [(-g[0]) % p]
    while True:
        s = rng.randrange(p)
        h = fppoly.powmod_unchecked([s, 1], (p - 1) // 2, g, p)
        if not h:
            h = [p - 1]
        else:
            h = h[:]
            h[0] = (h[0] - 1) % p
            fppoly.trim(h)
        if not h:
            continue
        t = fppoly.gcd_unchecked(h, g, p)
        dt = fppoly.degree(t)
        if 0 < dt < deg:
            rest = fppoly.divmod_(g, t, p)[0]
            return _split_into_roots(t, p, rng) + _split_into_roots(rest, p, rng)


def _roots_mod_prime_large(f: IntPolynomial, p: int, seed: int) -> tuple[int, ...]:
    fb = fppoly.reduce_coeffs(f.coeffs, p)
    deg = fppoly.degree(fb)
    if deg <= 0:
        # A primitive polynomial cannot vanish identically mod p, so a
        # degree-0 reduction is a nonzero constant: no roots.
        return ()
    fb = fppoly.monic(fb, p)
    if deg == 1:
        return ((-fb[0]) % p,)
    xp = fppoly.powmod_unchecked([0, 1], p, fb, p)
    xp_minus_x = xp[:]
    while len(xp_minus_x) < 2:
        xp_minus_x.append(0)
    xp_minus_x[1] = (xp_minus_x[1] - 1) % p
    fppoly.trim(xp_minus_x)
    g = fppoly.gcd_unchecked(xp_minus_x, fb, p)
    if fppoly.degree(g) <= 0:
        return ()
    rng = random.Random(f"{seed}:{p}")
    return tuple(sorted(_split_into_roots(g, p, rng)))


@lru_cache(maxsize=1 << 20)
def _prime_roots_cached(f: IntPolynomial, p: int, seed: int) -> tuple[int, ...]:
    if p < SCAN_LIMIT:
        return _scan_roots(f, p)
    return _roots_mod_prime_large(f, p, seed)


def roots_mod_prime(f: IntPolynomial, p: int, seed: int = 0) -> list[int]:
    """Sorted roots of f mod a prime p."""
    if p < 2 or not is_prime(p):
        raise InvalidArgumentError(f"{p} is not prime")
    return list(_prime_roots_cached(f, p, seed))


def hensel_lift_level(f: IntPolynomial, p: int, e: int, parent_root: int) -> list[int]:
    """Roots mod p^e lying above a given root mod p^(e-1).

    When f'(parent) is a unit mod p there is exactly one lift (a Newton
    step); otherwise all p candidate offsets are checked and zero to p of
    them may survive.
    """
    if e < 2:
        raise InvalidArgumentError("lift level must be at least 2")
    if not is_prime(p):
        raise InvalidArgumentError(f"{p} is not prime")
    pe_prev = p ** (e - 1)
    pe = pe_prev * p
    v = parent_root
    if not 0 <= v < pe_prev:
        raise InvalidArgumentError("parent root out of range for its level")
    if poly_eval_mod(f, v, pe_prev) != 0:
        raise InvalidArgumentError(
            f"{v} is not a root of the polynomial mod {p}^{e - 1}"
        )
    deriv = f.deriv_mod(v, p)
    if deriv != 0:
        u = inverse(f.deriv_mod(v, pe), pe)
        return [(v - poly_eval_mod(f, v, pe) * u) % pe]
    return [
        v + t * pe_prev
        for t in range(p)
        if poly_eval_mod(f, v + t * pe_prev, pe) == 0
    ]


def _lift_all(f: IntPolynomial, p: int, e: int, parents: tuple[int, ...]) -> tuple[int, ...]:
    pe_prev = p ** (e - 1)
    pe = pe_prev * p
    out: list[int] = []
    ramified = 0
    for v in parents:
        if f.deriv_mod(v, p) != 0:
            u = inverse(f.deriv_mod(v, pe), pe)
            out.append((v - poly_eval_mod(f, v, pe) * u) % pe)
        else:
            ramified += 1
            if ramified * p > _LIFT_CANDIDATE_LIMIT:
                raise ResourceLimitError(
                    f"lift enumeration above {p} exceeds {_LIFT_CANDIDATE_LIMIT} candidates"
                )
            for t in range(p):
                w = v + t * pe_prev
                if poly_eval_mod(f, w, pe) == 0:
                    out.append(w)
    out.sort()
    return tuple(out)


@lru_cache(maxsize=1 << 20)
def _prime_power_roots_cached(f: IntPolynomial, p: int, e: int, seed: int) -> tuple[int, ...]:
    if e == 1:
        return _prime_roots_cached(f, p, seed)
    parents = _prime_power_roots_cached(f, p, e - 1, seed)
    if not parents:
        return ()
    return _lift_all(f, p, e, parents)


def roots_mod_prime_power(f: IntPolynomial, p: int, e: int, seed: int = 0) -> list[int]:
    """Sorted roots of f mod p^e, built level by level from the roots mod p."""
    if not is_prime(p):
        raise InvalidArgumentError(f"{p} is not prime")
    if e < 1:
        raise InvalidArgumentError("exponent must be at least 1")
    return list(_prime_power_roots_cached(f, p, e, seed))


def lift_tree(f: IntPolynomial, p: int, depth: int, seed: int = 0) -> LiftTree:
    """The full tower of roots mod p, ..., p^depth with parent links."""
    if not is_prime(p):
        raise InvalidArgumentError(f"{p} is not prime")
    if depth < 1:
        raise InvalidArgumentError("depth must be at least 1")
    levels = []
    parents = []
    for e in range(1, depth + 1):
        roots = _prime_power_roots_cached(f, p, e, seed)
        levels.append(roots)
        if e == 1:
            parents.append((-1,) * len(roots))
        else:
            prev = levels[-2]
            pe_prev = p ** (e - 1)
            idx = {r: i for i, r in enumerate(prev)}
            parents.append(tuple(idx[r % pe_prev] for r in roots))
    return LiftTree(p, tuple(levels), tuple(parents))


def roots_from_factorization(
    f: IntPolynomial, fact: Factorization, seed: int = 0
) -> tuple[int, ...]:
    """Combine cached prime-power root sets through the CRT."""
    if fact.modulus == 1:
        return (0,)
    acc: tuple[int, ...] | list[int] = (0,)
    acc_m = 1
    for p, e in fact.parts:
        pe = p**e
        part = _prime_power_roots_cached(f, p, e, seed)
        if not part:
            return ()
        if acc_m == 1:
            acc = part
            acc_m = pe
            continue
        inv = inverse(acc_m % pe, pe)
        acc = [a + acc_m * ((b - a) * inv % pe) for a in acc for b in part]
        acc_m *= pe
    return tuple(sorted(acc))


def roots_mod_n(f: IntPolynomial, n: int, sieve: SpfSieve | None = None, seed: int = 0) -> RootSet:
    """All roots of f mod n, assembled from its prime-power factors.

    The convention rho(1) = 1 with root {0} keeps counts multiplicative and
    matches the ascending-modulus sequence starting at n = 1.
    """
    if n < 1:
        raise InvalidArgumentError("modulus must be positive")
    if n == 1:
        return RootSet(1, (0,))
    fact = factorize(n, _sieve_for(n, sieve))
    return RootSet(n, roots_from_factorization(f, fact, seed))


def root_count(f: IntPolynomial, n: int, sieve: SpfSieve | None = None, seed: int = 0) -> int:
    return len(roots_mod_n(f, n, sieve, seed).roots)


class ModulusFilter:
    """Which moduli a stream visits: all, squarefree, a progression,
    coprime-to-m, or an explicit list."""

    def __init__(self, kind: str, a: int = 0, m: int = 0, values: frozenset[int] | None = None):
        self.kind = kind
        self.a = a
        self.m = m
        self.values = values
        if kind == "progression":
            if m < 1 or math.gcd(a, m) != 1:
                raise InvalidArgumentError(
                    f"progression filter needs gcd(a, m) = 1; got a={a}, m={m}"
                )
        elif kind == "coprime":
            if m < 1:
                raise InvalidArgumentError("coprime filter needs a positive modulus")
        elif kind == "list":
            if not values:
                raise InvalidArgumentError("explicit filter needs at least one modulus")
        elif kind not in ("all", "squarefree"):
            raise InvalidArgumentError(f"unknown filter kind {kind!r}")

    @classmethod
    def all(cls) -> "ModulusFilter":
        return cls("all")

    @classmethod
    def squarefree(cls) -> "ModulusFilter":
        return cls("squarefree")

    @classmethod
    def progression(cls, a: int, m: int) -> "ModulusFilter":
        return cls("progression", a=a % m if m else a, m=m)

    @classmethod
    def coprime(cls, m: int) -> "ModulusFilter":
        return cls("coprime", m=m)

    @classmethod
    def explicit(cls, values: Iterable[int]) -> "ModulusFilter":
        return cls("list", values=frozenset(int(v) for v in values))

    @classmethod
    def parse(cls, text: str) -> "ModulusFilter":
        """Parse "all", "squarefree", "progression:a,m", "coprime:m", "list:n1,n2,..."."""
        text = text.strip()
        if text == "all":
            return cls.all()
        if text == "squarefree":
            return cls.squarefree()
        head, sep, tail = text.partition(":")
        if not sep:
            raise InvalidArgumentError(f"cannot parse filter {text!r}")
        try:
            if head == "progression":
                a_txt, m_txt = tail.split(",")
                return cls.progression(int(a_txt), int(m_txt))
            if head == "coprime":
                return cls.coprime(int(tail))
            if head == "list":
                return cls.explicit(int(v) for v in tail.split(","))
        except (ValueError, TypeError) as exc:
            raise InvalidArgumentError(f"cannot parse filter {text!r}: {exc}") from None
        raise InvalidArgumentError(f"unknown filter kind {head!r}")

    @property
    def needs_factorization(self) -> bool:
        return self.kind == "squarefree"

    def accepts(self, n: int, fact: Factorization | None = None) -> bool:
        if self.kind == "all":
            return True
        if self.kind == "progression":
            return n % self.m == self.a
        if self.kind == "coprime":
            return math.gcd(n, self.m) == 1
        if self.kind == "list":
            return n in self.values
        if fact is None:
            fact = factorize(n, default_sieve())
        return fact.squarefree

    def describe(self) -> str:
        if self.kind == "progression":
            return f"progression:{self.a},{self.m}"
        if self.kind == "coprime":
            return f"coprime:{self.m}"
        if self.kind == "list":
            return "list:" + ",".join(str(v) for v in sorted(self.values))
        return self.kind

    def __repr__(self) -> str:
        return f"ModulusFilter({self.describe()!r})"


def root_stream(
    f: IntPolynomial,
    xmax: int,
    flt: ModulusFilter | None = None,
    sieve: SpfSieve | None = None,
    seed: int = 0,
    extra_accept: Callable[[int], bool] | None = None,
) -> Iterator[tuple[int, RootSet]]:
    """Yield (n, RootSet) for n = 1..xmax in ascending order, filtered.

    ``extra_accept`` is an additional cheap predicate on n (used for the
    coprimality restriction of inverse-mode Weyl sums).
    """
    if xmax < 1:
        raise InvalidArgumentError("xmax must be at least 1")
    if flt is None:
        flt = ModulusFilter.all()
    if sieve is None or sieve.limit < xmax:
        limit = _DEFAULT_SIEVE_LIMIT
        while limit < xmax:
            limit *= 10
        sieve = cached_sieve(limit)
    spf = sieve.as_list()
    needs_fact = flt.needs_factorization
    for n in range(1, xmax + 1):
        if extra_accept is not None and not extra_accept(n):
            continue
        if n == 1:
            if flt.accepts(1, Factorization(1, ())):
                yield 1, RootSet(1, (0,))
            continue
        if not needs_fact and not flt.accepts(n):
            continue
        m = n
        parts = []
        while m > 1:
            p = spf[m]
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            parts.append((p, e))
        parts.sort()
        if needs_fact and any(e > 1 for _, e in parts):
            continue
        roots: tuple[int, ...] | list[int] = (0,)
        acc_m = 1
        empty = False
        for p, e in parts:
            pe = p**e
            part = _prime_power_roots_cached(f, p, e, seed)
            if not part:
                empty = True
                break
            if acc_m == 1:
                roots = part
                acc_m = pe
            else:
                inv = inverse(acc_m % pe, pe)
                roots = [a + acc_m * ((b - a) * inv % pe) for a in roots for b in part]
                acc_m *= pe
        if empty:
            yield n, RootSet(n, ())
        else:
            yield n, RootSet(n, tuple(sorted(roots)))


def clear_caches() -> None:
    """Drop the memoized per-prime root stores (mainly for tests)."""
    _prime_roots_cached.cache_clear()
    _prime_power_roots_cached.cache_clear()
