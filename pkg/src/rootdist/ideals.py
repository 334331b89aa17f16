"""Degree-one ideal data in factored form, and the root <-> ideal bijection.

An ideal of norm n coprime to eta*disc is stored extensionally as one
(prime, exponent, residue) triple per prime power of n; no integral basis is
ever needed.  Ramified primes (those dividing eta*disc) are refused outright:
identifying which root mod p belongs to a ramified degree-one prime would
need p-adic factorization machinery this representation deliberately avoids.

Norms here are always ideal norms (residue-ring sizes).  No norm of a ring
element is ever computed, so the unit-scale ambiguity between element norms
over the localized ring and products of complex embeddings never arises.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import AdmissibilityError, InvalidArgumentError, UnsupportedInputError
from .intpoly import IntPolynomial, poly_eval_mod
from .modarith import SpfSieve, factorize
from .roots import _prime_power_roots_cached, _sieve_for, roots_mod_n


@dataclass(frozen=True)
class AdmissibilityReport:
    """Whether gcd(n, eta*disc) = 1, and the primes that break it."""

    modulus: int
    admissible: bool
    offending_primes: tuple[int, ...]


def admissibility(f: IntPolynomial, n: int, sieve: SpfSieve | None = None) -> AdmissibilityReport:
    if n < 1:
        raise InvalidArgumentError("modulus must be positive")
    g = math.gcd(n, f.eta * f.discriminant)
    if g == 1:
        return AdmissibilityReport(n, True, ())
    fact = factorize(g, _sieve_for(g, sieve))
    return AdmissibilityReport(n, False, tuple(p for p, _ in fact.parts))


@dataclass(frozen=True)
class FactoredIdeal:
    """A degree-one ideal as (prime, exponent, residue mod p^e) components.

    Distinct primes across components encode the coprime-norms condition;
    each component being a residue of a genuine root encodes the degree-one
    condition for admissible primes.
    """

    components: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        last = 1
        for p, e, v in self.components:
            if p <= last:
                raise InvalidArgumentError("component primes must be distinct and ascending")
            if e < 1 or not 0 <= v < p**e:
                raise InvalidArgumentError("component exponent or residue out of range")
            last = p

    @property
    def norm(self) -> int:
        n = 1
        for p, e, _ in self.components:
            n *= p**e
        return n

    def to_json(self) -> str:
        return json.dumps(
            {"norm": self.norm, "components": [[p, e, v] for p, e, v in self.components]}
        )

    @classmethod
    def from_json(cls, text: str) -> "FactoredIdeal":
        data = json.loads(text)
        ideal = cls(tuple((int(p), int(e), int(v)) for p, e, v in data["components"]))
        if ideal.norm != data["norm"]:
            raise InvalidArgumentError("serialized norm does not match components")
        return ideal


def ideal_from_root(
    f: IntPolynomial, v: int, n: int, sieve: SpfSieve | None = None
) -> FactoredIdeal:
    """The ideal generated by (root shift, n) for a root v of f mod n."""
    report = admissibility(f, n, sieve)
    if not report.admissible:
        raise AdmissibilityError(report)
    if not 0 <= v < n:
        raise InvalidArgumentError(f"root {v} out of range [0, {n})")
    if poly_eval_mod(f, v, n) != 0:
        raise InvalidArgumentError(f"{v} is not a root of the polynomial mod {n}")
    fact = factorize(n, _sieve_for(n, sieve))
    return FactoredIdeal(tuple((p, e, v % p**e) for p, e in fact.parts))


def ideal_residue(ideal: FactoredIdeal) -> int:
    """The unique integer in [0, norm) matching every component residue."""
    acc, acc_m = 0, 1
    for p, e, v in ideal.components:
        pe = p**e
        if acc_m == 1:
            acc, acc_m = v, pe
        else:
            inv = pow(acc_m % pe, -1, pe)
            acc += acc_m * ((v - acc) * inv % pe)
            acc_m *= pe
    return acc


def is_degree_one(
    f: IntPolynomial, components: tuple[tuple[int, int, int], ...]
) -> tuple[bool, str]:
    """Classify a component list against the two degree-one conditions.

    Condition (ii) asks that component norms be pairwise coprime, i.e. no
    rational prime repeats.  Condition (i) asks each component to be a
    degree-one prime power, which this representation can only certify for
    primes away from eta*disc.
    """
    bad = f.eta * f.discriminant
    seen: dict[int, int] = {}
    for p, e, v in components:
        if e < 1 or not 0 <= v < p**e:
            raise InvalidArgumentError("component exponent or residue out of range")
        if poly_eval_mod(f, v, p**e) != 0:
            raise InvalidArgumentError(
                f"component residue {v} is not a root mod {p}^{e}"
            )
        seen[p] = seen.get(p, 0) + 1
    repeated = sorted(p for p, k in seen.items() if k > 1)
    if repeated:
        return False, (
            f"condition (ii) fails: primes {repeated} appear in more than one "
            "component, so the component norms are not pairwise coprime"
        )
    inadmissible = sorted(p for p in seen if bad % p == 0)
    if inadmissible:
        return False, (
            f"condition (i) cannot be certified: primes {inadmissible} divide "
            "eta*disc, and ramified primes are excluded from this representation"
        )
    return True, "degree one"


@dataclass(frozen=True)
class InertiaDegree:
    """Inertia degree as a pair of per-prime exponent vectors.

    The value is log(product of component norms) / log(contraction to Z).
    Logs of distinct primes are independent, so the quotient is returned
    symbolically: exact when the vectors are proportional, and always
    convertible to float.  The only predicate consumers need, equality with
    1, is decided exactly.
    """

    numerator: tuple[tuple[int, int], ...]
    denominator: tuple[tuple[int, int], ...]

    @property
    def is_one(self) -> bool:
        return self.numerator == self.denominator

    def as_fraction(self) -> Fraction | None:
        num = dict(self.numerator)
        den = dict(self.denominator)
        if not den:
            return Fraction(1)  # unit ideal: both residue rings are trivial
        ratios = {Fraction(num[p], den[p]) for p in den}
        if len(ratios) == 1:
            return ratios.pop()
        return None

    def __float__(self) -> float:
        if not self.denominator:
            return 1.0
        num = sum(e * math.log(p) for p, e in self.numerator)
        den = sum(e * math.log(p) for p, e in self.denominator)
        return num / den

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            frac = self.as_fraction()
            return frac is not None and frac == other
        if isinstance(other, InertiaDegree):
            return (self.numerator, self.denominator) == (other.numerator, other.denominator)
        return NotImplemented

    def __hash__(self):
        return hash((self.numerator, self.denominator))


def inertia_degree(
    f: IntPolynomial, components: tuple[tuple[int, int, int], ...]
) -> InertiaDegree:
    """Inertia degree of a product of components (equal primes allowed).

    The residue ring size multiplies over components; the contraction to the
    integers is governed per prime by the largest exponent present.  The
    unit ideal (no components) has degree one by convention.
    """
    bad = f.eta * f.discriminant
    total: dict[int, int] = {}
    largest: dict[int, int] = {}
    for p, e, v in components:
        if bad % p == 0:
            raise UnsupportedInputError(
                f"prime {p} divides eta*disc; ramified components are unsupported"
            )
        if poly_eval_mod(f, v, p**e) != 0:
            raise InvalidArgumentError(
                f"component residue {v} is not a root mod {p}^{e}"
            )
        total[p] = total.get(p, 0) + e
        largest[p] = max(largest.get(p, 0), e)
    num = tuple(sorted(total.items()))
    den = tuple(sorted(largest.items()))
    return InertiaDegree(num, den)


def enumerate_degree_one(
    f: IntPolynomial, n: int, sieve: SpfSieve | None = None, seed: int = 0
) -> list[FactoredIdeal]:
    """All degree-one ideals of norm n, via the product over prime powers."""
    report = admissibility(f, n, sieve)
    if not report.admissible:
        raise AdmissibilityError(report)
    if n == 1:
        return [FactoredIdeal(())]
    fact = factorize(n, _sieve_for(n, sieve))
    ideals = [()]
    for p, e in fact.parts:
        part = _prime_power_roots_cached(f, p, e, seed)
        if not part:
            return []
        ideals = [comps + ((p, e, v),) for comps in ideals for v in part]
    return [FactoredIdeal(tuple(comps)) for comps in ideals]


def merge_coprime(a: FactoredIdeal, b: FactoredIdeal) -> FactoredIdeal:
    """Component-wise product of two ideals with coprime norms."""
    primes_a = {p for p, _, _ in a.components}
    if any(p in primes_a for p, _, _ in b.components):
        raise InvalidArgumentError("ideals share a prime; merge requires coprime norms")
    return FactoredIdeal(tuple(sorted(a.components + b.components)))


def roots_match_ideals(f: IntPolynomial, n: int, sieve: SpfSieve | None = None) -> bool:
    """Convenience check: residues of the norm-n ideals equal the roots mod n."""
    ideals = enumerate_degree_one(f, n, sieve)
    residues = sorted(ideal_residue(i) for i in ideals)
    return residues == list(roots_mod_n(f, n, sieve).roots)
