"""Dense univariate polynomial arithmetic over prime fields.

Polynomials are lists of coefficients in ascending degree order with no
trailing zeros; the zero polynomial is the empty list.  These routines back
the root finder for primes too large to scan.
"""

from __future__ import annotations

from .errors import InvalidArgumentError
from .modarith import inverse, is_prime

Poly = list[int]


def trim(a: Poly) -> Poly:
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce_coeffs(coeffs, p: int) -> Poly:
    return trim([c % p for c in coeffs])


def degree(a: Poly) -> int:
    return len(a) - 1


def mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return trim(out)


def divmod_(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    if not b:
        raise InvalidArgumentError("polynomial division by zero")
    a = a[:]
    db, inv_lead = len(b) - 1, inverse(b[-1], p)
    if len(a) - 1 < db:
        return [], trim(a)
    quo = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        if a[i] == 0:
            continue
        q = a[i] * inv_lead % p
        quo[i - db] = q
        for j in range(db + 1):
            a[i - db + j] = (a[i - db + j] - q * b[j]) % p
    return trim(quo), trim(a)


def mod(a: Poly, b: Poly, p: int) -> Poly:
    return divmod_(a, b, p)[1]


def monic(a: Poly, p: int) -> Poly:
    if not a:
        return []
    if a[-1] == 1:
        return a[:]
    inv_lead = inverse(a[-1], p)
    return [c * inv_lead % p for c in a]


def gcd_unchecked(a: Poly, b: Poly, p: int) -> Poly:
    a, b = trim(a[:]), trim(b[:])
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def powmod_unchecked(base: Poly, exponent: int, modpoly: Poly, p: int) -> Poly:
    if exponent < 0:
        raise InvalidArgumentError("exponent must be nonnegative")
    result = [1]
    acc = mod(base, modpoly, p)
    e = exponent
    while e:
        if e & 1:
            result = mod(mul(result, acc, p), modpoly, p)
        e >>= 1
        if e:
            acc = mod(mul(acc, acc, p), modpoly, p)
    return result


def poly_gcd_mod_p(a, b, p: int) -> Poly:
    """Monic gcd of two polynomials over F_p."""
    if not is_prime(p):
        raise InvalidArgumentError(f"{p} is not prime")
    a = reduce_coeffs(a, p)
    b = reduce_coeffs(b, p)
    if not a and not b:
        raise InvalidArgumentError("gcd of two zero polynomials is undefined")
    return gcd_unchecked(a, b, p)


def poly_powmod(base, exponent: int, modpoly, p: int) -> Poly:
    """base^exponent reduced mod (modpoly, p), by square-and-multiply."""
    if not is_prime(p):
        raise InvalidArgumentError(f"{p} is not prime")
    modpoly = reduce_coeffs(modpoly, p)
    if degree(modpoly) < 1:
        raise InvalidArgumentError("modulus polynomial must be nonconstant")
    return powmod_unchecked(reduce_coeffs(base, p), exponent, modpoly, p)
