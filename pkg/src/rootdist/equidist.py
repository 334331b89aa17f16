"""Exponential sums over root sets, checkpointed Weyl series, discrepancy
measures, and prime-counting statistics.

Accumulation order is pinned to ascending modulus and float sums carry Kahan
compensation, so identical inputs reproduce identical output bytes.  Phases
are reduced mod 1 in integer arithmetic before any float conversion.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgumentError
from .intpoly import IntPolynomial
from .modarith import SpfSieve, cached_sieve, euler_phi, factorize, inverse
from .roots import (
    ModulusFilter,
    _prime_roots_cached,
    _sieve_for,
    root_stream,
    roots_mod_n,
)

_TWO_PI = 2.0 * math.pi


class KahanSum:
    """Compensated float accumulator."""

    __slots__ = ("value", "_c")

    def __init__(self):
        self.value = 0.0
        self._c = 0.0

    def add(self, x: float) -> None:
        y = x - self._c
        t = self.value + y
        self._c = (t - self.value) - y
        self.value = t


def unit_phase(num: int, den: int) -> complex:
    """exp(2*pi*i*num/den) with the fraction reduced mod 1 exactly."""
    t = num % den
    return cmath.exp(complex(0.0, _TWO_PI * (t / den)))


def root_exp_sum(
    f: IntPolynomial,
    h: int,
    n: int,
    roots: tuple[int, ...] | None = None,
    sieve: SpfSieve | None = None,
) -> complex:
    """Sum of exp(2*pi*i*h*v/n) over the roots v of f mod n.

    At h = 0 (or h divisible by n) this degenerates to the root count.  The
    modulus of the result never exceeds the root count.
    """
    if roots is None:
        roots = roots_mod_n(f, n, sieve).roots
    if h % n == 0:
        return complex(len(roots), 0.0)
    total_re = 0.0
    total_im = 0.0
    for v in roots:
        z = unit_phase(h * v, n)
        total_re += z.real
        total_im += z.imag
    return complex(total_re, total_im)


def root_exp_sum_factored(
    f: IntPolynomial, h: int, n1: int, n2: int, sieve: SpfSieve | None = None
) -> complex:
    """The coprime-split product form of the exponential sum.

    With nbar_i the inverse of n_i modulo the other factor, the sum over the
    combined modulus factors as the product of twisted sums over the parts.
    """
    if math.gcd(n1, n2) != 1:
        raise InvalidArgumentError(f"{n1} and {n2} are not coprime")
    nbar2 = inverse(n2 % n1, n1) if n1 > 1 else 0
    nbar1 = inverse(n1 % n2, n2) if n2 > 1 else 0
    return root_exp_sum(f, h * nbar2, n1, sieve=sieve) * root_exp_sum(
        f, h * nbar1, n2, sieve=sieve
    )


@dataclass(frozen=True)
class HSpec:
    """Frequency choice for Weyl sums: a constant h, or per-modulus inverse
    of a fixed m (the unique h(n) in [0, n) with m*h(n) = 1 mod n)."""

    kind: str
    value: int

    def __post_init__(self):
        if self.kind not in ("const", "inverse"):
            raise InvalidArgumentError(f"unknown h mode {self.kind!r}")
        if self.kind == "inverse" and self.value < 1:
            raise InvalidArgumentError("inverse mode needs a positive m")

    @classmethod
    def const(cls, h: int) -> "HSpec":
        return cls("const", h)

    @classmethod
    def inverse_of(cls, m: int) -> "HSpec":
        return cls("inverse", m)

    @classmethod
    def parse(cls, text: str) -> "HSpec":
        text = text.strip()
        if text.startswith("inv:"):
            try:
                return cls.inverse_of(int(text[4:]))
            except ValueError as exc:
                raise InvalidArgumentError(f"cannot parse h spec {text!r}: {exc}") from None
        try:
            return cls.const(int(text))
        except ValueError as exc:
            raise InvalidArgumentError(f"cannot parse h spec {text!r}: {exc}") from None

    def describe(self) -> str:
        return f"inv:{self.value}" if self.kind == "inverse" else str(self.value)


def decades(xmax: int) -> list[int]:
    """Default checkpoints: powers of ten up to xmax, then xmax itself."""
    if xmax < 1:
        raise InvalidArgumentError("xmax must be at least 1")
    cps = []
    c = 10
    while c <= xmax:
        cps.append(c)
        c *= 10
    if not cps or cps[-1] != xmax:
        cps.append(xmax)
    return cps


@dataclass
class WeylSeries:
    """Checkpointed partial exponential sums along a filtered modulus stream.

    signed[k] is the complex sum of the per-modulus sums up to checkpoint k,
    abs_sum[k] the sum of their moduli, and normalizer[k] the exact count of
    contributing roots.  W = |signed| / normalizer is the normalized Weyl
    statistic; a zero normalizer flags the checkpoint and reports W as NaN.
    """

    h: HSpec
    filter_desc: str
    checkpoints: list[int]
    signed: list[complex] = field(default_factory=list)
    abs_sum: list[float] = field(default_factory=list)
    normalizer: list[int] = field(default_factory=list)
    empty_flags: list[bool] = field(default_factory=list)

    @property
    def weyl_statistic(self) -> list[float]:
        out = []
        for z, norm in zip(self.signed, self.normalizer):
            out.append(abs(z) / norm if norm > 0 else math.nan)
        return out

    def csv_rows(self) -> list[list[str]]:
        rows = [["x", "signed_re", "signed_im", "abs_sum", "normalizer", "W"]]
        for x, z, a, norm, w in zip(
            self.checkpoints, self.signed, self.abs_sum, self.normalizer, self.weyl_statistic
        ):
            rows.append(
                [str(x), f"{z.real:.12g}", f"{z.imag:.12g}", f"{a:.12g}", str(norm), f"{w:.12g}"]
            )
        return rows

    def to_csv(self) -> str:
        return "\n".join(",".join(row) for row in self.csv_rows()) + "\n"


def weyl_series(
    f: IntPolynomial,
    h: HSpec | int,
    xmax: int,
    flt: ModulusFilter | None = None,
    checkpoints: list[int] | None = None,
    sieve: SpfSieve | None = None,
    seed: int = 0,
) -> WeylSeries:
    """Accumulate the Weyl partial sums over the filtered stream up to xmax.

    In inverse mode only moduli coprime to m contribute (the inverse must
    exist), which is imposed on top of any caller filter.
    """
    if isinstance(h, int):
        h = HSpec.const(h)
    if flt is None:
        flt = ModulusFilter.all()
    if checkpoints is None:
        checkpoints = decades(xmax)
    checkpoints = sorted(set(int(c) for c in checkpoints))
    if not checkpoints or checkpoints[0] < 1 or checkpoints[-1] > xmax:
        raise InvalidArgumentError("checkpoints must lie in [1, xmax]")
    extra = None
    if h.kind == "inverse":
        m = h.value
        extra = lambda n: math.gcd(n, m) == 1  # noqa: E731

    series = WeylSeries(h=h, filter_desc=flt.describe(), checkpoints=list(checkpoints))
    re_acc, im_acc, abs_acc = KahanSum(), KahanSum(), KahanSum()
    norm_acc = 0
    cp_iter = iter(checkpoints)
    next_cp = next(cp_iter)

    def flush(upto: int) -> int | None:
        cp = next_cp
        while cp is not None and cp < upto:
            series.signed.append(complex(re_acc.value, im_acc.value))
            series.abs_sum.append(abs_acc.value)
            series.normalizer.append(norm_acc)
            series.empty_flags.append(norm_acc == 0)
            cp = next(cp_iter, None)
        return cp

    for n, rs in root_stream(f, xmax, flt, sieve, seed, extra_accept=extra):
        next_cp = flush(n)
        if next_cp is None:
            break
        if not rs.roots:
            continue
        norm_acc += len(rs.roots)
        if h.kind == "const":
            hn = h.value
        else:
            hn = inverse(h.value % n, n) if n > 1 else 0
        term = root_exp_sum(f, hn, n, rs.roots)
        re_acc.add(term.real)
        im_acc.add(term.imag)
        abs_acc.add(abs(term))
    while next_cp is not None:
        series.signed.append(complex(re_acc.value, im_acc.value))
        series.abs_sum.append(abs_acc.value)
        series.normalizer.append(norm_acc)
        series.empty_flags.append(norm_acc == 0)
        next_cp = next(cp_iter, None)
    return series


def ratio_points(
    f: IntPolynomial,
    xmax: int,
    flt: ModulusFilter | None = None,
    sieve: SpfSieve | None = None,
    seed: int = 0,
) -> np.ndarray:
    """The fractions v/n for every root along the stream, in stream order."""
    pts: list[float] = []
    for n, rs in root_stream(f, xmax, flt, sieve, seed):
        for v in rs.roots:
            pts.append(v / n)
    return np.asarray(pts, dtype=np.float64)


def star_discrepancy(points) -> float:
    """Exact one-dimensional star discrepancy of a point sample in [0, 1)."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.size == 0:
        raise InvalidArgumentError("star discrepancy of an empty sample is undefined")
    if pts.min() < 0.0 or pts.max() >= 1.0:
        raise InvalidArgumentError("points must lie in [0, 1)")
    pts = np.sort(pts)
    n = pts.size
    idx = np.arange(1, n + 1, dtype=np.float64)
    up = np.max(idx / n - pts)
    down = np.max(pts - (idx - 1.0) / n)
    return float(max(up, down))


def box_discrepancy(points, grid: int) -> float:
    """Anchored-box discrepancy over a uniform grid of corner coordinates.

    Each point is binned on a grid^r lattice and empirical box counts are
    compared with box volumes at every grid corner.  This is a documented
    approximation of the star discrepancy; exact computation in r > 1
    dimensions is not needed for trend checks.
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.size == 0:
        raise InvalidArgumentError("box discrepancy of an empty sample is undefined")
    if grid < 2:
        raise InvalidArgumentError("grid resolution must be at least 2")
    r = pts.shape[1]
    hist, _ = np.histogramdd(pts, bins=[grid] * r, range=[(0.0, 1.0)] * r)
    return box_discrepancy_from_hist(hist, int(pts.shape[0]))


def box_discrepancy_from_hist(hist: np.ndarray, count: int) -> float:
    """Anchored-box discrepancy from precomputed lattice counts."""
    if count < 1:
        raise InvalidArgumentError("box discrepancy of an empty sample is undefined")
    r = hist.ndim
    grid = hist.shape[0]
    pref = hist.astype(np.float64)
    for axis in range(r):
        pref = np.cumsum(pref, axis=axis)
        pad = [(1, 0) if a == axis else (0, 0) for a in range(r)]
        pref = np.pad(pref, pad)
    emp = pref / count
    axes = np.arange(grid + 1, dtype=np.float64) / grid
    vol = axes
    for _ in range(r - 1):
        vol = np.multiply.outer(vol, axes)
    return float(np.max(np.abs(emp - vol)))


@dataclass(frozen=True)
class DiscrepancyReport:
    """A discrepancy value with the sample size and method that produced it."""

    sample_count: int
    value: float
    kind: str  # "star" (1-D exact) or "box" (grid approximation)
    checkpoint: int
    grid: int = 0

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise InvalidArgumentError("discrepancy must lie in [0, 1]")
        if self.kind == "star" and self.value < 1.0 / (2.0 * self.sample_count):
            raise InvalidArgumentError(
                "one-dimensional star discrepancy cannot be below 1/(2N)"
            )


@dataclass(frozen=True)
class BoundCheck:
    lhs: float
    rhs: float
    holds: bool


def split_prime_count(f: IntPolynomial, n: int, sieve: SpfSieve | None = None, seed: int = 0) -> int:
    """Number of primes dividing n that avoid eta*disc and split completely,
    i.e. have a full set of deg(f) roots."""
    if n < 1:
        raise InvalidArgumentError("modulus must be positive")
    if n == 1:
        return 0
    bad = f.eta * f.discriminant
    fact = factorize(n, _sieve_for(n, sieve))
    count = 0
    for p, _ in fact.parts:
        if bad % p != 0 and len(_prime_roots_cached(f, p, seed)) == f.degree:
            count += 1
    return count


def dilated_sum_square_bound(
    f: IntPolynomial, h: int, n: int, sieve: SpfSieve | None = None
) -> BoundCheck:
    """Mean-square bound for the dilated exponential sums.

    Compares sum over a = 1..n of |S(a*h, n)|^2 against
    n * gcd(h, n) * rho(n)^2 / d^(number of split primes dividing n),
    where S is the root exponential sum and rho the root count.
    """
    roots = roots_mod_n(f, n, sieve).roots
    lhs_acc = KahanSum()
    for a in range(1, n + 1):
        lhs_acc.add(abs(root_exp_sum(f, a * h, n, roots)) ** 2)
    lhs = lhs_acc.value
    rho = len(roots)
    omega = split_prime_count(f, n, sieve)
    rhs = n * math.gcd(h, n) * rho * rho / f.degree**omega
    return BoundCheck(lhs, rhs, lhs <= rhs + 1e-6)


@dataclass
class PrimeStats:
    """Cumulative statistics over primes at each checkpoint.

    Row columns: x, sum of per-prime root counts, x/log x, prime count,
    (sum of rho(p)/p) - log log x, prod(1 + rho(p)/p) / log x, and the same
    product restricted to split primes divided by log^(1/closure_index) x.
    The three trailing columns stabilize toward constants; their values at
    the last checkpoint are the reported estimates.
    """

    checkpoints: list[int]
    rows: list[tuple[int, int, float, int, float, float, float]]
    closure_index: int

    @property
    def c2_estimate(self) -> float:
        return self.rows[-1][4]

    @property
    def c3_estimate(self) -> float:
        return self.rows[-1][5]

    @property
    def c4_estimate(self) -> float:
        return self.rows[-1][6]

    def csv_rows(self) -> list[list[str]]:
        head = ["x", "sum_rho_p", "x_over_log_x", "pi_x", "c2_partial", "c3_partial", "c4_partial"]
        out = [head]
        for x, s, xl, pi, c2, c3, c4 in self.rows:
            out.append([str(x), str(s), f"{xl:.12g}", str(pi), f"{c2:.12g}", f"{c3:.12g}", f"{c4:.12g}"])
        return out

    def to_csv(self) -> str:
        return "\n".join(",".join(row) for row in self.csv_rows()) + "\n"


def prime_stats(
    f: IntPolynomial,
    xmax: int,
    checkpoints: list[int] | None = None,
    closure_index: int = 1,
    sieve: SpfSieve | None = None,
    seed: int = 0,
) -> PrimeStats:
    """Accumulate root counts over primes up to xmax.

    closure_index is the degree of the normal closure of the root field over
    the root field itself; it is 1 whenever that extension is trivial (as for
    quadratic fields) and must be supplied by the caller otherwise, since
    Galois closures are not computed here.
    """
    if xmax < 2:
        raise InvalidArgumentError("xmax must be at least 2")
    if closure_index < 1:
        raise InvalidArgumentError("closure index must be at least 1")
    if checkpoints is None:
        checkpoints = decades(xmax)
    checkpoints = sorted(set(int(c) for c in checkpoints))
    if checkpoints[0] < 2 or checkpoints[-1] > xmax:
        raise InvalidArgumentError("checkpoints must lie in [2, xmax]")
    if sieve is None or sieve.limit < xmax:
        sieve = cached_sieve(max(xmax, 10**5))
    bad = f.eta * f.discriminant
    d = f.degree
    sum_rho = 0
    pi = 0
    ratio_acc = KahanSum()
    log_prod = KahanSum()
    log_prod_split = KahanSum()
    rows: list[tuple[int, int, float, int, float, float, float]] = []
    cp_iter = iter(checkpoints)
    next_cp = next(cp_iter)

    def snapshot(x: int) -> None:
        logx = math.log(x)
        rows.append(
            (
                x,
                sum_rho,
                x / logx,
                pi,
                ratio_acc.value - math.log(logx),
                math.exp(log_prod.value) / logx,
                math.exp(log_prod_split.value) / logx ** (1.0 / closure_index),
            )
        )

    for p in sieve.primes():
        if p > xmax:
            break
        while next_cp is not None and p > next_cp:
            snapshot(next_cp)
            next_cp = next(cp_iter, None)
        if next_cp is None:
            break
        rho = len(_prime_roots_cached(f, p, seed))
        pi += 1
        if rho:
            sum_rho += rho
            ratio_acc.add(rho / p)
            log_prod.add(math.log1p(rho / p))
            if rho == d and bad % p != 0:
                log_prod_split.add(math.log1p(rho / p))
    while next_cp is not None:
        snapshot(next_cp)
        next_cp = next(cp_iter, None)
    return PrimeStats(list(checkpoints), rows, closure_index)


@dataclass
class ProgressionSums:
    """Exact root-count sums over moduli in one residue class."""

    residue: int
    modulus: int
    checkpoints: list[int]
    sums: list[int]

    @property
    def c1_estimate(self) -> float:
        """Final sum scaled by phi(m)/x: the empirical slope constant."""
        return self.sums[-1] * self._phi / self.checkpoints[-1]

    _phi: int = 1

    def csv_rows(self) -> list[list[str]]:
        out = [["x", "sum_rho", "slope_estimate"]]
        for x, s in zip(self.checkpoints, self.sums):
            out.append([str(x), str(s), f"{s * self._phi / x:.12g}"])
        return out

    def to_csv(self) -> str:
        return "\n".join(",".join(row) for row in self.csv_rows()) + "\n"


def progression_root_sums(
    f: IntPolynomial,
    a: int,
    m: int,
    xmax: int,
    checkpoints: list[int] | None = None,
    sieve: SpfSieve | None = None,
    seed: int = 0,
) -> ProgressionSums:
    """Sum of root counts over n = a mod m up to xmax, with a slope estimate.

    Requires gcd(a, m) = 1; m = 1 gives the unrestricted sum.
    """
    if m < 1:
        raise InvalidArgumentError("progression modulus must be positive")
    if math.gcd(a, m) != 1:
        raise InvalidArgumentError(f"progression needs gcd(a, m) = 1; got a={a}, m={m}")
    if checkpoints is None:
        checkpoints = decades(xmax)
    checkpoints = sorted(set(int(c) for c in checkpoints))
    if not checkpoints or checkpoints[0] < 1 or checkpoints[-1] > xmax:
        raise InvalidArgumentError("checkpoints must lie in [1, xmax]")
    flt = ModulusFilter.all() if m == 1 else ModulusFilter.progression(a, m)
    sums: list[int] = []
    acc = 0
    cp_iter = iter(checkpoints)
    next_cp = next(cp_iter)
    for n, rs in root_stream(f, xmax, flt, sieve, seed):
        while next_cp is not None and n > next_cp:
            sums.append(acc)
            next_cp = next(cp_iter, None)
        if next_cp is None:
            break
        acc += len(rs.roots)
    while next_cp is not None:
        sums.append(acc)
        next_cp = next(cp_iter, None)
    phi_m = euler_phi(factorize(m, _sieve_for(m, sieve)))
    out = ProgressionSums(a % m, m, list(checkpoints), sums)
    out._phi = phi_m
    return out
