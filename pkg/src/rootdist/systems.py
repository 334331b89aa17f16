"""Simultaneous congruences for several polynomials with pairwise coprime
discriminants: root tuples, joint exponential sums, and r-dimensional
equidistribution trends.

The tuple set mod n is the Cartesian product of the per-polynomial root
sets, so joint exponential sums factor into one-dimensional sums and no
tuple enumeration is needed to evaluate them; tuples are materialized only
for listings and the discrepancy cloud.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .equidist import (
    HSpec,
    KahanSum,
    box_discrepancy_from_hist,
    root_exp_sum,
    decades,
)
from .errors import InvalidArgumentError
from .intpoly import IntPolynomial
from .modarith import Factorization, SpfSieve, cached_sieve, factorize, inverse
from .roots import ModulusFilter, RootSet, roots_from_factorization, roots_mod_n

_DEFAULT_GRIDS = {1: 64, 2: 64, 3: 16}
_MAX_DIMENSION = 3


@dataclass(frozen=True)
class PolySystem:
    """Polynomials whose discriminants are pairwise coprime.

    eta is the lcm of the per-polynomial constants; the discriminant product
    drives joint admissibility exactly as the single discriminant does in
    the one-polynomial case.
    """

    polys: tuple[IntPolynomial, ...]

    def __post_init__(self):
        if not self.polys:
            raise InvalidArgumentError("a system needs at least one polynomial")
        discs = [p.discriminant for p in self.polys]
        for i in range(len(discs)):
            for j in range(i + 1, len(discs)):
                g = math.gcd(discs[i], discs[j])
                if g != 1:
                    raise InvalidArgumentError(
                        f"discriminants of polynomials {i} and {j} share gcd {g}; "
                        "the system requires pairwise coprime discriminants"
                    )

    @property
    def dimension(self) -> int:
        return len(self.polys)

    @property
    def discriminants(self) -> tuple[int, ...]:
        return tuple(p.discriminant for p in self.polys)

    @property
    def eta(self) -> int:
        return math.lcm(*(p.eta for p in self.polys))

    @property
    def disc_product(self) -> int:
        out = 1
        for d in self.discriminants:
            out *= d
        return out


def validate_system(polys) -> PolySystem:
    """Build a PolySystem, diagnosing the first offending pair on failure."""
    return PolySystem(tuple(polys))


@dataclass(frozen=True)
class TupleRootSet:
    """All simultaneous root tuples mod one modulus, in lexicographic order."""

    modulus: int
    tuples: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.tuples)

    def __iter__(self):
        return iter(self.tuples)


def root_tuples(system: PolySystem, n: int, sieve: SpfSieve | None = None) -> TupleRootSet:
    """Cartesian product of the per-polynomial root sets mod n."""
    per_poly = [roots_mod_n(f, n, sieve).roots for f in system.polys]
    return TupleRootSet(n, tuple(itertools.product(*per_poly)))


def joint_exp_sum(
    system: PolySystem,
    hvec: tuple[int, ...],
    n: int,
    sieve: SpfSieve | None = None,
    rootsets: list[tuple[int, ...]] | None = None,
) -> complex:
    """Sum of exp(2*pi*i*(h . v)/n) over all root tuples v.

    Because the tuple set is a product set and the phase splits into per
    coordinate factors, this equals the product of the one-dimensional sums.
    """
    if len(hvec) != system.dimension:
        raise InvalidArgumentError("frequency vector length must match the system")
    if rootsets is None:
        rootsets = [roots_mod_n(f, n, sieve).roots for f in system.polys]
    out = complex(1.0, 0.0)
    for f, h, roots in zip(system.polys, hvec, rootsets):
        out *= root_exp_sum(f, h, n, roots)
        if out == 0:
            return out
    return out


def joint_exp_sum_factored(
    system: PolySystem,
    hvec: tuple[int, ...],
    n1: int,
    n2: int,
    sieve: SpfSieve | None = None,
) -> complex:
    """Coprime-split product form of the joint exponential sum."""
    if math.gcd(n1, n2) != 1:
        raise InvalidArgumentError(f"{n1} and {n2} are not coprime")
    nbar2 = inverse(n2 % n1, n1) if n1 > 1 else 0
    nbar1 = inverse(n1 % n2, n2) if n2 > 1 else 0
    left = joint_exp_sum(system, tuple(h * nbar2 for h in hvec), n1, sieve)
    right = joint_exp_sum(system, tuple(h * nbar1 for h in hvec), n2, sieve)
    return left * right


def default_hset(r: int) -> list[tuple[int, ...]]:
    """The nonzero frequency vectors with entries in {-1, 0, 1}."""
    return [h for h in itertools.product((-1, 0, 1), repeat=r) if any(h)]


@dataclass
class JointWeylSeries:
    """Checkpointed joint Weyl sums plus the tuple-cloud box discrepancy."""

    hset: list[tuple[int, ...]]
    checkpoints: list[int]
    grid: int
    dimension: int
    filter_desc: str
    normalizer: list[int] = field(default_factory=list)
    signed: dict[tuple[int, ...], list[complex]] = field(default_factory=dict)
    abs_sum: dict[tuple[int, ...], list[float]] = field(default_factory=dict)
    box_disc: list[float] = field(default_factory=list)

    def weyl_statistic(self, h: tuple[int, ...]) -> list[float]:
        return [
            abs(z) / norm if norm > 0 else math.nan
            for z, norm in zip(self.signed[h], self.normalizer)
        ]

    def csv_rows(self) -> list[list[str]]:
        def tag(h):
            return "_".join(str(c) for c in h)

        head = ["x", "normalizer"]
        for h in self.hset:
            t = tag(h)
            head += [f"signed_re_{t}", f"signed_im_{t}", f"abs_{t}", f"W_{t}"]
        head.append("box_discrepancy")
        rows = [head]
        stats = {h: self.weyl_statistic(h) for h in self.hset}
        for k, x in enumerate(self.checkpoints):
            row = [str(x), str(self.normalizer[k])]
            for h in self.hset:
                z = self.signed[h][k]
                row += [
                    f"{z.real:.12g}",
                    f"{z.imag:.12g}",
                    f"{self.abs_sum[h][k]:.12g}",
                    f"{stats[h][k]:.12g}",
                ]
            row.append(f"{self.box_disc[k]:.12g}")
            rows.append(row)
        return rows

    def to_csv(self) -> str:
        return "\n".join(",".join(row) for row in self.csv_rows()) + "\n"


def joint_weyl_series(
    system: PolySystem,
    xmax: int,
    hset: list[tuple[int, ...]] | None = None,
    checkpoints: list[int] | None = None,
    grid: int | None = None,
    flt: ModulusFilter | None = None,
    sieve: SpfSieve | None = None,
    seed: int = 0,
    cloud_sink=None,
) -> JointWeylSeries:
    """Stream n ascending, accumulating joint Weyl sums and the box
    discrepancy of the growing tuple cloud {(v_1/n, ..., v_r/n)}.

    ``cloud_sink``, when given, receives one (n, tuple) call per root tuple
    in stream order (used by the CLI to dump the cloud as CSV).
    """
    r = system.dimension
    if r > _MAX_DIMENSION:
        raise InvalidArgumentError(f"dimension {r} exceeds the supported cap {_MAX_DIMENSION}")
    if hset is None:
        hset = default_hset(r)
    hset = [tuple(int(c) for c in h) for h in hset]
    for h in hset:
        if len(h) != r:
            raise InvalidArgumentError("frequency vector length must match the system")
        if not any(h):
            raise InvalidArgumentError("the zero frequency vector is not allowed in hset")
    if grid is None:
        grid = _DEFAULT_GRIDS[r]
    if grid < 2:
        raise InvalidArgumentError("grid resolution must be at least 2")
    if xmax < 1:
        raise InvalidArgumentError("xmax must be at least 1")
    if checkpoints is None:
        checkpoints = decades(xmax)
    checkpoints = sorted(set(int(c) for c in checkpoints))
    if checkpoints[0] < 1 or checkpoints[-1] > xmax:
        raise InvalidArgumentError("checkpoints must lie in [1, xmax]")
    if flt is None:
        flt = ModulusFilter.all()
    if sieve is None or sieve.limit < xmax:
        limit = 10**5
        while limit < xmax:
            limit *= 10
        sieve = cached_sieve(limit)

    series = JointWeylSeries(
        hset=hset,
        checkpoints=list(checkpoints),
        grid=grid,
        dimension=r,
        filter_desc=flt.describe(),
    )
    for h in hset:
        series.signed[h] = []
        series.abs_sum[h] = []
    re_acc = {h: KahanSum() for h in hset}
    im_acc = {h: KahanSum() for h in hset}
    abs_acc = {h: KahanSum() for h in hset}
    norm_acc = 0
    hist = np.zeros((grid,) * r, dtype=np.int64)
    cloud_count = 0
    spf = sieve.as_list()
    cp_iter = iter(checkpoints)
    next_cp = next(cp_iter)

    def snapshot():
        series.normalizer.append(norm_acc)
        for h in hset:
            series.signed[h].append(complex(re_acc[h].value, im_acc[h].value))
            series.abs_sum[h].append(abs_acc[h].value)
        series.box_disc.append(
            box_discrepancy_from_hist(hist, cloud_count) if cloud_count else 1.0
        )

    for n in range(1, xmax + 1):
        while next_cp is not None and n > next_cp:
            snapshot()
            next_cp = next(cp_iter, None)
        if next_cp is None:
            break
        if n == 1:
            fact = Factorization(1, ())
        else:
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
            fact = Factorization(n, tuple(parts))
        if not flt.accepts(n, fact):
            continue
        per_poly = [roots_from_factorization(f, fact, seed) for f in system.polys]
        count = 1
        for roots in per_poly:
            count *= len(roots)
        if count == 0:
            continue
        norm_acc += count
        for h in hset:
            term = joint_exp_sum(system, h, n, rootsets=per_poly)
            re_acc[h].add(term.real)
            im_acc[h].add(term.imag)
            abs_acc[h].add(abs(term))
        cloud_count += count
        for tup in itertools.product(*per_poly):
            idx = tuple((v * grid) // n for v in tup)
            hist[idx] += 1
            if cloud_sink is not None:
                cloud_sink(n, tup)
    while next_cp is not None:
        snapshot()
        next_cp = next(cp_iter, None)
    return series
