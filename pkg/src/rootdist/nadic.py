"""Base-n digit towers for polynomial roots, digit statistics, and the
Haar-measure Monte Carlo for the mean-square of digit Weyl sums.

A root v of f mod n with gcd(n, eta*disc) = 1 has a unit derivative, so one
linear Hensel update per level appends exactly one new base-n digit.  All
tower arithmetic is exact big-integer work; phases are reduced mod 1 in
integer arithmetic and only then converted to float (64 fractional bits).
"""

from __future__ import annotations

import cmath
import math
import random
import warnings
from dataclasses import dataclass

from .errors import AdmissibilityError, InvalidArgumentError
from .ideals import admissibility
from .intpoly import IntPolynomial, poly_eval_mod
from .modarith import SpfSieve, inverse
from .roots import roots_mod_n

_TWO_PI = 2.0 * math.pi

# Guard for the n^m-entry word table.
_MAX_WORD_TABLE = 2 * 10**6

# Word counts thinner than this multiple of the table size are flagged.
_SPARSE_FACTOR = 100


def _frac_phase(num: int, den: int) -> complex:
    """exp(2*pi*i*num/den) for arbitrarily large den, via a 64-bit shift."""
    t = num % den
    frac = ((t << 64) // den) * 2.0**-64
    return cmath.exp(complex(0.0, _TWO_PI * frac))


@dataclass(frozen=True)
class NadicExpansion:
    """Digits (a_0, ..., a_{L-1}) of a root of f in the base-n limit ring.

    The depth-l prefix value a_0 + a_1*n + ... + a_{l-1}*n^(l-1) is a root of
    f mod n^l for every l up to the depth.
    """

    poly: IntPolynomial
    base: int
    digits: tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.digits)

    @property
    def seed_root(self) -> int:
        return self.digits[0]

    def prefix_value(self, level: int) -> int:
        """The integer built from the first ``level`` digits."""
        if not 1 <= level <= self.depth:
            raise InvalidArgumentError(
                f"level must lie in [1, {self.depth}]; got {level}"
            )
        acc = 0
        for a in reversed(self.digits[:level]):
            acc = acc * self.base + a
        return acc

    def digit_line(self) -> str:
        return " ".join(str(a) for a in self.digits)


def nadic_expansions(
    f: IntPolynomial, base: int, depth: int, sieve: SpfSieve | None = None
) -> list[NadicExpansion]:
    """All base-n expansions of a root of f, one per root of f mod n.

    Requires gcd(base, eta*disc) = 1: under that gate every root mod n lifts
    uniquely level by level, so the expansion count equals the root count.
    Bases touching eta*disc are rejected with the admissibility report
    rather than guessed at.
    """
    if base < 2:
        raise InvalidArgumentError("base must be at least 2")
    if depth < 1:
        raise InvalidArgumentError("depth must be at least 1")
    report = admissibility(f, base, sieve)
    if not report.admissible:
        raise AdmissibilityError(report)
    out = []
    for seed in roots_mod_n(f, base, sieve).roots:
        u = inverse(f.deriv_mod(seed, base), base)
        digits = [seed]
        v = seed
        pw = base
        for _ in range(depth - 1):
            pw_next = pw * base
            v_next = (v - poly_eval_mod(f, v, pw_next) * u) % pw_next
            digits.append((v_next - v) // pw)
            v, pw = v_next, pw_next
        out.append(NadicExpansion(f, base, tuple(digits)))
    return out


@dataclass(frozen=True)
class NormalityReport:
    """Sliding-window word frequencies of a digit sequence.

    counts holds every one of the base^m words (zeros included); deviations
    are measured against the uniform weight base^(-m).  For overlapping
    windows (m >= 2) the chi-square column is a descriptive statistic, not
    an exact multinomial test.
    """

    base: int
    word_length: int
    window_count: int
    counts: tuple[tuple[tuple[int, ...], int], ...]
    max_deviation: float
    chi_square: float
    sparse: bool

    def frequencies(self) -> dict[tuple[int, ...], float]:
        return {w: c / self.window_count for w, c in self.counts}

    def to_jsonable(self, top: int | None = None) -> dict:
        """Plain-dict form; word tables longer than ``top`` keep only the
        largest deviations."""
        uniform = self.base**-self.word_length
        entries = [
            {
                "word": ",".join(str(d) for d in w),
                "count": c,
                "freq": c / self.window_count,
                "deviation": abs(c / self.window_count - uniform),
            }
            for w, c in self.counts
        ]
        truncated = False
        if top is not None and len(entries) > top:
            entries.sort(key=lambda e: (-e["deviation"], e["word"]))
            entries = entries[:top]
            truncated = True
        return {
            "base": self.base,
            "word_length": self.word_length,
            "window_count": self.window_count,
            "max_deviation": self.max_deviation,
            "chi_square": self.chi_square,
            "sparse": self.sparse,
            "truncated": truncated,
            "words": entries,
        }


def word_frequencies(digits, base: int, word_length: int) -> NormalityReport:
    """Count every length-m window of a digit sequence against uniformity."""
    digits = tuple(int(d) for d in digits)
    if base < 2:
        raise InvalidArgumentError("base must be at least 2")
    if word_length < 1:
        raise InvalidArgumentError("word length must be at least 1")
    if len(digits) < word_length:
        raise InvalidArgumentError("sequence shorter than the word length")
    if any(not 0 <= d < base for d in digits):
        raise InvalidArgumentError("digit out of range for the base")
    table_size = base**word_length
    if table_size > _MAX_WORD_TABLE:
        raise InvalidArgumentError(
            f"word table would hold {table_size} entries; cap is {_MAX_WORD_TABLE}"
        )
    windows = len(digits) - word_length + 1
    counts: dict[int, int] = {}
    # Encode each window as an integer in a rolling fashion.
    code = 0
    for d in digits[:word_length]:
        code = code * base + d
    counts[code] = 1
    msd = base ** (word_length - 1)
    for i in range(1, windows):
        code = (code - digits[i - 1] * msd) * base + digits[i + word_length - 1]
        counts[code] = counts.get(code, 0) + 1
    uniform = 1.0 / table_size
    expected = windows / table_size
    max_dev = 0.0
    chi = 0.0
    table = []
    for code in range(table_size):
        c = counts.get(code, 0)
        word = []
        x = code
        for _ in range(word_length):
            x, d = divmod(x, base)
            word.append(d)
        table.append((tuple(reversed(word)), c))
        max_dev = max(max_dev, abs(c / windows - uniform))
        chi += (c - expected) ** 2 / expected
    sparse = len(digits) < table_size * _SPARSE_FACTOR
    return NormalityReport(
        base=base,
        word_length=word_length,
        window_count=windows,
        counts=tuple(table),
        max_deviation=max_dev,
        chi_square=chi,
        sparse=sparse,
    )


def prefix_weyl_sum(exp: NadicExpansion, h: int, levels: int) -> complex:
    """(1/levels) * sum over l = 0..levels of exp(2*pi*i*h*prefix_l/n^l).

    The l = 0 term is exp(0) = 1 (an empty prefix over the unit modulus);
    the normalizer stays ``levels``, so the value carries an O(1/levels)
    offset relative to the same sum without that constant term.
    """
    if h == 0:
        raise InvalidArgumentError("frequency h must be nonzero")
    if not 1 <= levels <= exp.depth:
        raise InvalidArgumentError(f"levels must lie in [1, {exp.depth}]")
    total = complex(1.0, 0.0)  # l = 0 term
    prefix = 0
    pw = 1
    for l in range(1, levels + 1):
        prefix += exp.digits[l - 1] * pw
        pw *= exp.base
        total += _frac_phase(h * prefix, pw)
    return total / levels


def haar_monte_carlo(
    base: int, levels: int, samples: int, seed: int = 0, h: int = 1
) -> tuple[float, float]:
    """Monte-Carlo mean of |S|^2 for uniformly random digit strings.

    S averages exp(2*pi*i*h*prefix_l/n^l) over levels l = 1..levels; with
    independent uniform digits the cross terms vanish and the exact mean is
    1/levels (the indexing starts at level 1, where that identity is exact;
    the trajectory sum for concrete expansions keeps its l = 0 term and is
    documented separately).  Returns (sample mean, standard error).  Each
    sample derives its own PRNG stream from (seed, index), so the result is
    independent of evaluation order.
    """
    if base < 2:
        raise InvalidArgumentError("base must be at least 2")
    if levels < 1:
        raise InvalidArgumentError("levels must be at least 1")
    if samples < 1:
        raise InvalidArgumentError("need at least one sample")
    if h == 0:
        raise InvalidArgumentError("frequency h must be nonzero")
    total = 0.0
    total_sq = 0.0
    for i in range(samples):
        rng = random.Random(f"{seed}:{i}")
        prefix = 0
        pw = 1
        acc = complex(0.0, 0.0)
        for _ in range(levels):
            prefix += rng.randrange(base) * pw
            pw *= base
            acc += _frac_phase(h * prefix, pw)
        val = abs(acc / levels) ** 2
        total += val
        total_sq += val * val
    mean = total / samples
    if samples == 1:
        return mean, 0.0
    var = max(total_sq - samples * mean * mean, 0.0) / (samples - 1)
    return mean, math.sqrt(var / samples)


@dataclass(frozen=True)
class ExpansionEvidence:
    """Digit statistics and Weyl-sum magnitudes for one expansion.

    Whether these digit strings are normal is an open question; this type
    reports evidence only and never attaches a verdict.
    """

    seed_root: int
    reports: tuple[NormalityReport, ...]
    weyl_trajectory: tuple[tuple[int, float], ...]


def normality_evidence(
    f: IntPolynomial,
    base: int,
    depth: int,
    max_word_length: int,
    sieve: SpfSieve | None = None,
) -> list[ExpansionEvidence]:
    """Word-frequency tables and Weyl magnitudes for every expansion.

    Word counts need roughly 100 * base^m digits to be meaningful; shallower
    towers are processed anyway but flagged sparse and warned about.
    """
    if max_word_length < 1:
        raise InvalidArgumentError("max word length must be at least 1")
    if depth < base**max_word_length * _SPARSE_FACTOR:
        warnings.warn(
            f"depth {depth} is below {_SPARSE_FACTOR} * base^{max_word_length}; "
            "word counts will be sparse",
            UserWarning,
            stacklevel=2,
        )
    out = []
    for exp in nadic_expansions(f, base, depth, sieve):
        reports = tuple(
            word_frequencies(exp.digits, base, m) for m in range(1, max_word_length + 1)
        )
        traj_levels = sorted({max(1, depth // 4), max(1, depth // 2), depth})
        traj = tuple((n_lvl, abs(prefix_weyl_sum(exp, 1, n_lvl))) for n_lvl in traj_levels)
        out.append(ExpansionEvidence(exp.seed_root, reports, traj))
    return out
