"""Both sides of the moment-sum inequalities T1 (congruence-count bound),
T3 (polynomial values), and T4 (linear-system discriminants), plus the three
totient-product lemmas they rest on.

The bounds involve constants that are not effective, so every report returns
the *implied constant*: the measured value C making lhs = C^s * rhs_core tight
on the given input.  Sums of totient-ratio powers are kept as exact rationals
until the report boundary.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import NamedTuple, Sequence

import numpy as np

from .errors import CapacityError, DomainError, ParameterError
from .exact import exact_fraction_sum
from .sieve import FactorSieve, PrimeList, is_prime, totient, totient_ratio


@dataclass(frozen=True)
class MomentReport:
    """One measured inequality instance.

    lhs is the moment sum, rhs_core the bracketed comparison quantity, and
    implied_constant the measured C with lhs ~ C^s * rhs_core (reports whose
    bound is not of power form store the plain ratio; see each builder).
    """

    lhs: float
    rhs_core: float
    implied_constant: float
    parameters: dict = field(default_factory=dict)


@dataclass(frozen=True)
class PolynomialSpec:
    """Integer polynomial a_k n^k + ... + a_0, stored ascending (a_0 first)."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ParameterError("polynomial needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if self.coeffs[-1] == 0:
            raise ParameterError("leading coefficient must be nonzero")

    @classmethod
    def from_descending(cls, coeffs: Sequence[int]) -> "PolynomialSpec":
        return cls(tuple(reversed([int(c) for c in coeffs])))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def content(self) -> int:
        return reduce(math.gcd, (abs(c) for c in self.coeffs))

    def evaluate(self, n: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc


def omega_count(values: Sequence[int], d: int) -> int:
    """omega(d) = number of list entries divisible by d."""
    if len(values) == 0:
        raise DomainError("omega_count needs a nonempty list")
    if d < 1:
        raise DomainError(f"modulus d={d} must be >= 1")
    if isinstance(values, np.ndarray):
        return int(np.count_nonzero(values % d == 0))
    return sum(1 for v in values if v % d == 0)


def _ratio_power(n: int, s: int, sieve: FactorSieve, cache: dict) -> Fraction:
    f = cache.get(n)
    if f is None:
        f = totient_ratio(n, sieve)
        cache[n] = f
    return Fraction(f.numerator**s, f.denominator**s)


def moment_sum(values: Sequence[int], s: int, sieve: FactorSieve) -> Fraction:
    """Exact value of sum (a_n / phi(a_n))^s over the list; always >= len."""
    if s < 1:
        raise ParameterError(f"s={s} must be >= 1")
    cache: dict[int, Fraction] = {}
    return exact_fraction_sum(
        _ratio_power(int(v), s, sieve, cache) for v in values
    )


def _small_primes_upto(y: float) -> list[int]:
    if y < 2:
        return []
    return [p for p in range(2, math.floor(y) + 1) if is_prime(p)]


def theorem1_report(
    values: Sequence[int],
    s: int,
    alpha: float,
    M: float,
    sieve: FactorSieve,
) -> MomentReport:
    """Moment sum vs. its congruence-count bound (T1).

    rhs_core = N + sum_{p <= (ln M)^alpha} omega(p) (ln p)^s / p; the implied
    constant is (lhs / rhs_core)^(1/s).
    """
    if not 0 < alpha < 1:
        raise ParameterError(f"alpha={alpha} must lie in (0, 1)")
    if s < 1:
        raise ParameterError(f"s={s} must be >= 1")
    if len(values) == 0:
        raise DomainError("theorem1_report needs a nonempty list")
    arr = np.asarray(values, dtype=np.int64)
    if M < int(arr.max()):
        raise ParameterError(f"M={M} must be >= max of the list")
    n_terms = len(arr)
    lhs = float(moment_sum(arr, s, sieve))
    cutoff = math.log(M) ** alpha if M > 1 else 0.0
    prime_part = math.fsum(
        omega_count(arr, p) * math.log(p) ** s / p for p in _small_primes_upto(cutoff)
    )
    rhs_core = n_terms + prime_part
    implied = (lhs / rhs_core) ** (1.0 / s)
    return MomentReport(
        lhs=lhs,
        rhs_core=rhs_core,
        implied_constant=implied,
        parameters={
            "s": s,
            "alpha": alpha,
            "M": M,
            "N": n_terms,
            "prime_cutoff": cutoff,
        },
    )


def lemma1_product(n: int, y: float, sieve: FactorSieve) -> tuple[float, float]:
    """prod_{p|n, p>y} (1 + 1/p) together with its bound exp(nu(n)/y)."""
    if n <= 1:
        raise ParameterError(f"n={n} must exceed 1")
    if y <= 0:
        raise ParameterError(f"y={y} must be positive")
    primes = sieve.distinct_primes(n)
    product = float(
        math.prod(Fraction(p + 1, p) for p in primes if p > y)
    )
    bound = math.exp(len(primes) / y)
    return (product, bound)


def lemma2_check(n: int, sieve: FactorSieve) -> float:
    """prod_{p|n, p>ln n} (1 + 1/p); classically bounded by e^(1/ln 2) < 5."""
    sieve.check_range(n)
    if n == 1:
        return 1.0
    log_n = math.log(n)
    return float(
        math.prod(
            Fraction(p + 1, p) for p in sieve.distinct_primes(n) if p > log_n
        )
    )


def lemma2_product_table(limit: int, primes: PrimeList) -> np.ndarray:
    """Vectorized lemma2_check for every n <= limit (entry 0 is unused 1.0).

    Sweeps primes instead of n: p contributes (1 + 1/p) to each multiple
    m with p > ln m, i.e. to all multiples below e^p.
    """
    primes.check_range(limit)
    table = np.ones(limit + 1, dtype=np.float64)
    log_limit = math.log(limit) if limit > 1 else 0.0
    for p in primes.upto(limit):
        p = int(p)
        w = 1.0 + 1.0 / p
        if p > log_limit:
            table[p::p] *= w
        else:
            hi = min(limit, math.ceil(math.exp(p)) - 1)
            if hi >= p:
                table[p : hi + 1 : p] *= w
    return table


class Lemma3Report(NamedTuple):
    ratio: float
    product: float
    implied_constant: float


def lemma3_report(n: int, alpha: float, sieve: FactorSieve) -> Lemma3Report:
    """n/phi(n) against prod_{p|n, p <= (ln n)^alpha} (1 + 1/p)."""
    if not 0 < alpha < 1:
        raise ParameterError(f"alpha={alpha} must lie in (0, 1)")
    sieve.check_range(n)
    ratio = float(totient_ratio(n, sieve))
    if n == 1:
        return Lemma3Report(1.0, 1.0, 1.0)
    cutoff = math.log(n) ** alpha
    product = float(
        math.prod(
            Fraction(p + 1, p) for p in sieve.distinct_primes(n) if p <= cutoff
        )
    )
    return Lemma3Report(ratio, product, ratio / product)


def poly_moment_report(
    poly: PolynomialSpec, z: float, s: int, sieve: FactorSieve
) -> MomentReport:
    """Moment sum of |R(n)|/phi(|R(n)|) over -z <= n <= z, R(n) != 0 (T3).

    rhs_core = (delta/phi(delta) * ln(k+1))^s * s! * z with delta the content
    and k the degree; the implied constant strips those factors from the lhs.
    """
    if z < 1:
        raise ParameterError(f"z={z} must be >= 1")
    if s < 1:
        raise ParameterError(f"s={s} must be >= 1")
    if poly.degree < 1:
        raise ParameterError("degree must be >= 1")
    half = math.floor(z)
    values = []
    for n in range(-half, half + 1):
        r = poly.evaluate(n)
        if r == 0:
            continue
        r = abs(r)
        if r > sieve.limit:
            raise CapacityError(
                f"|R({n})| = {r} exceeds sieve limit {sieve.limit}"
            )
        values.append(r)
    lhs = float(moment_sum(values, s, sieve)) if values else 0.0
    delta = poly.content
    delta_ratio = float(totient_ratio(delta, sieve))
    log_k1 = math.log(poly.degree + 1)
    rhs_core = (delta_ratio * log_k1) ** s * math.factorial(s) * z
    implied = (lhs / (math.factorial(s) * z)) ** (1.0 / s) / (delta_ratio * log_k1)
    return MomentReport(
        lhs=lhs,
        rhs_core=rhs_core,
        implied_constant=implied,
        parameters={
            "coeffs_descending": list(reversed(poly.coeffs)),
            "degree": poly.degree,
            "content": delta,
            "z": z,
            "s": s,
            "terms": len(values),
        },
    )


def delta_L(a: int, b: int, bs: Sequence[int]) -> int:
    """Discriminant a^(k+1) * prod |b_i - b| of L(n) = an + b against the
    family {an + b_i}; zero exactly when b collides with some b_i."""
    if a < 1:
        raise ParameterError(f"a={a} must be >= 1")
    k = len(bs)
    return a ** (k + 1) * math.prod(abs(bi - b) for bi in bs)


def delta_moment_report(
    a: int,
    bs: Sequence[int],
    z: float,
    s: int,
    x: float,
    sieve: FactorSieve,
    *,
    epsilon: float = 0.5,
) -> MomentReport:
    """Moment sum of Delta_L/phi(Delta_L) over b in [-z, z], L not in the
    family (T4); rhs_core = (a/phi(a) * ln(k+1))^s * s! * z.

    The window (ln x)^epsilon <= z <= x is advisory: runs outside it warn
    but proceed, so exploratory parameter scans stay possible.
    """
    if a < 1:
        raise ParameterError(f"a={a} must be >= 1")
    if s < 1:
        raise ParameterError(f"s={s} must be >= 1")
    if len(bs) == 0:
        raise ParameterError("the linear family must be nonempty")
    if any(abs(b) > x for b in bs):
        raise ParameterError(f"all |b_i| must be <= x={x}")
    if x >= 3 and not (math.log(x) ** epsilon <= z <= x):
        warnings.warn(
            f"z={z} outside the window [(ln x)^{epsilon}, x]; "
            "the measured constant is exploratory",
            stacklevel=2,
        )
    excluded = set(int(b) for b in bs)
    half = math.floor(z)
    values = []
    for b in range(-half, half + 1):
        if b in excluded:
            continue
        d = delta_L(a, b, bs)
        if d > sieve.limit:
            raise CapacityError(
                f"Delta_L = {d} at b={b} exceeds sieve limit {sieve.limit}"
            )
        values.append(d)
    k = len(bs)
    lhs = float(moment_sum(values, s, sieve)) if values else 0.0
    a_ratio = float(totient_ratio(a, sieve))
    log_k1 = math.log(k + 1)
    rhs_core = (a_ratio * log_k1) ** s * math.factorial(s) * z
    implied = (lhs / (math.factorial(s) * z)) ** (1.0 / s) / (a_ratio * log_k1)
    return MomentReport(
        lhs=lhs,
        rhs_core=rhs_core,
        implied_constant=implied,
        parameters={
            "a": a,
            "shifts": [int(b) for b in bs],
            "k": k,
            "z": z,
            "s": s,
            "x": x,
            "terms": len(values),
        },
    )
