"""Representation counts r(n) = #{(p, j) : p + a_j = n}, their second
moments and density statistics, and the empirical-constant reports for the
Romanoff-type density bounds, together with the supporting statistics:
shifted-prime counts, multiplicative orders, order-weighted prime sums, and
polynomial root counts modulo m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import CapacityError, DomainError, ParameterError, RangeError
from .moments import PolynomialSpec
from .sieve import FactorSieve, PrimeList, factorize_trial, is_prime
from .sequences import (
    PowerTower,
    SequenceSpec,
    congruence_pair_sum,
    count_terms,
    doubling_ratio,
    enumerate_terms,
    format_sequence_spec,
    max_multiplicity,
)

DEFAULT_PAIR_BUDGET = 10**9

# order_distribution factors a^n - 1; beyond this exponent the numbers are
# out of honest trial-division reach
DEFAULT_EXPONENT_CAP = 40

ROOT_COUNT_MODULUS_CAP = 10**7


@dataclass(frozen=True)
class RepresentationProfile:
    """r(n) for 1 <= n <= x, as an int64 array with r[0] unused."""

    spec: SequenceSpec
    x: int
    r: np.ndarray

    def total(self) -> int:
        return int(self.r[1:].sum())

    def write_csv(self, stream) -> None:
        stream.write("n,r\n")
        for n in range(1, self.x + 1):
            stream.write(f"{n},{int(self.r[n])}\n")


@dataclass(frozen=True)
class ConstantEstimate:
    """A measured empirical constant with the inequality side it witnesses."""

    name: str
    value: float
    parameters: dict = field(default_factory=dict)
    direction: str = ""


def representation_counts(
    spec: SequenceSpec,
    x: int,
    primes: PrimeList,
    *,
    budget: int = DEFAULT_PAIR_BUDGET,
) -> RepresentationProfile:
    """Exact r(n) for all n <= x by iterating terms a_j <= x - 2 and
    incrementing r at p + a_j for every prime p <= x - a_j."""
    if x < 1:
        raise ParameterError(f"x={x} must be >= 1")
    primes.check_range(x)
    terms = enumerate_terms(spec, x - 2, primes) if x >= 3 else []
    pi_x = primes.count_leq(x) if x >= 2 else 0
    if len(terms) * pi_x > budget:
        raise CapacityError(
            f"{len(terms)} terms x {pi_x} primes exceeds budget {budget}"
        )
    r = np.zeros(x + 1, dtype=np.int64)
    values = primes.values
    for a in terms:
        cut = int(np.searchsorted(values, x - a, side="right"))
        r[values[:cut] + a] += 1
    return RepresentationProfile(spec=spec, x=x, r=r)


def second_moment(profile: RepresentationProfile) -> int:
    """sum of r(n)^2 over n <= x."""
    r = profile.r[1:]
    return int(np.dot(r, r))


def density_count(profile: RepresentationProfile, threshold: float) -> int:
    """#{n <= x : r(n) >= threshold}; nonincreasing in the threshold."""
    return int(np.count_nonzero(profile.r[1:] >= threshold))


def cauchy_schwarz_holds(profile: RepresentationProfile) -> bool:
    """(sum r)^2 <= #support * sum r^2, exactly in integers."""
    total = profile.total()
    support = density_count(profile, 1)
    return total * total <= support * second_moment(profile)


DEFAULT_C1_GRID = tuple(0.5**k for k in range(11))


def theorem6_report(
    spec: SequenceSpec,
    x: int,
    alpha: float,
    primes: PrimeList,
    *,
    budget: int = DEFAULT_PAIR_BUDGET,
    c1_grid: tuple[float, ...] = DEFAULT_C1_GRID,
) -> list[ConstantEstimate]:
    """Empirical constants of the Romanoff-type density machinery (T6).

    Emits gamma_1 (halving ratio), gamma_2 (normalized congruence pair sum),
    the normalized second moment of r, and the (c_1, c_2) frontier: for each
    candidate c_1, the fraction of n <= x with r(n) >= c_1 N_A(x)/ln x.
    """
    n_total = count_terms(spec, x, primes)
    if n_total == 0:
        raise DomainError(f"sequence has no terms <= {x}")
    spec_text = format_sequence_spec(spec)
    base_params = {"sequence": spec_text, "x": x, "N_A": n_total}
    log_x = math.log(x)

    gamma1 = doubling_ratio(spec, x, primes)
    raw_pairs, gamma2 = congruence_pair_sum(spec, x, alpha, primes)
    profile = representation_counts(spec, x, primes, budget=budget)
    rho = max_multiplicity(spec, x, primes)
    sq = second_moment(profile)
    sq_norm = (
        sq * log_x**2 / (x * n_total * (rho * log_x + n_total))
    )

    out = [
        ConstantEstimate(
            name="gamma1",
            value=gamma1,
            parameters=dict(base_params, half_count=count_terms(spec, x / 2, primes)),
            direction="N_A(x/2) >= gamma1 * N_A(x)",
        ),
        ConstantEstimate(
            name="gamma2",
            value=gamma2,
            parameters=dict(base_params, alpha=alpha, raw=raw_pairs),
            direction="pair_sum <= gamma2 * N_A(x)^2",
        ),
        ConstantEstimate(
            name="second_moment_constant",
            value=sq_norm,
            parameters=dict(base_params, second_moment=sq, rho_A=rho),
            direction=(
                "sum r^2 <= C * x/(ln x)^2 * N_A * (rho_A ln x + N_A)"
            ),
        ),
    ]
    for c1 in c1_grid:
        threshold = c1 * n_total / log_x
        count = density_count(profile, threshold)
        out.append(
            ConstantEstimate(
                name="c2_at_c1",
                value=count / x,
                parameters=dict(
                    base_params, c1=c1, threshold=threshold, count=count
                ),
                direction="#{n <= x : r(n) >= c1 N_A/ln x} >= c2 * x",
            )
        )
    return out


class ShiftedPrimeCount(NamedTuple):
    count: int
    normalized: float


def schnirelmann_pi2(x: float, a: int, primes: PrimeList) -> ShiftedPrimeCount:
    """pi_2(x, a) = #{p <= x : p + a prime}, with the classical normalization
    count * (ln x)^2 * phi(a) / (x * a)."""
    if a < 1:
        raise ParameterError(f"shift a={a} must be >= 1")
    if x < 2:
        raise ParameterError(f"x={x} must be >= 2")
    if x + a > primes.limit:
        raise RangeError(
            f"x + a = {x + a:g} exceeds prime table limit {primes.limit}"
        )
    ps = primes.upto(x)
    shifted = ps + a
    idx = np.searchsorted(primes.values, shifted)
    idx[idx >= len(primes.values)] = len(primes.values) - 1
    count = int(np.count_nonzero(primes.values[idx] == shifted))
    phi_a = 1
    for p, e in factorize_trial(a):
        phi_a *= (p - 1) * p ** (e - 1)
    normalized = count * math.log(x) ** 2 * phi_a / (x * a)
    return ShiftedPrimeCount(count, normalized)


def multiplicative_order(a: int, p: int, sieve: FactorSieve | None = None) -> int:
    """Least h >= 1 with a^h = 1 (mod p); divides p - 1.

    Computed by factoring p - 1 (through the sieve when it covers p - 1)
    and descending through the prime divisors.
    """
    if a < 2:
        raise ParameterError(f"a={a} must be >= 2")
    if not is_prime(p):
        raise DomainError(f"p={p} is not prime")
    if a % p == 0:
        raise DomainError(f"gcd(a, p) != 1 for a={a}, p={p}")
    if sieve is not None and p - 1 <= sieve.limit and p > 2:
        factors = sieve.factorize(p - 1)
    else:
        factors = factorize_trial(p - 1) if p > 2 else []
    h = p - 1
    for q, _ in factors:
        while h % q == 0 and pow(a, h // q, p) == 1:
            h //= q
    return h


def order_weighted_sum(
    a: int,
    b: int,
    P: float,
    primes: PrimeList,
    sieve: FactorSieve | None = None,
) -> float:
    """Partial sum over p <= P, p coprime to a, of ln(p) / (p * h_a(p)^(1/b));
    nondecreasing in P and convergent, the key sum behind the tower bounds."""
    if a < 2 or b < 2:
        raise ParameterError("need a >= 2 and b >= 2")
    primes.check_range(P)
    parts = []
    for p in primes.upto(P):
        p = int(p)
        if a % p == 0:
            continue
        h = multiplicative_order(a, p, sieve)
        parts.append(math.log(p) / (p * h ** (1.0 / b)))
    return math.fsum(parts)


@dataclass(frozen=True)
class OrderDistributionEntry:
    n: int
    d_n: float  # sum of ln(p)/p over primes with h_a(p) = n
    exact: bool  # False when a^n - 1 kept an unfactored cofactor


@dataclass(frozen=True)
class OrderDistribution:
    a: int
    z: int
    trial_cap: int
    entries: tuple[OrderDistributionEntry, ...]

    @property
    def total(self) -> float:
        """D(z) = sum of d_n; a certified lower bound unless all_exact."""
        return math.fsum(e.d_n for e in self.entries)

    @property
    def normalized(self) -> float:
        return self.total / math.log(self.z + 1)

    @property
    def all_exact(self) -> bool:
        return all(e.exact for e in self.entries)


def _order_is_exactly(a: int, p: int, n: int) -> bool:
    """h_a(p) == n, given that p divides a^n - 1 (so h | n)."""
    return all(pow(a, n // q, p) != 1 for q, _ in factorize_trial(n))


def order_distribution(
    a: int,
    z: int,
    trial_cap: int,
    *,
    exponent_cap: int = DEFAULT_EXPONENT_CAP,
) -> OrderDistribution:
    """d_n = sum of ln(p)/p over primes p with h_a(p) = n, for n <= z.

    Primes are found by trial-dividing a^n - 1 up to trial_cap and filtering
    by exact order.  If a cofactor survives the trial division and cannot be
    certified prime, that n is flagged and its d_n is a certified lower
    bound; nothing is silently approximated.
    """
    if a < 2:
        raise ParameterError(f"a={a} must be >= 2")
    if z < 1:
        raise ParameterError(f"z={z} must be >= 1")
    if z > exponent_cap:
        raise CapacityError(f"z={z} exceeds the exponent cap {exponent_cap}")
    if trial_cap < 2:
        raise ParameterError(f"trial_cap={trial_cap} must be >= 2")
    entries = []
    for n in range(1, z + 1):
        m = a**n - 1
        found: list[int] = []
        exact = True
        for d in range(2, trial_cap + 1):
            if d * d > m:
                break
            if m % d == 0:
                found.append(d)
                while m % d == 0:
                    m //= d
        if m > 1:
            if m <= trial_cap * trial_cap or is_prime(m):
                # composite cofactors below cap^2 are impossible, and larger
                # ones certified by the deterministic primality test
                found.append(m)
            else:
                exact = False
        d_n = math.fsum(
            math.log(p) / p for p in found if _order_is_exactly(a, p, n)
        )
        entries.append(OrderDistributionEntry(n=n, d_n=d_n, exact=exact))
    return OrderDistribution(a=a, z=z, trial_cap=trial_cap, entries=tuple(entries))


def root_count(f: PolynomialSpec, m: int) -> int:
    """Number of x in [0, m) with f(x) = 0 (mod m), by exhaustive scan.

    Requires gcd(content(f), m) = 1, the primitivity hypothesis of the
    root-count bound rho <= c n m^(1-1/n).
    """
    if m < 1:
        raise ParameterError(f"m={m} must be >= 1")
    if m > ROOT_COUNT_MODULUS_CAP:
        raise CapacityError(f"m={m} exceeds the scan cap {ROOT_COUNT_MODULUS_CAP}")
    if math.gcd(f.content, m) != 1:
        raise DomainError(
            f"content {f.content} shares a factor with the modulus {m}"
        )
    if m == 1:
        return 1  # the empty congruence has the single root x = 0
    xs = np.arange(m, dtype=np.int64)
    acc = np.zeros(m, dtype=np.int64)
    for c in reversed(f.coeffs):
        acc = (acc * xs + c % m) % m  # c reduced first: keeps int64 safe
    return int(np.count_nonzero(acc == 0))


def konyagin_ratio(f: PolynomialSpec, m: int) -> float:
    """root_count normalized by n * m^(1-1/n), n the degree (>= 1)."""
    if f.degree < 1:
        raise ParameterError("degree must be >= 1 for the normalized ratio")
    return root_count(f, m) / (f.degree * m ** (1.0 - 1.0 / f.degree))


def theorem9_report(
    a: int,
    b: int,
    x: int,
    primes: PrimeList,
    *,
    budget: int = DEFAULT_PAIR_BUDGET,
) -> list[ConstantEstimate]:
    """Density of n <= x representable as p + a^(j^b), against both sides of
    the two-sided bound ~ x / (ln x)^(1-1/b) (T9)."""
    if a < 2 or b < 2:
        raise ParameterError("need a >= 2 and b >= 2")
    if x < 3:
        raise ParameterError(f"x={x} must be >= 3")
    spec = PowerTower(a, b)
    profile = representation_counts(spec, x, primes, budget=budget)
    representable = density_count(profile, 1)
    n_total = count_terms(spec, x, primes)
    pi_x = primes.count_leq(x)
    scale = math.log(x) ** (1.0 - 1.0 / b) / x
    params = {
        "a": a,
        "b": b,
        "x": x,
        "N_A": n_total,
        "pi_x": pi_x,
        "representable": representable,
    }
    return [
        ConstantEstimate(
            name="c1_empirical",
            value=representable * scale,
            parameters=dict(params),
            direction="#representable >= c1 * x / (ln x)^(1-1/b)",
        ),
        ConstantEstimate(
            name="c2_upper_comparison",
            value=pi_x * n_total * scale,
            parameters=dict(params),
            direction="#representable <= c2 * x / (ln x)^(1-1/b)",
        ),
    ]
