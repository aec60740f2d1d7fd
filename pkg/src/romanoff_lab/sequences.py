"""Declarative sequence families A = {a_j} and their counting statistics
N_A(x), ord_A(n), rho_A(x), plus the two hypothesis quantities every
Romanoff-type run needs: the halving ratio N_A(x/2)/N_A(x) and the
congruence pair sum over small primes.

Each family has a canonical textual form used by the CLI:

    geom:2:start=0       powers 2^j, j >= start (start is 0 or 1)
    tower:2:3            2^(j^3), j >= 0
    poly:1,0,0           polynomial values R(j) > 0, coefficients a_k..a_0
    ecorders:1,1         #E(F_q) for the curve y^2 = x^3 + x + 1, q ascending
    explicit:1,2,2       a literal multiset, or explicit:@file (one per line)
"""

from __future__ import annotations

import math
from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass
from typing import Union

from .elliptic import EllipticCurve, count_points
from .errors import CapacityError, DomainError, ParameterError, RangeError
from .moments import PolynomialSpec
from .sieve import PrimeList

# generation guard: no family may expand to more terms than this
MAX_GENERATED_TERMS = 10**8


@dataclass(frozen=True)
class Geometric:
    base: int
    start_exponent: int = 0

    def __post_init__(self):
        if self.base < 2:
            raise ParameterError(f"geometric base must be >= 2, got {self.base}")
        if self.start_exponent not in (0, 1):
            raise ParameterError("start_exponent must be 0 or 1")


@dataclass(frozen=True)
class PowerTower:
    """Terms base^(j^power), j >= 0."""

    base: int
    power: int

    def __post_init__(self):
        if self.base < 2 or self.power < 2:
            raise ParameterError("power tower needs base >= 2 and power >= 2")


@dataclass(frozen=True)
class Polynomial:
    """Positive values R(j) over j >= 1 (non-positive values are skipped)."""

    poly: PolynomialSpec


@dataclass(frozen=True)
class EllipticOrders:
    curve: EllipticCurve


@dataclass(frozen=True)
class Explicit:
    values: tuple[int, ...]

    def __post_init__(self):
        if any(v < 1 for v in self.values):
            raise ParameterError("explicit sequences must be positive integers")


SequenceSpec = Union[Geometric, PowerTower, Polynomial, EllipticOrders, Explicit]


def parse_sequence_spec(text: str) -> SequenceSpec:
    """Parse the canonical textual form; inverse of format_sequence_spec."""
    kind, _, rest = text.partition(":")
    try:
        if kind == "geom":
            parts = rest.split(":")
            base = int(parts[0])
            start = 0
            if len(parts) > 1:
                key, _, value = parts[1].partition("=")
                if key != "start":
                    raise ParameterError(f"unknown geometric option {parts[1]!r}")
                start = int(value)
            return Geometric(base, start)
        if kind == "tower":
            base_text, power_text = rest.split(":")
            return PowerTower(int(base_text), int(power_text))
        if kind == "poly":
            coeffs = [int(c) for c in rest.split(",")]
            return Polynomial(PolynomialSpec.from_descending(coeffs))
        if kind == "ecorders":
            a_text, b_text = rest.split(",")
            return EllipticOrders(EllipticCurve(int(a_text), int(b_text)))
        if kind == "explicit":
            if rest.startswith("@"):
                with open(rest[1:], "r", encoding="utf-8") as fh:
                    values = tuple(
                        int(line) for line in fh if line.strip()
                    )
            else:
                values = tuple(int(v) for v in rest.split(",")) if rest else ()
            return Explicit(values)
    except (ValueError, IndexError) as exc:
        raise ParameterError(f"malformed sequence spec {text!r}: {exc}") from exc
    raise ParameterError(f"unknown sequence kind {kind!r}")


def format_sequence_spec(spec: SequenceSpec) -> str:
    if isinstance(spec, Geometric):
        return f"geom:{spec.base}:start={spec.start_exponent}"
    if isinstance(spec, PowerTower):
        return f"tower:{spec.base}:{spec.power}"
    if isinstance(spec, Polynomial):
        coeffs = ",".join(str(c) for c in reversed(spec.poly.coeffs))
        return f"poly:{coeffs}"
    if isinstance(spec, EllipticOrders):
        return f"ecorders:{spec.curve.A},{spec.curve.B}"
    if isinstance(spec, Explicit):
        return "explicit:" + ",".join(str(v) for v in spec.values)
    raise ParameterError(f"not a sequence spec: {spec!r}")


def _polynomial_terms(poly: PolynomialSpec, x: float) -> list[int]:
    k = poly.degree
    if k == 0:
        value = poly.coeffs[0]
        if 0 < value <= x:
            raise CapacityError(
                "constant polynomial has unbounded multiplicity below x"
            )
        return []
    lead = abs(poly.coeffs[-1])
    tail_max = max((abs(c) for c in poly.coeffs[:-1]), default=0)
    out = []
    j = 0
    while True:
        j += 1
        if len(out) > MAX_GENERATED_TERMS:
            raise CapacityError("polynomial term generation exceeded the guard")
        value = poly.evaluate(j)
        if 0 < value <= x:
            out.append(value)
        # |R(j)| >= j^(k-1) (lead*j - tail_max*k) eventually dominates x
        dominated = j ** (k - 1) * (lead * j - tail_max * k)
        if dominated > x:
            break
    return out


def _elliptic_order_terms(
    curve: EllipticCurve, x: float, primes: PrimeList | None
) -> list[int]:
    if primes is None:
        raise RangeError("EllipticOrders enumeration needs a prime table")
    # #E(F_q) <= x forces (sqrt(q)-1)^2 < x, i.e. q <= x + 2 sqrt(x) + 1
    q_bound = x + 2 * math.sqrt(x) + 1
    if q_bound > primes.limit:
        raise RangeError(
            f"prime table limit {primes.limit} below the needed bound {q_bound:g}"
        )
    out = []
    for q in primes.upto(q_bound):
        order = count_points(curve, int(q))
        if order <= x:
            out.append(order)
    return out


def enumerate_terms(
    spec: SequenceSpec, x: float, primes: PrimeList | None = None
) -> list[int]:
    """All terms a_j <= x, with multiplicity, in ascending order."""
    if x < 1:
        raise ParameterError(f"x={x} must be >= 1")
    if isinstance(spec, Geometric):
        out = []
        value = spec.base**spec.start_exponent
        while value <= x:
            out.append(value)
            value *= spec.base
        return out
    if isinstance(spec, PowerTower):
        out = []
        exponent_bound = math.log(x) / math.log(spec.base) + 2  # float guard
        j = 0
        while True:
            exponent = j**spec.power
            if exponent > exponent_bound:
                break
            value = spec.base**exponent
            if value > x:
                break
            out.append(value)
            j += 1
        return out
    if isinstance(spec, Polynomial):
        return sorted(_polynomial_terms(spec.poly, x))
    if isinstance(spec, EllipticOrders):
        return sorted(_elliptic_order_terms(spec.curve, x, primes))
    if isinstance(spec, Explicit):
        if len(spec.values) > MAX_GENERATED_TERMS:
            raise CapacityError("explicit sequence exceeds the term guard")
        return sorted(v for v in spec.values if v <= x)
    raise ParameterError(f"not a sequence spec: {spec!r}")


def count_terms(
    spec: SequenceSpec, x: float, primes: PrimeList | None = None
) -> int:
    """N_A(x) = #{j : a_j <= x}, with multiplicity."""
    return len(enumerate_terms(spec, x, primes))


def term_multiplicity(
    spec: SequenceSpec, n: int, primes: PrimeList | None = None
) -> int:
    """ord_A(n) = #{j : a_j = n}."""
    if n < 1:
        raise ParameterError(f"n={n} must be >= 1")
    return sum(1 for v in enumerate_terms(spec, n, primes) if v == n)


def max_multiplicity(
    spec: SequenceSpec, x: float, primes: PrimeList | None = None
) -> int:
    """rho_A(x) = max over n <= x of ord_A(n); 0 for an empty range."""
    counts = Counter(enumerate_terms(spec, x, primes))
    return max(counts.values(), default=0)


def doubling_ratio(
    spec: SequenceSpec, x: float, primes: PrimeList | None = None
) -> float:
    """N_A(x/2) / N_A(x): the empirical halving constant gamma_1."""
    total = count_terms(spec, x, primes)
    if total == 0:
        raise DomainError(f"sequence has no terms <= {x}")
    half = count_terms(spec, x / 2, primes) if x / 2 >= 1 else 0
    return half / total


def congruence_pair_sum(
    spec: SequenceSpec,
    x: float,
    alpha: float,
    primes: PrimeList,
) -> tuple[float, float]:
    """Weighted count of congruent pairs a_k < a_j <= x modulo small primes.

    raw = sum over terms a_k < x, primes p <= (ln x)^alpha of
    #{j : a_k < a_j <= x, a_j = a_k (mod p)} * ln(p)/p, bucketing terms by
    residue per prime; normalized = raw / N_A(x)^2, the empirical gamma_2.
    """
    if alpha <= 0:
        raise ParameterError(f"alpha={alpha} must be positive")
    if x <= 1:
        raise ParameterError(f"x={x} must exceed 1")
    cutoff = math.log(x) ** alpha
    if cutoff > primes.limit:
        raise RangeError(
            f"prime cutoff {cutoff:g} exceeds prime table limit {primes.limit}"
        )
    terms = enumerate_terms(spec, x, primes)
    total = len(terms)
    if total == 0:
        raise DomainError(f"sequence has no terms <= {x}")
    raw_parts = []
    for p in primes.upto(cutoff):
        p = int(p)
        buckets: dict[int, list[int]] = {}
        for v in terms:
            buckets.setdefault(v % p, []).append(v)
        pair_count = 0
        for values in buckets.values():
            # values are ascending; for each k with a_k < x count the strictly
            # larger terms in the same residue class
            m = len(values)
            for i, v in enumerate(values):
                if v >= x:
                    break
                pair_count += m - bisect_right(values, v, i)
        raw_parts.append(pair_count * math.log(p) / p)
    raw = math.fsum(raw_parts)
    return (raw, raw / total**2)
