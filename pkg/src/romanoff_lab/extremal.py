"""Explicit extremal sets with large average totient ratio.

Given a window (y, z] containing at least one prime, the set collects every
n <= M that is divisible by all primes in the window and coprime to all
primes <= y.  Each member then has n/phi(n) at least prod_{y<p<=z} (1-1/p)^-1,
which grows like log z / log y, so shrinking y relative to z drives the mean
ratio up: the tightness witness for the moment-sum bound's prime cutoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapacityError, ConstructionError, ParameterError
from .exact import exact_fraction_sum
from .sieve import FactorSieve, is_prime, totient_ratio


@dataclass(frozen=True)
class ExtremalSet:
    """Construction output; empty (and flagged) when Q > M."""

    M: int
    y: float
    z: float
    Q: int
    members: tuple[int, ...]
    mean_ratio: Fraction | None

    @property
    def is_empty(self) -> bool:
        return not self.members

    @property
    def count(self) -> int:
        return len(self.members)


def _window_primes(y: float, z: float) -> list[int]:
    ps = [p for p in range(2, math.floor(z) + 1) if p > y and is_prime(p)]
    if not ps:
        raise ConstructionError(f"no prime in the window ({y}, {z}]")
    return ps


def construct_extremal_set(
    M: int, y: float, z: float, sieve: FactorSieve
) -> ExtremalSet:
    """Members are exactly {n <= M : Q | n and no prime <= y divides n},
    where Q is the product of the primes in (y, z].

    Q is formed in big-integer arithmetic and compared to M before any
    enumeration; when Q > M the set is empty and flagged rather than an error.
    """
    if M < 1:
        raise ParameterError(f"M={M} must be >= 1")
    if y < 2:
        raise ParameterError(f"y={y} must be >= 2")
    if z <= y:
        raise ParameterError(f"need z > y, got y={y}, z={z}")
    window = _window_primes(y, z)
    Q = math.prod(window)
    if Q > M:
        return ExtremalSet(M=M, y=y, z=z, Q=Q, members=(), mean_ratio=None)
    if M > sieve.limit:
        raise CapacityError(f"M={M} exceeds sieve limit {sieve.limit}")
    small = [p for p in range(2, math.floor(y) + 1) if is_prime(p)]
    members = []
    for n in range(Q, M + 1, Q):
        if all(n % p for p in small):
            members.append(n)
    ratios = [totient_ratio(n, sieve) for n in members]
    mean_ratio = exact_fraction_sum(ratios) / len(members)
    return ExtremalSet(
        M=M, y=y, z=z, Q=Q, members=tuple(members), mean_ratio=mean_ratio
    )


@dataclass(frozen=True)
class AlphaSweepEntry:
    alpha: float
    y: float
    z: float
    Q: int
    count: int
    mean_ratio: float
    empirical_c: float  # mean_ratio * alpha; the window-shrinking constant


def alpha_sweep(
    M: int, alphas: list[float], sieve: FactorSieve
) -> list[AlphaSweepEntry]:
    """Run the construction at y = (ln M)^alpha, z = (ln M)/2 for each alpha.

    Requires y >= 2 and y < z for every alpha (the proof regime); the
    recorded empirical_c = mean_ratio * alpha measures the constant in
    mean_ratio >= c / alpha.
    """
    log_m = math.log(M) if M >= 1 else 0.0
    out = []
    for alpha in alphas:
        if not 0 < alpha <= 0.5:
            raise ParameterError(f"alpha={alpha} must lie in (0, 1/2]")
        y = log_m**alpha
        z = log_m / 2
        if y < 2 or y >= z:
            raise ParameterError(
                f"alpha={alpha} gives y={y:.4f}, z={z:.4f}; need 2 <= y < z"
            )
        ext = construct_extremal_set(M, y, z, sieve)
        if ext.is_empty:
            out.append(
                AlphaSweepEntry(alpha, y, z, ext.Q, 0, math.nan, math.nan)
            )
            continue
        mean = float(ext.mean_ratio)
        out.append(
            AlphaSweepEntry(alpha, y, z, ext.Q, ext.count, mean, mean * alpha)
        )
    return out
