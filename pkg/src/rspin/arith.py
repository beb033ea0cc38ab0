"""Divisor arithmetic and the closed-form counts attached to r-spin moduli.

Everything here is exact integer arithmetic on desk-scale inputs; prime
factorisation is plain trial division.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Sequence


@dataclass(frozen=True)
class LevelParams:
    """Genus ``g``, root index ``r`` and number of marked points ``n``."""

    g: int
    r: int
    n: int = 0

    def __post_init__(self):
        if self.g < 0 or self.n < 0:
            raise ValueError(f"g and n must be non-negative, got g={self.g}, n={self.n}")
        if self.r < 1:
            raise ValueError(f"r must be positive, got r={self.r}")
        if 2 * self.g - 2 + self.n <= 0:
            raise ValueError(f"unstable type: 2g-2+n = {2 * self.g - 2 + self.n} <= 0")

    @classmethod
    def of(cls, g: int, r: int, m: Sequence[int]) -> "LevelParams":
        return cls(g=g, r=r, n=len(m))


def _check_twists(params: LevelParams, m: Sequence[int]) -> None:
    if len(m) != params.n:
        raise ValueError(f"twist vector has length {len(m)}, expected n={params.n}")


def gcd_all(*values: int) -> int:
    out = 0
    for v in values:
        out = gcd(out, v)
    return out


def prime_factors(n: int) -> list[int]:
    """Distinct primes dividing ``n`` (``n >= 1``), ascending."""
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    primes = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            primes.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        primes.append(n)
    return primes


def divisors(n: int) -> list[int]:
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    large = [n // d for d in reversed(small) if d * d != n]
    return small + large


def ell(params: LevelParams, m: Sequence[int]) -> int:
    """The controlling gcd: 1 in genus 0, gcd(r, m) in genus 1, gcd(2, r, m) above."""
    _check_twists(params, m)
    if params.g == 0:
        return 1
    if params.g == 1:
        return gcd_all(params.r, *m)
    return gcd_all(2, params.r, *m)


def component_count(params: LevelParams, m: Sequence[int]) -> int:
    """Number of irreducible components: the divisor count of :func:`ell`."""
    return len(divisors(ell(params, m)))


def exact_order_count(r: int, d: int) -> int:
    """Number of (a, b) in (Z/r)^2 with gcd(r, a, b) = d.

    Equivalently the points of exact order r/d, i.e. the Jordan totient
    J_2(r/d) = (r/d)^2 prod_{p | r/d} (1 - 1/p^2).
    """
    if d < 1 or r % d:
        raise ValueError(f"d={d} does not divide r={r}")
    n = r // d
    count = n * n
    for p in prime_factors(n):
        count = count // (p * p) * (p * p - 1)
    return count


def parity_counts(g: int, r: int) -> tuple[int, int]:
    """(even, odd) counts r^{2g}(1/2 +- 2^{-(g+1)}) for even ``r`` and ``g >= 1``."""
    if r % 2:
        raise ValueError(f"parity counts need even r, got r={r}")
    if g < 1:
        raise ValueError(f"parity counts need g >= 1, got g={g}")
    total = r ** (2 * g)
    half = total // 2
    shift = total // 2 ** (g + 1)
    return half + shift, half - shift


def exists_spin(params: LevelParams, m: Sequence[int]) -> bool:
    """True iff r divides 2g - 2 - sum(m), the degree obstruction."""
    _check_twists(params, m)
    return (2 * params.g - 2 - sum(m)) % params.r == 0


def normalize_twists(r: int, m: Sequence[int]) -> list[int]:
    return [x % r for x in m]


def translation_coefficients(params: LevelParams, m: Sequence[int]) -> tuple[frozenset[int], int]:
    """Residues (2*g1 - sum_{k in S} m_k) mod r over 0 <= g1 < g and subsets S.

    These are the bounding-pair translation multipliers. Returns the set and
    its gcd with r.
    """
    _check_twists(params, m)
    if params.g < 1:
        raise ValueError("translation coefficients need g >= 1")
    r = params.r
    coeffs = set()
    for g1 in range(params.g):
        for size in range(len(m) + 1):
            for subset in combinations(range(len(m)), size):
                coeffs.add((2 * g1 - sum(m[k] for k in subset)) % r)
    return frozenset(coeffs), gcd_all(r, *coeffs)
