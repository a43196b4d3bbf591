"""p-adic scales, the standard additive character, valuations, Hensel lifting."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInputError, UnsupportedPrimeError
from .exact import PhaseFraction

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 2**64."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class ScaleSpec:
    """Scale N = p**K for a prime p."""

    p: int
    K: int

    def __post_init__(self):
        if self.p >= 2**64 or not is_prime(self.p):
            raise InvalidInputError(f"p={self.p} is not a (supported) prime")
        if self.K < 1:
            raise InvalidInputError("K must be a positive integer")

    @property
    def N(self) -> int:
        return self.p**self.K


def valuation(q: Fraction | int, p: int) -> int | float:
    """The p-adic valuation of q; math.inf for q = 0."""
    if not is_prime(p):
        raise InvalidInputError(f"p={p} is not prime")
    q = Fraction(q)
    if q == 0:
        return math.inf
    v = 0
    num = q.numerator
    while num % p == 0:
        num //= p
        v += 1
    den = q.denominator
    while den % p == 0:
        den //= p
        v -= 1
    return v


def chi_p(q: Fraction | int, p: int) -> PhaseFraction:
    """The standard p-adic additive character on p-power-denominator rationals.

    On such rationals the character agrees with e(q), so the value is just
    the exact fractional part of q.
    """
    if not is_prime(p):
        raise InvalidInputError(f"p={p} is not prime")
    q = Fraction(q)
    den = q.denominator
    while den % p == 0:
        den //= p
    if den != 1:
        raise InvalidInputError(
            f"denominator {q.denominator} is not a power of p={p}"
        )
    return PhaseFraction(q)


@dataclass(frozen=True)
class HenselRoot:
    """A square root of -1 modulo p**K, p = 1 mod 4."""

    p: int
    K: int
    xi: int

    def __post_init__(self):
        if self.p % 4 != 1:
            raise UnsupportedPrimeError(f"p={self.p} is not 1 mod 4")
        if not (0 <= self.xi < self.p**self.K):
            raise InvalidInputError("xi out of range for p**K")
        if (self.xi * self.xi + 1) % self.p**self.K != 0:
            raise InvalidInputError("xi*xi + 1 is not divisible by p**K")

    @property
    def modulus(self) -> int:
        return self.p**self.K

    def digits(self) -> list[int]:
        """Base-p digits b_0..b_{K-1} of xi."""
        out = []
        x = self.xi
        for _ in range(self.K):
            x, b = divmod(x, self.p)
            out.append(b)
        return out


def hensel_sqrt_minus_one(p: int, K: int) -> HenselRoot:
    """Lift the smaller square root of -1 mod p to a root mod p**K.

    Newton steps x <- x - (x^2+1) * (2x)^{-1} double the working modulus, so
    only O(log K) modular inversions are needed; 2x is a unit since p is odd.
    """
    if not is_prime(p):
        raise InvalidInputError(f"p={p} is not prime")
    if p % 4 != 1:
        raise UnsupportedPrimeError(f"p={p} is not 1 mod 4; -1 has no square root")
    if K < 1:
        raise InvalidInputError("K must be a positive integer")
    base = None
    for x in range(2, p - 1):
        if (x * x + 1) % p == 0:
            base = x  # the search runs upward, so this is the smaller root
            break
    if base is None:
        raise UnsupportedPrimeError(f"no square root of -1 mod {p}")
    x = base
    prec = 1
    while prec < K:
        prec = min(2 * prec, K)
        mod = p**prec
        inv = pow(2 * x % mod, -1, mod)
        x = (x - (x * x + 1) * inv) % mod
    return HenselRoot(p=p, K=K, xi=x % p**K)
