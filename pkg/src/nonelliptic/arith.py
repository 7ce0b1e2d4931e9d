"""Exact integer and modular arithmetic primitives.

Everything here is deterministic and desk-scale: primality is decided by
trial division, factorization by trial division up to the integer square
root, and all values are exact Python integers. Inputs are guarded so that
quantities like p**3 or a_p**2 stay far away from any overflow concern.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

# Trial division is the only factoring strategy; refuse anything that could
# make it run for hours.
TRIAL_DIVISION_LIMIT = 2**64


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Deterministic primality by trial division (inputs are desk-scale)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def require_odd_prime(ell: int) -> None:
    if ell == 2 or not is_prime(ell):
        raise ValueError(f"modulus {ell} is not an odd prime")


def primes_in_range(lo: int, hi: int) -> list[int]:
    """All primes p with lo <= p <= hi, by an Eratosthenes sieve."""
    if hi < 2 or hi < lo:
        return []
    sieve = bytearray(b"\x01") * (hi + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(hi) + 1):
        if sieve[p]:
            start = p * p
            sieve[start : hi + 1 : p] = b"\x00" * ((hi - start) // p + 1)
    return [n for n in range(max(lo, 2), hi + 1) if sieve[n]]


@dataclass(frozen=True)
class Residue:
    """A canonical representative in [0, ell) of an integer mod an odd prime."""

    value: int
    modulus: int

    def __post_init__(self) -> None:
        require_odd_prime(self.modulus)
        if not 0 <= self.value < self.modulus:
            raise ValueError(
                f"residue value {self.value} outside [0, {self.modulus})"
            )

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class Factorization:
    """A complete prime factorization: n == prod(q**e for q, e in factors)."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        prod = 1
        prev = 1
        for q, e in self.factors:
            if not is_prime(q):
                raise ValueError(f"factor {q} is not prime")
            if q <= prev:
                raise ValueError("factors must be strictly increasing")
            if e < 1:
                raise ValueError(f"exponent {e} must be positive")
            prev = q
            prod *= q**e
        if prod != self.n:
            raise ValueError(f"factors reconstruct {prod}, not {self.n}")

    def exponent_of(self, q: int) -> int:
        for prime, e in self.factors:
            if prime == q:
                return e
        return 0

    def primes(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.factors)

    def __str__(self) -> str:
        return "*".join(f"{q}^{e}" if e > 1 else str(q) for q, e in self.factors)


def mod_pow(base: int, exp: int, ell: int) -> Residue:
    """base**exp reduced mod the odd prime ell.

    exp = 0 always gives 1, including base ≡ 0 (the 0**0 = 1 empty-product
    convention).
    """
    require_odd_prime(ell)
    if exp < 0:
        raise ValueError("exponent must be non-negative")
    return Residue(pow(base % ell, exp, ell), ell)


def mod_inv(a: int, ell: int) -> Residue:
    """The inverse of a mod the odd prime ell; a ≡ 0 is not invertible."""
    require_odd_prime(ell)
    a = a % ell
    if a == 0:
        raise ValueError(f"{a} not invertible mod {ell}")
    return Residue(pow(a, -1, ell), ell)


def legendre(a: int, ell: int) -> int:
    """Legendre symbol (a / ell) in {-1, 0, +1}, by Euler's criterion."""
    require_odd_prime(ell)
    a = a % ell
    if a == 0:
        return 0
    r = pow(a, (ell - 1) // 2, ell)
    return 1 if r == 1 else -1


def isqrt(n: int) -> int:
    """Floor of the square root of a non-negative integer."""
    if n < 0:
        raise ValueError("isqrt of a negative integer")
    return math.isqrt(n)


def trial_factor(n: int) -> Factorization:
    """Complete factorization of n >= 2 by trial division."""
    if n < 2:
        raise ValueError(f"cannot factor {n}: need n >= 2")
    if n > TRIAL_DIVISION_LIMIT:
        raise ValueError(f"{n} exceeds the trial-division guard 2**64")
    factors: list[tuple[int, int]] = []
    rest = n
    d = 2
    while d * d <= rest:
        if rest % d == 0:
            e = 0
            while rest % d == 0:
                rest //= d
                e += 1
            factors.append((d, e))
        d += 1 if d == 2 else 2
    if rest > 1:
        factors.append((rest, 1))
    return Factorization(n, tuple(factors))


def hasse_interval(p: int) -> set[int]:
    """All integers t with t**2 <= 4p, i.e. [-floor(2*sqrt(p)), +floor(2*sqrt(p))].

    These are the Frobenius traces allowed for an elliptic curve over F_p.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    bound = math.isqrt(4 * p)
    return set(range(-bound, bound + 1))
