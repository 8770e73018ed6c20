"""Big-integer prime factorization: trial division backed by Pollard rho.

Group orders up to ~10^54 appear in the bundled catalog; everything here is
arbitrary precision and deterministic (fixed rho parameters, no randomness).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["PrimeFactorization", "factor_integer", "is_probable_prime"]

_TRIAL_LIMIT = 10 ** 6

# Witnesses proving primality for all n < 3.3e24; for larger n the test is
# probabilistic with a vanishing error rate, which is fine for factor output
# validation.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class PrimeFactorization:
    """``value == prod(p**a for p, a in factors)`` with strictly increasing primes."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __iter__(self):
        return iter(self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join("%d^%d" % (p, a) if a > 1 else str(p)
                          for p, a in self.factors)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with fixed witness bases (deterministic below 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of odd composite n (Brent's cycle finding).

    The polynomial offset c walks a fixed sequence 1, 2, 3, ... so the result
    is deterministic.
    """
    if n % 2 == 0:
        return 2
    for c in range(1, 1000):
        x = y = 2
        d = 1
        power = lam = 1
        while d == 1:
            if power == lam:
                y = x
                power *= 2
                lam = 0
            x = (x * x + c) % n
            lam += 1
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError("rho failed for %d" % n)  # unreachable in practice


def _split(n: int, out: list) -> None:
    if n == 1:
        return
    if is_probable_prime(n):
        out.append(n)
        return
    d = _pollard_rho(n)
    _split(d, out)
    _split(n // d, out)


def factor_integer(n: int) -> PrimeFactorization:
    """Prime power decomposition of ``n >= 1``; ``factor_integer(1)`` is empty."""
    if n < 1:
        raise ValueError("can only factor integers >= 1")
    value = n
    factors: list[tuple[int, int]] = []

    def emit(p, a):
        factors.append((p, a))

    for p in (2, 3):
        a = 0
        while n % p == 0:
            n //= p
            a += 1
        if a:
            emit(p, a)
    d = 5
    step = 2
    while d <= _TRIAL_LIMIT and d * d <= n:
        a = 0
        while n % d == 0:
            n //= d
            a += 1
        if a:
            emit(d, a)
        d += step
        step = 6 - step  # 5, 7, 11, 13, ... the 6k+-1 wheel
    if n > 1:
        if d * d > n:
            emit(n, 1)
        else:
            rest: list[int] = []
            _split(n, rest)
            rest.sort()
            p = rest[0]
            a = 0
            for q in rest:
                if q == p:
                    a += 1
                else:
                    emit(p, a)
                    p, a = q, 1
            emit(p, a)
    return PrimeFactorization(value, tuple(factors))
