"""Integer utilities: deterministic primality, factorization, divisors.

Everything here is exact integer arithmetic; no floating point anywhere.
Primality is a deterministic Miller-Rabin with the 12-base set proven
complete for all n < 2^64 (in fact for n < 3.3 * 10^24), so batch runs never
depend on probabilistic answers.  Factorization is trial division for small
targets with a Pollard-rho (Brent variant) escalation above 2^32.
"""

from __future__ import annotations

from math import gcd, isqrt

# Complete for every n < 3_317_044_064_679_887_385_961_981 (> 2^64).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_RHO_CUTOFF = 1 << 32

# Primes below 2^16, enough for trial division of any n < 2^32.
def _small_primes(limit: int = 1 << 16) -> list[int]:
    sieve = bytearray([1]) * limit
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, limit, p)))
    return [i for i in range(limit) if sieve[i]]


_PRIMES = _small_primes()


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n below 2^64 and beyond."""
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


def _rho_factor(n: int) -> int:
    """One nontrivial factor of composite odd n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"rho failed to factor {n}")  # pragma: no cover


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    factors: dict[int, int] = {}
    for p in _PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    if n > 1:
        stack = [n]
        while stack:
            m = stack.pop()
            if m < _RHO_CUTOFF or is_prime(m):
                factors[m] = factors.get(m, 0) + 1
            else:
                d = _rho_factor(m)
                stack.append(d)
                stack.append(m // d)
    return factors


def divisors_ascending(n: int) -> list[int]:
    """All positive divisors of n in ascending order.

    Uses a direct root-bounded scan for small n (cheap and cache-friendly),
    falling back to factorization for large targets.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n < _RHO_CUTOFF:
        small = []
        large = []
        for d in range(1, isqrt(n) + 1):
            if n % d == 0:
                small.append(d)
                if d * d != n:
                    large.append(n // d)
        small.extend(reversed(large))
        return small
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    divs.sort()
    return divs
