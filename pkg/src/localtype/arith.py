"""Exact integer arithmetic: Kronecker symbols, valuations, ramified discriminants.

Everything here is exact; no floating point enters this module.
"""

from __future__ import annotations


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (desk scale)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_up_to(bound: int) -> list[int]:
    """All primes <= bound, ascending (simple sieve)."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(bound**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(2, bound + 1) if sieve[i]]


def odd_primes_up_to(bound: int) -> list[int]:
    return [p for p in primes_up_to(bound) if p > 2]


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 by trial division."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n) for n != 0.

    Fully multiplicative in both arguments, equal to the Legendre symbol
    when n is an odd prime, and extended to even and negative n by the
    standard conventions (a|2) in {0, +-1} by a mod 8 and (a|-1) = sign(a).
    """
    if n == 0:
        raise ValueError("Kronecker symbol (a|0) is undefined")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if a % 2 == 0:
            return 0
        if twos % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol for the remaining odd n via reciprocity.
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def valuation(n: int, p: int) -> int:
    """Largest e with p**e dividing n; n must be nonzero, p prime."""
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    if not is_prime(p):
        raise ValueError(f"valuation requires a prime, got {p}")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def p_star(p: int) -> int:
    """(-1|p) * p, the discriminant of the quadratic field ramified only at p.

    Always congruent to 1 mod 4.  Defined for odd primes only.
    """
    if p == 2 or not is_prime(p):
        raise ValueError(f"p_star requires an odd prime, got {p}")
    return kronecker(-1, p) * p
