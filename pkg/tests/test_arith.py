"""Symbol and valuation tests, checked against brute-force residue arithmetic."""

import pytest

from localtype.arith import is_prime, kronecker, odd_primes_up_to, p_star, valuation


def squares_mod(n):
    return {x * x % n for x in range(1, n)}


def legendre_bruteforce(a, p):
    """Exhaustive residue check; the independent route for odd primes."""
    a %= p
    if a == 0:
        return 0
    return 1 if a in squares_mod(p) else -1


def test_kronecker_examples():
    assert kronecker(1, 7) == 1
    assert kronecker(14, 31) == 1
    # -1 is a non-residue mod 31 by exhaustive squares
    assert legendre_bruteforce(-1, 31) == -1
    assert kronecker(-1, 31) == -1


def test_kronecker_rejects_zero_bottom():
    with pytest.raises(ValueError):
        kronecker(3, 0)


def test_kronecker_edge_conventions():
    assert kronecker(0, 1) == 1
    assert kronecker(0, -1) == 1
    assert kronecker(0, 5) == 0
    assert kronecker(-7, 1) == 1
    assert kronecker(5, -1) == 1
    assert kronecker(-5, -1) == -1
    # (a|2) by a mod 8
    assert [kronecker(a, 2) for a in (1, 3, 5, 7)] == [1, -1, -1, 1]
    assert kronecker(4, 2) == 0


def test_kronecker_matches_legendre_on_odd_primes():
    for p in odd_primes_up_to(100):
        for a in range(p):
            assert kronecker(a, p) == legendre_bruteforce(a, p), (a, p)


def test_kronecker_euler_criterion():
    for p in odd_primes_up_to(100):
        for a in range(p):
            e = pow(a, (p - 1) // 2, p)
            expected = 0 if e == 0 else (1 if e == 1 else -1)
            assert kronecker(a, p) == expected


def test_kronecker_multiplicative_in_top_exhaustive():
    for n in range(1, 201, 2):
        row = [kronecker(a, n) for a in range(n)]
        for a in range(n):
            for b in range(n):
                assert row[a * b % n] == row[a] * row[b], (a, b, n)


def test_kronecker_multiplicative_in_bottom():
    for a in range(-20, 21):
        for n in range(1, 60, 2):
            for m in range(1, 60, 2):
                assert kronecker(a, n * m) == kronecker(a, n) * kronecker(a, m), (a, n, m)


def test_quadratic_reciprocity():
    ps = odd_primes_up_to(100)
    for p in ps:
        for q in ps:
            if p == q:
                continue
            lhs = kronecker(p, q) * kronecker(q, p)
            rhs = (-1) ** ((p - 1) * (q - 1) // 4)
            assert lhs == rhs, (p, q)


def test_valuation_examples():
    assert valuation(1, 5) == 0
    assert valuation(768, 2) == 8
    assert valuation(3840, 2) == 8


def test_valuation_matches_repeated_division():
    for n in list(range(1, 500)) + [-360, -1024]:
        for p in (2, 3, 5, 7):
            m, e = abs(n), 0
            while m % p == 0:
                m //= p
                e += 1
            assert valuation(n, p) == e


def test_valuation_errors():
    with pytest.raises(ValueError):
        valuation(0, 5)
    with pytest.raises(ValueError):
        valuation(10, 6)


def test_p_star_examples():
    assert p_star(5) == 5
    assert p_star(31) == -31
    assert legendre_bruteforce(-1, 3) == -1
    assert p_star(3) == -3


def test_p_star_is_one_mod_four():
    for p in odd_primes_up_to(1000):
        assert p_star(p) % 4 == 1


def test_p_star_rejects_two_and_composites():
    with pytest.raises(ValueError):
        p_star(2)
    with pytest.raises(ValueError):
        p_star(15)


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29}
    for n in range(31):
        assert is_prime(n) == (n in primes)
