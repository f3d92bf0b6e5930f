"""Dirichlet characters on (Z/p^a)^x represented by generator images.

A character is stored as the images of a fixed generating set of the unit
group: the smallest primitive root for an odd prime power, the class of -1
for modulus 4, and the pair (-1, 5) for 2^a with a >= 3.  Values are exact
roots of unity; nothing touches floating point until a caller asks for a
complex value, so the classification paths stay exact.

The global quadratic character attached to the field ramified only at an odd
prime p is kept as local data (unit part, value +1 at p, symbol rule at other
primes) rather than as a single character of composite modulus.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm

from .arith import factorize, is_prime, kronecker

DESK_MODULUS_BOUND = 2000


@dataclass(frozen=True)
class RootOfUnity:
    """exp(2*pi*i*numerator/order), stored reduced with 0 <= numerator < order."""

    numerator: int
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        if not 0 <= self.numerator < self.order:
            raise ValueError("numerator not reduced mod order")
        if gcd(self.numerator, self.order) != 1 and self.numerator != 0:
            raise ValueError("numerator/order not in lowest terms")
        if self.numerator == 0 and self.order != 1:
            raise ValueError("the trivial root is stored as 0/1")

    @staticmethod
    def make(numerator: int, order: int) -> "RootOfUnity":
        if order < 1:
            raise ValueError("order must be positive")
        numerator %= order
        g = gcd(numerator, order)
        if numerator == 0:
            return RootOfUnity(0, 1)
        return RootOfUnity(numerator // g, order // g)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        m = lcm(self.order, other.order)
        return RootOfUnity.make(
            self.numerator * (m // self.order) + other.numerator * (m // other.order), m
        )

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity.make(self.numerator * k, self.order)

    def conjugate(self) -> "RootOfUnity":
        return RootOfUnity.make(-self.numerator, self.order)

    def is_one(self) -> bool:
        return self.numerator == 0

    def __complex__(self) -> complex:
        if self.order == 1:
            return 1 + 0j
        if self.order == 2:
            return -1 + 0j
        return cmath.exp(2j * cmath.pi * self.numerator / self.order)

    def as_sign(self) -> int:
        """The value as +-1; raises if the root is not real."""
        if self.order == 1:
            return 1
        if (self.numerator, self.order) == (1, 2):
            return -1
        raise ValueError(f"{self} is not +-1")

    def __repr__(self):
        return f"RootOfUnity({self.numerator}/{self.order})"


ONE = RootOfUnity(0, 1)
MINUS_ONE = RootOfUnity(1, 2)


def _prime_power(modulus: int) -> tuple[int, int]:
    """(p, a) with modulus = p**a; modulus 1 maps to (1, 0)."""
    if modulus == 1:
        return 1, 0
    fac = factorize(modulus)
    if len(fac) != 1:
        raise ValueError(f"modulus {modulus} is not a prime power")
    [(p, a)] = fac.items()
    return p, a


@lru_cache(maxsize=None)
def _primitive_root(p: int, a: int) -> int:
    """Smallest primitive root mod p^a for odd p."""
    qs = factorize(p - 1)
    for g in range(2, p ** min(a, 2)):
        if g % p == 0:
            continue
        if any(pow(g, (p - 1) // q, p) == 1 for q in qs):
            continue
        if a == 1 or pow(g, p - 1, p * p) != 1:
            return g
    raise RuntimeError(f"no primitive root found mod {p}**{a}")


@lru_cache(maxsize=None)
def unit_group(modulus: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Generators of (Z/modulus)^x and their orders, for a prime-power modulus."""
    p, a = _prime_power(modulus)
    if modulus in (1, 2):
        return (), ()
    if p == 2:
        if modulus == 4:
            return (3,), (2,)
        return (modulus - 1, 5), (2, modulus // 4)
    return (_primitive_root(p, a),), ((p - 1) * p ** (a - 1),)


@lru_cache(maxsize=None)
def _dlog_table(modulus: int) -> dict[int, tuple[int, ...]]:
    """unit -> exponent tuple with respect to unit_group(modulus)."""
    gens, orders = unit_group(modulus)
    table: dict[int, tuple[int, ...]] = {1 % modulus: (0,) * len(gens)}
    for i, (g, s) in enumerate(zip(gens, orders)):
        new = {}
        for u, exps in table.items():
            x = u
            for t in range(1, s):
                x = x * g % modulus
                new[x] = exps[:i] + (t,) + exps[i + 1 :]
        table.update(new)
    return table


@dataclass(frozen=True)
class DirichletCharacter:
    """A character of (Z/modulus)^x given by the images of the fixed generators."""

    modulus: int
    images: tuple[RootOfUnity, ...]

    def __post_init__(self):
        gens, orders = unit_group(self.modulus)
        if len(self.images) != len(gens):
            raise ValueError("wrong number of generator images")
        for img, s in zip(self.images, orders):
            if (img**s) != ONE:
                raise ValueError(f"image {img} incompatible with generator order {s}")

    @property
    def prime(self) -> int:
        return _prime_power(self.modulus)[0]

    def order(self) -> int:
        return lcm(1, *(img.order for img in self.images))

    def is_trivial(self) -> bool:
        return all(img.is_one() for img in self.images)

    def __call__(self, n: int) -> RootOfUnity | int:
        """chi(n): a root of unity, or the integer 0 when gcd(n, modulus) > 1."""
        n %= self.modulus
        if self.modulus == 1:
            return ONE
        if gcd(n, self.modulus) > 1:
            return 0
        exps = _dlog_table(self.modulus)[n]
        value = ONE
        for img, t in zip(self.images, exps):
            value = value * img**t
        return value

    def conductor(self) -> int:
        """Smallest p^c such that the character is trivial on 1 + p^c Z."""
        if self.is_trivial():
            return 1
        p, _ = _prime_power(self.modulus)
        if p != 2:
            d = self.order()
            e = 0
            while d % p == 0:
                d //= p
                e += 1
            return p ** (e + 1)
        if self.modulus == 4:
            return 4
        img_m1, img_5 = self.images
        if not img_5.is_one():
            # order of the 5-image is 2^j; triviality on 1 + 2^c Z starts at c = j + 2
            j = img_5.order.bit_length() - 1
            return 2 ** (j + 2)
        return 4

    def inverse(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, tuple(i.conjugate() for i in self.images))

    def lift(self, modulus: int) -> "DirichletCharacter":
        """The character induced on the larger modulus (same prime)."""
        if modulus == self.modulus:
            return self
        p, _ = _prime_power(modulus)
        if self.modulus != 1 and p != self.prime:
            raise ValueError("lift requires a power of the same prime")
        if modulus % self.modulus:
            raise ValueError("can only lift to a multiple of the modulus")
        gens, _ = unit_group(modulus)
        images = []
        for g in gens:
            v = self(g)
            if v == 0:
                raise ValueError("generator not coprime to the smaller modulus")
            images.append(v)
        return DirichletCharacter(modulus, tuple(images))

    def primitive(self) -> "DirichletCharacter":
        """The primitive character of conductor dividing the modulus inducing this one."""
        c = self.conductor()
        if c == self.modulus:
            return self
        gens, _ = unit_group(c)
        # values only depend on the class mod the conductor, so evaluating the
        # conductor's generators (units mod c, hence coprime to p) is well defined
        return DirichletCharacter(c, tuple(self(g) for g in gens))

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        m = max(self.modulus, other.modulus)
        a, b = self.lift(m), other.lift(m)
        return DirichletCharacter(m, tuple(x * y for x, y in zip(a.images, b.images)))

    def value_table(self) -> tuple[int, dict[int, int]]:
        """(order, {unit -> numerator}) with chi(u) = exp(2*pi*i*numerator/order)."""
        n = self.order()
        gens, orders = unit_group(self.modulus)
        scaled = [img.numerator * (n // img.order) for img in self.images]
        table: dict[int, int] = {1 % self.modulus: 0}
        for i, (g, s) in enumerate(zip(gens, orders)):
            new = {}
            for u, num in table.items():
                x, acc = u, num
                for _ in range(1, s):
                    x = x * g % self.modulus
                    acc = (acc + scaled[i]) % n
                    new[x] = acc
            table.update(new)
        return n, table


def trivial_char(modulus: int) -> DirichletCharacter:
    gens, _ = unit_group(modulus)
    return DirichletCharacter(modulus, (ONE,) * len(gens))


def legendre_char(p: int) -> DirichletCharacter:
    """The quadratic character mod an odd prime p (conductor p, order 2)."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"legendre_char requires an odd prime, got {p}")
    return DirichletCharacter(p, (MINUS_ONE,))


def two_char(tag: int) -> DirichletCharacter:
    """The quadratic character cutting the field of sqrt(tag), tag in {-1, 2, -2}.

    Conductor 4 for tag -1 and 8 for tags +-2; values on odd integers agree
    with the Kronecker symbol (tag|n).
    """
    if tag == -1:
        return DirichletCharacter(4, (MINUS_ONE,))
    if tag == 2:
        return DirichletCharacter(8, (ONE, MINUS_ONE))
    if tag == -2:
        return DirichletCharacter(8, (MINUS_ONE, MINUS_ONE))
    raise ValueError(f"tag must be one of -1, 2, -2, got {tag}")


def character_by_index(p: int, a: int, t: int) -> DirichletCharacter:
    """The character mod p^a (p odd) sending the fixed generator to e(t/phi)."""
    phi = (p - 1) * p ** (a - 1)
    return DirichletCharacter(p**a, (RootOfUnity.make(t, phi),))


def enumerate_chars(p: int, a: int) -> list[DirichletCharacter]:
    """All phi(p^a) characters mod p^a for odd p, each exactly once."""
    if p == 2 or not is_prime(p):
        raise ValueError("enumerate_chars requires an odd prime")
    if a < 1 or p**a > DESK_MODULUS_BOUND:
        raise ValueError(f"modulus {p}**{a} outside desk-scale bound {DESK_MODULUS_BOUND}")
    phi = (p - 1) * p ** (a - 1)
    return [character_by_index(p, a, t) for t in range(phi)]


def primitive_chars(p: int, a: int) -> list[DirichletCharacter]:
    """The characters mod p^a whose conductor is exactly p^a."""
    return [chi for chi in enumerate_chars(p, a) if chi.conductor() == p**a]


@dataclass(frozen=True)
class GlobalQuadCharacter:
    """The quadratic character of the field ramified only at an odd prime p.

    Stored as local data: the unit part is the quadratic character mod p, the
    value at p itself is fixed to +1, and at any other prime q the value is
    the symbol (q|p).
    """

    p: int

    def __post_init__(self):
        if self.p == 2 or not is_prime(self.p):
            raise ValueError("the ramified prime must be odd")

    @property
    def unit_part(self) -> DirichletCharacter:
        return legendre_char(self.p)

    def at_prime(self, q: int) -> int:
        if not is_prime(q):
            raise ValueError(f"{q} is not prime")
        if q == self.p:
            return 1
        return kronecker(q, self.p)

    def value(self, n: int) -> int:
        """Value at a positive integer, multiplicatively over its factorization."""
        if n < 1:
            raise ValueError("value is defined for positive integers")
        result = 1
        for q, e in factorize(n).items():
            result *= self.at_prime(q) ** e
        return result


def global_quad_char(p: int) -> GlobalQuadCharacter:
    return GlobalQuadCharacter(p)
