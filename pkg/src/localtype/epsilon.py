"""Finite exponential sums verifying the sign-variation identities.

The twist ratios that drive the classifier are checked here on explicit
finite models: Gauss sums over (Z/p^a)^x for the principal-series case, sums
over F_{p^2}^x for the supercuspidal case with unramified inducing extension,
and a norm-image enumeration over truncated pi-adic units (pi^2 = p*delta)
for the ramified one.  Sums have at most a few hundred terms, so double
precision is far below the 1e-6 relative / 1e-9 absolute tolerances used by
callers; only twist *ratios* carry content, and EpsilonSum keeps the power of
p separate so those comparisons are scale free.
"""

from __future__ import annotations

import cmath
from array import array
from dataclasses import dataclass
from math import gcd, log
from functools import lru_cache

from . import kernels
from .arith import factorize, is_prime, kronecker
from .characters import DESK_MODULUS_BOUND, DirichletCharacter, legendre_char

SIGN_TOLERANCE = 1e-6


@dataclass(frozen=True)
class EpsilonSum:
    """A computed sum with its power of the prime factored out.

    `value` excludes the tracked p-power, so unit-part comparisons between
    sums of different absolute normalization are scale free; the raw sum is
    value * prime**p_power.
    """

    value: complex
    p_power: int
    prime: int

    @property
    def raw(self) -> complex:
        return self.value * self.prime**self.p_power

    @staticmethod
    def from_raw(value: complex, prime: int) -> "EpsilonSum":
        mag = abs(value)
        if mag == 0:
            raise ValueError("cannot normalize a zero sum")
        e = round(log(mag) / log(prime))
        return EpsilonSum(value / prime**e, e, prime)


def _sign_of(z: complex, tol: float = SIGN_TOLERANCE) -> int:
    """Round a complex unit to +-1, insisting it is within tol of one of them."""
    if abs(z.imag) > tol or abs(abs(z.real) - 1.0) > tol:
        raise ValueError(f"value {z} is not within {tol} of +-1")
    return 1 if z.real > 0 else -1


# ---------------------------------------------------------------------------
# Gauss sums and the principal-series product


def gauss_sum(chi: DirichletCharacter, c: int = 1) -> complex:
    """chi^{-1}(c) * sum over units b mod p^a of chi^{-1}(b) exp(2*pi*i*b/p^a).

    chi must be primitive: its conductor must equal its modulus.  For
    non-primitive characters the classical modulus and conjugate-product
    identities fail, so they are rejected.
    """
    m = chi.modulus
    if chi.is_trivial():
        raise ValueError("trivial character has no Gauss sum here")
    if chi.conductor() != m:
        raise ValueError(f"character is not primitive: conductor {chi.conductor()} != modulus {m}")
    if m > DESK_MODULUS_BOUND:
        raise ValueError(f"modulus {m} beyond desk-scale bound")
    if gcd(c, m) != 1:
        raise ValueError("c must be a unit mod the modulus")
    order, table = chi.value_table()
    units = array("q", table)
    char_exps = array("q", [-num % order for num in table.values()])
    total = kernels.phased_sum(char_exps, order, units, m)
    prefactor = chi(pow(c, -1, m))
    return complex(prefactor) * total


def ps_product(chi1: DirichletCharacter, k: int, c: int = 1) -> complex:
    """The two-sided local product p^{a(k-1)} G(chi1^{-1}, c) G(chi1, c).

    For primitive chi1 mod p^a this equals p^{a k} * chi1(-1) up to rounding.
    """
    p = chi1.prime
    if p == 2:
        raise ValueError("the product is defined for odd primes")
    if k < 2:
        raise ValueError("weight must be at least 2")
    a = factorize(chi1.modulus)[p]
    return float(p) ** (a * (k - 1)) * gauss_sum(chi1, c) * gauss_sum(chi1.inverse(), c)


def ps_twist_epsilon(chi1: DirichletCharacter, p: int, k: int = 2, c: int = 1) -> EpsilonSum:
    """Ratio of the products for chi1 * (quadratic char mod p) and chi1.

    Both characters are taken primitively at their true conductors; the unit
    part of the result is the sign (-1|p) and any leftover power of p (from a
    conductor change) sits in the normalization exponent.
    """
    if p == 2 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    base = chi1.primitive()
    if base.is_trivial():
        raise ValueError("chi1 must be nontrivial")
    if base.prime != p:
        raise ValueError("chi1 must live at the prime p")
    twisted = (chi1 * legendre_char(p)).primitive()
    if twisted.is_trivial():
        raise ValueError("chi1 * chi_p is trivial; the twisted product degenerates")
    ratio = ps_product(twisted, k, c) / ps_product(base, k, c)
    return EpsilonSum.from_raw(ratio, p)


def ps_twist_ratio(chi1: DirichletCharacter, p: int, k: int = 2, c: int = 1) -> int:
    """Unit-part sign of the twisted/untwisted product ratio; equals (-1|p)."""
    return _sign_of(ps_twist_epsilon(chi1, p, k, c).value)


# ---------------------------------------------------------------------------
# The quadratic extension F_{p^2} and its character sums


class Fp2:
    """F_{p^2} as pairs (x, y) = x + y*sqrt(delta), delta the smallest non-residue mod p."""

    def __init__(self, p: int):
        if p == 2 or not is_prime(p):
            raise ValueError(f"Fp2 requires an odd prime, got {p}")
        self.p = p
        self.delta = next(d for d in range(2, p) if kronecker(d, p) == -1)
        self.group_order = p * p - 1

    def mul(self, a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
        p, d = self.p, self.delta
        return ((a[0] * b[0] + d * a[1] * b[1]) % p, (a[0] * b[1] + a[1] * b[0]) % p)

    def trace(self, a: tuple[int, int]) -> int:
        return 2 * a[0] % self.p

    def norm(self, a: tuple[int, int]) -> int:
        return (a[0] * a[0] - self.delta * a[1] * a[1]) % self.p

    def units(self) -> list[tuple[int, int]]:
        return [(x, y) for x in range(self.p) for y in range(self.p) if (x, y) != (0, 0)]

    def element_order(self, a: tuple[int, int]) -> int:
        n = self.group_order
        for q in factorize(n):
            while n % q == 0 and self.power(a, n // q) == (1, 0):
                n //= q
        return n

    def power(self, a: tuple[int, int], e: int) -> tuple[int, int]:
        result, base = (1, 0), a
        e %= self.group_order
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def generators(self, count: int) -> list[tuple[int, int]]:
        """The first `count` generators of the unit group in lexicographic order."""
        found = []
        for a in self.units():
            if self.element_order(a) == self.group_order:
                found.append(a)
                if len(found) == count:
                    return found
        raise RuntimeError("unit group of F_{p^2} not cyclic?")

    def dlog_table(self, g: tuple[int, int]) -> dict[tuple[int, int], int]:
        table = {}
        x = (1, 0)
        for k in range(self.group_order):
            table[x] = k
            x = self.mul(x, g)
        return table


@lru_cache(maxsize=None)
def _fp2_logs(p: int, generator_index: int) -> tuple[Fp2, dict[tuple[int, int], int]]:
    field = Fp2(p)
    g = field.generators(generator_index + 1)[generator_index]
    return field, field.dlog_table(g)


def admissible_indices(p: int) -> list[int]:
    """Indices j in [1, p] whose character of F_{p^2}^x is usable.

    The character sends a fixed generator g to e(j(p-1)/(p^2-1)); these are
    exactly the characters trivial on F_p^x.  The single index j = (p+1)/2 is
    trivial on the norm-one subgroup, hence factors through the norm, and is
    excluded.
    """
    return [j for j in range(1, p + 1) if j != (p + 1) // 2]


def _validate_index(p: int, j: int) -> None:
    if j == 0:
        raise ValueError("j = 0 gives the trivial character")
    if not 1 <= j <= p:
        raise ValueError(f"index j must lie in [1, {p}]")
    if j == (p + 1) // 2:
        raise ValueError(f"j = {j} factors through the norm map and is rejected")


def _fp2_char_sum(p: int, numerator: int, generator_index: int) -> complex:
    """sum over b in F_{p^2}^x of kappa^{-1}(b) exp(2*pi*i*Tr(b)/p),

    where kappa(g^t) = e(numerator*t/(p^2-1)) for the chosen generator g.
    """
    field, logs = _fp2_logs(p, generator_index)
    q1 = field.group_order
    char_exps = array("q", [-numerator * t % q1 for t in logs.values()])
    phases = array("q", [field.trace(b) for b in logs])
    return kernels.phased_sum(char_exps, q1, phases, p)


def sc_unram_epsilon(p: int, j: int, generator_index: int = 0) -> EpsilonSum:
    """The sum over F_{p^2}^x of kappa^{-1}(b) exp(2*pi*i*Tr(b)/p), normalized.

    kappa is the j-th character trivial on F_p^x (see admissible_indices).
    The sum itself evaluates to p * kappa^{-1}(sqrt(delta)), so the stored
    unit part is the phase kappa^{-1}(sqrt(delta)) with p_power 1.
    """
    if p == 2 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    _validate_index(p, j)
    total = _fp2_char_sum(p, j * (p - 1), generator_index)
    return EpsilonSum.from_raw(total, p)


def sc_unram_reference_phase(p: int, j: int, generator_index: int = 0) -> complex:
    """kappa^{-1}(sqrt(delta)) with sqrt(delta) the element (0, 1) of F_{p^2}."""
    _validate_index(p, j)
    field, logs = _fp2_logs(p, generator_index)
    q1 = field.group_order
    t = logs[(0, 1)]
    return cmath.exp(-2j * cmath.pi * (j * (p - 1) * t % q1) / q1)


def sc_unram_twist_ratio(p: int, j: int, generator_index: int = 0) -> int:
    """Sign of the twisted/untwisted sum ratio; equals -(-1|p).

    The twist multiplies kappa by the quadratic character of the norm,
    b -> legendre(Norm(b)), which shifts the character index by (p^2-1)/2.
    """
    if p == 2 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    _validate_index(p, j)
    q1 = p * p - 1
    base = _fp2_char_sum(p, j * (p - 1), generator_index)
    twisted = _fp2_char_sum(p, j * (p - 1) + q1 // 2, generator_index)
    return _sign_of(twisted / base)


# ---------------------------------------------------------------------------
# Ramified quadratic extensions: norm image enumeration


@dataclass(frozen=True)
class RamifiedUnit:
    """u + v*pi in (O/pi^depth)^x with pi^2 = p*delta.

    u lives mod p^ceil(depth/2), v mod p^floor(depth/2); u must be a unit.
    """

    u: int
    v: int
    p: int
    delta: int
    depth: int = 3

    def __post_init__(self):
        if self.u % self.p == 0:
            raise ValueError("u must be coprime to p")
        if self.delta % self.p == 0:
            raise ValueError("delta must be a unit mod p")

    @property
    def _moduli(self) -> tuple[int, int]:
        return self.p ** ((self.depth + 1) // 2), self.p ** (self.depth // 2)

    def __mul__(self, other: "RamifiedUnit") -> "RamifiedUnit":
        if (self.p, self.delta, self.depth) != (other.p, other.delta, other.depth):
            raise ValueError("mismatched ramified models")
        mu, mv = self._moduli
        u = (self.u * other.u + self.p * self.delta * self.v * other.v) % mu
        v = (self.u * other.v + self.v * other.u) % mv
        return RamifiedUnit(u, v, self.p, self.delta, self.depth)

    def norm(self) -> int:
        """(u + v*pi)(u - v*pi) = u^2 - p*delta*v^2, reduced mod p^ceil(depth/2)."""
        mu, _ = self._moduli
        return (self.u * self.u - self.p * self.delta * self.v * self.v) % mu


def ramified_units(p: int, delta: int, depth: int = 3) -> list[RamifiedUnit]:
    mu = p ** ((depth + 1) // 2)
    mv = p ** (depth // 2)
    return [
        RamifiedUnit(u, v, p, delta, depth)
        for u in range(mu)
        if u % p
        for v in range(mv)
    ]


def ramified_norm_image(p: int, delta: int, depth: int = 3) -> set[int]:
    """The set of norms of (O/pi^depth)^x reduced mod p."""
    return {unit.norm() % p for unit in ramified_units(p, delta, depth)}


def sc_ram_twist_ratio(p: int, delta: int, cond_kappa: int) -> int:
    """Twist ratio for the supercuspidal case with ramified inducing extension.

    First confirms by enumeration that every norm from the ramified quadratic
    model is a nonzero square mod p (so the twisting character is trivial on
    those units), then returns (-delta|p)**(cond_kappa + 1): +1 for conductor
    1, and the symbol itself for conductor 2.
    """
    if p == 2 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    if delta % p == 0:
        raise ValueError("delta must be coprime to p")
    if cond_kappa not in (1, 2):
        raise ValueError("cond_kappa must be 1 or 2")
    image = ramified_norm_image(p, delta)
    squares = {x * x % p for x in range(1, p)}
    if image != squares:
        raise ArithmeticError("norm image is not the set of nonzero squares mod p")
    return kronecker(-delta, p) ** (cond_kappa + 1)
