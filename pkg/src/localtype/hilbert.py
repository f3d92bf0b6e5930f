"""Totally positive units of real quadratic fields and the auxiliary-prime search.

A quadratic character attached to a prime ideal globalizes only if it is
trivial on totally positive units.  When it is not, an auxiliary prime with
the same signature on a unit basis fixes it.  This module computes
fundamental units (continued fractions, with the half-integral refinement
for d = 1 mod 4), the totally positive generator, residue-symbol values of
the characters at units, and the matching-prime search; general totally real
fields are supported through user-supplied residue symbol tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .arith import is_prime, kronecker, primes_up_to

FUNDAMENTAL_UNIT_BOUND = 10**6

Signature = tuple[int, ...]


def _squarefree(d: int) -> bool:
    n, f = d, 2
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        while n % f == 0:
            n //= f
        f += 1
    return True


@dataclass(frozen=True)
class RealQuadField:
    """The real quadratic field of squarefree d > 1."""

    d: int

    def __post_init__(self):
        if self.d <= 1 or not _squarefree(self.d):
            raise ValueError(f"d must be a squarefree integer > 1, got {self.d}")

    def unit_basis(self) -> tuple["FieldUnit", ...]:
        """Basis of the totally positive units modulo squares (rank 1 here)."""
        return (totally_positive_generator(self.d),)


@dataclass(frozen=True)
class FieldUnit:
    """(a + b*sqrt(d))/2 with a = b*d mod 2 and field norm +-1."""

    a: int
    b: int
    d: int

    def __post_init__(self):
        if (self.a - self.b * self.d) % 2:
            raise ValueError("parity constraint a = b*d mod 2 violated")
        if self.a * self.a - self.d * self.b * self.b not in (4, -4):
            raise ValueError("not a unit: norm is not +-1")

    def norm(self) -> int:
        return (self.a * self.a - self.d * self.b * self.b) // 4

    def __mul__(self, other: "FieldUnit") -> "FieldUnit":
        if self.d != other.d:
            raise ValueError("units of different fields")
        a = (self.a * other.a + self.b * other.b * self.d) // 2
        b = (self.a * other.b + self.b * other.a) // 2
        return FieldUnit(a, b, self.d)

    def __pow__(self, k: int) -> "FieldUnit":
        if k < 0:
            raise ValueError("negative powers not needed")
        result = FieldUnit(2, 0, self.d)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_totally_positive(self) -> bool:
        """Both embeddings (a +- b*sqrt(d))/2 positive (exact integer test)."""
        for b in (self.b, -self.b):
            # a + b*sqrt(d) > 0
            if b >= 0:
                if self.a <= 0 and self.a * self.a >= self.d * b * b:
                    return False
            else:
                if self.a <= 0 or self.a * self.a <= self.d * b * b:
                    return False
        return True

    def __str__(self):
        return f"({self.a}{self.b:+d}*sqrt({self.d}))/2"


def _introot(n: int, k: int) -> int:
    """floor(n**(1/k)) for n >= 0 by binary search."""
    if n < 0:
        raise ValueError
    if n == 0:
        return 0
    hi = 1
    while hi**k <= n:
        hi <<= 1
    lo = hi >> 1
    while lo < hi - 1:
        mid = (lo + hi) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid
    return lo


def _pell_unit(d: int) -> tuple[int, int]:
    """Smallest x + y*sqrt(d) > 1 with x^2 - d*y^2 = +-1 (continued fraction of sqrt d)."""
    a0 = isqrt(d)
    P, Q, a = 0, 1, a0
    p_prev, p_cur = 1, a0
    q_prev, q_cur = 0, 1
    while p_cur * p_cur - d * q_cur * q_cur not in (1, -1):
        P = a * Q - P
        Q = (d - P * P) // Q
        a = (a0 + P) // Q
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
    return p_cur, q_cur


def _half_odd_cube_root(d: int, x: int, y: int) -> FieldUnit | None:
    """(a + b*sqrt(d))/2 with odd a, b whose cube is x + y*sqrt(d), if one exists.

    Exists exactly when the fundamental unit is half-integral, in which case
    the continued-fraction unit is its cube.  The candidate trace a is located
    from an integer cube root and confirmed exactly.
    """
    approx = x + isqrt(d * y * y)
    r = _introot(8 * approx, 3)
    for a in range(max(1, r // 2 - 3), r // 2 + 5):
        if a % 2 == 0:
            continue
        for norm in (-1, 1):
            num = a * a - 4 * norm
            if num <= 0 or num % d:
                continue
            b = isqrt(num // d)
            if b == 0 or b % 2 == 0 or b * b * d != num:
                continue
            if a**3 + 3 * a * b * b * d == 8 * x and 3 * a * a * b + b**3 * d == 8 * y:
                return FieldUnit(a, b, d)
    return None


def fundamental_unit(d: int) -> FieldUnit:
    """The smallest unit > 1 of the ring of integers of Q(sqrt(d)).

    Continued fractions give the smallest integral solution of
    x^2 - d*y^2 = +-1; for d = 1 mod 4 the fundamental unit may instead be
    half-integral, in which case it is the exact cube root of that solution.
    """
    RealQuadField(d)  # validates squarefree d > 1
    if d > FUNDAMENTAL_UNIT_BOUND:
        raise ValueError(f"d beyond desk-scale bound {FUNDAMENTAL_UNIT_BOUND}")
    x, y = _pell_unit(d)
    if d % 4 == 1:
        half = _half_odd_cube_root(d, x, y)
        if half is not None:
            return half
    return FieldUnit(2 * x, 2 * y, d)


def totally_positive_generator(d: int) -> FieldUnit:
    """Generator of the totally positive units modulo squares of units.

    The square of the fundamental unit when its norm is -1; the fundamental
    unit itself otherwise (it exceeds 1 and has positive conjugate).
    """
    eps = fundamental_unit(d)
    if eps.norm() == -1:
        return eps * eps
    return eps


def sqrt_mod(d: int, q: int) -> int | None:
    """Smallest root of x^2 = d mod q, or None if d is a non-residue."""
    d %= q
    for r in range(q):
        if r * r % q == d:
            return r
    return None


def chi_on_unit(field: RealQuadField, q: int, unit: FieldUnit, root: int | None = None) -> int:
    """Sign of the quadratic residue character of a degree-one prime over q at a unit.

    The prime ideal over q is pinned by a choice of root of x^2 = d mod q
    (smallest root by default; pass `root` to select the conjugate ideal).
    The unit (a + b*sqrt(d))/2 reduces to (a + b*root)/2 mod q and the value
    is the Kronecker symbol of that residue at q.
    """
    if not is_prime(q) or q == 2:
        raise ValueError(f"q must be an odd prime, got {q}")
    if field.d % q == 0:
        raise ValueError(f"{q} ramifies in the field; only split primes are used")
    if unit.d != field.d:
        raise ValueError("unit does not belong to the field")
    if kronecker(field.d, q) != 1:
        raise ValueError(f"{q} is inert in Q(sqrt({field.d})); no degree-one prime exists")
    if root is None:
        root = sqrt_mod(field.d, q)
        assert root is not None
    elif root * root % q != field.d % q:
        raise ValueError(f"{root} is not a square root of {field.d} mod {q}")
    residue = (unit.a + unit.b * root) * pow(2, -1, q) % q
    if residue == 0:
        raise ValueError("unit reduced to zero mod q; the input data is corrupt")
    return kronecker(residue, q)


def needs_auxiliary(signature: Signature) -> bool:
    """True when the character is nontrivial on some totally positive basis unit."""
    if any(s not in (-1, 1) for s in signature):
        raise ValueError("signature entries must be +-1")
    return any(s == -1 for s in signature)


def find_auxiliary_prime(
    field: RealQuadField,
    target_sig: Signature,
    avoid: set[int] | frozenset[int] = frozenset(),
    bound: int = 100,
) -> int | None:
    """Smallest split prime q <= bound, not in `avoid`, matching the signature.

    The signature of q is (chi_q(u) for u in the totally positive unit basis);
    a match makes the product of the two characters trivial on all totally
    positive units.  Returns None when the bound is exhausted.
    """
    basis = field.unit_basis()
    if len(target_sig) != len(basis):
        raise ValueError("target signature length does not match the unit basis")
    for q in primes_up_to(bound):
        if q == 2 or q in avoid or field.d % q == 0:
            continue
        if kronecker(field.d, q) != 1:
            continue
        if tuple(chi_on_unit(field, q, u) for u in basis) == tuple(target_sig):
            return q
    return None


@dataclass(frozen=True)
class ResidueSymbolTable:
    """Residue-symbol signatures supplied for a field without native arithmetic.

    One row per prime: the signs of the prime's quadratic character at each
    unit in `unit_labels`.  Ragged rows are rejected.
    """

    field_label: str
    unit_labels: tuple[str, ...]
    rows: tuple[tuple[int, Signature], ...]

    def __post_init__(self):
        for q, signs in self.rows:
            if len(signs) != len(self.unit_labels):
                raise ValueError(
                    f"row for prime {q} has {len(signs)} signs, expected {len(self.unit_labels)}"
                )
            if any(s not in (-1, 1) for s in signs):
                raise ValueError(f"row for prime {q} contains a non-sign entry")
        primes = [q for q, _ in self.rows]
        if len(set(primes)) != len(primes):
            raise ValueError("duplicate prime rows in table")

    def signature(self, q: int) -> Signature:
        for prime, signs in self.rows:
            if prime == q:
                return signs
        raise KeyError(f"no row for prime {q}")


def match_signature(
    table: ResidueSymbolTable,
    target: Signature,
    avoid: set[int] | frozenset[int] = frozenset(),
    bound: int = 100,
) -> int | None:
    """Smallest listed prime <= bound, not in `avoid`, whose row equals target."""
    if len(target) != len(table.unit_labels):
        raise ValueError("target signature length does not match the table")
    best = None
    for q, signs in table.rows:
        if q > bound or q in avoid:
            continue
        if tuple(signs) == tuple(target) and (best is None or q < best):
            best = q
    return best
