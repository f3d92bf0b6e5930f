"""Pure-Python phased character sum, the fallback inner loop.

Computes sum_k exp(2*pi*i * (a_k/n + b_k/m)) from two integer exponent
sequences.  Root-of-unity tables are cached per order so each term costs one
complex multiply.
"""

from __future__ import annotations

import cmath
from functools import lru_cache

TAU = 2.0 * cmath.pi


@lru_cache(maxsize=128)
def _roots(order: int) -> tuple[complex, ...]:
    return tuple(cmath.exp(1j * TAU * k / order) for k in range(order))


def phased_sum(char_exps, char_order, phase_exps, phase_order):
    """Sum of exp(2*pi*i*(a/char_order + b/phase_order)) over paired exponents."""
    ra = _roots(char_order)
    rb = _roots(phase_order)
    total = 0j
    for a, b in zip(char_exps, phase_exps, strict=True):
        total += ra[a % char_order] * rb[b % phase_order]
    return total
