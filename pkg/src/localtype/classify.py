"""Decision procedures: local types from level valuations and twist-sign data.

For an odd prime the sign ratio eps(f x chi_p) * eps(f) * chi_p(N') together
with the level valuations pins the local type completely (with the inducing
quadratic extension left open only at valuation 2).  At p = 2 the three
quadratic twist directions give a sign pattern that narrows, but cannot
always resolve, the type; classify_two therefore returns a candidate set and
never guesses.  Valuation tables, the conductor formula for induced
representations, and the eight exceptional curves at 2 live here as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .arith import is_prime, kronecker


class ConsistencyError(ValueError):
    """Observation data contradicts the level-valuation constraints."""


def _check_sign(value: int, name: str) -> int:
    if value not in (-1, 1):
        raise ValueError(f"{name} must be +1 or -1, got {value}")
    return value


# ---------------------------------------------------------------------------
# Odd primes


class LocalTypeOdd(Enum):
    PRINCIPAL_SERIES = "PrincipalSeries"
    STEINBERG = "Steinberg"
    SC_UNRAMIFIED = "SupercuspidalUnramified"
    SC_RAMIFIED_PSTAR = "SupercuspidalRamifiedPStar"
    SC_RAMIFIED_NONPSTAR = "SupercuspidalRamifiedNonPStar"
    SC_UNDETERMINED = "SupercuspidalExtensionUndetermined"

    def __str__(self):
        return self.value


def allowed_types_odd(p: int, val: int) -> set[LocalTypeOdd]:
    """Types possible at an odd prime with the given level valuation.

    Even valuation: principal series, or supercuspidal with unramified
    inducing extension.  Valuation 1 or 2: Steinberg.  Odd valuation >= 3:
    supercuspidal induced from a ramified extension.  At valuation exactly 2
    a ramified supercuspidal (conductor-one inducing character) is possible
    only when p = 3 mod 4, and then the extension cannot be read off, so the
    undetermined tag stands in for it.
    """
    if p == 2 or not is_prime(p):
        raise ValueError(f"allowed_types_odd requires an odd prime, got {p}")
    if val < 0:
        raise ValueError("valuation must be nonnegative")
    T = LocalTypeOdd
    if val == 0:
        return {T.PRINCIPAL_SERIES}
    if val == 1:
        return {T.STEINBERG}
    if val == 2:
        out = {T.PRINCIPAL_SERIES, T.STEINBERG, T.SC_UNRAMIFIED}
        if p % 4 == 3:
            out.add(T.SC_UNDETERMINED)
        return out
    if val % 2 == 0:
        return {T.PRINCIPAL_SERIES, T.SC_UNRAMIFIED}
    return {T.SC_RAMIFIED_PSTAR, T.SC_RAMIFIED_NONPSTAR}


@dataclass(frozen=True)
class OddTwistObservation:
    """Measured data at an odd prime p.

    val_n and val_twist are the level valuations of the form and of its twist
    by the quadratic character ramified only at p; ratio is the normalized
    sign eps(f x chi_p) * eps(f) * chi_p(N') (see normalized_ratio).
    """

    p: int
    val_n: int
    val_twist: int
    ratio: int

    def __post_init__(self):
        if self.p == 2 or not is_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.val_n < 0 or self.val_twist < 0:
            raise ValueError("valuations must be nonnegative")
        _check_sign(self.ratio, "ratio")


def normalized_ratio(sign_f: int, sign_twist: int, chi_of_odd_part: int) -> int:
    """The product of the functional-equation signs and chi(N'), all +-1."""
    _check_sign(sign_f, "sign_f")
    _check_sign(sign_twist, "sign_twist")
    _check_sign(chi_of_odd_part, "chi_of_odd_part")
    return sign_f * sign_twist * chi_of_odd_part


def _check_odd_consistency(obs: OddTwistObservation) -> None:
    v, w = obs.val_n, obs.val_twist
    if v == 0 and w != 2:
        raise ConsistencyError(
            f"val_p(N) = 0 requires twisted valuation 2 (a conductor-p twist of an "
            f"unramified form has valuation exactly 2), got {w}"
        )
    if v == 1 and w != 2:
        raise ConsistencyError(
            f"val_p(N) = 1 is Steinberg and its twist has valuation 2, got {w}"
        )
    if v == 2 and w not in (0, 1, 2):
        raise ConsistencyError(
            f"val_p(N) = 2 admits twisted valuations 0, 1 or 2 only, got {w}"
        )
    if v >= 3 and w != v:
        raise ConsistencyError(
            f"val_p(N) = {v} >= 3 is preserved by the twist, got twisted valuation {w}"
        )


def _classify_odd_ex(obs: OddTwistObservation) -> tuple[LocalTypeOdd, list[str]]:
    _check_odd_consistency(obs)
    T = LocalTypeOdd
    p, v, w, r = obs.p, obs.val_n, obs.val_twist, obs.ratio
    if v == 1 or w == 1:
        which = "level" if v == 1 else "twisted level"
        return T.STEINBERG, [f"{which} has valuation 1: Steinberg"]
    if v == 0:
        return T.PRINCIPAL_SERIES, ["prime does not divide the level: unramified principal series"]
    eps_minus_one = kronecker(-1, p)
    if v % 2 == 0:
        if r == eps_minus_one:
            return T.PRINCIPAL_SERIES, [
                f"even level valuation {v} with sign ratio equal to (-1|{p}) = {eps_minus_one:+d}: "
                "principal series"
            ]
        if v >= 4 or p % 4 == 1:
            return T.SC_UNRAMIFIED, [
                f"even level valuation {v} with sign ratio {-eps_minus_one:+d} = -(-1|{p}): "
                "supercuspidal, unramified inducing extension"
            ]
        return T.SC_UNDETERMINED, [
            f"level valuation 2 with sign ratio {-eps_minus_one:+d} = -(-1|{p}) and "
            f"{p} = 3 mod 4: supercuspidal, inducing quadratic extension undetermined"
        ]
    if r == 1:
        return T.SC_RAMIFIED_PSTAR, [
            f"odd level valuation {v} with sign ratio +1: supercuspidal induced from "
            "the quadratic extension ramified only at p"
        ]
    return T.SC_RAMIFIED_NONPSTAR, [
        f"odd level valuation {v} with sign ratio -1: supercuspidal induced from "
        "the other ramified quadratic extension"
    ]


def classify_odd(obs: OddTwistObservation) -> LocalTypeOdd:
    """The local type at an odd prime determined by a twist observation."""
    return _classify_odd_ex(obs)[0]


# ---------------------------------------------------------------------------
# p = 2


class TwoType(Enum):
    PS = "PS"
    ST = "ST"
    SCIA = "SCIa"
    SCIB = "SCIb"
    SCIC = "SCIc"
    SCII = "SCII"
    SCIB_SQRT2 = "SCIb(sqrt2)"

    def __str__(self):
        return self.value

    @property
    def base(self) -> "TwoType":
        return TwoType.SCIB if self is TwoType.SCIB_SQRT2 else self


TWIST_TAGS = (-1, 2, -2)
PS_PATTERN = (-1, 1, -1)
SC_UNRAM_PATTERN = (1, -1, 1)


def allowed_types_two(val: int) -> set[TwoType]:
    """The possible types at 2 for a given level valuation (the valuation table)."""
    if val < 0:
        raise ValueError("valuation must be nonnegative")
    T = TwoType
    rows = {
        0: {T.PS},
        1: {T.ST},
        2: {T.SCIA},
        3: {T.SCII},
        4: {T.PS, T.ST, T.SCIA, T.SCII},
        5: {T.SCIB},
        6: {T.PS, T.ST, T.SCIA, T.SCIB, T.SCII},
        7: {T.SCII},
        8: {T.PS, T.SCIA, T.SCIB, T.SCIC},
    }
    if val in rows:
        return set(rows[val])
    if val % 2:
        return {T.SCIC}
    return {T.PS, T.SCIA, T.SCIB}


@dataclass(frozen=True)
class TwoTwistObservation:
    """Measured data at p = 2 for the three quadratic twist directions.

    ratios and val_twists are indexed by the tags (-1, 2, -2); each ratio is
    already normalized by chi_tag(N').  discrete_series_hint records whether
    the form transfers to the definite quaternion algebra ramified at 2,
    which settles the principal-series versus sqrt(2)-supercuspidal tie.
    """

    val_n: int
    ratios: tuple[int, int, int]
    val_twists: tuple[int, int, int]
    discrete_series_hint: bool | None = None

    def __post_init__(self):
        if self.val_n < 0 or any(w < 0 for w in self.val_twists):
            raise ValueError("valuations must be nonnegative")
        if len(self.ratios) != 3 or len(self.val_twists) != 3:
            raise ValueError("exactly three twist entries (tags -1, 2, -2) required")
        for r in self.ratios:
            _check_sign(r, "ratio")


def _classify_two_ex(obs: TwoTwistObservation) -> tuple[set[TwoType], list[str]]:
    T = TwoType
    allowed = allowed_types_two(obs.val_n)
    pattern = obs.ratios

    if obs.val_n == 1 or 1 in obs.val_twists:
        if T.ST not in allowed:
            raise ConsistencyError(
                f"a twisted level valuation of 1 forces Steinberg, which cannot occur "
                f"at level valuation {obs.val_n} (only 1, 4 or 6)"
            )
        return {T.ST}, [
            "level or twisted level has valuation 1: Steinberg (levels 1, 4 and 6 "
            "are twists of each other)"
        ]
    if obs.val_n in (3, 7):
        return {T.SCII}, [
            f"level valuation {obs.val_n}: only the exceptional supercuspidal type occurs"
        ]

    # Steinberg would have revealed itself through a twist of valuation 1.
    candidates = allowed - {T.ST}
    row = f"valuation table row for val = {obs.val_n}"
    if len(candidates) == 1:
        return candidates, [f"{row} leaves a single type"]

    evidence = []
    result: set[TwoType] = set()
    if pattern == PS_PATTERN:
        evidence.append(
            "sign pattern (-1, +1, -1) matches principal series and the supercuspidal "
            "induced from the sqrt(2) extension only"
        )
        if T.PS in candidates:
            result.add(T.PS)
        if T.SCIB in candidates:
            result.add(T.SCIB_SQRT2)
        if result == {T.PS, T.SCIB_SQRT2} and obs.discrete_series_hint is not None:
            if obs.discrete_series_hint:
                result = {T.SCIB_SQRT2}
                evidence.append(
                    "discrete-series hint true (form seen in the ramified quaternion "
                    "algebra): principal series excluded"
                )
            else:
                result = {T.PS}
                evidence.append(
                    "discrete-series hint false (form absent from the ramified "
                    "quaternion algebra): principal series"
                )
    else:
        if pattern == SC_UNRAM_PATTERN and T.SCIA in candidates:
            result.add(T.SCIA)
            evidence.append(
                "sign pattern (+1, -1, +1) matches the supercuspidal with unramified "
                "inducing extension"
            )
        uncommitted = candidates & {T.SCIB, T.SCIC, T.SCII}
        if uncommitted:
            result |= uncommitted
            evidence.append(
                "sign patterns of the remaining ramified/exceptional candidates are "
                "not pinned down; they stay in the set"
            )
    if not result:
        raise ConsistencyError(
            f"no type allowed at level valuation {obs.val_n} is compatible with the "
            f"sign pattern {pattern}"
        )
    evidence.insert(0, row)
    return result, evidence


def classify_two(obs: TwoTwistObservation) -> set[TwoType]:
    """The candidate set of local types at 2 compatible with an observation."""
    return _classify_two_ex(obs)[0]


# ---------------------------------------------------------------------------
# Conductors of induced representations


def induced_conductor(f: int, d: int, n: int, cond_rho: int) -> int:
    """Conductor exponent f*(n*d + cond_rho) of a representation induced along
    an extension with inertial degree f, discriminant valuation d, degree n."""
    if f < 1 or n < 1 or d < 0 or cond_rho < 0:
        raise ValueError("invalid extension data")
    return f * (n * d + cond_rho)


# ---------------------------------------------------------------------------
# The eight exceptional curves at 2


def _square_class(v: int) -> int:
    """Reduce a nonzero product of twist classes into {1, -1, 2, -2}."""
    sign = -1 if v < 0 else 1
    v = abs(v)
    two = 0
    while v % 2 == 0:
        v //= 2
        two += 1
    if v != 1:
        raise ValueError("twist classes only involve units and 2")
    return sign * (2 if two % 2 else 1)


@dataclass(frozen=True)
class ExceptionalCurveId:
    """One of the eight exceptional curves: family 1 or 2, twist class in {1,-1,2,-2}."""

    family: int
    twist_class: int

    def __post_init__(self):
        if self.family not in (1, 2):
            raise ValueError("family must be 1 or 2")
        if self.twist_class not in (1, -1, 2, -2):
            raise ValueError("twist class must be one of 1, -1, 2, -2")


_EXCEPTIONAL_ROOT_NUMBERS = {
    (1, 1): 1,
    (1, -1): 1,
    (1, 2): -1,
    (1, -2): 1,
    (2, 1): 1,
    (2, -1): 1,
    (2, 2): -1,
    (2, -2): 1,
}


def exceptional_root_number(curve: ExceptionalCurveId) -> int:
    """The local root number at 2 of an exceptional curve."""
    return _EXCEPTIONAL_ROOT_NUMBERS[(curve.family, curve.twist_class)]


def exceptional_twist(curve: ExceptionalCurveId, tag: int) -> ExceptionalCurveId:
    """Twisting by the quadratic character of tag j maps class r to r*j mod squares."""
    if tag not in TWIST_TAGS:
        raise ValueError(f"tag must be one of {TWIST_TAGS}")
    return ExceptionalCurveId(curve.family, _square_class(curve.twist_class * tag))


def exceptional_level_valuation(curve: ExceptionalCurveId) -> int:
    """val_2 of the level: 7 across family 1; 4, 3, 6, 6 for family 2 classes 1, -1, +-2."""
    if curve.family == 1:
        return 7
    return {1: 4, -1: 3, 2: 6, -2: 6}[curve.twist_class]
