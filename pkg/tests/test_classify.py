"""Classifier tests: valuation tables, decision branches, exceptional curves."""

import random

import pytest

from localtype.arith import kronecker, odd_primes_up_to
from localtype.classify import (
    ConsistencyError,
    ExceptionalCurveId,
    LocalTypeOdd as T,
    OddTwistObservation,
    TwoTwistObservation,
    TwoType as T2,
    allowed_types_odd,
    allowed_types_two,
    classify_odd,
    classify_two,
    exceptional_level_valuation,
    exceptional_root_number,
    exceptional_twist,
    induced_conductor,
    normalized_ratio,
)


def obs_odd(p, v, w, r):
    return OddTwistObservation(p=p, val_n=v, val_twist=w, ratio=r)


def obs_two(v, pattern, twists=None, hint=None):
    return TwoTwistObservation(
        val_n=v, ratios=pattern, val_twists=twists or (v, v, v), discrete_series_hint=hint
    )


# ---------------------------------------------------------------------------
# allowed_types_odd


def test_allowed_types_odd_examples():
    assert allowed_types_odd(5, 1) == {T.STEINBERG}
    assert allowed_types_odd(5, 2) == {T.PRINCIPAL_SERIES, T.STEINBERG, T.SC_UNRAMIFIED}
    assert allowed_types_odd(3, 7) == {T.SC_RAMIFIED_PSTAR, T.SC_RAMIFIED_NONPSTAR}


def test_allowed_types_odd_ramified_cond_one_needs_three_mod_four():
    assert T.SC_UNDETERMINED in allowed_types_odd(3, 2)
    assert T.SC_UNDETERMINED in allowed_types_odd(7, 2)
    assert T.SC_UNDETERMINED not in allowed_types_odd(5, 2)
    assert T.SC_UNDETERMINED not in allowed_types_odd(13, 2)


def test_allowed_types_odd_matches_clause_predicates():
    """Re-derive each row from the per-type valuation constraints."""
    for p in (3, 5, 7, 11, 13):
        for val in range(0, 12):
            expected = set()
            if val % 2 == 0:
                expected.add(T.PRINCIPAL_SERIES)
            if val in (1, 2):
                expected.add(T.STEINBERG)
            if val >= 2 and val % 2 == 0:
                expected.add(T.SC_UNRAMIFIED)
            if val >= 3 and val % 2 == 1:
                expected.update({T.SC_RAMIFIED_PSTAR, T.SC_RAMIFIED_NONPSTAR})
            if val == 2 and p % 4 == 3:
                expected.add(T.SC_UNDETERMINED)
            if val == 0:
                expected = {T.PRINCIPAL_SERIES}
            assert allowed_types_odd(p, val) == expected, (p, val)


# ---------------------------------------------------------------------------
# classify_odd


def test_normalized_ratio():
    assert normalized_ratio(-1, 1, 1) == -1
    assert normalized_ratio(1, 1, 1) == 1
    assert normalized_ratio(1, -1, -1) == 1
    with pytest.raises(ValueError):
        normalized_ratio(0, 1, 1)


def test_classify_odd_worked_examples():
    assert kronecker(-1, 31) == -1
    assert classify_odd(obs_odd(31, 2, 2, -1)) == T.PRINCIPAL_SERIES
    assert classify_odd(obs_odd(3, 2, 1, 1)) == T.STEINBERG
    assert classify_odd(obs_odd(3, 2, 1, -1)) == T.STEINBERG
    assert classify_odd(obs_odd(7, 3, 3, 1)) == T.SC_RAMIFIED_PSTAR


def test_classify_odd_branches():
    # Steinberg from either valuation
    assert classify_odd(obs_odd(5, 1, 2, 1)) == T.STEINBERG
    assert classify_odd(obs_odd(5, 2, 1, -1)) == T.STEINBERG
    # unramified principal series
    assert classify_odd(obs_odd(5, 0, 2, 1)) == T.PRINCIPAL_SERIES
    # even valuation: ratio picks principal series vs supercuspidal
    for p in (5, 13):  # p = 1 mod 4
        assert classify_odd(obs_odd(p, 2, 2, 1)) == T.PRINCIPAL_SERIES
        assert classify_odd(obs_odd(p, 2, 2, -1)) == T.SC_UNRAMIFIED
    for p in (3, 7):  # p = 3 mod 4
        assert classify_odd(obs_odd(p, 2, 2, -1)) == T.PRINCIPAL_SERIES
        assert classify_odd(obs_odd(p, 2, 2, 1)) == T.SC_UNDETERMINED
        assert classify_odd(obs_odd(p, 4, 4, -1)) == T.PRINCIPAL_SERIES
        assert classify_odd(obs_odd(p, 4, 4, 1)) == T.SC_UNRAMIFIED
    # odd valuation >= 3: the ratio picks the inducing extension
    assert classify_odd(obs_odd(5, 3, 3, 1)) == T.SC_RAMIFIED_PSTAR
    assert classify_odd(obs_odd(5, 3, 3, -1)) == T.SC_RAMIFIED_NONPSTAR


def test_classify_odd_consistency_errors():
    with pytest.raises(ConsistencyError):
        classify_odd(obs_odd(5, 0, 0, 1))
    with pytest.raises(ConsistencyError):
        classify_odd(obs_odd(5, 0, 3, 1))
    with pytest.raises(ConsistencyError):
        classify_odd(obs_odd(5, 1, 1, 1))
    with pytest.raises(ConsistencyError):
        classify_odd(obs_odd(5, 2, 4, 1))
    with pytest.raises(ConsistencyError):
        classify_odd(obs_odd(5, 5, 4, 1))
    with pytest.raises(ConsistencyError):
        classify_odd(obs_odd(5, 4, 5, 1))


def test_classify_odd_membership_random_sweep():
    rng = random.Random(1257)
    primes = odd_primes_up_to(97)
    partners = {0: (2,), 1: (2,), 2: (0, 1, 2)}
    for _ in range(10_000):
        p = rng.choice(primes)
        v = rng.choice((0, 1, 2, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12))
        w = rng.choice(partners.get(v, (v,)))
        r = rng.choice((-1, 1))
        t = classify_odd(obs_odd(p, v, w, r))
        assert t in allowed_types_odd(p, v), (p, v, w, r, t)


def test_classify_odd_ratio_flip_swaps_extension():
    for p in (3, 5, 7, 11):
        for v in (3, 5, 7, 9):
            plus = classify_odd(obs_odd(p, v, v, 1))
            minus = classify_odd(obs_odd(p, v, v, -1))
            assert {plus, minus} == {T.SC_RAMIFIED_PSTAR, T.SC_RAMIFIED_NONPSTAR}


# ---------------------------------------------------------------------------
# allowed_types_two


def test_allowed_types_two_rows():
    assert allowed_types_two(0) == {T2.PS}
    assert allowed_types_two(1) == {T2.ST}
    assert allowed_types_two(2) == {T2.SCIA}
    assert allowed_types_two(3) == {T2.SCII}
    assert allowed_types_two(4) == {T2.PS, T2.ST, T2.SCIA, T2.SCII}
    assert allowed_types_two(5) == {T2.SCIB}
    assert allowed_types_two(6) == {T2.PS, T2.ST, T2.SCIA, T2.SCIB, T2.SCII}
    assert allowed_types_two(7) == {T2.SCII}
    assert allowed_types_two(8) == {T2.PS, T2.SCIA, T2.SCIB, T2.SCIC}
    for v in (9, 11, 13, 21):
        assert allowed_types_two(v) == {T2.SCIC}
    for v in (10, 12, 20):
        assert allowed_types_two(v) == {T2.PS, T2.SCIA, T2.SCIB}


def test_allowed_types_two_matches_clause_predicates():
    """Re-derive the table from the per-type valuation constraints at 2."""
    for val in range(0, 30):
        expected = set()
        if val % 2 == 0 and val != 2:
            expected.add(T2.PS)
        if val in (1, 4, 6):
            expected.add(T2.ST)
        if val >= 2 and val % 2 == 0:
            expected.add(T2.SCIA)
        if val == 5 or (val >= 6 and val % 2 == 0):
            expected.add(T2.SCIB)
        if val == 8 or (val >= 9 and val % 2 == 1):
            expected.add(T2.SCIC)
        if val in (3, 4, 6, 7):
            expected.add(T2.SCII)
        if val == 0:
            expected = {T2.PS}
        assert allowed_types_two(val) == expected, val


# ---------------------------------------------------------------------------
# classify_two


PS_PAT = (-1, 1, -1)
SC_PAT = (1, -1, 1)


def test_classify_two_hint_resolution_at_val_eight():
    assert classify_two(obs_two(8, PS_PAT, hint=True)) == {T2.SCIB_SQRT2}
    assert classify_two(obs_two(8, PS_PAT, hint=False)) == {T2.PS}
    assert classify_two(obs_two(8, PS_PAT)) == {T2.PS, T2.SCIB_SQRT2}


def test_classify_two_singleton_rows():
    for v in (3, 7):
        for pattern in (PS_PAT, SC_PAT, (1, 1, 1)):
            assert classify_two(obs_two(v, pattern)) == {T2.SCII}
    for pattern in (PS_PAT, SC_PAT, (-1, -1, -1)):
        assert classify_two(obs_two(5, pattern)) == {T2.SCIB}
    for v in (9, 11):
        assert classify_two(obs_two(v, SC_PAT)) == {T2.SCIC}
    assert classify_two(obs_two(0, PS_PAT)) == {T2.PS}
    assert classify_two(obs_two(2, SC_PAT)) == {T2.SCIA}


def test_classify_two_steinberg_via_twisted_valuation():
    for v in (1, 4, 6):
        twists = (v, 1, v) if v != 1 else (4, 4, 6)
        assert classify_two(obs_two(v, SC_PAT, twists=twists)) == {T2.ST}
    with pytest.raises(ConsistencyError):
        classify_two(obs_two(8, PS_PAT, twists=(8, 1, 8)))


def test_classify_two_patterns_on_composite_rows():
    assert classify_two(obs_two(4, PS_PAT)) == {T2.PS}
    assert classify_two(obs_two(4, SC_PAT)) == {T2.SCIA, T2.SCII}
    assert classify_two(obs_two(4, (-1, -1, -1))) == {T2.SCII}
    assert classify_two(obs_two(6, PS_PAT)) == {T2.PS, T2.SCIB_SQRT2}
    assert classify_two(obs_two(6, SC_PAT)) == {T2.SCIA, T2.SCIB, T2.SCII}
    assert classify_two(obs_two(8, SC_PAT)) == {T2.SCIA, T2.SCIB, T2.SCIC}
    assert classify_two(obs_two(8, (1, 1, 1))) == {T2.SCIB, T2.SCIC}
    assert classify_two(obs_two(10, PS_PAT)) == {T2.PS, T2.SCIB_SQRT2}
    assert classify_two(obs_two(10, (1, 1, 1))) == {T2.SCIB}


def test_classify_two_subset_of_allowed_random_sweep():
    rng = random.Random(8128)
    patterns = [(a, b, c) for a in (-1, 1) for b in (-1, 1) for c in (-1, 1)]
    checked = 0
    for _ in range(10_000):
        v = rng.randrange(0, 14)
        pattern = rng.choice(patterns)
        hint = rng.choice((None, True, False))
        twists = [v, v, v]
        if v in (1, 4, 6) and rng.random() < 0.3:
            twists[rng.randrange(3)] = 1
        try:
            result = classify_two(obs_two(v, pattern, twists=tuple(twists), hint=hint))
        except ConsistencyError:
            continue
        checked += 1
        assert result, (v, pattern)
        assert {t.base for t in result} <= allowed_types_two(v), (v, pattern, result)
    assert checked > 5_000


# ---------------------------------------------------------------------------
# induced conductor


def test_induced_conductor_examples():
    for a in range(6):
        assert induced_conductor(2, 0, 1, a) == 2 * a
    assert induced_conductor(1, 1, 1, 1) == 2
    for c in range(6):
        assert induced_conductor(1, 1, 1, c) == 1 + c


def test_induced_conductor_monotone_and_linear():
    for f in (1, 2):
        for n in (1, 2):
            for c in range(5):
                assert induced_conductor(f, 0, n, c + 1) > induced_conductor(f, 0, n, c)
            for d in range(5):
                diff = induced_conductor(f, d + 1, n, 3) - induced_conductor(f, d, n, 3)
                assert diff == f * n


# ---------------------------------------------------------------------------
# exceptional curves


ALL_CURVES = [ExceptionalCurveId(fam, r) for fam in (1, 2) for r in (1, -1, 2, -2)]
TAGS = (-1, 2, -2)


def test_exceptional_root_numbers_table():
    values = {
        (1, 1): 1, (1, -1): 1, (1, 2): -1, (1, -2): 1,
        (2, 1): 1, (2, -1): 1, (2, 2): -1, (2, -2): 1,
    }
    for curve in ALL_CURVES:
        assert exceptional_root_number(curve) == values[(curve.family, curve.twist_class)]
    assert exceptional_root_number(ExceptionalCurveId(1, 2)) == -1
    assert exceptional_root_number(ExceptionalCurveId(2, -2)) == 1
    assert exceptional_root_number(ExceptionalCurveId(1, 1)) == 1


def test_exceptional_twist_examples():
    assert exceptional_twist(ExceptionalCurveId(1, 1), 2) == ExceptionalCurveId(1, 2)
    assert exceptional_twist(ExceptionalCurveId(2, -1), -2) == ExceptionalCurveId(2, 2)
    assert exceptional_twist(ExceptionalCurveId(1, 2), 2) == ExceptionalCurveId(1, 1)
    with pytest.raises(ValueError):
        exceptional_twist(ExceptionalCurveId(1, 1), 3)


def test_exceptional_twist_group_laws():
    for curve in ALL_CURVES:
        for j in TAGS:
            once = exceptional_twist(curve, j)
            assert once.family == curve.family
            assert exceptional_twist(once, j) == curve  # involution
    # the four twist classes form a Klein four-group: composing two tags
    # lands on the class of their product
    squares = {1: 1, -1: -1, 2: 2, -2: -2, 4: 1, -4: -1}
    for curve in ALL_CURVES:
        for j1 in TAGS:
            for j2 in TAGS:
                lhs = exceptional_twist(exceptional_twist(curve, j1), j2)
                product_class = squares[j1 * j2 if abs(j1 * j2) <= 4 else j1 * j2 // 4]
                if product_class == 1:
                    assert lhs == curve
                else:
                    assert lhs == exceptional_twist(curve, product_class)


def test_exceptional_level_valuations():
    for r in (1, -1, 2, -2):
        assert exceptional_level_valuation(ExceptionalCurveId(1, r)) == 7
    assert exceptional_level_valuation(ExceptionalCurveId(2, 1)) == 4
    assert exceptional_level_valuation(ExceptionalCurveId(2, -1)) == 3
    assert exceptional_level_valuation(ExceptionalCurveId(2, 2)) == 6
    assert exceptional_level_valuation(ExceptionalCurveId(2, -2)) == 6
    # levels sit in rows of the valuation table that admit the exceptional type
    for curve in ALL_CURVES:
        assert T2.SCII in allowed_types_two(exceptional_level_valuation(curve))


def test_exceptional_twist_consistency_with_root_numbers():
    """Sign changes across the orbit come straight from the table (8 curves x 3 tags)."""
    for curve in ALL_CURVES:
        for j in TAGS:
            twisted = exceptional_twist(curve, j)
            ratio = exceptional_root_number(twisted) * exceptional_root_number(curve)
            assert ratio in (-1, 1)
            # the change is symmetric along the twist
            back = exceptional_root_number(curve) * exceptional_root_number(twisted)
            assert back == ratio
