import pytest
from hypothesis import given
from hypothesis import strategies as st

from app.errors import OrdinalDepthExceeded, OrdinalError, OrdinalSyntaxError
from app.ordinals.cnf import (
    OMEGA,
    ONE,
    ZERO,
    Kind,
    Ordinal,
    add,
    compare,
    finite_part,
    format_ordinal,
    fundamental_sequence,
    generate_ordinals,
    limit_part,
    mul_omega,
    omega_power,
    parse_ordinal,
    predecessor,
    successor_kind,
    sup,
)

SMALL = generate_ordinals(2, 5)
ordinals = st.sampled_from(SMALL)


def test_parse_and_format():
    for text in ["0", "5", "w", "w*3", "w^2*3+w+4", "w^(w)", "w^(w+1)*2+7"]:
        assert format_ordinal(parse_ordinal(text)) == text
    assert parse_ordinal("w^1*1") == OMEGA
    assert format_ordinal(parse_ordinal("w^w")) == "w^(w)"
    assert parse_ordinal(" w + 1 ") == add(OMEGA, ONE)


def test_parse_errors():
    for text in ["", "x", "w^", "w*", "w+", "(w)", "w*w"]:
        with pytest.raises(OrdinalSyntaxError):
            parse_ordinal(text)


def test_absorption():
    assert add(ONE, OMEGA) == OMEGA
    assert add(OMEGA, ONE) != OMEGA
    assert add(OMEGA, OMEGA) == omega_power(1, 2)
    assert add(parse_ordinal("w+5"), parse_ordinal("w^2")) == omega_power(2)
    assert 3 + OMEGA == OMEGA
    assert OMEGA + 3 == parse_ordinal("w+3")


def test_comparison_and_coercion():
    assert ZERO < ONE < Ordinal.of(7) < OMEGA < parse_ordinal("w+1") < parse_ordinal("w*2") < omega_power(2)
    assert Ordinal.of(4) == 4
    assert OMEGA > 1000
    assert Ordinal.of(3).to_int() == 3
    with pytest.raises(OrdinalError):
        OMEGA.to_int()
    with pytest.raises(OrdinalError):
        Ordinal.of(-1)
    with pytest.raises(OrdinalError):
        Ordinal.of(True)


def test_kinds_and_predecessor():
    assert successor_kind(ZERO) is Kind.ZERO
    assert successor_kind(parse_ordinal("w+2")) is Kind.SUCCESSOR
    assert successor_kind(parse_ordinal("w^2+w")) is Kind.LIMIT
    assert predecessor(parse_ordinal("w*2+1")) == omega_power(1, 2)
    assert predecessor(parse_ordinal("w+3")) == parse_ordinal("w+2")
    with pytest.raises(OrdinalError):
        predecessor(OMEGA)


def test_limit_and_finite_part():
    a = parse_ordinal("w^2*2+w+5")
    assert limit_part(a) == parse_ordinal("w^2*2+w")
    assert finite_part(a) == 5
    assert add(limit_part(a), Ordinal.of(finite_part(a))) == a
    assert finite_part(OMEGA) == 0


def test_mul_omega():
    assert mul_omega(Ordinal.of(3)) == omega_power(1, 3)
    assert mul_omega(parse_ordinal("w+1")) == parse_ordinal("w^2+w")
    assert mul_omega(OMEGA) == omega_power(2)


def test_fundamental_sequences():
    assert [fundamental_sequence(OMEGA, i) for i in range(4)] == [0, 1, 2, 3]
    assert fundamental_sequence(parse_ordinal("w*2"), 3) == parse_ordinal("w+3")
    assert fundamental_sequence(omega_power(2), 2) == parse_ordinal("w*2")
    assert fundamental_sequence(parse_ordinal("w^(w)"), 3) == omega_power(3, 3)
    with pytest.raises(OrdinalError):
        fundamental_sequence(Ordinal.of(2), 0)


def test_sup():
    assert sup([]) == ZERO
    assert sup([2, OMEGA, 5]) == OMEGA


def test_depth_budget():
    text = "w^(" * 9 + "1" + ")" * 9
    with pytest.raises(OrdinalDepthExceeded):
        parse_ordinal(text)


@given(ordinals, ordinals, ordinals)
def test_addition_is_associative(a, b, c):
    assert add(add(a, b), c) == add(a, add(b, c))


@given(ordinals, ordinals, ordinals)
def test_addition_is_monotone(a, b, c):
    if b < c:
        assert add(a, b) < add(a, c)
        assert add(b, a) <= add(c, a)


@given(ordinals)
def test_limit_part_is_idempotent(a):
    assert limit_part(limit_part(a)) == limit_part(a)


@given(ordinals, ordinals)
def test_mul_omega_distributes(b, c):
    assert mul_omega(add(b, c)) == add(mul_omega(b), mul_omega(c))


@given(ordinals)
def test_format_parse_round_trip(a):
    assert parse_ordinal(format_ordinal(a)) == a


def test_generated_ordinals_below_w_cubed():
    assert len(SMALL) >= 200
    assert len(set(SMALL)) == len(SMALL)
    assert all(a < omega_power(3) for a in SMALL)


@given(ordinals, ordinals)
def test_compare_is_total_and_antisymmetric(a, b):
    assert compare(a, b) in (-1, 0, 1)
    assert compare(a, b) == -compare(b, a)
    assert (compare(a, b) == 0) == (a == b)
    assert (a < b) + (a == b) + (b < a) == 1


@given(ordinals, ordinals)
def test_mul_omega_is_strictly_monotone(a, b):
    if a < b:
        assert mul_omega(a) < mul_omega(b)


@given(ordinals)
def test_limit_part_fixes_exactly_limits_and_zero(a):
    assert (limit_part(a) == a) == (successor_kind(a) is not Kind.SUCCESSOR)


@given(ordinals)
def test_mul_omega_is_a_limit(b):
    assert limit_part(mul_omega(b)) == mul_omega(b)
