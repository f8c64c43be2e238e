import itertools
import random

import pytest
from hypothesis import given, strategies as st

from elltrace.curve import CurvePoint, WeierstrassCurve
from elltrace.exceptions import NotOnCurveError, ParseError, SingularCurveError
from elltrace.extfield import Extension
from elltrace.fields import PrimeField, RationalField, RationalFunctionField
from elltrace.poly import Polynomial

Q = RationalField()
F2, F3, F5, F7 = (PrimeField(p) for p in (2, 3, 5, 7))
F2l = RationalFunctionField(F2)

E1 = WeierstrassCurve(Q, 0, 0, 0, 1, 15)
E2 = WeierstrassCurve(F3, 0, 1, 0, 0, 1)

# small curves for exhaustive group-law checks; the first two have a1 != 0
SMALL_CURVES = [
    WeierstrassCurve(F2, 1, 0, 0, 0, 1),
    WeierstrassCurve(F3, 1, 2, 0, 1, 1),
    WeierstrassCurve(F5, 0, 0, 0, 1, 1),
    WeierstrassCurve(F2, 0, 0, 1, 1, 1),
    WeierstrassCurve(F7, 3, 1, 2, 0, 5),
]


def brute_count(E):
    K = E.field
    return 1 + sum(E.contains(K(x), K(y)) for x in K.elements() for y in K.elements())


def test_construction_and_singular_curves():
    assert E1.discriminant != 0
    with pytest.raises(SingularCurveError):
        WeierstrassCurve(Q, 0, 0, 0, 0, 0)
    lam = F2l.gen()
    E3 = WeierstrassCurve(F2l, lam, lam, 1, lam, 0)
    assert E3.discriminant != 0


def test_discriminant_of_short_form():
    # -16(4a^3 + 27b^2) for y^2 = x^3 + ax + b
    a, b = 1, 15
    assert E1.discriminant == -16 * (4 * a**3 + 27 * b**2)


def test_negation():
    assert -E1.point(2, 5) == E1.point(2, -5)
    assert -E1.infinity == E1.infinity
    assert -E2.point(2, 1) == E2.point(2, 2)
    lam = F2l.gen()
    E3 = WeierstrassCurve(F2l, lam, lam, 1, lam, 0)
    assert E3.neg(E3.infinity).is_infinity


def test_identity_and_inverse():
    P = E1.point(2, 5)
    assert P + E1.infinity == P == E1.infinity + P
    assert (P + (-P)).is_infinity
    assert (P - P).is_infinity


def test_scalar_multiplication_worked_values():
    Q2 = E2.point(2, 1)
    assert -2 * Q2 == E2.point(2, 1)
    assert 0 * Q2 == E2.infinity and 1 * Q2 == Q2
    assert E1.mul(-1, E1.point(2, 5)) == E1.point(2, -5)


def test_doubling_in_example_four():
    lam = F2l.gen()
    E = WeierstrassCurve(F2l, 1, 1, lam, 0, 0)
    L = Extension(Polynomial.parse("t^4 + t^2 + l^4 + l^3", F2l))
    P = E.point(L(Polynomial.parse("t^2 + t", F2l)), L(Polynomial.parse("t^3 + (l + 1) t + l^2 + l", F2l)))
    Q = 2 * P
    assert Q.x == L(Polynomial.parse("l^4 + l^3 + l^2 + l + 1", F2l))
    assert Q.y == L(Polynomial.parse("(l^4 + l^3 + l^2 + 1) t^2 + l^5 + l", F2l))
    assert Q.on_curve()


def test_two_torsion_doubles_to_infinity():
    # (x, y) with 2y + a1 x + a3 = 0
    E = WeierstrassCurve(F5, 0, 0, 0, 1, 0)
    T = E.point(0, 0)
    assert (T + T).is_infinity
    E = WeierstrassCurve(F2, 1, 0, 0, 0, 1)
    T = E.point(0, 1)
    assert (2 * T).is_infinity


def test_off_curve_point_names_residual():
    with pytest.raises(NotOnCurveError) as exc:
        E1.point(2, 4)
    assert exc.value.residual == 16 - 25


def test_point_enumeration_counts():
    # y^2 = x^3 + x + 1 over F_5 has 9 points
    assert len(WeierstrassCurve(F5, 0, 0, 0, 1, 1).rational_points()) == 9
    for E in SMALL_CURVES:
        assert len(E.rational_points()) == brute_count(E)


@pytest.mark.parametrize("E", SMALL_CURVES, ids=lambda E: str(E))
def test_group_axioms_exhaustively(E):
    pts = E.rational_points()
    O = E.infinity
    for P in pts:
        assert P + O == P and O + P == P
        assert (P + (-P)).is_infinity
        assert (-P).on_curve()
    for P, Q in itertools.product(pts, repeat=2):
        S = P + Q
        assert S.on_curve()
        assert S == Q + P
    for P, Q, R in itertools.product(pts, repeat=3):
        assert (P + Q) + R == P + (Q + R)


def test_group_axioms_over_an_extension():
    # E(F_4) for a curve with a1 != 0 in characteristic 2
    E = WeierstrassCurve(F2, 1, 0, 0, 0, 1)
    L = Extension(Polynomial.parse("t^2 + t + 1", F2))
    pts = E.points_over(L)
    for P, Q, R in itertools.product(pts, repeat=3):
        assert (P + Q) + R == P + (Q + R)
    for P, Q in itertools.product(pts, repeat=2):
        assert P + Q == Q + P and (P + Q).on_curve()


@given(st.integers(-20, 20), st.integers(-20, 20))
def test_scalar_multiplication_is_additive(m, n):
    E = WeierstrassCurve(F7, 3, 1, 2, 0, 5)
    for P in E.rational_points()[1:4]:
        assert E.mul(m + n, P) == E.mul(m, P) + E.mul(n, P)
        assert E.mul(-m, P) == E.mul(m, -P)


def test_scalar_multiplication_over_rationals():
    P = E1.point(2, 5)
    rng = random.Random(0)
    for _ in range(10):
        m, n = rng.randint(-6, 6), rng.randint(-6, 6)
        assert E1.mul(m + n, P) == E1.mul(m, P) + E1.mul(n, P)


def test_point_format_parse_round_trip():
    for E in SMALL_CURVES:
        for P in E.rational_points():
            assert E.parse_point(str(P)) == P
    lam = F2l.gen()
    E3 = WeierstrassCurve(F2l, lam, lam, 1, lam, 0)
    text = "((l^4 + l^3 + l)/(l^4 + 1), l^2/(l^6 + l^4 + l^2 + 1))"
    P = E3.parse_point(text)
    assert str(P) == text
    with pytest.raises(ParseError):
        E3.parse_point("(1, 2, 3)")
    with pytest.raises(ParseError):
        E3.parse_point("[1, 2]")


def test_hash_and_equality():
    assert {E1.point(2, 5), E1.point(2, 5), E1.infinity, E1.infinity} == {E1.point(2, 5), E1.infinity}
    assert isinstance(E1.infinity, CurvePoint) and str(E1.infinity) == "O"
