"""Ring, Polynomial, Point, RingMap, and LaurentElement behavior."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lndkit import (
    DegreeSpread,
    ExponentOverflowError,
    GradingError,
    LaurentElement,
    MixedDenominatorError,
    NotDivisibleError,
    Point,
    Polynomial,
    Ring,
    RingMap,
    RingMismatchError,
    UnknownVariableError,
)
from lndkit.poly import EXPONENT_CAP, grlex_key

R3 = Ring(("x", "y", "z"))
RW = Ring(("x", "s", "t", "u", "v"), (1, 3, 3, 3, 2))
X, Y, Z = R3.var("x"), R3.var("y"), R3.var("z")


# -- strategies -------------------------------------------------------------

small_fractions = st.builds(
    Fraction, st.integers(-9, 9), st.integers(1, 9)
)


@st.composite
def polynomials(draw, ring=R3, max_terms=4, max_exp=3):
    terms = {}
    for _ in range(draw(st.integers(min_value=0, max_value=max_terms))):
        mono = tuple(
            draw(st.integers(min_value=0, max_value=max_exp))
            for _ in range(ring.nvars)
        )
        terms[mono] = draw(small_fractions)
    return Polynomial(ring, terms)


@st.composite
def points(draw, ring=R3):
    return Point(ring, tuple(draw(small_fractions) for _ in range(ring.nvars)))


# -- Ring -------------------------------------------------------------------


def test_ring_validation():
    with pytest.raises(ValueError):
        Ring(())
    with pytest.raises(ValueError):
        Ring(("x", "x"))
    with pytest.raises(ValueError):
        Ring(("2x",))
    with pytest.raises(ValueError):
        Ring(("a-b",))
    with pytest.raises(ValueError):
        Ring(("x", "y"), (1,))
    with pytest.raises(ValueError):
        Ring(("x",), (0,))
    with pytest.raises(ValueError):
        Ring(("x",), (-3,))


def test_ring_accessors():
    assert R3.nvars == 3
    assert R3.index("y") == 1
    with pytest.raises(UnknownVariableError):
        R3.index("w")
    with pytest.raises(UnknownVariableError):
        R3.var("w")
    assert R3.var("x") == Polynomial(R3, {(1, 0, 0): 1})
    assert R3.const(Fraction(2, 3)).constant_term() == Fraction(2, 3)
    assert R3.zero().is_zero()
    assert R3.one() == 1
    assert R3.monomial((1, 2, 0), 5) == 5 * X * Y**2


def test_underscore_names_allowed():
    ring = Ring(("_a", "b_2"))
    assert ring.var("_a").degree_in("_a") == 1


# -- Polynomial construction and inspection ---------------------------------


def test_constructor_rejects_bad_terms():
    with pytest.raises(ValueError):
        Polynomial(R3, {(1, 0): 1})
    with pytest.raises(ValueError):
        Polynomial(R3, {(-1, 0, 0): 1})
    with pytest.raises(ValueError):
        Polynomial(R3, {(Fraction(1, 2), 0, 0): 1})
    with pytest.raises(ExponentOverflowError):
        Polynomial(R3, {(EXPONENT_CAP + 1, 0, 0): 1})


def test_zero_coefficients_dropped():
    p = Polynomial(R3, {(1, 0, 0): 0, (0, 1, 0): 2})
    assert len(p) == 1
    assert p == 2 * Y


def test_immutable():
    with pytest.raises(AttributeError):
        X.ring = R3


def test_terms_descending_grlex():
    p = X**2 + X * Y * Z + Y + 3
    monos = [m for m, _ in p.terms()]
    keys = [grlex_key(m) for m in monos]
    assert keys == sorted(keys, reverse=True)
    assert p.leading_term() == ((1, 1, 1), Fraction(1))
    assert p.leading_coefficient() == 1


def test_leading_term_of_zero():
    with pytest.raises(ValueError):
        R3.zero().leading_term()


def test_degrees_and_inspection():
    p = X**2 * Y + Z
    assert p.total_degree() == 3
    assert R3.zero().total_degree() == -1
    assert p.degree_in("x") == 2
    assert p.degree_in("y") == 1
    assert R3.zero().degree_in("x") == -1
    assert p.variables_used() == ("x", "y", "z")
    assert (Y + 1).variables_used() == ("y",)
    assert not p.is_constant()
    assert R3.const(7).is_constant()
    assert R3.zero().is_constant()
    assert (p + 5).constant_term() == 5
    assert p.coefficient((2, 1, 0)) == 1
    assert p.coefficient((9, 9, 9)) == 0


def test_weighted_degree():
    x, s = RW.var("x"), RW.var("s")
    assert (x**2 * s).weighted_degree() == 5
    assert (x**3 + RW.var("t")).weighted_degree() == 3
    assert (x**3 + RW.var("t")).is_homogeneous()
    spread = (x + s).weighted_degree()
    assert spread == DegreeSpread(1, 3)
    assert not (x + s).is_homogeneous()
    assert RW.zero().weighted_degree() == 0
    with pytest.raises(GradingError):
        X.weighted_degree()


# -- arithmetic -------------------------------------------------------------


def test_basic_identities():
    assert (X + Y) ** 2 == X**2 + 2 * X * Y + Y**2
    assert (X + Y) * (X - Y) == X**2 - Y**2
    assert X - X == R3.zero()
    assert -(X - Y) == Y - X
    assert 1 - X == R3.one() - X
    assert 2 + X == X + 2
    assert Fraction(1, 2) * X + Fraction(1, 2) * X == X
    assert 0 * X == R3.zero()
    assert X**0 == 1


def test_pow_validation():
    with pytest.raises(ValueError):
        X ** (-1)
    with pytest.raises(ValueError):
        X ** Fraction(1, 2)


def test_ring_mismatch():
    other = Ring(("x", "y", "z"), (1, 1, 1))
    with pytest.raises(RingMismatchError):
        X + other.var("x")
    with pytest.raises(RingMismatchError):
        X * other.var("x")


def test_unsupported_operand():
    with pytest.raises(TypeError):
        X + "y"
    with pytest.raises(TypeError):
        "y" * X


@given(polynomials(), polynomials(), polynomials())
def test_distributive(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(polynomials(), polynomials())
def test_commutative(a, b):
    assert a * b == b * a
    assert a + b == b + a


@given(polynomials(), polynomials(), points())
def test_evaluation_is_a_homomorphism(a, b, pt):
    assert (a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt)
    assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)


@given(polynomials(), st.integers(min_value=0, max_value=4))
def test_pow_matches_repeated_product(a, n):
    expected = R3.one()
    for _ in range(n):
        expected = expected * a
    assert a**n == expected


# -- calculus and substitution ----------------------------------------------


def test_partial():
    p = X**3 * Y + 2 * Z
    assert p.partial("x") == 3 * X**2 * Y
    assert p.partial("z") == 2
    assert R3.const(5).partial("x").is_zero()
    with pytest.raises(UnknownVariableError):
        p.partial("w")


@given(polynomials(), polynomials())
def test_partial_leibniz(a, b):
    lhs = (a * b).partial("x")
    assert lhs == a.partial("x") * b + a * b.partial("x")


def test_evaluate():
    p = X**2 + Y * Z - 1
    pt = Point(R3, (2, 3, Fraction(1, 3)))
    assert p.evaluate(pt) == 4 + 1 - 1
    with pytest.raises(RingMismatchError):
        p.evaluate(Point(RW, (0, 0, 0, 0, 0)))


def test_point():
    pt = Point(R3, (1, 2, 3))
    assert pt.coordinate("y") == 2
    assert pt.replace("y", Fraction(1, 2)).coordinate("y") == Fraction(1, 2)
    assert pt.replace("y", 9) != pt
    with pytest.raises(ValueError):
        Point(R3, (1, 2))
    with pytest.raises(UnknownVariableError):
        pt.coordinate("w")


def test_exact_divide_var():
    p = X**2 * Y + X**3
    assert p.exact_divide_var("x") == X * Y + X**2
    assert p.exact_divide_var("x", 2) == Y + X
    assert p.exact_divide_var("x", 0) is p
    with pytest.raises(ValueError):
        p.exact_divide_var("x", -1)
    with pytest.raises(NotDivisibleError) as info:
        (X**2 * Y + Y).exact_divide_var("x")
    assert info.value.witness == (0, 1, 0)


def test_min_exponent():
    assert (X**2 * Y + X**3).min_exponent("x") == 2
    assert (X + Y).min_exponent("x") == 0
    assert R3.zero().min_exponent("x") == 0


def test_content_and_primitive():
    p = Fraction(4, 6) * X + Fraction(2, 6) * Y
    content, prim = p.content_and_primitive()
    assert content == Fraction(1, 3)
    assert prim == 2 * X + Y
    assert content * prim == p
    # sign convention: primitive part has positive leading coefficient
    content, prim = (-2 * X - 4 * Y).content_and_primitive()
    assert content == -2
    assert prim == X + 2 * Y
    assert R3.zero().content_and_primitive() == (0, R3.zero())
    assert prim.primitive() == prim


def test_monic():
    assert (3 * X + 6 * Y).monic() == X + 2 * Y
    assert R3.zero().monic().is_zero()


def test_eq_hash():
    a = X + Y
    b = Y + X
    assert a == b and hash(a) == hash(b)
    assert R3.const(3) == 3
    assert a != 3
    assert repr(a) == "Polynomial(x + y)"


# -- RingMap ----------------------------------------------------------------


def test_ring_map_validation():
    with pytest.raises(ValueError):
        RingMap(R3, R3, (X, Y))
    with pytest.raises(RingMismatchError):
        RingMap(R3, R3, (X, Y, RW.var("x")))
    with pytest.raises(UnknownVariableError):
        RingMap.from_mapping(R3, R3, {"w": X})


def test_ring_map_apply():
    sub = RingMap.from_mapping(R3, R3, {"x": X + Y})
    assert sub(X**2) == (X + Y) ** 2
    assert sub(Z) == Z
    assert sub(R3.const(Fraction(1, 7))) == Fraction(1, 7)
    with pytest.raises(RingMismatchError):
        sub(RW.var("x"))


def test_ring_map_identity_and_composition():
    ident = RingMap.from_mapping(R3, R3, {})
    p = X**2 * Y - Z + 4
    assert ident(p) == p
    double = RingMap.from_mapping(R3, R3, {"x": 2 * X})
    assert double(double(p)) == RingMap.from_mapping(R3, R3, {"x": 4 * X})(p)


@given(polynomials(), polynomials())
def test_ring_map_is_a_homomorphism(a, b):
    link = RingMap.from_mapping(R3, R3, {"x": Y + 1, "y": X * Z})
    assert link(a + b) == link(a) + link(b)
    assert link(a * b) == link(a) * link(b)


# -- LaurentElement ---------------------------------------------------------


def test_laurent_normalization():
    elem = LaurentElement(X**2 * Y, "x", 1)
    assert elem.denom_power == 0
    assert elem.numerator == X * Y
    assert elem.is_polynomial()
    elem = LaurentElement(X * Y, "x", 3)
    assert elem.denom_power == 2
    assert elem.numerator == Y
    assert LaurentElement(R3.zero(), "x", 5).denom_power == 0
    with pytest.raises(ValueError):
        LaurentElement(X, "x", -1)
    with pytest.raises(UnknownVariableError):
        LaurentElement(X, "w", 1)


def test_laurent_as_polynomial():
    assert LaurentElement(X * Y, "x", 1).as_polynomial() == Y
    with pytest.raises(NotDivisibleError):
        LaurentElement(Y, "x", 1).as_polynomial()


def test_laurent_arithmetic():
    inv = LaurentElement(R3.one(), "x", 1)  # 1/x
    inv2 = LaurentElement(R3.one(), "x", 2)
    assert inv + inv2 == LaurentElement(X + 1, "x", 2)
    assert inv * inv == inv2
    assert inv**3 == LaurentElement(R3.one(), "x", 3)
    assert inv - inv == LaurentElement(R3.zero(), "x", 0)
    assert (inv + 1) - 1 == inv
    assert 2 * inv == LaurentElement(R3.const(2), "x", 1)
    assert inv * X == 1
    assert X * inv == 1
    assert inv + Y == LaurentElement(X * Y + 1, "x", 1)
    with pytest.raises(ValueError):
        inv ** (-1)


def test_laurent_mixed_denominators():
    invx = LaurentElement(R3.one(), "x", 1)
    invy = LaurentElement(R3.one(), "y", 1)
    with pytest.raises(MixedDenominatorError):
        invx + invy
    # a polynomial disguised with a different denom var mixes fine
    poly_y = LaurentElement(X, "y", 0)
    assert invx + poly_y == LaurentElement(X**2 + 1, "x", 1)


def test_laurent_equality_and_str():
    inv = LaurentElement(R3.one(), "x", 1)
    assert inv == LaurentElement(R3.one(), "x", 1)
    assert inv != LaurentElement(R3.one(), "x", 2)
    assert LaurentElement(X, "x", 0) == X
    assert LaurentElement(R3.const(3), "y", 0) == 3
    assert str(inv) == "(1) / x"
    assert str(inv**2) == "(1) / x^2"
    assert str(LaurentElement(X, "x", 0)) == "x"
    assert hash(LaurentElement(Y, "x", 0)) == hash(LaurentElement(Y, "z", 0))
    with pytest.raises(RingMismatchError):
        inv + RW.var("x")
