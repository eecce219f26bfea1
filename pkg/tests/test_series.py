from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rankone.errors import PreconditionViolation
from rankone.series import (
    I,
    ONE,
    ZERO,
    ComplexRational,
    Geometric,
    PowerSeries,
    build_h0,
    coeff,
    format_poly,
    geometric_series,
    parse_complex_rational,
    parse_poly,
    poly_eval,
    pretty_poly,
    ps_mul_truncated,
    tail_closed_form,
)

C = ComplexRational

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)
complex_rationals = st.builds(C, fractions, fractions)
nonzero_complex = complex_rationals.filter(bool)
polys = st.lists(complex_rationals, min_size=1, max_size=5).map(PowerSeries.poly)


def naive_h0(f, c, D):
    """Double sum over i of f(j - i) / c**i, no recurrence."""
    return [sum((f.coeff(j - i) / c ** i for i in range(j + 1)), ZERO) for j in range(D + 1)]


# ComplexRational ------------------------------------------------------------


def test_reduced_form_and_equality():
    x = C(F(2, 4), F(-3, 6))
    assert x.re == F(1, 2) and x.im == F(-1, 2)
    assert x == C(F(1, 2), F(-1, 2))
    assert C(3) == 3 and hash(C(3)) == hash(C(3, 0))


def test_exact_division():
    x = C(1, 2) / C(3, -4)
    assert x * C(3, -4) == C(1, 2)
    assert x == C(F(-1, 5), F(2, 5))
    with pytest.raises(ZeroDivisionError):
        _ = ONE / ZERO


def test_powers_of_i():
    assert [I ** k for k in range(4)] == [ONE, I, -ONE, -I]
    assert I ** -1 == -I


@given(complex_rationals, complex_rationals, nonzero_complex)
def test_field_identities(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * z) / z == x
    assert (x - y) + y == x
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    assert (x * x.conjugate()).im == 0 and (x * x.conjugate()).re == x.abs2()


@pytest.mark.parametrize("text,expected", [
    ("1/2+0/1 i", C(F(1, 2))),
    ("-3/4 - 2/6i", C(F(-3, 4), F(-1, 3))),
    ("i", I),
    ("-i", -I),
    (" 5 ", C(5)),
    ("2/3i", C(0, F(2, 3))),
    ("0.25", C(F(1, 4))),
])
def test_parse_complex_rational(text, expected):
    assert parse_complex_rational(text) == expected


@pytest.mark.parametrize("text", ["", "1/0", "abc", "1/2 + ", "i i"])
def test_parse_complex_rational_rejects(text):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_complex_rational(text)


def test_parse_and_format_poly():
    f = parse_poly("1/2, -1")
    assert f.coeffs(3) == [C(F(1, 2)), C(-1), ZERO]
    assert format_poly(f) == "1/2, -1"
    assert pretty_poly(f) == "-z + 1/2"
    assert pretty_poly(parse_poly("0, -5, 0, 1")) == "z^3 - 5*z"
    assert pretty_poly(parse_poly("0, -1, 1")) == "z^2 - z"
    assert pretty_poly(PowerSeries.poly([0])) == "0"


# coefficients -------------------------------------------------------------


def test_coeff_examples():
    assert coeff(PowerSeries.poly([1, 1]), 1) == 1
    assert coeff(PowerSeries((), Geometric(ONE, C(F(1, 2)), 0)), 3) == F(1, 8)
    h = PowerSeries((C(2),), Geometric(C(2), C(F(1, 2)), 1))
    assert coeff(h, 0) == 2
    assert coeff(h, 3) == F(1, 2)
    assert coeff(PowerSeries.poly([1, 1]), 7) == 0


def test_tail_must_start_after_prefix():
    with pytest.raises(ValueError):
        PowerSeries((ONE, ONE), Geometric(ONE, ONE, 1))


@given(st.integers(0, 3), nonzero_complex, complex_rationals, st.integers(0, 20))
def test_materialize_preserves_coefficients(n0, q, s, D):
    h = PowerSeries(tuple(C(k) for k in range(n0)), Geometric(s, q, n0))
    m = h.materialize(D)
    assert m.coeffs(D + 5) == h.coeffs(D + 5)
    assert h.remainder(D).coeffs(D + 5) == [ZERO] * min(D, D + 5) + h.coeffs(D + 5)[D:]


# products and geometric series ------------------------------------------------


def test_ps_mul_examples():
    assert ps_mul_truncated(PowerSeries.poly([1, 1]), PowerSeries.poly([1, -1]), 2).coeffs(3) == [1, 0, -1]
    assert ps_mul_truncated(PowerSeries.poly([1, 2]), PowerSeries.poly([0]), 4).coeffs(5) == [0] * 5
    b = C(3)
    assert ps_mul_truncated(PowerSeries.poly([b, -1]), geometric_series(b), 3).coeffs(6) == [3, 0, 0, 0, 0, 0]


def test_geometric_series_examples():
    assert geometric_series(1).coeffs(5) == [1] * 5
    assert geometric_series(2).coeffs(4) == [1, F(1, 2), F(1, 4), F(1, 8)]
    assert geometric_series(I).coeffs(5) == [1, -I, -1, I, 1]
    with pytest.raises(ZeroDivisionError):
        geometric_series(0)


def test_poly_eval_examples():
    b = C(F(1, 2))
    assert poly_eval(PowerSeries.poly([1, 1]), 1) == 2
    assert poly_eval(PowerSeries.poly([b, -1]), b) == 0
    assert poly_eval(PowerSeries.poly([2]), 2) == 2
    assert poly_eval(PowerSeries.poly([0, 1, 1]), I) == C(-1, 1)


# h0 and its tail ------------------------------------------------------------


def test_build_h0_examples():
    h = build_h0(PowerSeries.poly([2]), 2, 4)
    assert h.coeffs(8) == [2 * F(1, 2) ** j for j in range(8)]
    b = C(F(1, 2))
    h = build_h0(PowerSeries.poly([b, -1]), b, 5)
    assert h.is_polynomial and h.coeffs(6) == [b, 0, 0, 0, 0, 0]
    assert build_h0(PowerSeries.poly([1, 1]), 1, 3).coeffs(6) == [1, 2, 2, 2, 2, 2]
    with pytest.raises(ZeroDivisionError):
        build_h0(PowerSeries.poly([1]), 0, 3)


def test_tail_closed_form_examples():
    t = tail_closed_form(PowerSeries.poly([1, 1]))
    assert (t.scale, t.ratio, t.start) == (2, 1, 1)
    assert not tail_closed_form(PowerSeries.poly([F(1, 2), -1])).scale
    t = tail_closed_form(PowerSeries.poly([2]))
    assert (t.scale, t.ratio, t.start) == (2, F(1, 2), 0)
    with pytest.raises(PreconditionViolation):
        tail_closed_form(PowerSeries.poly([0, 1]))


@settings(max_examples=60, deadline=None)
@given(polys.filter(lambda f: bool(f.coeff(0))), st.integers(0, 24))
def test_h0_matches_double_sum_and_product(f, D):
    c = f.coeff(0)
    h = build_h0(f, c, D)
    expected = naive_h0(f, c, D)
    assert h.coeffs(D + 1) == expected
    assert ps_mul_truncated(f, geometric_series(c), D).coeffs(D + 1) == expected


@settings(max_examples=60, deadline=None)
@given(polys.filter(lambda f: bool(f.coeff(0))))
def test_h0_tail_closed_form(f):
    c = f.coeff(0)
    n = max(f.degree, 0)
    h = build_h0(f, c, 0)
    fc = poly_eval(f, c)
    for j in range(n, 40):
        assert h.coeff(j) == fc / c ** j


@settings(max_examples=40, deadline=None)
@given(polys, nonzero_complex, st.integers(0, 12))
def test_h0_recurrence_any_center(f, c, D):
    assert build_h0(f, c, D).coeffs(D + 1) == naive_h0(f, c, D)
