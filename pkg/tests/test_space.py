import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rankone.errors import Divergent, InvalidSpace
from rankone.series import I, ComplexRational, Geometric, PowerSeries, build_h0, geometric_series
from rankone.space import Kind, Status, make_space, membership, norm_sq, resolvent_membership

NAMED = ["hardy", "bergman", "dirichlet"]


@pytest.fixture(scope="module")
def spaces():
    return {k: make_space(k) for k in NAMED}


def test_named_weights(spaces):
    H, B, D = spaces["hardy"], spaces["bergman"], spaces["dirichlet"]
    assert H.a(5) == 1 and H.shift_weights(4) == [1.0] * 4
    assert B.a(5) == 6 and B.shift_weights(1)[0] == pytest.approx(math.sqrt(0.5))
    assert D.a(5) == F(1, 6) and D.shift_weights(1)[0] == pytest.approx(math.sqrt(2))
    assert (B.rho_min, B.rho_max) == (F(1, 2), 1)
    assert (D.rho_min, D.rho_max) == (1, 2)


def test_named_space_takes_no_params():
    with pytest.raises(InvalidSpace):
        make_space("hardy", {"rho_min": 1})


def test_custom_table_continues_last_ratio():
    S = make_space("custom", {"table": [1, F(1, 2), F(1, 4)], "rho_min": 2, "rho_max": 2})
    assert S.kind is Kind.CUSTOM
    assert [S.a(j) for j in range(5)] == [1, F(1, 2), F(1, 4), F(1, 8), F(1, 16)]


def test_custom_rule():
    S = make_space("custom", {"rule": lambda j: F(j + 1, 1) ** 2, "rho_min": F(1, 4), "rho_max": 1})
    assert S.a(3) == 16


@pytest.mark.parametrize("params,match", [
    ({"table": [2, 1], "rho_min": 1, "rho_max": 2}, "a_0 must be 1"),
    ({"table": [1, 0], "rho_min": 1, "rho_max": 2}, "not positive"),
    ({"table": [1, -1, 1], "rho_min": 1, "rho_max": 2}, "not positive"),
    ({"table": [1, F(1, 3)], "rho_min": 1, "rho_max": 2}, "outside declared"),
    ({"table": [1]}, "rho_min and rho_max"),
    ({"table": [1], "rho_min": 2, "rho_max": 1}, "rho_min <= rho_max"),
    ({"rho_min": 1, "rho_max": 1}, "exactly one"),
])
def test_custom_space_validation(params, match):
    with pytest.raises(InvalidSpace, match=match):
        make_space("custom", params)


# norms ------------------------------------------------------------------------


@pytest.mark.parametrize("kind", NAMED)
def test_norm_of_one(spaces, kind):
    assert norm_sq(PowerSeries.poly([1]), spaces[kind]).value == 1


@pytest.mark.parametrize("kind", NAMED)
def test_monomial_norms(spaces, kind):
    S = spaces[kind]
    for j in range(10):
        assert norm_sq(PowerSeries.monomial(j), S).value == 1 / S.a(j)


def test_hardy_geometric_norms(spaces):
    H = spaces["hardy"]
    resolvent = PowerSeries((), Geometric(ComplexRational(F(1, 2)), ComplexRational(F(1, 2)), 0))
    assert norm_sq(resolvent, H).value == F(1, 3)
    h0 = build_h0(PowerSeries.poly([2]), 2, 0)
    n = norm_sq(h0, H)
    assert n.exact and n.value == F(16, 3)


def test_float_norms_against_closed_forms(spaces):
    # sum 4 x^j / (j+1) = -4 ln(1-x)/x and sum 4 x^j (j+1) = 4/(1-x)^2 at x = 1/4
    h0 = build_h0(PowerSeries.poly([2]), 2, 0)
    nb = norm_sq(h0, spaces["bergman"])
    assert not nb.exact
    assert nb.value == pytest.approx(16 * math.log(4 / 3), rel=1e-13)
    assert nb.tail_bound < 1e-300
    nd = norm_sq(h0, spaces["dirichlet"])
    assert nd.value == pytest.approx(64 / 9, rel=1e-13)


def test_norm_sq_divergent(spaces):
    with pytest.raises(Divergent):
        norm_sq(geometric_series(1), spaces["hardy"])


def test_norm_sq_partial_sums_nondecreasing(spaces):
    h = PowerSeries((), Geometric(ComplexRational(1), ComplexRational(F(2, 3)), 0))
    for kind in NAMED:
        vals = [float(norm_sq(h, spaces[kind], D).value) for D in (8, 64, 512, 4096)]
        assert vals == sorted(vals)


# membership -----------------------------------------------------------------


def test_membership_examples(spaces):
    H = spaces["hardy"]
    assert membership(PowerSeries((), Geometric(ComplexRational(1), ComplexRational(F(1, 2)), 0)), H).status is Status.MEMBER
    v = membership(geometric_series(1), H)
    assert v.status is Status.NON_MEMBER and v.reason
    for kind in NAMED:
        assert membership(PowerSeries.poly([1, 2, 3]), spaces[kind]).member


def test_resolvent_examples(spaces):
    v = resolvent_membership(2, spaces["hardy"])
    assert v.status is Status.MEMBER and v.norm_sq == F(1, 3)
    assert resolvent_membership(1, spaces["bergman"]).status is Status.NON_MEMBER
    assert resolvent_membership(F(1, 2), spaces["dirichlet"]).status is Status.NON_MEMBER
    with pytest.raises(ZeroDivisionError):
        resolvent_membership(0, spaces["hardy"])


@pytest.mark.parametrize("kind", NAMED)
@pytest.mark.parametrize("modulus", [F(1, 2), F(1), F(3, 2), F(2)])
@pytest.mark.parametrize("phase", [ComplexRational(1), I, ComplexRational(F(3, 5), F(4, 5))])
def test_geometric_membership_iff_outside_disc(spaces, kind, modulus, phase):
    b = phase * ComplexRational(modulus)
    h = geometric_series(b)
    h = PowerSeries(h.prefix, Geometric(ComplexRational(3), h.tail.ratio, h.tail.start))
    assert membership(h, spaces[kind]).member == (modulus > 1)


def test_float_norm_with_decaying_weights():
    S = make_space("custom", {"table": [1, F(1, 2)], "rho_min": 2, "rho_max": 2})
    h = PowerSeries((), Geometric(ComplexRational(1), ComplexRational(F(1, 4)), 0))
    # terms 16^-j 2^j = 8^-j
    assert float(norm_sq(h, S).value) == pytest.approx(8 / 7, rel=1e-14)


def test_custom_boundary_band_is_inconclusive():
    S = make_space("custom", {"table": [1, F(1, 2)], "rho_min": 2, "rho_max": 2})
    # ratio test decides outside the band |q|^2 = 1/2
    assert resolvent_membership(2, S).status is Status.MEMBER
    assert resolvent_membership(F(1, 2), S).status is Status.NON_MEMBER
    unimodular = ComplexRational(F(3, 5), F(4, 5))
    v = membership(PowerSeries((), Geometric(ComplexRational(1), unimodular, 0)), S)
    assert v.status is Status.NON_MEMBER
    S2 = make_space("custom", {"table": [1, 1], "rho_min": F(1, 2), "rho_max": 2})
    v = resolvent_membership(1, S2)
    assert v.status is Status.INCONCLUSIVE and v.member is None


@given(st.fractions(min_value=F(1, 10), max_value=F(9, 10), max_denominator=20))
def test_member_norm_bounded(r):
    h = PowerSeries((), Geometric(ComplexRational(1), ComplexRational(r), 0))
    H = make_space("hardy")
    assert norm_sq(h, H).value == 1 / (1 - r * r)
