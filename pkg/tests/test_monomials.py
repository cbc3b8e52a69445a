from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from heptic16.monomials import (GREVLEX, GRLEX, MonomialIdeal, NotApplicable,
                                compare, descending, format_monomial,
                                hilbert_count, is_borel_fixed, is_saturated,
                                monomials_of_degree, parse_monomial,
                                regularity_saturated_borel)

from oracles import borel_closure, brute_is_borel


def test_grevlex_examples():
    # x0 > x1 > x2 and x1^2 > x0 x2 in grevlex (but not in grlex)
    assert compare((1, 0, 0), (0, 1, 0)) == 1
    assert compare((0, 2, 0), (1, 0, 1), GREVLEX) == 1
    assert compare((0, 2, 0), (1, 0, 1), GRLEX) == -1
    assert compare((2, 0, 0), (0, 0, 3)) == -1
    assert descending(monomials_of_degree(3, 2))[:3] == [(2, 0, 0), (1, 1, 0), (0, 2, 0)]


@settings(max_examples=100)
@given(st.lists(st.integers(0, 3), min_size=4, max_size=4), st.lists(st.integers(0, 3), min_size=4, max_size=4))
def test_grevlex_is_total_and_antisymmetric(a, b):
    a, b = tuple(a), tuple(b)
    assert compare(a, b) == -compare(b, a)
    assert (compare(a, b) == 0) == (a == b)


def test_monomial_counts():
    for n in range(1, 5):
        for m in range(5):
            assert len(monomials_of_degree(n, m)) == comb(m + n - 1, n - 1)


def test_minimal_generators():
    I = MonomialIdeal(2, [(2, 0), (3, 1), (0, 2), (1, 2)])
    assert I.gens == ((0, 2), (2, 0))
    assert (2, 5) in I and (1, 1) not in I


seeds = st.integers(2, 4).flatmap(
    lambda n: st.lists(st.tuples(*[st.integers(0, 3)] * (n - 1)).map(lambda t: t + (0,)), min_size=1, max_size=3))


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_borel_closure_properties(gens):
    gens = [g for g in gens if any(g)]
    if not gens:
        return
    I = MonomialIdeal(len(gens[0]), borel_closure(gens))
    assert is_borel_fixed(I)
    assert brute_is_borel(I, I.max_degree() + 1)
    assert is_saturated(I)
    assert regularity_saturated_borel(I) == I.max_degree()
    for m in range(I.max_degree() + 2):
        assert hilbert_count(I, m) + hilbert_count(I, m, "quotient") == comb(m + I.nvars - 1, I.nvars - 1)


def test_borel_detection_negative():
    I = MonomialIdeal(3, [(0, 1, 0)])
    assert not is_borel_fixed(I)
    assert not brute_is_borel(I, 2)
    with pytest.raises(NotApplicable):
        regularity_saturated_borel(I)
    with pytest.raises(NotApplicable):
        regularity_saturated_borel(MonomialIdeal(2, [(1, 0), (0, 1)]))


def test_hilbert_count_of_points():
    # (x0^2, x0 x1, x1^2) in three variables: three points, quotient count 3 from degree 1 on
    I = MonomialIdeal(3, [(2, 0, 0), (1, 1, 0), (0, 2, 0)])
    assert [hilbert_count(I, m, "quotient") for m in range(5)] == [1, 3, 3, 3, 3]
    with pytest.raises(ValueError):
        hilbert_count(I, 2, "both")


def test_parse_and_format():
    assert parse_monomial("x_0^3x_2", 5) == (3, 0, 1, 0, 0)
    assert parse_monomial("x1^{4}*x3", 5) == (0, 4, 0, 1, 0)
    assert format_monomial((2, 1, 0)) == "x0^2*x1"
    assert format_monomial((0, 0)) == "1"
    with pytest.raises(ValueError):
        parse_monomial("y^2", 3)


def test_extend():
    I = MonomialIdeal(2, [(1, 1)]).extend(3)
    assert I.gens == ((1, 1, 0),)
    with pytest.raises(ValueError):
        I.extend(2)
