import random

import pytest
import sympy

from heptic16.curve import (BiForm, InputError, NonGenericSyzygies, ParamCurve,
                            SyzygySpec, assemble_system, conclude_i_zero,
                            hilbert_genus, ideal_slice, initial_ideal,
                            leading_monomials, load_printed_curve,
                            load_printed_ideal, load_syzygies, parse_biform,
                            parse_syzygies, printed_generators, residuals,
                            solve_curve, substitution_matrix)
from heptic16.exact_core import rank
from heptic16.monomials import MonomialIdeal, is_borel_fixed

from oracles import sympy_ordered_kernel_leads


def test_parse_biform():
    f = parse_biform("2t^{2}u - tu^2 + 3u^3 + t^3", 3)
    assert f.coeffs == (1, 2, -1, 3)
    assert parse_biform("t*u^2", 3).coeffs == (0, 0, 1, 0)
    with pytest.raises(InputError):
        parse_biform("t^2", 3)
    with pytest.raises(InputError):
        parse_biform("t^3 + ?", 3)


def test_biform_arithmetic():
    t, u = BiForm(1, (1, 0)), BiForm(1, (0, 1))
    assert (t * u).coeffs == (0, 1, 0)
    assert ((t + u) * (t + u)).coeffs == (1, 2, 1)
    with pytest.raises(InputError):
        t + BiForm(2, (1, 0, 0))


def test_parse_syzygies_errors():
    with pytest.raises(InputError):
        parse_syzygies("# nothing\n")
    with pytest.raises(InputError):
        parse_syzygies("3 | t^3 | u^3\n")


def test_printed_data():
    c = load_printed_curve()
    assert c.degree == 16 and len(c.vector()) == 85
    assert len(printed_generators()) == 29
    assert load_printed_ideal().max_degree() == 5


def test_system_shapes_and_ranks():
    u3, t3 = load_syzygies("u3"), load_syzygies("t3")
    assert u3.degrees == (5, 4, 4, 3)
    M = assemble_system(u3)
    assert M.shape == (84, 85)
    assert rank(M) == 84
    assert rank(assemble_system(t3)) == 83
    with pytest.raises(NonGenericSyzygies):
        solve_curve(t3)


def test_printed_curve_against_literal_syzygies():
    # the printed forms satisfy three of the four literal syzygies
    bad = [k for k, r in enumerate(residuals(load_syzygies("t3"), load_printed_curve())) if not r.is_zero()]
    assert bad == [1]


def test_random_syzygies_give_a_curve():
    syz = SyzygySpec.random(11)
    c = solve_curve(syz)
    assert all(r.is_zero() for r in residuals(syz, c))
    with pytest.raises(NonGenericSyzygies):
        solve_curve(SyzygySpec.zero())


def twisted_cubic():
    return ParamCurve((BiForm(3, (1, 0, 0, 0)), BiForm(3, (0, 1, 0, 0)), BiForm(3, (0, 0, 1, 0)),
                       BiForm(3, (0, 0, 0, 1)), BiForm(3, (1, 1, 1, 1))))


def test_ideal_slices_of_twisted_cubic_in_hyperplane():
    # one linear form vanishes; quadrics: 15 monomials onto 7 sextic forms
    c = twisted_cubic()
    assert ideal_slice(c, 1).dimension == 1
    assert ideal_slice(c, 2).dimension == 15 - 7


def test_leading_monomials_vs_sympy():
    c = load_printed_curve()
    monos, A = substitution_matrix(c, 4)
    rows = [[int(x) for x in r] for r in A.rows]
    want = sympy_ordered_kernel_leads(rows, list(range(len(monos))))
    got = leading_monomials(c, 4)
    assert [monos.index(m) for m in got] == list(want)


def test_initial_ideal_and_certificate():
    c = load_printed_curve()
    I = initial_ideal(c, 6)
    assert I.ideal == load_printed_ideal()
    assert sum(len(v) for v in I.new_gens.values()) == 29
    assert is_borel_fixed(I.ideal)
    assert set(hilbert_genus(c, [5, 6]).values()) == {0}
    cert = conclude_i_zero(I.ideal)
    assert cert.status == "i=0" and cert.regularity == 5


def test_certificate_retries_with_coordinate_change():
    not_borel = MonomialIdeal(5, [(0, 1, 0, 0, 0)])
    assert conclude_i_zero(not_borel).status == "inconclusive"
    cert = conclude_i_zero(not_borel, load_printed_curve(), up_to=6, seed=3)
    assert cert.retries == 1 and cert.status == "i=0"


def test_coordinate_change_preserves_slice_dims():
    c = load_printed_curve()
    A = [[random.Random(i * 5 + j).randint(-2, 2) + (i == j) * 7 for j in range(5)] for i in range(5)]
    assert sympy.Matrix(A).det() != 0
    d = c.transform(A)
    assert [ideal_slice(d, m).dimension for m in (4, 5)] == [5, 45]
