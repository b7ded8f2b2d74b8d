from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from obcalc.domains import (
    DomainError,
    DomainSolution,
    PeriodicData,
    TrivialForm,
    TrivialFormError,
    euler_measure,
    intersection_data,
    s_sequence,
    solve_domain,
)
from oracles import sym_solve_domain

pos_k = st.lists(st.integers(1, 8), min_size=2, max_size=6).map(lambda k: tuple(sorted(k)))


def PD(g, m, k):
    return PeriodicData(g, len(k), m, tuple(k))


def test_solve_examples():
    sol = solve_domain(PD(1, 6, (1, 1)))
    assert isinstance(sol, DomainSolution)
    assert sol.s == (-2, -1) and sol.N == Fraction(-1, 3) and sol.t == -1
    sol = solve_domain(PD(1, 1, (1, 1, 1)))
    assert sol.s == (-3, -2, -1) and sol.N == -3
    assert isinstance(solve_domain(PD(1, 5, (0, 1))), TrivialForm)


def test_solve_needs_two_boundaries():
    with pytest.raises(DomainError):
        solve_domain(PD(1, 6, (1,)))


def test_negative_coefficients_rejected():
    with pytest.raises(DomainError):
        solve_domain(PD(1, 6, (-1, 3)))


def test_periodic_data_validation():
    with pytest.raises(DomainError):
        PeriodicData(1, 2, 6, (2, 1))
    with pytest.raises(DomainError):
        PeriodicData(1, 2, 0, (1, 1))
    with pytest.raises(DomainError):
        PeriodicData(1, 3, 6, (1, 1))
    pd, perm = PeriodicData.from_unsorted(1, 6, (3, 1, 2))
    assert pd.k == (1, 2, 3) and perm == (1, 2, 0)


def test_euler_measure_examples():
    assert euler_measure(PD(1, 6, (1, 2))) == Fraction(-2, 3)
    assert euler_measure(PD(1, 1, (1, 1))) == -2
    assert euler_measure(PD(0, 3, (1, 2))) == 0
    with pytest.raises(TrivialFormError):
        euler_measure(PD(1, 6, (0, 1)))


def test_intersection_examples():
    rep = intersection_data(PD(1, 6, (1, 1)), "printed")
    assert rep.form == "negative"
    assert rep.self_intersection == Fraction(-1, 3)
    assert rep.c1_squared_printed == 0
    assert rep.c1_pairing == Fraction(1, 3)
    rep = intersection_data(PD(1, 6, (1, 2)), "printed")
    assert rep.c1_squared_printed == Fraction(1, 18)
    assert rep.c1_squared_fp == Fraction(-1, 2)
    assert rep.shift == Fraction(19, 72)
    assert rep.shift_for("first_principles") == Fraction(1, 8)


def test_trivial_form_shift():
    rep = intersection_data(PD(1, 6, (0, 3)))
    assert rep.form == "trivial" and rep.shift == Fraction(-1, 2)


def test_channel_from_environment(monkeypatch):
    monkeypatch.setenv("OBCALC_C1SQ_CHANNEL", "first_principles")
    assert intersection_data(PD(1, 6, (1, 2))).channel == "first_principles"
    monkeypatch.setenv("OBCALC_C1SQ_CHANNEL", "bogus")
    with pytest.raises(ValueError):
        intersection_data(PD(1, 6, (1, 2)))


@given(pos_k, st.integers(1, 12))
def test_solution_matches_sympy(k, m):
    sol = solve_domain(PD(1, m, k))
    N, s = sym_solve_domain(k, m)
    assert sol.N == Fraction(str(N))
    assert list(sol.s) == [Fraction(str(x)) for x in s]


@given(pos_k, st.integers(1, 12), st.integers(0, 3))
def test_sign_structure(k, m, g):
    pd = PD(g, m, k)
    sol = solve_domain(pd)
    assert sol.s[-1] == -1
    assert all(x < 0 for x in sol.s) and sol.N < 0
    rep = intersection_data(pd)
    assert rep.self_intersection < 0
    assert rep.c1_squared_fp < 0
    assert rep.c1_squared_printed >= 0


@given(pos_k)
def test_tail_locality(k):
    full = s_sequence(k)
    for i in range(len(k)):
        assert full[i] == s_sequence(k[i:])[0]


@given(pos_k, st.integers(1, 12))
def test_printed_expression_matches_sympy(k, m):
    pd = PD(1, m, k)
    N, s = sym_solve_domain(k, m)
    r = len(k)
    ref = sympy.Rational((k[-1] * (2 - 2 - r) - k[0] * s[0]) ** 2, m * k[0] * s[0] * s[1])
    rep = intersection_data(pd)
    assert rep.c1_squared_printed == Fraction(int(ref.p), int(ref.q))
    si = -N * s[1]
    assert rep.self_intersection == Fraction(int(si.p), int(si.q))
