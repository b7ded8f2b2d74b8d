from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from obcalc.domains import PeriodicData
from obcalc.dthree import (
    ANCHOR,
    DISCRIMINATING,
    OVERTWISTED,
    TIGHT,
    D3Error,
    OvertwistedRegime,
    binding_bound,
    calibrate,
    conventions_report,
    d3,
    d3_closed_form,
    f_table,
    in_table_domain,
    random_suite,
    tightness,
)
from oracles import sym_d3_closed


@pytest.mark.parametrize(
    "c, value",
    [
        ("1/6", "-1/2"),
        ("2/3", "-3/2"),
        ("5", "-1"),
        ("5/6", "-2"),
        ("3/4", "-7/4"),
        ("1/4", "-1/4"),
        ("1/3", "0"),
        ("-1/2", "-1"),
        ("1/2", "-1"),
        ("0", "-1"),
        ("13/6", "-1/2"),
        ("17/6", "-2"),
    ],
)
def test_f_table_rows(c, value):
    assert f_table(Fraction(c)) == Fraction(value)


@pytest.mark.parametrize("c", ["-1/6", "-1", "-3/2", "-1/3", "-3/4", "1/5", "2/7"])
def test_f_table_outside(c):
    with pytest.raises(OvertwistedRegime):
        f_table(Fraction(c))


def test_f_table_rows_disjoint_and_total():
    # every reduced p/q with q in {1,2,3,4,6} and p/q >= 0 hits exactly one row;
    # below zero only -1/2 is tabulated
    for q in (1, 2, 3, 4, 6):
        for p in range(-q, 601):
            c = Fraction(p, q)
            if c.denominator != q:
                continue
            if c >= 0 or c == Fraction(-1, 2):
                f_table(c)  # f_row asserts uniqueness
            else:
                with pytest.raises(OvertwistedRegime):
                    f_table(c)


def PD(m, k):
    return PeriodicData(1, len(k), m, tuple(k))


def test_examples():
    rep = d3(PD(6, (0, 1)), "printed", 0)
    assert rep.I == 2 and rep.d3() == Fraction(1, 2)
    assert rep.caps[0].form == "trivial"
    rep = d3(PD(6, (1, 1)), "printed", 0)
    assert rep.d3_printed == Fraction(-1, 4) == rep.d3_telescoped
    assert d3(PD(6, (1,)), "printed", 0).d3() == 0


@given(st.integers(1, 12), st.integers(0, 40))
def test_single_boundary(m, k):
    if not in_table_domain(k, m):
        return
    assert d3(PD(m, (k,)), offset=0).d3() == -f_table(Fraction(k, m)) - Fraction(1, 2)


def test_all_zero_rejected():
    with pytest.raises(D3Error):
        d3(PD(6, (0, 0)))


def test_genus_and_sign_checks():
    with pytest.raises(D3Error):
        d3(PeriodicData(2, 1, 6, (1,)))
    with pytest.raises(OvertwistedRegime):
        d3(PD(6, (-1, 3)))


def test_tightness():
    assert tightness((0, 2)) == TIGHT
    assert tightness((-1, 3)) == OVERTWISTED
    with pytest.raises(D3Error):
        tightness(())


def test_binding_bound_examples():
    res = binding_bound(PD(6, (1,)), "printed", 0)
    assert res.satisfied and res.margin == 2
    res = binding_bound(ANCHOR, "printed", Fraction(-1, 2))
    assert res.margin == 0 and res.verdict == "satisfied"
    assert binding_bound(DISCRIMINATING, "first_principles", 0).satisfied
    assert not binding_bound(DISCRIMINATING, "printed", 0).satisfied
    with pytest.raises(OvertwistedRegime):
        binding_bound(PD(6, (-1, 3)))


suite_inputs = st.builds(
    lambda m, k: (m, tuple(sorted(k))),
    st.integers(1, 12),
    st.lists(st.integers(0, 8), min_size=1, max_size=6),
).filter(lambda mk: (mk[1][-1] > 0 or len(mk[1]) == 1) and in_table_domain(mk[1][-1], mk[0]))


@given(suite_inputs)
def test_telescope_printed(mk):
    rep = d3(PD(*mk), "printed", 0)
    assert rep.d3_printed == rep.d3_telescoped


@settings(max_examples=40)
@given(suite_inputs)
def test_closed_form_matches_sympy(mk):
    m, k = mk
    f = f_table(Fraction(k[-1], m))
    ref = sym_d3_closed(k, m, f"{f.numerator}/{f.denominator}")
    assert d3_closed_form(PD(m, k)) == Fraction(int(ref.p), int(ref.q))


@given(suite_inputs, st.integers(2, 5), st.sampled_from(["printed", "first_principles"]))
def test_scale_invariance(mk, c, channel):
    m, k = mk
    a = d3(PD(m, k), channel, 0)
    b = d3(PD(c * m, tuple(c * x for x in k)), channel, 0)
    assert a.d3() == b.d3() and a.d3_printed == b.d3_printed


def test_offset_applied_explicitly(monkeypatch):
    assert d3(ANCHOR, offset=Fraction(-1, 2)).d3() == Fraction(-1, 2)
    monkeypatch.setenv("OBCALC_D3_OFFSET", "-1/2")
    assert d3(ANCHOR).d3() == Fraction(-1, 2)


def test_random_suite_is_tabulated():
    for pd in random_suite(200, seed=5):
        assert in_table_domain(pd.k[-1], pd.m)


def test_calibration_selects_one_channel():
    cal = calibrate(random_suite(300, seed=7) + [DISCRIMINATING])
    assert cal.selected == "first_principles"
    assert cal.audits["printed"].violations
    assert not cal.audits["first_principles"].shift_violations
    assert cal.anchor_d3 == 0 and cal.residual_offset == Fraction(-1, 2)
    text = conventions_report(cal)
    assert "first_principles" in text and "-1/2" in text


def test_json_uses_fraction_strings():
    data = d3(DISCRIMINATING, "first_principles", 0).as_dict()
    assert data["d3_telescoped"] == "-5/8"
    assert data["d3_printed"] == "-55/72"
