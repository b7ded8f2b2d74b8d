from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from obcalc.foliations import (
    IN_IM_U,
    INCONCLUSIVE,
    FoliationData,
    FoliationError,
    NotCappable,
    balance,
    cap_foliation,
    u_image_report,
    validate,
)
from obcalc.openbook import SurfaceSig


def FD(g, sings, interior=(), fdtc=None):
    labels = tuple(f"B{i + 1}" for i in range(len(sings)))
    return FoliationData(SurfaceSig(g, labels), interior, sings, fdtc or (0,) * len(sings))


@st.composite
def valid_data(draw, min_sing=1):
    g = draw(st.integers(0, 3))
    sings = draw(st.lists(st.integers(min_sing, 6), min_size=1, max_size=5))
    deficit = sum(2 - p for p in sings) - (4 - 4 * g)
    assume(deficit >= 0)
    parts = []
    while deficit:
        x = draw(st.integers(1, deficit))
        parts.append(x + 2)
        deficit -= x
    fd = FD(g, tuple(sings), tuple(parts),
            tuple(draw(st.fractions(-3, 3, max_denominator=6)) for _ in sings))
    assert validate(fd).ok
    return fd


def test_examples():
    assert validate(FD(1, (2,))).ok
    assert validate(FD(0, (1, 1, 1, 1))).ok
    v = validate(FD(0, (1, 1, 1)))
    assert not v.ok
    assert [(x.constraint, x.amount) for x in v.violations] == [("balance", 1)]


def test_prong_and_count_violations():
    v = validate(FD(1, (0,), (2,)))
    assert {x.constraint for x in v.violations} == {"interior_prongs", "boundary_sings", "balance"}


def test_misaligned_rejected():
    with pytest.raises(FoliationError):
        FoliationData(SurfaceSig(1, ("B1",)), (), (2, 2), (0,))


def test_cap_examples():
    closed = cap_foliation(FD(1, (2,)), "B1")
    assert closed.surface.r == 0 and closed.interior_prongs == ()
    assert validate(closed).ok
    one = cap_foliation(FD(1, (2, 2)), "B2")
    assert one.surface.boundary == ("B1",) and one.boundary_sings == (2,)
    three = cap_foliation(FD(0, (3, 1, 1, 1, 1, 1)), "B1")
    assert three.interior_prongs == (3,)


def test_cap_single_singularity_rejected():
    with pytest.raises(NotCappable):
        cap_foliation(FD(0, (1, 1, 1, 1)), "B1")
    with pytest.raises(FoliationError):
        cap_foliation(FD(1, (2,)), "B9")


@given(valid_data(), st.data())
def test_capping_preserves_balance(fd, data):
    i = data.draw(st.integers(0, fd.surface.r - 1))
    label = fd.surface.boundary[i]
    if fd.boundary_sings[i] == 1:
        with pytest.raises(NotCappable):
            cap_foliation(fd, label)
        return
    capped = cap_foliation(fd, label)
    assert validate(capped).ok
    lhs, rhs = balance(capped)
    assert lhs == rhs


@given(valid_data(min_sing=2))
def test_cap_all_gives_closed_balance(fd):
    for lab in fd.surface.boundary:
        fd = cap_foliation(fd, lab)
    assert fd.surface.r == 0
    assert 2 * fd.surface.euler_characteristic == sum(2 - p for p in fd.interior_prongs)


@given(valid_data())
def test_json_round_trip(fd):
    assert FoliationData.from_json(fd.to_json()) == fd


def test_u_image_examples():
    fd = FD(1, (2, 2, 2), (), (Fraction(1, 2), 3, 3))
    rep = u_image_report(fd)
    assert rep.verdict == IN_IM_U and rep.witness == "B1"
    assert u_image_report(FD(1, (2, 2), (), (1, 2))).verdict == INCONCLUSIVE
    rep = u_image_report(FD(1, (2, 3), (), (0, 0)))
    assert rep.verdict == INCONCLUSIVE and "hypothesis violated" in rep.reason
    assert "hypothesis violated" in u_image_report(FD(2, (2,), (), (0,))).reason


@given(valid_data())
def test_u_image_fires_exactly_on_hypothesis(fd):
    hyp = (fd.surface.genus == 1 and fd.surface.r >= 1
           and all(p == 2 for p in fd.boundary_sings) and any(c < 1 for c in fd.fdtc))
    assert (u_image_report(fd).verdict == IN_IM_U) == hyp
