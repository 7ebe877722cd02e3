from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sarkisov.spaces import F, P, P1112, P1123, P3, Q, Q3, R, W
from sarkisov.toric import (ToricError, antiflip_model, box_points, fan_of, find_wall,
                            gale_consistent, invariant_curve_K_degrees, is_smooth,
                            is_terminal, isomorphic, lattice_h0, parse_fan, polytope_h0,
                            rank_one_link_model, singular_cones, star_subdivide, w_link_model,
                            wall_flip)


def test_fan_of_r00():
    fan = fan_of(R(0, 0))
    assert set(fan.rays) == {(1, 0, 0), (0, 1, 0), (-1, -1, 0), (0, 0, 1), (0, 0, -1)}
    assert len(fan.cones) == 6


def test_shapes():
    assert (len(fan_of(W(3)).rays), len(fan_of(W(3)).cones)) == (5, 6)
    assert (len(fan_of(F(2, 1, -1)).rays), len(fan_of(F(2, 1, -1)).cones)) == (6, 8)
    assert len(fan_of(P1123).cones) == 4
    with pytest.raises(ToricError):
        fan_of(Q("u0^4 + u1^4"))
    with pytest.raises(ToricError):
        fan_of(Q3)


@pytest.mark.parametrize("s", [F(2, 3, 1), F(0, 0, 0), F(4, 2, -3), R(3, 1), R(0, 0),
                               P(2), P(5), W(2), W(4), P3, P1112, P1123])
def test_gale_and_completeness(s):
    assert gale_consistent(s)
    assert fan_of(s).is_complete()


def test_smoothness_labels():
    for s in (F(2, 3, 1), F(0, 2, -1), R(3, 1), R(5, 2), P(3), P3):
        assert is_smooth(fan_of(s))
    for s in (W(2), W(5), P1112, P1123):
        fan = fan_of(s)
        assert not is_smooth(fan) and is_terminal(fan)


@pytest.mark.parametrize("b", range(2, 7))
def test_w_singular_points(b):
    fan = fan_of(W(b))
    sing = singular_cones(fan)
    assert len(sing) == 2
    for cone in sing:
        (pt,) = box_points(fan, cone)
        assert pt[1] == (Fraction(1, 2),) * 3


def test_antiflip_terminality_examples():
    assert not is_terminal(antiflip_model(3, 2))
    assert is_terminal(antiflip_model(3, 1))
    # c = 0: the curve moves, nothing is flipped
    assert antiflip_model(3, 0) == fan_of(F(2, 3, 0))


def test_k_degrees():
    fan = fan_of(R(3, 1))
    degs = invariant_curve_K_degrees(fan)
    # the section curve is the wall {x0, x1}; -K.l = -(m+n-2)
    assert degs[find_wall(fan, "x0", "x1")] == -2
    assert degs[find_wall(fan, "x0", "y0")] == 3
    fan = fan_of(F(2, 1, -1))
    degs = invariant_curve_K_degrees(fan)
    assert degs[find_wall(fan, "x0", "y0")] == -1    # K.l1 = a-c-2 = 1
    assert degs[find_wall(fan, "x0", "z0")] == 1     # K.l2 = b-2 = -1
    assert degs[find_wall(fan, "y0", "z0")] == 2     # K.l3 = -2


def test_star_subdivision_of_smooth_cone_stays_smooth():
    fan = fan_of(P3)
    c = fan.cones[0]
    v = tuple(sum(fan.rays[i][k] for i in c) for k in range(3))
    new = star_subdivide(fan, v)
    assert is_smooth(new) and new.is_complete() and len(new.cones) == 6
    with pytest.raises(ToricError):
        star_subdivide(fan, fan.rays[0])


def test_flip_refuses_bad_wall():
    fan = fan_of(F(2, 3, 0))
    with pytest.raises(ToricError):
        wall_flip(fan, find_wall(fan, "x0", "y0"))


@pytest.mark.parametrize("b", range(2, 6))
def test_w_links(b):
    assert isomorphic(w_link_model(b, "F(2,b-1,-1)"), fan_of(F(2, b - 1, -1)))
    assert isomorphic(w_link_model(b, "F(2,b,1)"), fan_of(F(2, b, 1)))
    assert not isomorphic(w_link_model(b, "F(2,b,1)"), fan_of(F(2, b - 1, -1)))


@pytest.mark.parametrize("link", ["S6", "S9", "S10"])
def test_rank_one_links(link):
    fan, target = rank_one_link_model(link)
    assert isomorphic(fan, fan_of(target))


def test_fan_text_round_trip():
    fan = fan_of(W(3))
    back = parse_fan(fan.to_text())
    assert back.rays == fan.rays and back.cones == fan.cones


def test_h0_examples():
    assert lattice_h0(2, 1, 1) == 6
    assert lattice_h0(0, 1, 1) == 4
    assert lattice_h0(3, -1, 5) == 0


@given(st.integers(0, 5), st.integers(-2, 7), st.integers(-8, 8))
def test_h0_oracle(a, alpha, beta):
    assert lattice_h0(a, alpha, beta) == polytope_h0(a, alpha, beta)


def test_isomorphism_distinguishes():
    assert isomorphic(fan_of(F(2, 3, 1)), fan_of(F(2, 3, 1)))
    assert not isomorphic(fan_of(F(2, 3, 1)), fan_of(F(3, 3, 1)))
    assert not isomorphic(fan_of(P3), fan_of(P1112))
