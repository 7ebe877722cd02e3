import pytest

from sarkisov.intersection import IntersectionError, intersection_data, k_dot, pair
from sarkisov.spaces import F, InvalidSpace, P1123, P3, Q, Q3, R, S, U, V, W


def test_r31():
    d = intersection_data(R(3, 1))
    assert dict(zip(d.divisors, d.canonical)) == {"H": -3, "F": -7}
    assert k_dot(d, "l") == 2 and k_dot(d, "f") == -3
    assert pair(d, {"l": 1, "f": 2}, "H") == -1


def test_f231():
    d = intersection_data(F(2, 3, 1))
    assert [k_dot(d, c) for c in ("l1", "l2", "l3", "l4")] == [-1, 1, -2, 1]
    assert d.cone == ("l4", "l2", "l3")
    assert intersection_data(F(2, 3, -1)).cone == ("l1", "l2", "l3")


def test_u224():
    d = intersection_data(U(2, 2, 4))
    assert d.curve_vector("l00") == (4, -2, 1)
    assert d.canonical == (-2, -4, -4)
    assert k_dot(d, "l10") == 4


def test_q_and_s():
    d = intersection_data(Q("u0^6 + u1^6"))
    assert d.canonical == (-2, -5)
    assert k_dot(d, "h") == 1 and k_dot(d, "f") == -2
    assert k_dot(intersection_data(S(3)), "s1") == 0
    with pytest.raises(InvalidSpace):
        intersection_data(Q("u0^2*u1^2"))


def test_v_and_rank_one():
    d = intersection_data(V(5))
    assert d.canonical == (-2, -6)
    assert k_dot(intersection_data(P3), "line") == -4
    assert k_dot(intersection_data(Q3), "line") == -3
    assert intersection_data(W(3)) is None
    assert intersection_data(P1123) is None


def test_unknown_label():
    with pytest.raises(IntersectionError):
        k_dot(intersection_data(R(2, 0)), "nope")


@pytest.mark.parametrize("a,b,c", [(2, 3, -1), (3, 4, 5), (0, 4, -2), (4, 1, -3)])
def test_f_relation(a, b, c):
    d = intersection_data(F(a, b, c))
    assert d.curve_vector("l4") == d.curve_vector({"l1": 1, "l3": -c})


@pytest.mark.parametrize("s,fibre", [(F(3, 2, 1), "l3"), (U(1, 5, 3), "f"), (S(4), "f"),
                                     (V(3), "f'"), (Q("u0^4 - u1^4"), "f")])
def test_fibre_degree_is_minus_two(s, fibre):
    assert k_dot(intersection_data(s), fibre) == -2
