import pytest
from hypothesis import given, strategies as st

from sarkisov.binforms import BinaryForm, parse_form
from sarkisov.links import (CATALOG, LinkError, apply_link, canonical_representative,
                            enumerate_links, find_path, inverse, link_catalog, make_link,
                            parse_link_id, to_dot)
from sarkisov.spaces import (F, P, P1112, P1123, P3, Q, Q3, R, S, U, V, W, InvalidSpace,
                             is_maximal, normalize, spaces_equal, validate)


def labels(space):
    return [l.describe() for l in enumerate_links(space).links]


def test_catalog():
    cat = link_catalog()
    assert [c.id for c in cat] == [f"S{i}" for i in range(1, 17)]
    assert (CATALOG["S6"].type, CATALOG["S6"].source, CATALOG["S6"].target) == ("III", "P[2]", "P1112")
    assert CATALOG["S5"].type == "II" and CATALOG["S5"].condition == "b >= 3"
    assert CATALOG["S8"].type == "IV"


def test_parse_link_id():
    assert parse_link_id("S10^-1") == ("S10", True)
    assert parse_link_id("s4") == ("S4", False)
    with pytest.raises(LinkError):
        parse_link_id("S17")


def test_enumeration_examples():
    assert labels(P1123) == ["S9 -> R[3,1]", "S10^-1 -> W[2]"]
    assert labels(W(3)) == ["S14 -> F[2,2,-1]", "S15 -> F[2,3,1]"]
    assert labels(W(2)) == ["S10 -> P1123", "S14 -> F[2,1,-1]", "S15 -> F[2,2,1]"]
    assert labels(F(0, 3, 2)) == []
    assert labels(F(2, 1, -1)) == ["S7 -> R[3,1]", "S11 -> F[2,2,1]  [payload 1]",
                                   "S14^-1 -> W[2]"]
    assert labels(R(1, 1)) == ["S7^-1 -> F[0,1,-1]", "S8 -> R[1,1]"]
    assert labels(F(0, 1, -1)) == ["S7 -> R[1,1]  [payload 1]", "S7 -> R[1,1]  [payload 2]"]
    assert labels(F(0, 4, 0)) == ["S4 -> F[4,0,0]"]
    assert labels(F(4, 0, 0)) == ["S4^-1 -> F[0,4,0]"]
    assert labels(F(0, 4, -1)) == ["S7 -> R[4,4]"]
    assert labels(R(5, 2)) == ["S7^-1 -> F[3,1,-2]"]
    assert labels(U(1, 4, 2)) == ["S12 -> U[1,5,3]  [payload 1]", "S13 -> V[4]"]
    assert labels(V(5)) == ["S13^-1 -> U[1,5,2]"]
    assert labels(P(2)) == ["S6 -> P1112"]
    assert labels(P1112) == ["S6^-1 -> P[2]"]
    assert labels(R(0, 0)) == ["S2 -> P[0]"]
    assert labels(F(2, 3, 1)) == ["S11 -> F[2,4,3]  [payload 1]",
                                  "S11^-1 -> F[2,2,-1]  [payload -1]", "S15^-1 -> W[3]"]


def test_q_enumeration():
    e = enumerate_links(Q("u0*u1*(u0+u1)*(u0-2*u1)"))
    assert e.links == () and e.infinite is not None
    e = enumerate_links(Q("u0^2*u1*(u0+u1)^3*(u0-u1)*(u0+2*u1)"))
    assert sorted(l.payload.to_text() for l in e.links) == ["u0", "u0 + u1"]
    assert {l.target for l in e.links} == {
        normalize(Q("u1*(u0+u1)^3*(u0-u1)*(u0+2*u1)")),
        normalize(Q("u0^2*u1*(u0+u1)*(u0-u1)*(u0+2*u1)"))}
    e = enumerate_links(Q("(u0^2+u1^2)^2*u0*u1*(u0+u1)*(u0-u1)"))
    assert e.links == () and any("extension fields" in n for n in e.notes)
    # removing the square would leave only two roots
    assert enumerate_links(Q("u0^3*u1^3")).links == ()


def test_non_maximal_gets_witness():
    e = enumerate_links(S(2))
    assert e.links == () and e.witness.target == P3
    assert enumerate_links(R(2, 1)).witness.off_list


def test_apply_examples():
    assert apply_link(F(2, 1, -1), "S11") == F(2, 2, 1)
    assert apply_link(U(1, 4, 2), "S12") == U(1, 5, 3)
    g = parse_form("u0*u1*(u0+u1)*(u0-2*u1)")
    h = parse_form("u0-u1")
    assert apply_link(Q(g), "S16", h) == normalize(Q(g * h * h))
    assert apply_link(Q(g * h * h), "S16^-1", h) == normalize(Q(g))
    assert apply_link(R(1, 3), "S9^-1") == P1123
    assert apply_link(P(2), "S6") == P1112
    assert apply_link(F(0, 1, -1), "S7", 2) == R(1, 1)


@pytest.mark.parametrize("space,link_id,payload", [
    (F(2, 1, -1), "S11^-1", None), (P(3), "S6", None), (F(0, 1, -1), "S7", None),
    (F(0, 0, 0), "S1", 3), (Q("u0^3*u1^3"), "S16", BinaryForm.linear(1, 1)),
    (Q("u0*u1*(u0+u1)*(u0-u1)"), "S16^-1", BinaryForm.linear(1, 0)),
    (Q("u0*u1*(u0+u1)*(u0-u1)"), "S16", parse_form("u0^2")), (W(3), "S10", None),
])
def test_inapplicable(space, link_id, payload):
    with pytest.raises(LinkError):
        apply_link(space, link_id, payload)


def test_inverse():
    l = make_link(F(2, 1, -1), "S11")
    inv = inverse(l)
    assert (inv.label, inv.source, inv.target, inv.payload) == ("S11^-1", F(2, 2, 1), F(2, 1, -1), -1)
    assert make_link(inv.source, inv.id, inv.payload, inv.inverse).target == F(2, 1, -1)
    assert inverse(inverse(l)) == l
    s5 = make_link(S(4), "S5")
    assert inverse(s5).label == "S5" and inverse(s5).target == S(4)
    assert inverse(make_link(W(2), "S14")).type == "III"


def test_types_flip_with_direction():
    assert make_link(W(2), "S14").type == "I"
    assert make_link(F(2, 1, -1), "S14", inverse=True).type == "III"
    assert make_link(P(2), "S6").type == "III"


def test_canonical_representative():
    assert canonical_representative(Q("u0^3*u1*(u0+u1)*(u0-u1)^3")) == normalize(Q("u0*u1*(u0+u1)*(u0-u1)"))
    assert canonical_representative(U(1, 6, 4)) == U(1, 4, 2)
    assert canonical_representative(F(2, 5, 7)) == F(2, 1, -1)
    assert canonical_representative(R(1, 3)) == R(3, 1)


def test_paths():
    p = find_path(R(3, 1), W(2))
    assert [(l.label, l.target) for l in p] == [("S9^-1", P1123), ("S10^-1", W(2))]
    assert [l.label for l in find_path(F(0, 2, 0), F(2, 0, 0))] == ["S4"]
    assert find_path(P3, P(2)) is None
    assert find_path(W(4), W(4)) == []
    with pytest.raises(InvalidSpace):
        find_path(S(2), P3)


def test_q_path_uses_endpoint_factors():
    g = parse_form("u0*u1*(u0+u1)*(u0-u1)")
    h = parse_form("7*u0 + 5*u1")
    p = find_path(Q(g), Q(g * h * h))
    assert len(p) == 1 and p[0].payload == h
    assert len(find_path(Q(g * h * h), Q(g))) == 1


def test_dot():
    dot = to_dot(P1123, 1)
    assert dot.startswith("digraph links {")
    assert '[label="S9"]' in dot and '[label="S10^-1"]' in dot


MAXIMAL_POOL = [s for s in
                [F(a, b, c) for a in (0, 2, 3) for b in range(5) for c in range(-4, 8)]
                + [R(m, n) for m in range(7) for n in range(4)]
                + [U(a, b, a * k + 2) for a in (1, 2, 3) for b in range(1, 5) for k in range(b + 1)]
                + [S(b) for b in range(1, 6)] + [V(b) for b in range(2, 6)]
                + [W(b) for b in range(2, 6)] + [P(b) for b in range(4)]
                + [P3, Q3, P1112, P1123]
                if normalize(s) == s and is_maximal(s).maximal]


@given(st.sampled_from(MAXIMAL_POOL))
def test_closure_and_round_trip(s):
    for link in enumerate_links(s).links:
        assert is_maximal(link.target).maximal
        inv = inverse(link)
        back = make_link(inv.source, inv.id, inv.payload, inv.inverse)
        assert spaces_equal(back.target, s)
        assert back in enumerate_links(link.target).links


@given(st.sampled_from(MAXIMAL_POOL), st.sampled_from(MAXIMAL_POOL))
def test_path_symmetry(a, b):
    ab, ba = find_path(a, b, max_depth=4), find_path(b, a, max_depth=4)
    assert (ab is None) == (ba is None)
    if ab is not None:
        assert len(ab) == len(ba)
        assert ab[0].source == a and ab[-1].target == b if ab else a == b


@st.composite
def q_maximal(draw):
    roots = draw(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)).filter(
        lambda t: t != (0, 0)), min_size=4, max_size=6))
    g = BinaryForm.constant(1)
    for p, q in roots:
        g = g * BinaryForm.linear(p, q)
    if g.degree % 2:
        g = g * BinaryForm.linear(1, 0)
    return g


@given(q_maximal(), st.integers(-5, 5), st.integers(-5, 5))
def test_s16_commutes_with_canonical_representative(g, p, q):
    if (p, q) == (0, 0) or not validate(Q(g)).mori_fibration or not is_maximal(Q(g)).maximal:
        return
    from sarkisov.links import _q_forward_ok
    if not _q_forward_ok(g):
        return
    h = BinaryForm.linear(p, q)
    assert canonical_representative(apply_link(Q(g), "S16", h)) == canonical_representative(Q(g))
