"""Equivariant Sarkisov links S1..S16 between the maximal families.

A link is a catalog id with a direction flag, its endpoints (in normal form)
and a payload where the endpoints alone do not pin it down:

    S1   which base factor is exchanged with the fibre (1 or 2)
    S7   at F[0,1,-1] only: which of the two contractions (1 or 2)
    S11, S12   the step k = +1 (forward) or -1 (inverse)
    S16  the linear form h

S1, S3, S5 and S8 are involutions; their inverse is the same link read from
the other end.
"""

from __future__ import annotations

import functools
import itertools
import re
from collections import deque
from dataclasses import dataclass
from typing import Optional, Union

from .binforms import (BinaryForm, FormError, divide_exact, odd_part,
                       rational_linear_factors, root_stats)
from .spaces import (F, P, P1112, P1123, R, U, V, W, MoriFibreSpace, Q,
                     InvalidSpace, NonMaximalityWitness, is_maximal, normalize,
                     non_maximality_witness)

Payload = Union[int, BinaryForm, None]


class LinkError(ValueError):
    """The link does not apply at the given space (or the payload is invalid)."""


@dataclass(frozen=True)
class LinkDescriptor:
    id: str
    type: str
    source: str
    target: str
    condition: str
    factorization: str


CATALOG: dict[str, LinkDescriptor] = {s.id: s for s in (
    LinkDescriptor("S1", "IV", "F[0,0,0]", "F[0,0,0]", "always (two links, payload 1 or 2)",
             "(P1)^3 over P1 x P1: exchange of the fibre with a factor of the base"),
    LinkDescriptor("S2", "IV", "R[0,0]", "P[0]", "always",
             "P2 x P1 over P1 and P2 x P1 over P2: exchange of the two projections"),
    LinkDescriptor("S3", "IV", "S[1]", "S[1]", "always",
             "flag variety: exchange of its two P1-bundle structures over P2"),
    LinkDescriptor("S4", "IV", "F[0,b,0]", "F[b,0,0]", "b >= 2",
             "F_0^{b,0} = F_b x P1 = F_b^{0,0}: isomorphism of total spaces"),
    LinkDescriptor("S5", "II", "S[b]", "S[b]", "b >= 3",
             "birational involution of the Schwarzenberger bundle"),
    LinkDescriptor("S6", "III", "P[2]", "P1112", "always",
             "contraction of the section y0=0 to the singular point of P(1,1,1,2)"),
    LinkDescriptor("S7", "III", "F[m-n,1,-n]", "R[m,n]", "m = n >= 1 or m > 2n >= 2",
             "contraction of the divisor x0=0 onto the section [0:1:0;*:*]"),
    LinkDescriptor("S8", "IV", "R[1,1]", "R[1,1]", "always",
             "flop of the section curve of R[1,1]"),
    LinkDescriptor("S9", "I", "P1123", "R[3,1]", "always",
             "reduced blow-up of p1=[0:0:1:0], then flip of the curve [0:0:*:*]"),
    LinkDescriptor("S10", "III", "W[2]", "P1123", "always",
             "divisorial contraction onto p2=[0:0:0:1], which is the weighted blow-up of weights (1,1,2)"),
    LinkDescriptor("S11", "II", "F[a,b,c]", "F[a,b+1,c+a]", "a(c+a) > 0 and (ab > 0 or ac < 0)",
             "blow-up of the curve x0=y0=0, contraction of the preimage of the (-a)-section"),
    LinkDescriptor("S12", "II", "U[a,b,c]", "U[a,b+1,c+a]", "always",
             "blow-up of the curve l00, contraction of the preimage of the (-a)-section"),
    LinkDescriptor("S13", "III", "U[1,b,2]", "V[b]", "b >= 3",
             "descent along the contraction F_1 -> P2 of the (-1)-curve"),
    LinkDescriptor("S14", "I", "W[b]", "F[2,b-1,-1]", "b >= 2",
             "blow-up of the point [1:0;0:0:1] (weights 1/2(1,1,1)), then a flip"),
    LinkDescriptor("S15", "I", "W[b]", "F[2,b,1]", "b >= 2",
             "blow-up of the point [0:1;0:0:1] (weights 1/2(1,1,1)), then a flip"),
    LinkDescriptor("S16", "II", "Q[g]", "Q[g*h^2]", "deg g >= 4, g with >= 3 roots, h linear",
             "blow-up of the diagonal curve of the fibre h=0, then contraction of the "
             "strict transform of that fibre"),
)}

INVOLUTIONS = {"S1", "S3", "S5", "S8"}
_INVERSE_TYPE = {"I": "III", "III": "I", "II": "II", "IV": "IV"}


def _payload_key(payload):
    if payload is None:
        return (0, "")
    if isinstance(payload, BinaryForm):
        return (2, payload.to_text())
    return (1, str(payload))


@dataclass(frozen=True)
class SarkisovLink:
    id: str
    inverse: bool
    source: MoriFibreSpace
    target: MoriFibreSpace
    payload: Payload = None

    @property
    def descriptor(self) -> LinkDescriptor:
        return CATALOG[self.id]

    @property
    def type(self) -> str:
        t = self.descriptor.type
        return _INVERSE_TYPE[t] if self.inverse else t

    @property
    def label(self) -> str:
        return f"{self.id}^-1" if self.inverse else self.id

    @property
    def text(self) -> str:
        prefix = "inverse of: " if self.inverse else ""
        return prefix + self.descriptor.factorization

    def sort_key(self):
        return (int(self.id[1:]), self.inverse, self.target.sort_key(), _payload_key(self.payload))

    def describe(self) -> str:
        out = f"{self.label} -> {self.target.to_text()}"
        if isinstance(self.payload, BinaryForm):
            out += f"  [h = {self.payload.to_text()}]"
        elif self.payload is not None:
            out += f"  [payload {self.payload}]"
        return out

    def as_dict(self) -> dict:
        payload = self.payload.to_text() if isinstance(self.payload, BinaryForm) else self.payload
        return {"id": self.id, "label": self.label, "type": self.type,
                "source": self.source.to_text(), "target": self.target.to_text(),
                "payload": payload, "factorization": self.text}


@dataclass(frozen=True)
class LinkEnumeration:
    links: tuple[SarkisovLink, ...] = ()
    infinite: Optional[str] = None
    notes: tuple[str, ...] = ()
    witness: Optional[NonMaximalityWitness] = None

    def __len__(self):
        return len(self.links)

    def __iter__(self):
        return iter(self.links)


def link_catalog() -> list[LinkDescriptor]:
    return list(CATALOG.values())


# ---------------------------------------------------------------- link ids

_LINK_RE = re.compile(r"^\s*[Ss](\d{1,2})\s*(\^\s*-\s*1|\^-1|-1|')?\s*$")


def parse_link_id(text: str) -> tuple[str, bool]:
    """'S10' -> ('S10', False); 'S10^-1' -> ('S10', True)."""
    m = _LINK_RE.match(text)
    if not m or f"S{int(m.group(1))}" not in CATALOG:
        raise LinkError(f"unknown link id {text!r}")
    return f"S{int(m.group(1))}", bool(m.group(2))


# ---------------------------------------------------------------- rewriting

def _q_forward_ok(g: BinaryForm) -> bool:
    return g.degree >= 4 and root_stats(g).distinct_roots >= 3


def _check_linear(h) -> BinaryForm:
    if not isinstance(h, BinaryForm) or h.degree != 1 or h.is_zero():
        raise LinkError("S16 needs a nonzero linear form h as payload")
    return h.primitive()


def _rewrite(link_id: str, inverse: bool, s: MoriFibreSpace, payload: Payload):
    """Target of the link at the normalized space s, or raise LinkError."""
    kind, p = s.kind, s.params

    def fail(why="the link does not apply here"):
        raise LinkError(f"{link_id}{'^-1' if inverse else ''} at {s}: {why}")

    def need_payload(options):
        if payload not in options:
            fail(f"payload must be one of {sorted(options)}")

    def no_payload():
        if payload is not None:
            fail("this link takes no payload")

    if link_id == "S1":
        if s != F(0, 0, 0):
            fail()
        need_payload({1, 2})
        return s
    if link_id == "S2":
        no_payload()
        if not inverse and s == R(0, 0):
            return P(0)
        if inverse and s == P(0):
            return R(0, 0)
        fail()
    if link_id == "S3":
        no_payload()
        if s.kind == "S" and p == (1,):
            return s
        fail()
    if link_id == "S4":
        no_payload()
        if kind == "F":
            a, b, c = p
            if not inverse and a == 0 and c == 0 and b >= 2:
                return F(b, 0, 0)
            if inverse and b == 0 and c == 0 and a >= 2:
                return F(0, a, 0)
        fail()
    if link_id == "S5":
        no_payload()
        if kind == "S" and p[0] >= 3:
            return s
        fail()
    if link_id == "S6":
        no_payload()
        if not inverse and s == P(2):
            return P1112
        if inverse and s == P1112:
            return P(2)
        fail()
    if link_id == "S7":
        if not inverse and kind == "F":
            a, b, c = p
            if (a, b, c) == (0, 1, -1):
                need_payload({1, 2})
                return R(1, 1)
            no_payload()
            if b == 1 and c < 0 and a != 1 and (a == 0 or a > -c):
                return normalize(R(a - c, -c))
            if a == 0 and c == -1 and b >= 2:
                return R(b, b)
        if inverse and kind == "R":
            no_payload()
            m, n = p
            if (m == n >= 1) or (m > 2 * n >= 2):
                return normalize(F(m - n, 1, -n))
        fail()
    if link_id == "S8":
        no_payload()
        if s == R(1, 1):
            return s
        fail()
    if link_id == "S9":
        no_payload()
        if not inverse and s == P1123:
            return R(3, 1)
        if inverse and s == R(3, 1):
            return P1123
        fail()
    if link_id == "S10":
        no_payload()
        if not inverse and s == W(2):
            return P1123
        if inverse and s == P1123:
            return W(2)
        fail()
    if link_id == "S11":
        if kind != "F":
            fail()
        need_payload({-1 if inverse else 1})
        a, b, c = p
        if not inverse:
            if a * (c + a) > 0 and (a * b > 0 or a * c < 0):
                return normalize(F(a, b + 1, c + a))
        else:
            b0, c0 = b - 1, c - a
            if b0 >= 0 and not (b0 == 0 and c0 > 0) and a * c > 0 and (a * b0 > 0 or a * c0 < 0):
                return normalize(F(a, b0, c0))
        fail()
    if link_id == "S12":
        if kind != "U":
            fail()
        need_payload({-1 if inverse else 1})
        a, b, c = p
        if not inverse:
            return U(a, b + 1, c + a)
        b0, c0 = b - 1, c - a
        if b0 >= 1 and c0 >= 2 and (c0 - 2) % a == 0 and 0 <= (c0 - 2) // a <= b0:
            return U(a, b0, c0)
        fail()
    if link_id == "S13":
        no_payload()
        if not inverse and kind == "U" and p[0] == 1 and p[2] == 2 and p[1] >= 3:
            return V(p[1])
        if inverse and kind == "V" and p[0] >= 3:
            return U(1, p[0], 2)
        fail()
    if link_id == "S14":
        no_payload()
        if not inverse and kind == "W":
            return F(2, p[0] - 1, -1)
        if inverse and kind == "F" and p[0] == 2 and p[2] == -1 and p[1] >= 1:
            return W(p[1] + 1)
        fail()
    if link_id == "S15":
        no_payload()
        if not inverse and kind == "W":
            return F(2, p[0], 1)
        if inverse and kind == "F" and p[0] == 2 and p[2] == 1 and p[1] >= 2:
            return W(p[1])
        fail()
    if link_id == "S16":
        if kind != "Q":
            fail()
        h = _check_linear(payload)
        g = s.form
        if not inverse:
            if not _q_forward_ok(g):
                fail("needs deg g >= 4 and at least three distinct roots")
            return normalize(Q(g * h * h))
        try:
            rest = divide_exact(g, h * h)
        except FormError:
            fail(f"({h})^2 does not divide g")
        if not _q_forward_ok(rest):
            fail("g/h^2 needs degree >= 4 and at least three distinct roots")
        return normalize(Q(rest))
    fail("unknown link")


def _normalize_payload(link_id, inverse, payload):
    if link_id in ("S11", "S12") and payload is None:
        return -1 if inverse else 1
    if link_id == "S16" and payload is not None:
        return _check_linear(payload)
    return payload


def make_link(space: MoriFibreSpace, link_id: str, payload: Payload = None,
              inverse: bool = False) -> SarkisovLink:
    if link_id not in CATALOG:
        raise LinkError(f"unknown link id {link_id!r}")
    s = normalize(space)
    if link_id in INVOLUTIONS:
        inverse = False
    payload = _normalize_payload(link_id, inverse, payload)
    target = _rewrite(link_id, inverse, s, payload)
    return SarkisovLink(link_id, inverse, s, target, payload)


def apply_link(space: MoriFibreSpace, link_id: str, payload: Payload = None,
               inverse: bool = False) -> MoriFibreSpace:
    """Target of the link at ``space``; ``link_id`` may carry '^-1'."""
    lid, inv = parse_link_id(link_id)
    return make_link(space, lid, payload, inverse or inv).target


def inverse(link: SarkisovLink) -> SarkisovLink:
    inv = False if link.id in INVOLUTIONS else not link.inverse
    payload = link.payload
    if link.id in ("S11", "S12"):
        payload = -payload
    elif link.id == "S7":
        # both contractions of F[0,1,-1] invert to the one blow-up of R[1,1];
        # that blow-up inverts to the first contraction
        payload = 1 if (not inv and link.target == F(0, 1, -1)) else None
    return SarkisovLink(link.id, inv, link.target, link.source, payload)


# ---------------------------------------------------------------- enumeration

_PAYLOAD_OPTIONS = {"S1": (1, 2), "S7": (None, 1, 2), "S11": (None,), "S12": (None,)}


@functools.lru_cache(maxsize=4096)
def _finite_links(s: MoriFibreSpace) -> tuple[SarkisovLink, ...]:
    out = []
    for lid in CATALOG:
        if lid == "S16":
            continue
        for inv in ((False,) if lid in INVOLUTIONS else (False, True)):
            for payload in _PAYLOAD_OPTIONS.get(lid, (None,)):
                try:
                    out.append(make_link(s, lid, payload, inv))
                except LinkError:
                    pass
    if s.kind == "Q":
        for h, mult in rational_linear_factors(s.form):
            if mult >= 2:
                try:
                    out.append(make_link(s, "S16", h, True))
                except LinkError:
                    pass
    return tuple(sorted(set(out), key=SarkisovLink.sort_key))


def enumerate_links(space: MoriFibreSpace) -> LinkEnumeration:
    """The equivariant links starting from a maximal space.

    For a space that is not maximal, no links are listed and the
    non-maximality witness is returned instead.
    """
    s = normalize(space)
    verdict = is_maximal(s)
    if not verdict.maximal:
        return LinkEnumeration((), None, ("not maximal: links are not enumerated",),
                               verdict.witness)
    links = tuple(_finite_links(s))
    infinite = None
    notes = []
    if s.kind == "Q":
        g = s.form
        if _q_forward_ok(g):
            infinite = "S16 -> Q[g*h^2] for any linear form h (payload required)"
        extension = sum(f.degree for f, i in _layers_ge2(g)) - sum(
            1 for _, m in rational_linear_factors(g) if m >= 2)
        if extension > 0:
            notes.append("repeated factors not defined over Q: links over extension "
                          "fields are not enumerated")
    return LinkEnumeration(links, infinite, tuple(notes))


def _layers_ge2(g):
    from .binforms import squarefree_decomposition
    return [(f, i) for f, i in squarefree_decomposition(g) if i >= 2]


def canonical_representative(space: MoriFibreSpace) -> MoriFibreSpace:
    """Base point of the link component: odd part for Q, lowest b for F and U."""
    s = normalize(space)
    if s.kind == "Q":
        odd = odd_part(s.form)
        if odd.degree >= 4:
            return Q(odd.primitive())
        return s
    if s.kind in ("F", "U"):
        if not is_maximal(s).maximal:
            return s
        lid = "S11" if s.kind == "F" else "S12"
        while True:
            down = [l for l in enumerate_links(s).links if l.id == lid and l.inverse]
            if not down:
                return s
            s = down[0].target
    return s


# ---------------------------------------------------------------- search

def _small_linear_forms(height: int = 3) -> list[BinaryForm]:
    out = set()
    for p_, q_ in itertools.product(range(-height, height + 1), repeat=2):
        if (p_, q_) != (0, 0):
            out.add(BinaryForm.linear(p_, q_).primitive())
    return sorted(out, key=lambda h: (max(abs(c) for c in h.coeffs), h.to_text()))


def _neighbours(s: MoriFibreSpace, forward_forms, max_q_degree) -> list[SarkisovLink]:
    links = list(enumerate_links(s).links)
    if s.kind == "Q" and s.form.degree + 2 <= max_q_degree and _q_forward_ok(s.form):
        for h in forward_forms:
            links.append(make_link(s, "S16", h))
    return sorted(links, key=_search_key)


_PICARD = {"F": 3, "U": 3, "P3": 1, "Q3": 1, "P1112": 1, "P1123": 1}


def picard_rank(space: MoriFibreSpace) -> int:
    return _PICARD.get(space.kind, 2)


def _search_key(link: SarkisovLink):
    # simpler intermediate spaces first, then the printed form of the target
    return (picard_rank(link.target), link.target.to_text(), link.sort_key())


def find_path(src: MoriFibreSpace, dst: MoriFibreSpace, max_depth: int = 6,
              max_q_degree: Optional[int] = None) -> Optional[list[SarkisovLink]]:
    """A shortest chain of links from src to dst, or None within the bounds.

    Among shortest paths the one whose sequence of intermediate spaces is
    least under (Picard rank, printed form) is returned.  Forward S16 steps use linear forms of coefficient height <= 3 together
    with the rational linear factors of the endpoint forms, and never exceed
    ``max_q_degree`` (default: the larger endpoint degree).
    """
    a, b = normalize(src), normalize(dst)
    for x in (a, b):
        if not is_maximal(x).maximal:
            raise InvalidSpace(f"{x} is not maximal")
    if max_q_degree is None:
        max_q_degree = max([x.form.degree for x in (a, b) if x.kind == "Q"], default=0)
    forms = _small_linear_forms()
    for x in (a, b):
        if x.kind == "Q":
            for h, _ in rational_linear_factors(x.form):
                if h not in forms:
                    forms.append(h)
    if a == b:
        return []
    parent: dict[MoriFibreSpace, Optional[SarkisovLink]] = {a: None}
    frontier = deque([(a, 0)])
    while frontier:
        node, depth = frontier.popleft()
        if depth >= max_depth:
            continue
        for link in _neighbours(node, forms, max_q_degree):
            t = link.target
            if t in parent:
                continue
            parent[t] = link
            if t == b:
                path = []
                while parent[t] is not None:
                    path.append(parent[t])
                    t = parent[t].source
                return path[::-1]
            frontier.append((t, depth + 1))
    return None


def neighbourhood(space: MoriFibreSpace, radius: int):
    """Nodes and links reachable within ``radius`` steps (finite lists only)."""
    s = normalize(space)
    seen = {s: 0}
    edges = []
    frontier = deque([s])
    while frontier:
        node = frontier.popleft()
        if seen[node] >= radius or not is_maximal(node).maximal:
            continue
        for link in enumerate_links(node).links:
            edges.append(link)
            if link.target not in seen:
                seen[link.target] = seen[node] + 1
                frontier.append(link.target)
    nodes = sorted(seen, key=lambda x: (seen[x], x.sort_key()))
    return nodes, edges


def to_dot(space: MoriFibreSpace, radius: int) -> str:
    nodes, edges = neighbourhood(space, radius)
    ids = {n: f"n{i}" for i, n in enumerate(nodes)}
    lines = ["digraph links {", "  node [shape=box];"]
    for n in nodes:
        lines.append(f'  {ids[n]} [label="{n.to_text()}"];')
    for e in edges:
        lines.append(f'  {ids[e.source]} -> {ids[e.target]} [label="{e.label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = [
    "CATALOG", "LinkDescriptor", "SarkisovLink", "LinkEnumeration", "LinkError",
    "link_catalog", "parse_link_id", "make_link", "apply_link", "inverse",
    "enumerate_links", "canonical_representative", "find_path", "neighbourhood",
    "to_dot", "non_maximality_witness", "picard_rank",
]
