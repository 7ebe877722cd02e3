"""The acceptance sweeps, shared by ``sarkisov selfcheck`` and the test suite.

Each check returns a CheckResult; ``grid="small"`` shrinks the parameter
ranges for a quick run, ``grid="full"`` uses the complete sweeps.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable

from .binforms import (BinaryForm, odd_part, root_stats, squarefree_decomposition,
                       is_squarefree)
from .intersection import intersection_data, k_dot
from .links import enumerate_links, find_path, inverse, make_link
from .spaces import (F, P, P1112, P1123, P3, Q, Q3, R, S, U, V, W, aut_info,
                     f_aut_dim, is_maximal, normalize, r_aut_dim, spaces_equal)
from .toric import (antiflip_model, curve_class, fan_of, invariant_curve_K_degrees,
                    is_terminal, isomorphic, lattice_h0, polytope_h0, singular_cones,
                    w_link_model)


@dataclass(frozen=True)
class CheckResult:
    number: int
    name: str
    ok: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.number}. {self.name}: {self.detail}"


# ---------------------------------------------------------------- grids

def _grid(grid: str) -> dict:
    full = grid == "full"
    return {
        "F_a": (0, 2, 3, 4, 5) if full else (0, 2, 3),
        "F_b": range(7) if full else range(4),
        "F_c": range(-12, 13) if full else range(-5, 6),
        "R": range(9) if full else range(5),
        "S": range(1, 9) if full else range(1, 5),
        "U_a": range(1, 5) if full else range(1, 3),
        "U_b": range(1, 7) if full else range(1, 4),
        "V": range(1, 9) if full else range(1, 5),
        "W": range(2, 9) if full else range(2, 5),
        "P": range(9) if full else range(5),
        "Q_count": 120 if full else 30,
        "Q_deg": 12 if full else 8,
    }


def f_spaces(g):
    for a, b, c in itertools.product(g["F_a"], g["F_b"], g["F_c"]):
        s = F(a, b, c)
        if normalize(s) == s:
            yield s


def r_spaces(g):
    seen = set()
    for m, n in itertools.product(g["R"], repeat=2):
        s = normalize(R(m, n))
        if s not in seen:
            seen.add(s)
            yield s


def u_spaces(g):
    for a, b in itertools.product(g["U_a"], g["U_b"]):
        for k in range(b + 1):
            yield U(a, b, a * k + 2)


def random_form(rng: random.Random, degree: int, height: int) -> BinaryForm:
    while True:
        f = BinaryForm(tuple(rng.randint(-height, height) for _ in range(degree + 1)))
        if not f.is_zero() and f.degree == degree:
            return f


def _small_linear(rng):
    while True:
        p, q = rng.randint(-3, 3), rng.randint(-3, 3)
        if (p, q) != (0, 0):
            return BinaryForm.linear(p, q)


def q_forms(rng: random.Random, count: int, max_degree: int):
    """Even-degree non-square forms, half of them with repeated linear factors."""
    out = []
    while len(out) < count:
        if len(out) % 2:
            g = BinaryForm.constant(1)
            while g.degree < max_degree - 1:
                l = _small_linear(rng)
                g = g * l ** rng.choice((1, 1, 2, 3))
            if g.degree % 2:
                g = g * _small_linear(rng)
        else:
            g = random_form(rng, 2 * rng.randint(1, max_degree // 2), 5)
        if g.degree <= max_degree and g.degree % 2 == 0 and odd_part(g).degree > 0:
            out.append(g)
    return out


def sweep_spaces(g, rng=None):
    """Every valid space of the sweep grid, in normal form."""
    rng = rng or random.Random(7)
    out = [P3, Q3, P1112, P1123]
    out += list(f_spaces(g)) + list(r_spaces(g)) + list(u_spaces(g))
    out += [S(b) for b in g["S"]] + [V(b) for b in g["V"]] + [W(b) for b in g["W"]]
    out += [P(b) for b in g["P"]]
    out += [normalize(Q(h)) for h in q_forms(rng, g["Q_count"], min(g["Q_deg"], 10))]
    return out


# ---------------------------------------------------------------- checks

def check_intersection(grid="full") -> CheckResult:
    g = _grid(grid)
    bad, n = [], 0

    def expect(s, d, label, value):
        if k_dot(d, label) != value:
            bad.append(f"{s} K.{label}={k_dot(d, label)} != {value}")

    for s in f_spaces(g):
        a, b, c = s.params
        d = intersection_data(s)
        expect(s, d, "l2", b - 2)
        expect(s, d, "l1", a - c - 2)
        expect(s, d, "l4", a + c - 2)
        expect(s, d, "l3", -2)
        rows = {"l1": (1, -a, c), "l2": (0, 1, -b), "l3": (0, 0, 1), "l4": (1, -a, 0)}
        for lab, row in rows.items():
            if d.curve_vector(lab) != row:
                bad.append(f"{s} {lab} row")
        n += 1
    for s in r_spaces(g):
        m, k = s.params
        d = intersection_data(s)
        expect(s, d, "l", m + k - 2)
        expect(s, d, "f", -3)
        n += 1
    for b in g["S"]:
        d = intersection_data(S(b))
        expect(S(b), d, "s1", b - 3)
        expect(S(b), d, "f", -2)
        if d.curve_vector("s2") != d.curve_vector({"s1": 1, "f": b + 1}):
            bad.append(f"S[{b}] s2 = s1 + (b+1)f")
        n += 1
    for s in u_spaces(g):
        a, b, c = s.params
        k = s.k
        d = intersection_data(s)
        expect(s, d, "f", -2)
        expect(s, d, "s", b - 2)
        expect(s, d, "l10", a * (k + 1))
        expect(s, d, "r", a - 2 if c == 2 else a * (k + 1) - 2 * c + 2)
        for lhs, rhs in (("l10", {"l00": 1, "f": -c}), ("r", {"l00": 1, "f": -1})):
            if d.curve_vector(lhs) != d.curve_vector(rhs):
                bad.append(f"{s} {lhs} relation")
        n += 1
    for b in g["V"]:
        d = intersection_data(V(b))
        expect(V(b), d, "s'", b - 3)
        expect(V(b), d, "f'", -2)
        n += 1
    rng = random.Random(1)
    for h in q_forms(rng, g["Q_count"], g["Q_deg"]):
        s = Q(h)
        d = intersection_data(s)
        expect(s, d, "h", s.n - 2)
        expect(s, d, "f", -2)
        n += 1
    return CheckResult(1, "intersection tables", not bad,
                       f"{n} spaces, {len(bad)} mismatches" + (f" e.g. {bad[0]}" if bad else ""))


def _toric_vs_tables(s, basis):
    d = intersection_data(s)
    fan = fan_of(s)
    idx = [fan.ray_index(x) for x in basis]
    seen = {}
    bad = []
    for wall, kdeg in invariant_curve_K_degrees(fan).items():
        cc = curve_class(fan, wall)
        vec = tuple(int(cc[i]) for i in idx)
        if sum(x * y for x, y in zip(vec, d.canonical)) != -kdeg:
            bad.append(f"{s} wall {wall}")
        seen[vec] = kdeg
    for lab in d.curves:
        v = d.curve_vector(lab)
        if v not in seen or -seen[v] != k_dot(d, lab):
            bad.append(f"{s} curve {lab}")
    return bad


def check_toric(grid="full") -> CheckResult:
    g = _grid(grid)
    bad, n = [], 0
    for s in f_spaces(g):
        bad += _toric_vs_tables(s, ("z0", "y0", "x0"))
        n += 1
    for s in r_spaces(g):
        bad += _toric_vs_tables(s, ("x0", "y0"))
        n += 1
    return CheckResult(2, "toric oracle agreement", not bad,
                       f"{n} fans, {len(bad)} mismatches" + (f" e.g. {bad[0]}" if bad else ""))


def check_terminality(grid="full") -> CheckResult:
    bad = []
    for b in range(2, 7):
        for c in range(-1, 4):
            if is_terminal(antiflip_model(b, c)) != (c <= 1):
                bad.append(f"F[2,{b},{c}]")
    return CheckResult(3, "terminal iff c <= 1", not bad,
                       "b=2..6, c=-1..3" + (f"; wrong at {bad}" if bad else ""))


def check_w_singularities(grid="full") -> CheckResult:
    bad = []
    for b in range(2, 6):
        fan = fan_of(W(b))
        if len(singular_cones(fan)) != 2 or not is_terminal(fan):
            bad.append(f"W[{b}] singularities")
        if not isomorphic(w_link_model(b, "F(2,b-1,-1)"), fan_of(F(2, b - 1, -1))):
            bad.append(f"W[{b}] -> F[2,{b - 1},-1]")
        if not isomorphic(w_link_model(b, "F(2,b,1)"), fan_of(F(2, b, 1))):
            bad.append(f"W[{b}] -> F[2,{b},1]")
    return CheckResult(4, "W_b singularities and links", not bad,
                       "b=2..5" + (f"; failed {bad}" if bad else ""))


ENUMERATION_COUNTS = [
    (P3, 0), (Q3, 0), (F(0, 0, 0), 2), (R(0, 0), 1), (S(1), 1), (S(3), 1), (S(7), 1),
    (P(2), 1), (P(3), 0), (P(6), 0), (R(2, 0), 0), (R(5, 0), 0), (R(1, 1), 2),
    (R(3, 1), 2), (P1123, 2), (W(2), 3), (W(3), 2), (W(6), 2), (F(2, 1, -1), 3),
    (F(0, 3, 2), 0),
]


def check_counts(grid="full") -> CheckResult:
    bad = [f"{s}: {len(enumerate_links(s))} != {k}"
           for s, k in ENUMERATION_COUNTS if len(enumerate_links(s)) != k]
    return CheckResult(5, "link-enumeration counts", not bad,
                       f"{len(ENUMERATION_COUNTS)} spaces" + (f"; {bad}" if bad else ""))


def check_closure(grid="full") -> CheckResult:
    g = _grid(grid)
    bad, nspaces, nlinks = [], 0, 0
    for s in sweep_spaces(g):
        if not is_maximal(s).maximal:
            continue
        nspaces += 1
        for link in enumerate_links(s).links:
            nlinks += 1
            t = link.target
            if not is_maximal(t).maximal:
                bad.append(f"{link.label} {s} -> {t} (target not maximal)")
            inv = inverse(link)
            back = make_link(t, inv.id, inv.payload, inv.inverse)
            if not spaces_equal(back.target, s):
                bad.append(f"{link.label} at {s} does not round-trip")
            listed = enumerate_links(t)
            if back.id == "S16" and not back.inverse:
                if listed.infinite is None:
                    bad.append(f"no forward S16 family at {t}")
            elif back not in listed.links:
                bad.append(f"inverse of {link.label} at {s} not enumerated at {t}")
    return CheckResult(6, "closure and round-trips", not bad,
                       f"{nspaces} maximal spaces, {nlinks} links"
                       + (f"; {len(bad)} failures e.g. {bad[0]}" if bad else ""))


COMPONENT_14 = (F(2, 1, -1), R(3, 1), P1123, W(2), F(2, 2, 1))


def check_aut(grid="full") -> CheckResult:
    g = _grid(grid)
    bad = []
    dims = {s: aut_info(s).dimension for s in COMPONENT_14}
    if set(dims.values()) != {14}:
        bad.append(f"component dims {dims}")
    # the two independent counts behind 14; dim Aut(F_2) = 7
    if f_aut_dim(2, 1, -1) != 14 or r_aut_dim(3, 1) != 14:
        bad.append("graded-matrix / lattice-point counts differ from 14")
    if 7 + 1 + polytope_h0(2, 1, 1) + polytope_h0(2, -1, -1) != 14:
        bad.append("polytope count for F[2,1,-1] is not 14")
    for b in range(2, 7):
        if aut_info(F(2, b, 1)).dimension != aut_info(F(2, b - 1, -1)).dimension:
            bad.append(f"F[2,{b},1] vs F[2,{b - 1},-1]")
    checked = 0
    for s in sweep_spaces(g):
        if not is_maximal(s).maximal:
            continue
        d0 = aut_info(s).dimension
        for link in enumerate_links(s).links:
            d1 = aut_info(link.target).dimension
            if d0 is not None and d1 is not None:
                checked += 1
                if d0 != d1:
                    bad.append(f"{link.label}: {s} ({d0}) -> {link.target} ({d1})")
    return CheckResult(7, "aut-dimension invariance", not bad,
                       f"component value 14, {checked} links compared"
                       + (f"; {bad[:3]}" if bad else ""))


def check_h0(grid="full") -> CheckResult:
    bad = [(a, al, be) for a in range(5) for al in range(7) for be in range(-6, 7)
           if lattice_h0(a, al, be) != polytope_h0(a, al, be)]
    return CheckResult(8, "h0 closed form vs polytope count", not bad,
                       "a=0..4, alpha=0..6, beta=-6..6" + (f"; differ at {bad[:5]}" if bad else ""))


def check_binforms(grid="full") -> CheckResult:
    rng = random.Random(2024)
    bad = []
    for _ in range(100):
        gform = random_form(rng, rng.randint(1, 12), 20)
        layers = squarefree_decomposition(gform)
        prod = BinaryForm.constant(1)
        for f, i in layers:
            prod = prod * f ** i
        # g is a rational multiple of the product of its layers
        ratio = {gc / pc for gc, pc in zip(gform.coeffs, prod.coeffs) if pc}
        if prod.degree != gform.degree or len(ratio) != 1 or any(
                (gc == 0) != (pc == 0) for gc, pc in zip(gform.coeffs, prod.coeffs)):
            bad.append(f"Yun reconstruction of {gform.to_text()}")
        odd = odd_part(gform)
        if odd_part(odd) != odd:
            bad.append("odd_part idempotence")
        l = _small_linear(rng)
        if odd_part(gform * l * l) != odd:
            bad.append("odd_part l^2 invariance")
        if (root_stats(gform).repeated_roots == 0) != is_squarefree(gform):
            bad.append("repeated_roots vs squarefree")
        if gform.degree % 2 == 0 and odd.degree > 0:
            if is_maximal(Q(gform)).maximal != (odd.degree >= 4):
                bad.append("Q maximality vs odd part")
    return CheckResult(9, "binary-form laws", not bad,
                       "100 random forms" + (f"; {bad[:3]}" if bad else ""))


def check_paths(grid="full") -> CheckResult:
    bad = []
    p = find_path(R(3, 1), W(2))
    if p is None or len(p) != 2 or p[0].target != P1123:
        bad.append(f"R[3,1] -> W[2]: {p}")
    if find_path(P3, P(2)) is not None:
        bad.append("P3 -> P[2] should have no path")
    rng = random.Random(11)
    pool = [s for s in sweep_spaces(_grid("small"), rng)
            if is_maximal(s).maximal and (s.kind != "Q" or s.form.degree <= 6)]
    pool.sort(key=lambda s: s.to_text())
    found = 0
    for _ in range(20):
        a, b = rng.choice(pool), rng.choice(pool)
        if rng.random() < 0.5:
            # bias towards pairs in one component
            links = enumerate_links(a).links
            if links:
                b = rng.choice(links).target
        ab, ba = find_path(a, b), find_path(b, a)
        if (ab is None) != (ba is None) or (ab is not None and len(ab) != len(ba)):
            bad.append(f"asymmetric for {a}, {b}")
        found += ab is not None
    return CheckResult(10, "path search", not bad,
                       f"R[3,1]->W[2] via P1123, P3->P[2] none, 20 pairs ({found} connected)"
                       + (f"; {bad}" if bad else ""))


CHECKS: list[Callable[[str], CheckResult]] = [
    check_intersection, check_toric, check_terminality, check_w_singularities,
    check_counts, check_closure, check_aut, check_h0, check_binforms, check_paths,
]


def run_all(grid="full") -> list[CheckResult]:
    return [check(grid) for check in CHECKS]
