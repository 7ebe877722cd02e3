"""Fans of the toric members, as an independent check on the intersection tables.

Rays come from the Cox presentation by Gale duality: the ray matrix has the
weight matrix rows as its integer relations.  The ray tables are fixed per
family (see ``fan_of``) so fans compare entry by entry; for targets of
blow-ups and flips, ``lattice_isomorphism`` matches fans up to GL_3(Z) and a
relabelling of rays.

All fans here are complete, simplicial and three-dimensional.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .spaces import MoriFibreSpace, normalize

Vec = tuple[int, int, int]


class ToricError(ValueError):
    pass


# ---------------------------------------------------------------- linear algebra

def det3(u, v, w) -> int:
    return (u[0] * (v[1] * w[2] - v[2] * w[1])
            - u[1] * (v[0] * w[2] - v[2] * w[0])
            + u[2] * (v[0] * w[1] - v[1] * w[0]))


def _solve3(cols, target) -> tuple[Fraction, ...]:
    """Coefficients x with sum x_i cols[i] = target (cols linearly independent)."""
    d = det3(*cols)
    if d == 0:
        raise ToricError("degenerate cone")
    out = []
    for i in range(3):
        repl = list(cols)
        repl[i] = target
        out.append(Fraction(det3(*repl), d))
    return tuple(out)


def primitive(v) -> Vec:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        raise ToricError("zero vector is not a ray")
    return tuple(int(x) // g for x in v)


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _face_multiplicity(u, v) -> int:
    """Index of the lattice spanned by u, v in its saturation."""
    c = _cross(u, v)
    return abs(gcd(gcd(c[0], c[1]), c[2]))


# ---------------------------------------------------------------- fans

@dataclass(frozen=True)
class Fan:
    rays: tuple[Vec, ...]
    cones: tuple[tuple[int, int, int], ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        for r in rays:
            if primitive(r) != r:
                raise ToricError(f"ray {r} is not primitive")
        cones = tuple(sorted(tuple(sorted(c)) for c in self.cones))
        for c in cones:
            if len(set(c)) != 3:
                raise ToricError(f"cone {c} is not three-dimensional")
            if det3(*(rays[i] for i in c)) == 0:
                raise ToricError(f"cone {c} is degenerate")
        labels = tuple(self.labels) or tuple(f"v{i}" for i in range(len(rays)))
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "cones", cones)
        object.__setattr__(self, "labels", labels)

    def ray_index(self, label: str) -> int:
        return self.labels.index(label)

    def cone_rays(self, cone):
        return [self.rays[i] for i in cone]

    def multiplicity(self, cone) -> int:
        return abs(det3(*self.cone_rays(cone)))

    def walls(self) -> dict[tuple[int, int], tuple[tuple, tuple]]:
        """Two-dimensional faces shared by exactly two maximal cones."""
        seen: dict[tuple[int, int], list] = {}
        for c in self.cones:
            for pair in itertools.combinations(c, 2):
                seen.setdefault(pair, []).append(c)
        return {w: (cs[0], cs[1]) for w, cs in sorted(seen.items()) if len(cs) == 2}

    def is_complete(self) -> bool:
        seen: dict[tuple[int, int], int] = {}
        for c in self.cones:
            for pair in itertools.combinations(c, 2):
                seen[pair] = seen.get(pair, 0) + 1
        return all(v == 2 for v in seen.values())

    def to_text(self) -> str:
        lines = [" ".join(str(x) for x in r) for r in self.rays]
        lines.append("")
        lines += [" ".join(str(i) for i in c) for c in self.cones]
        return "\n".join(lines) + "\n"

    def as_dict(self) -> dict:
        return {"rays": [list(r) for r in self.rays], "labels": list(self.labels),
                "cones": [list(c) for c in self.cones]}


def parse_fan(text: str) -> Fan:
    block_rays, _, block_cones = text.strip("\n").partition("\n\n")
    rays = [tuple(int(x) for x in line.split()) for line in block_rays.splitlines() if line.strip()]
    cones = [tuple(int(x) for x in line.split()) for line in block_cones.splitlines() if line.strip()]
    return Fan(tuple(rays), tuple(cones))


# Weight matrices of the Cox constructions and the fixed ray tables.

def cox_data(space: MoriFibreSpace):
    """(labels, weight rows, rays, cones) for a toric member, in normal form."""
    s = normalize(space)
    kind, p = s.kind, s.params
    if kind == "F":
        a, b, c = p
        labels = ("x0", "x1", "y0", "y1", "z0", "z1")
        weights = ((1, 1, 0, 0, 0, 0), (-b, 0, 1, 1, 0, 0), (0, -c, -a, 0, 1, 1))
        rays = ((0, 0, 1), (0, 0, -1), (0, 1, 0), (0, -1, b), (1, 0, 0), (-1, a, -c))
        cones = [(i, j, k) for i in (0, 1) for j in (2, 3) for k in (4, 5)]
    elif kind == "R":
        m, n = p
        labels = ("x0", "x1", "x2", "y0", "y1")
        weights = ((1, 1, 1, 0, 0), (-m, -n, 0, 1, 1))
        rays = ((1, 0, 0), (0, 1, 0), (-1, -1, 0), (0, 0, 1), (m, n, -1))
        cones = [(i, j, k) for i, j in itertools.combinations(range(3), 2) for k in (3, 4)]
    elif kind in ("P", "W"):
        b = p[0]
        labels = ("y0", "y1", "z0", "z1", "z2")
        if kind == "P":
            weights = ((1, 1, 0, 0, 0), (-b, 0, 1, 1, 1))
            rays = ((0, 0, 1), (0, 0, -1), (1, 0, 0), (0, 1, 0), (-1, -1, b))
        else:
            weights = ((1, 1, 0, 0, 0), (-(2 * b - 1), 0, 1, 1, 2))
            rays = ((0, 0, 1), (0, 0, -1), (1, 0, 0), (-1, -2, 2 * b - 1), (0, 1, 0))
        cones = [(i, j, k) for i in (0, 1) for j, k in itertools.combinations(range(2, 5), 2)]
    elif kind in ("P3", "P1112", "P1123"):
        w = {"P3": (1, 1, 1, 1), "P1112": (1, 1, 1, 2), "P1123": (1, 1, 2, 3)}[kind]
        labels = ("x0", "x1", "x2", "x3")
        weights = (w,)
        if kind == "P1123":
            rays = ((-1, -2, -3), (1, 0, 0), (0, 1, 0), (0, 0, 1))
        else:
            rays = ((1, 0, 0), (0, 1, 0), (-1, -1, -w[3]), (0, 0, 1))
        cones = list(itertools.combinations(range(4), 3))
    else:
        raise ToricError(f"{s} is not toric")
    return labels, weights, rays, cones


def fan_of(space: MoriFibreSpace) -> Fan:
    """Fan of a toric member (F, P, R, W, P3, P1112, P1123), in normal form.

    Ray tables (columns = Cox coordinates):
      F[a,b,c]: x0 (0,0,1), x1 (0,0,-1), y0 (0,1,0), y1 (0,-1,b), z0 (1,0,0), z1 (-1,a,-c);
                cones {x_i, y_j, z_k}
      R[m,n]:   x0 (1,0,0), x1 (0,1,0), x2 (-1,-1,0), y0 (0,0,1), y1 (m,n,-1);
                cones {x_i, x_j, y_k}
      P[b]:     y0 (0,0,1), y1 (0,0,-1), z0 (1,0,0), z1 (0,1,0), z2 (-1,-1,b);
                cones {y_i, z_j, z_k}
      W[b]:     y0 (0,0,1), y1 (0,0,-1), z0 (1,0,0), z1 (-1,-2,2b-1), z2 (0,1,0);
                cones {y_i, z_j, z_k}
      P3, P1112: x0 (1,0,0), x1 (0,1,0), x2 (-1,-1,-w3), x3 (0,0,1)
      P1123:    x0 (-1,-2,-3), x1 (1,0,0), x2 (0,1,0), x3 (0,0,1)
    """
    labels, _, rays, cones = cox_data(space)
    return Fan(tuple(rays), tuple(cones), labels)


def gale_consistent(space: MoriFibreSpace) -> bool:
    """weights . rays^T == 0 and the rays span the lattice."""
    _, weights, rays, _ = cox_data(space)
    for row in weights:
        for k in range(3):
            if sum(w * r[k] for w, r in zip(row, rays)) != 0:
                return False
    # the lattice spanned by the rays is Z^3 iff the gcd of 3x3 minors is 1
    g = 0
    for trip in itertools.combinations(rays, 3):
        g = gcd(g, det3(*trip))
    return g == 1 and len(weights) + 3 == len(rays)


# ---------------------------------------------------------------- singularities

def is_smooth(fan: Fan) -> bool:
    return all(fan.multiplicity(c) == 1 for c in fan.cones)


def singular_cones(fan: Fan) -> list[tuple[int, int, int]]:
    return [c for c in fan.cones if fan.multiplicity(c) != 1]


def box_points(fan: Fan, cone) -> list[tuple[Vec, tuple[Fraction, ...]]]:
    """Nonzero lattice points sum t_i v_i with all t_i in [0,1), with their t."""
    vs = fan.cone_rays(cone)
    if fan.multiplicity(cone) == 1:
        return []
    lo = [sum(min(0, v[k]) for v in vs) for k in range(3)]
    hi = [sum(max(0, v[k]) for v in vs) for k in range(3)]
    out = []
    for p in itertools.product(*(range(lo[k], hi[k] + 1) for k in range(3))):
        if p == (0, 0, 0):
            continue
        t = _solve3(vs, p)
        if all(0 <= x < 1 for x in t):
            out.append((p, t))
    return out


def is_terminal(fan: Fan) -> bool:
    """Box criterion: no nonzero box point with t_1 + t_2 + t_3 <= 1."""
    for c in fan.cones:
        for _, t in box_points(fan, c):
            if sum(t) <= 1:
                return False
    return True


# ---------------------------------------------------------------- curves

def wall_relation(fan: Fan, wall) -> dict[int, Fraction]:
    """Intersection numbers D_i . C for the invariant curve C of a wall.

    With sigma = (p, wall), sigma' = (q, wall) and the unique linear relation
    among v_p, v_q and the wall rays, scaled so that the coefficient of v_p is
    mult(wall)/mult(sigma), the coefficient of v_i is D_i . C.
    """
    walls = fan.walls()
    if wall not in walls:
        raise ToricError(f"{wall} is not an interior wall")
    i, j = wall
    s1, s2 = walls[wall]
    (p,) = set(s1) - {i, j}
    (q,) = set(s2) - {i, j}
    vp, vi, vj, vq = (fan.rays[x] for x in (p, i, j, q))
    x = _solve3((vp, vi, vj), vq)          # vq = x0 vp + x1 vi + x2 vj, x0 < 0
    if x[0] >= 0:
        raise ToricError("cones on the same side of the wall")
    # relation: -x0 vp + vq - x1 vi - x2 vj = 0
    coeffs = {p: -x[0], q: Fraction(1), i: -x[1], j: -x[2]}
    mult_wall = _face_multiplicity(vi, vj)
    scale = Fraction(mult_wall, fan.multiplicity(s1)) / coeffs[p]
    out = {k: v * scale for k, v in coeffs.items()}
    if out[q] != Fraction(mult_wall, fan.multiplicity(s2)):
        raise ToricError("inconsistent wall multiplicities")
    return out


def curve_class(fan: Fan, wall) -> tuple[Fraction, ...]:
    rel = wall_relation(fan, wall)
    return tuple(rel.get(k, Fraction(0)) for k in range(len(fan.rays)))


def invariant_curve_K_degrees(fan: Fan) -> dict[tuple[int, int], Fraction]:
    """(-K).C for the invariant curve of every wall (-K is the sum of all D_i)."""
    return {w: sum(wall_relation(fan, w).values()) for w in fan.walls()}


# ---------------------------------------------------------------- modifications

def star_subdivide(fan: Fan, ray, label: Optional[str] = None) -> Fan:
    """Insert a ray and re-triangulate its star."""
    v = primitive(ray)
    if v in fan.rays:
        raise ToricError(f"{v} is already a ray")
    new = len(fan.rays)
    cones = []
    hit = False
    for c in fan.cones:
        t = _solve3(fan.cone_rays(c), v)
        if all(x >= 0 for x in t):
            hit = True
            for k in range(3):
                if t[k] > 0:
                    rest = [c[m] for m in range(3) if m != k]
                    cones.append((rest[0], rest[1], new))
        else:
            cones.append(c)
    if not hit:
        raise ToricError(f"{v} is outside the support")
    labels = fan.labels + (label or f"v{new}",)
    return Fan(fan.rays + (v,), tuple(cones), labels)


def flippable(fan: Fan, wall) -> bool:
    rel = wall_relation(fan, wall)
    return rel[wall[0]] < 0 and rel[wall[1]] < 0


def wall_flip(fan: Fan, wall) -> Fan:
    """Bistellar exchange of the two cones over a wall."""
    if not flippable(fan, wall):
        raise ToricError(f"wall {wall} is not flippable")
    i, j = wall
    s1, s2 = fan.walls()[wall]
    (p,) = set(s1) - {i, j}
    (q,) = set(s2) - {i, j}
    cones = [c for c in fan.cones if c not in (s1, s2)] + [(p, q, i), (p, q, j)]
    return Fan(fan.rays, tuple(cones), fan.labels)


def find_wall(fan: Fan, a: str, b: str) -> tuple[int, int]:
    i, j = sorted((fan.ray_index(a), fan.ray_index(b)))
    return (i, j)


def lattice_isomorphism(f1: Fan, f2: Fan) -> Optional[dict[int, int]]:
    """A ray bijection induced by some matrix in GL_3(Z) mapping cones to cones."""
    if len(f1.rays) != len(f2.rays) or len(f1.cones) != len(f2.cones):
        return None
    c1 = f1.cones[0]
    v1 = f1.cone_rays(c1)
    target_rays = {r: k for k, r in enumerate(f2.rays)}
    target_cones = set(f2.cones)
    for c2 in f2.cones:
        if f2.multiplicity(c2) != f1.multiplicity(c1):
            continue
        for perm in itertools.permutations(c2):
            A = _matrix_from(v1, [f2.rays[k] for k in perm])
            if A is None:
                continue
            mapping = {}
            for k, r in enumerate(f1.rays):
                img = tuple(sum(A[row][col] * r[col] for col in range(3)) for row in range(3))
                if img not in target_rays:
                    break
                mapping[k] = target_rays[img]
            else:
                if all(tuple(sorted(mapping[x] for x in c)) in target_cones for c in f1.cones):
                    return mapping
    return None


def _matrix_from(src, dst):
    """Integer unimodular A with A src[i] = dst[i], or None."""
    d = det3(*src)
    if d == 0:
        return None
    A = []
    for row in range(3):
        # A_row . src[i] = dst[i][row] for i = 0..2
        target = tuple(dst[i][row] for i in range(3))
        cols = [tuple(src[i][k] for i in range(3)) for k in range(3)]
        coeffs = _solve3(cols, target)
        if any(x.denominator != 1 for x in coeffs):
            return None
        A.append(tuple(int(x) for x in coeffs))
    if abs(det3(*A)) != 1:
        return None
    return A


def isomorphic(f1: Fan, f2: Fan) -> bool:
    return lattice_isomorphism(f1, f2) is not None


# ---------------------------------------------------------------- sections

def lattice_h0(a: int, alpha: int, beta: int) -> int:
    """h^0(F_a, O(alpha*s_a + beta*f)), closed form."""
    if alpha < 0:
        return 0
    return sum(max(0, beta + i * a + 1) for i in range(alpha + 1))


def polytope_h0(a: int, alpha: int, beta: int) -> int:
    """Same number by direct enumeration of the lattice polytope.

    Rays of F_a: y0 (0,1), y1 (0,-1), z0 (1,0), z1 (-1,a), with s_a = D_y1 and
    f = D_z1; the polytope is {m : <m, v_rho> >= -d_rho}.
    """
    rays = ((0, 1), (0, -1), (1, 0), (-1, a))
    d = (0, alpha, 0, beta)
    bound = abs(alpha) + abs(beta) + a * abs(alpha) + 1
    count = 0
    for m1 in range(-bound, bound + 1):
        for m2 in range(-bound, bound + 1):
            if all(m1 * v[0] + m2 * v[1] >= -di for v, di in zip(rays, d)):
                count += 1
    return count


# ---------------------------------------------------------------- link models

def antiflip_model(b: int, c: int) -> Fan:
    """The model W' of F[2,b,c] after antiflipping the extremal invariant curve
    over the (-2)-section of F_2 (l1 if c <= 0, l4 if c > 0).

    When that curve moves in a ruling (its wall is not a flipping circuit,
    which happens for c = 0) the small map is an isomorphism and W' is the
    fan itself.
    """
    fan = fan_of(MoriFibreSpace("F", (2, b, c)))
    wall = find_wall(fan, "x0" if c <= 0 else "x1", "y0")
    if not flippable(fan, wall):
        return fan
    return wall_flip(fan, wall)


def _blowup_singular_point(fan: Fan, cone_labels, label) -> Fan:
    cone = tuple(sorted(fan.ray_index(x) for x in cone_labels))
    pts = sorted(box_points(fan, cone), key=lambda pt: (sum(pt[1]), pt[0]))
    if not pts:
        raise ToricError("the cone is smooth")
    # the box point of least height is the weighted blow-up with smallest discrepancy
    return star_subdivide(fan, pts[0][0], label)


# The two singular points of W_b: p0 = {y0=z0=z1=0} and p1 = {y1=z0=z1=0}.
W_LINK_STEPS = {
    # target kind -> (singular cone blown up, wall flipped after the blow-up)
    "F(2,b-1,-1)": (("y1", "z0", "z1"), ("z0", "z1")),
    "F(2,b,1)": (("y0", "z0", "z1"), ("z0", "z1")),
}


def w_link_model(b: int, which: str) -> Fan:
    """Blow up a singular point of W_b with weights (1,1,1)/2, then flip.

    ``which`` is "F(2,b-1,-1)" or "F(2,b,1)"; the result is lattice-isomorphic
    to the fan of that space.
    """
    cone, wall = W_LINK_STEPS[which]
    fan = _blowup_singular_point(fan_of(MoriFibreSpace("W", (b,))), cone, "e")
    return wall_flip(fan, find_wall(fan, *wall))


# Factorizations of the links between the singular rank-one spaces and
# their neighbours: (source, blown-up cone, flipped wall or None, target).
RANK_ONE_LINK_STEPS = {
    "S6": (MoriFibreSpace("P1112"), ("x0", "x1", "x2"), None, MoriFibreSpace("P", (2,))),
    "S9": (MoriFibreSpace("P1123"), ("x0", "x1", "x3"), ("x0", "x1"), MoriFibreSpace("R", (3, 1))),
    "S10": (MoriFibreSpace("P1123"), ("x0", "x1", "x2"), None, MoriFibreSpace("W", (2,))),
}


def rank_one_link_model(link_id: str) -> tuple[Fan, MoriFibreSpace]:
    """Blow up the singular point, flip if needed; returns (fan, expected target)."""
    source, cone, wall, target = RANK_ONE_LINK_STEPS[link_id]
    fan = _blowup_singular_point(fan_of(source), cone, "e")
    if wall is not None:
        fan = wall_flip(fan, find_wall(fan, *wall))
    return fan, target
