"""Rational Mori fibre spaces of dimension three, as parametrized families.

Each space is a tagged value ``MoriFibreSpace(kind, params, form)``:

    F[a,b,c]  decomposable P^1-bundle over the Hirzebruch surface F_a
    P[b]      P(O + O(b)) over P^2
    U[a,b,c]  Umemura P^1-bundle over F_a, c = a*k + 2 with 0 <= k <= b
    S[b]      Schwarzenberger P^1-bundle over P^2
    V[b]      P^1-bundle over P^2 obtained from U[1,b,2] by descent
    W[b]      toric P^1-fibration over P(1,1,2) with two 1/2(1,1,1) points
    R[m,n]    P^2-bundle P(O(m) + O(n) + O) over P^1 (up to the usual twists)
    Q[g]      quadric fibration x0^2 - x1*x2 - g(u0,u1)*x3^2 = 0 over P^1
    P3, Q3, P1112, P1123   rank-one Fano threefolds

The product (P^1)^3 is F[0,0,0], P^2 x P^1 over P^1 is R[0,0] and the flag
variety is S[1].  Equality is equality of Mori fibrations, not of total
spaces: F[2,0,0] and F[0,2,0] are the same threefold with different
fibrations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .binforms import BinaryForm, odd_part, parse_form, root_stats

KINDS = ("F", "P", "U", "S", "V", "W", "R", "Q", "P3", "Q3", "P1112", "P1123")
ARITY = {"F": 3, "P": 1, "U": 3, "S": 1, "V": 1, "W": 1, "R": 2, "Q": 0,
         "P3": 0, "Q3": 0, "P1112": 0, "P1123": 0}
RANK_ONE = ("P3", "Q3", "P1112", "P1123")


class InvalidSpace(ValueError):
    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class MoriFibreSpace:
    kind: str
    params: tuple[int, ...] = ()
    form: Optional[BinaryForm] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown family {self.kind!r}")
        if len(self.params) != ARITY[self.kind]:
            raise ValueError(f"{self.kind} takes {ARITY[self.kind]} integer parameters")
        if (self.kind == "Q") != (self.form is not None):
            raise ValueError("exactly the Q family carries a binary form")
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))

    # derived parameters
    @property
    def k(self) -> int:
        """For U[a,b,c]: the integer k with c = a*k + 2 (only meaningful when valid)."""
        a, _, c = self.params
        return (c - 2) // a

    @property
    def n(self) -> int:
        """For Q[g]: half the degree of g."""
        return self.form.degree // 2

    def to_text(self) -> str:
        if self.kind == "Q":
            return f"Q[{self.form.to_text()}]"
        if not self.params:
            return self.kind
        return f"{self.kind}[{','.join(str(p) for p in self.params)}]"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        if self.kind == "Q":
            return f"Q({self.form.to_text()})"
        if not self.params:
            return self.kind
        return f"{self.kind}({','.join(str(p) for p in self.params)})"

    def sort_key(self):
        return (KINDS.index(self.kind), self.params,
                self.form.coeffs if self.form is not None else ())


def F(a: int, b: int, c: int) -> MoriFibreSpace:
    return MoriFibreSpace("F", (a, b, c))


def P(b: int) -> MoriFibreSpace:
    return MoriFibreSpace("P", (b,))


def U(a: int, b: int, c: int) -> MoriFibreSpace:
    return MoriFibreSpace("U", (a, b, c))


def S(b: int) -> MoriFibreSpace:
    return MoriFibreSpace("S", (b,))


def V(b: int) -> MoriFibreSpace:
    return MoriFibreSpace("V", (b,))


def W(b: int) -> MoriFibreSpace:
    return MoriFibreSpace("W", (b,))


def R(m: int, n: int) -> MoriFibreSpace:
    return MoriFibreSpace("R", (m, n))


def Q(g) -> MoriFibreSpace:
    if isinstance(g, str):
        g = parse_form(g)
    return MoriFibreSpace("Q", (), g)


P3 = MoriFibreSpace("P3")
Q3 = MoriFibreSpace("Q3")
P1112 = MoriFibreSpace("P1112")
P1123 = MoriFibreSpace("P1123")


# ---------------------------------------------------------------- validity

class Validation(NamedTuple):
    violations: tuple[str, ...]
    mori_fibration: bool = True

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(space: MoriFibreSpace) -> Validation:
    """Check the defining constraints.  Never raises.

    Sign conventions such as b >= 0 for F are not violations: any integer
    presentation is accepted and ``normalize`` picks the canonical one.
    For Q the result also says whether the fibration is a Mori fibration
    (it is not when g is a square).
    """
    v = []
    p = space.params
    kind = space.kind
    if kind == "F":
        if p[0] < 0:
            v.append(f"a={p[0]} < 0 is unsupported for F")
    elif kind == "U":
        a, b, c = p
        if a < 1:
            v.append(f"a={a} must be >= 1")
        if b < 1:
            v.append(f"b={b} must be >= 1")
        if c < 2:
            v.append(f"c={c} must be >= 2")
        if a >= 1 and c >= 2:
            if (c - 2) % a:
                v.append(f"{a} does not divide {c}-2")
            elif b >= 1 and not 0 <= (c - 2) // a <= b:
                v.append(f"k=(c-2)/a={(c - 2) // a} is not in [0, {b}]")
    elif kind in ("S", "V"):
        if p[0] < 1:
            v.append(f"b={p[0]} must be >= 1")
    elif kind == "W":
        if p[0] < 2:
            v.append(f"b={p[0]} must be >= 2")
    elif kind == "Q":
        g = space.form
        if g.is_zero():
            v.append("g must be nonzero")
        elif g.degree < 2 or g.degree % 2:
            v.append(f"deg g={g.degree} must be even and >= 2")
        if not v:
            return Validation((), odd_part(g).degree > 0)
    return Validation(tuple(v))


def check(space: MoriFibreSpace) -> MoriFibreSpace:
    """Return the space unchanged, or raise InvalidSpace."""
    res = validate(space)
    if not res.ok:
        raise InvalidSpace(res.violations)
    return space


def is_mori_fibration(space: MoriFibreSpace) -> bool:
    return validate(space).mori_fibration


# ---------------------------------------------------------------- normal form

def _normalize_f(a, b, c):
    if b < 0 or (b == 0 and c > 0):
        b, c = -b, -c
    if a == 0:
        # orbit under the factor swap (b,c) -> (c,b) and the sign (b,c) -> (-b,-c)
        orbit = {(b, c), (c, b), (-b, -c), (-c, -b)}
        cands = [o for o in orbit if o[0] >= abs(o[1])]
        b, c = max(cands)
    return a, b, c


def _normalize_r(m, n):
    p, q, r = sorted((m, n, 0), reverse=True)
    return p - r, q - r


def normalize(space: MoriFibreSpace) -> MoriFibreSpace:
    check(space)
    kind, p = space.kind, space.params
    if kind == "F":
        return F(*_normalize_f(*p))
    if kind == "R":
        return R(*_normalize_r(*p))
    if kind == "P":
        return P(abs(p[0]))
    if kind == "Q":
        return Q(space.form.primitive())
    return space


def spaces_equal(s1: MoriFibreSpace, s2: MoriFibreSpace) -> bool:
    return normalize(s1) == normalize(s2)


# ---------------------------------------------------------------- maximality

MAXIMAL = "Maximal"
NOT_MAXIMAL = "NotMaximal"
UNKNOWN_FANO = "UnknownFano"


@dataclass(frozen=True)
class NonMaximalityWitness:
    """Where the automorphism group goes when the space is not maximal.

    ``target`` is None only for parameter values that the classification of
    P^1-bundles over rational surfaces already discards without naming a
    reduction; ``off_list`` marks a target outside the maximal families
    (carried as an opaque intermediate, never enumerated).
    """

    target: Optional[MoriFibreSpace]
    description: str
    off_list: bool = False


@dataclass(frozen=True)
class MaximalityVerdict:
    status: str
    label: str
    witness: Optional[NonMaximalityWitness] = None

    @property
    def maximal(self) -> bool:
        return self.status == MAXIMAL


def _max(label):
    return MaximalityVerdict(MAXIMAL, label)


def _not(label, target, description, off_list=False):
    return MaximalityVerdict(NOT_MAXIMAL, label,
                             NonMaximalityWitness(target, description, off_list))


_UPSTREAM = ("excluded by the classification of P1-bundles over rational surfaces; "
             "no explicit reduction target is recorded")


def f_is_maximal_params(a, b, c) -> bool:
    """Maximality test for a normalized F[a,b,c]."""
    if a == 1:
        return False
    return ((a, b, c) == (0, 1, -1)
            or (a == 0 and c != 1 and b >= 2 and b >= abs(c))
            or -a < c < a * (b - 1)
            or b == c == 0)


def _f_verdict(a, b, c):
    if f_is_maximal_params(a, b, c):
        return _max("family (a)")
    label = "F with a=1 is not a maximal family" if a == 1 else "outside family (a)"
    if b == 0 and -a < c < 0:
        return _not(label, normalize(R(a, c + a)),
                    f"type II link to F[{a},1,{c + a}], then contraction of x0=0 onto a section")
    if b == 1 and c >= 0:
        return _not(label, normalize(R(a, c)),
                    "contraction of the divisor x0=0 onto the section [0:1:0;*:*]")
    if b >= 2 and a * (b - 1) <= c < a * b:
        r = c - a * (b - 1)
        return _not(label, normalize(R(a, r)),
                    f"type II links lowering b, down to F[{a},1,{r}] or F[{a},0,{c - a * b}], "
                    f"then contraction onto a section of R[{a},{r}]")
    if a == 0 and c == 1:
        return _not(label, normalize(R(0, b)),
                    "exchange of the two P1 factors of the base, then contraction onto a section")
    if a == 1:
        d = abs(b - c)
        return _not(label, P(d),
                    f"descent along the contraction F_1 -> P^2 of the (-1)-curve, "
                    f"giving the P1-bundle P[{d}]")
    return _not(label, None, _UPSTREAM)


def _u_verdict(a, b, c):
    if (a == 1 and c < b) or (a >= 2 and c - 2 < a * b and c - 2 != a * (b - 1)):
        return _max("family (c)")
    label = "outside family (c)"
    if a == 1 and b == c:
        return _not(label, Q3, "type II links down to U[1,2,2], the blow-up of Q3 along a line")
    if a >= 2 and c == 2 + a * (b - 1):
        return _not(label, R(a - 1, 0),
                    f"links down to U[{a},1,2], the blow-up of R[{a - 1},0] along a section")
    return _not(label, None, _UPSTREAM)


def _r_verdict(m, n):
    if (m, n) != (1, 0) and (m == n or m > 2 * n):
        return _max("family (g)")
    if (m, n) == (1, 0):
        return _not("outside family (g)", P3, "blow-up of the line [0:0:*:*] in P3")
    a, c = m - n, -n
    target = F(a, 1, c)
    onward = (f"F[{a},1,{c}] is itself off-list (a=1)" if a == 1
              else f"F[{a},1,{c}] then links on by the type II link to F[{a},2,{c + a}]")
    return _not("outside family (g)", target,
                f"blow-up of the invariant curve [0:0:1;*:*], giving F[{a},1,{c}]; {onward}",
                off_list=not f_is_maximal_params(a, 1, c))


def is_maximal(space: MoriFibreSpace) -> MaximalityVerdict:
    s = normalize(space)
    kind, p = s.kind, s.params
    if kind == "F":
        return _f_verdict(*p)
    if kind == "P":
        b = p[0]
        if b >= 2:
            return _max("family (b)")
        if b == 0:
            return _max("family (g) via the type IV link to R[0,0]")
        return _not("outside family (b)", P3, "blow-up of the point [0:0:0:1] in P3")
    if kind == "U":
        return _u_verdict(*p)
    if kind == "S":
        b = p[0]
        if b == 1 or b >= 3:
            return _max("family (d)")
        return _not("outside family (d)", P3, "blow-down of twisted cubic to P3")
    if kind == "V":
        b = p[0]
        if b >= 3:
            return _max("family (e)")
        if b == 2:
            return _not("outside family (e)", Q3, "birational morphism V[2] -> Q3")
        return _not("outside family (e)", None, _UPSTREAM)
    if kind == "W":
        return _max("family (f)")
    if kind == "R":
        return _r_verdict(*p)
    if kind == "Q":
        odd = odd_part(s.form)
        if odd.degree == 0:
            raise InvalidSpace("g is a square, so Q[g] is not a Mori fibration")
        if odd.degree >= 4:
            return _max("family (h)")
        return _not("outside family (h)", Q3,
                    f"type II links down to Q[{odd.to_text()}] (two roots), whose group is "
                    f"conjugate to a strict subgroup of Aut(Q3)")
    if kind == "P1112":
        return _max("family (i)")
    if kind == "P1123":
        return _max("family (j)")
    if kind == "P3":
        return _max("Umemura [P1]")
    return _max("Umemura [P2]")


def non_maximality_witness(space: MoriFibreSpace) -> Optional[NonMaximalityWitness]:
    return is_maximal(space).witness


# ---------------------------------------------------------------- automorphisms

@dataclass(frozen=True)
class AutInfo:
    dimension: Optional[int]
    description: str

    @property
    def available(self) -> bool:
        return self.dimension is not None


def _hirzebruch_aut_dim(a: int) -> int:
    return 6 if a == 0 else a + 5


def f_aut_dim(a: int, b: int, c: int) -> int:
    from .toric import lattice_h0
    return (_hirzebruch_aut_dim(a) + 1
            + lattice_h0(a, b, -c) + lattice_h0(a, -b, c))


def r_aut_dim(m: int, n: int) -> int:
    degs = (0, n - m, -m, m - n, 0, -n, m, n, 0)
    return sum(max(0, d + 1) for d in degs) - 1 + 3


def aut_info(space: MoriFibreSpace) -> AutInfo:
    s = normalize(space)
    kind, p = s.kind, s.params
    if kind == "P3":
        return AutInfo(15, "PGL4")
    if kind == "Q3":
        return AutInfo(10, "PSO5")
    if kind == "P1112":
        return AutInfo(15, "graded coordinate changes of weights (1,1,1,2)")
    if kind == "P1123":
        return AutInfo(14, "graded coordinate changes of weights (1,1,2,3)")
    if kind == "F":
        if p == (0, 0, 0):
            return AutInfo(9, "PGL2^3")
        return AutInfo(f_aut_dim(*p), f"bundle automorphisms extended by Aut(F_{p[0]})")
    if kind == "R":
        if p == (0, 0):
            return AutInfo(11, "PGL3 x PGL2")
        return AutInfo(r_aut_dim(*p), "graded-matrix group over P1, extended by PGL2")
    if kind == "P":
        b = p[0]
        if b == 0:
            return AutInfo(11, "PGL3 x PGL2")
        return AutInfo(8 + 1 + (b + 1) * (b + 2) // 2,
                       f"(degree-{b} forms on P2) x Gm, extended by PGL3")
    if kind == "S":
        return AutInfo(8, "PGL3") if p[0] == 1 else AutInfo(3, "PGL2")
    if kind == "W":
        return AutInfo(f_aut_dim(2, p[0], 1), f"conjugate to Aut(F[2,{p[0]},1])")
    if kind == "Q":
        if root_stats(s.form).distinct_roots == 2:
            return AutInfo(4, "PGL2xGm")
        return AutInfo(3, "PGL2")
    return AutInfo(None, "Unavailable")


# ---------------------------------------------------------------- orbits

@dataclass(frozen=True)
class OrbitSummary:
    count: Optional[int]
    orbits: tuple[str, ...]

    def as_dict(self):
        return {"count": self.count, "orbits": list(self.orbits)}


def orbit_structure(space: MoriFibreSpace) -> Optional[OrbitSummary]:
    """Orbit decomposition under the neutral component of Aut, where known."""
    s = normalize(space)
    kind, p = s.kind, s.params
    homogeneous = {("P3", ()), ("Q3", ()), ("F", (0, 0, 0)), ("R", (0, 0)),
                   ("P", (0,)), ("S", (1,))}
    if (kind, p) in homogeneous:
        return OrbitSummary(1, ("open (homogeneous)",))
    if kind == "S":
        return OrbitSummary(4, ("curve gamma", "D minus gamma", "E minus gamma", "open"))
    if kind == "W":
        return OrbitSummary(5, ("point q1", "point q2 = l meets D", "l minus {q1, q2}",
                                "D minus q2", "open"))
    if kind == "V" and p[0] >= 2:
        return OrbitSummary(3, ("fibre f'", "H' minus f'", "open"))
    if kind == "U" and p[0] == 1 and p[2] == 2:
        return OrbitSummary(4, ("curve l00", "H_x minus l00", "H_y minus l00", "open"))
    if kind == "P1123":
        return OrbitSummary(4, ("point p1 = [0:0:1:0]", "point p2 = [0:0:0:1]",
                                "curve C = [0:0:*:*] minus {p1, p2}", "open"))
    if kind == "P1112":
        return OrbitSummary(2, ("singular point [0:0:0:1]", "open"))
    if kind == "P" and p[0] >= 2:
        return OrbitSummary(2, ("invariant section y0=0", "open"))
    if kind == "R" and p[1] == 0 and p[0] >= 2:
        return OrbitSummary(2, ("invariant divisor x0=0", "open"))
    if kind == "F" and p[0] == 0 and f_is_maximal_params(*p) and p[1] >= 1:
        if p[2] <= 0:
            return OrbitSummary(2, ("divisor x0=0", "open"))
        return OrbitSummary(3, ("divisor x0=0", "divisor x1=0", "open"))
    if kind == "Q":
        st = root_stats(s.form)
        if st.degree >= 4 and st.distinct_roots >= 3:
            return OrbitSummary(None, (
                "over each non-root p of g: the diagonal curve of the fibre, and its complement",
                "over each root p of g: the vertex q, the curve x3=0 of the fibre, "
                "and the rest of the fibre",
            ))
    return None
