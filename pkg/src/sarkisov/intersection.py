"""Intersection tables: divisor and curve bases, canonical class, cone of curves.

Classes are kept against a fixed, named basis per family.  A curve class or a
divisor class is given either by a label or by a mapping label -> integer;
pairings extend bilinearly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Union

from .spaces import MoriFibreSpace, InvalidSpace, normalize, is_mori_fibration

Class = Union[str, Mapping[str, int]]


class IntersectionError(KeyError):
    pass


@dataclass(frozen=True)
class IntersectionData:
    divisors: tuple[str, ...]
    curves: tuple[str, ...]
    # pairing[i][j] = curves[i] . divisors[j]
    pairing: tuple[tuple[int, ...], ...]
    canonical: tuple[int, ...]
    cone: tuple[str, ...]
    fibre: Optional[str] = None

    def curve_vector(self, curve: Class) -> tuple[int, ...]:
        """Pairings of a curve class with each divisor basis element."""
        terms = {curve: 1} if isinstance(curve, str) else curve
        out = [0] * len(self.divisors)
        for label, coef in terms.items():
            if label not in self.curves:
                raise IntersectionError(f"unknown curve label {label!r}")
            row = self.pairing[self.curves.index(label)]
            for j in range(len(out)):
                out[j] += coef * row[j]
        return tuple(out)

    def divisor_vector(self, divisor: Class) -> tuple[int, ...]:
        if isinstance(divisor, str) and divisor == "K":
            return self.canonical
        terms = {divisor: 1} if isinstance(divisor, str) else divisor
        out = [0] * len(self.divisors)
        for label, coef in terms.items():
            if label == "K":
                out = [o + coef * k for o, k in zip(out, self.canonical)]
                continue
            if label not in self.divisors:
                raise IntersectionError(f"unknown divisor label {label!r}")
            out[self.divisors.index(label)] += coef
        return tuple(out)

    def k_degrees(self) -> dict[str, int]:
        return {c: k_dot(self, c) for c in self.cone}

    def as_dict(self) -> dict:
        return {
            "divisors": list(self.divisors),
            "curves": list(self.curves),
            "pairing": [list(r) for r in self.pairing],
            "K": dict(zip(self.divisors, self.canonical)),
            "NE": list(self.cone),
            "K_degrees": {c: k_dot(self, c) for c in self.curves},
        }


def pair(data: IntersectionData, curve: Class, divisor: Class) -> int:
    cv = data.curve_vector(curve)
    dv = data.divisor_vector(divisor)
    return sum(x * y for x, y in zip(cv, dv))


def k_dot(data: IntersectionData, curve: Class) -> int:
    return pair(data, curve, "K")


def _data(divisors, rows: dict, K, cone, fibre=None):
    return IntersectionData(tuple(divisors), tuple(rows),
                            tuple(tuple(r) for r in rows.values()),
                            tuple(K), tuple(cone), fibre)


def _r(m, n):
    return _data(("H", "F"), {"l": (-m, 1), "f": (1, 0)},
                 (-3, -(2 * m - n + 2)), ("l", "f"), "f")


def _f(a, b, c):
    rows = {"l1": (1, -a, c), "l2": (0, 1, -b), "l3": (0, 0, 1), "l4": (1, -a, 0)}
    cone = ("l1", "l2", "l3") if c <= 0 else ("l4", "l2", "l3")
    K = (-(a * (b + 1) + 2 - c), -(b + 2), -2)
    return _data(("H_z0", "H_y0", "H_x0"), rows, K, cone, "l3")


def _s(b):
    rows = {"f": (2, 0), "s1": (1 - b, 1), "s2": (b + 3, 1)}
    return _data(("E", "H"), rows, (-1, -2), ("s1", "f"), "f")


def _u(a, b, c):
    k = (c - 2) // a
    lam = c if c > 2 else 2
    rows = {"f": (1, 0, 0), "s": (-b, 1, 0), "l00": (lam, -a, 1),
            "l10": (lam - c, -a, 1), "r": (lam - 1, -a, 1)}
    cone = ("f", "s", "l10") if c > 2 else ("f", "s", "r")
    K = (-2, -(b + 2), -a * (b + 1 - k))
    return _data(("H_x", "H_y", "H_z"), rows, K, cone, "f")


def _v(b):
    rows = {"f'": (1, 0), "s'": (-(b - 1), 1)}
    return _data(("H'", "F'"), rows, (-2, -(b + 1)), ("f'", "s'"), "f'")


def _q(n):
    rows = {"h": (-n, 1), "f": (1, 0)}
    return _data(("H", "F"), rows, (-2, -(n + 2)), ("h", "f"), "f")


def intersection_data(space: MoriFibreSpace) -> Optional[IntersectionData]:
    """Tabulated intersection data, or None where no table is available.

    F and R are read in normal form.  W and P are left to the toric module.
    """
    s = normalize(space)
    kind, p = s.kind, s.params
    if kind == "R":
        return _r(*p)
    if kind == "F":
        return _f(*p)
    if kind == "S":
        return _s(*p)
    if kind == "U":
        return _u(*p)
    if kind == "V":
        return _v(*p)
    if kind == "Q":
        if not is_mori_fibration(s):
            raise InvalidSpace("g is a square, so Q[g] is not a Mori fibration")
        return _q(s.n)
    if kind == "P3":
        return _data(("H",), {"line": (1,)}, (-4,), ("line",))
    if kind == "Q3":
        return _data(("H",), {"line": (1,)}, (-3,), ("line",))
    return None
