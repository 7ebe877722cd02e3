"""Homogeneous binary forms over the rationals.

A form of degree d is stored densely as the coefficients c_0..c_d of
sum c_i * u0^(d-i) * u1^i.  Everything is exact (``fractions.Fraction``).

Root statistics are read off the squarefree decomposition, so no
factorization into irreducibles is ever needed.  The decomposition runs
Yun's algorithm on the dehomogenization h(t) = g(t, 1); the point [1:0]
(the factor u1) is tracked through the drop in t-degree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, NamedTuple


class FormError(ValueError):
    pass


class FormSyntaxError(FormError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# Univariate helpers.  Polynomials in t are lists of Fractions in ascending
# order with no trailing zeros; [] is the zero polynomial.

def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _deriv(p):
    return _trim([i * p[i] for i in range(1, len(p))])


def _sub(p, q):
    n = max(len(p), len(q))
    out = [(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)]
    return _trim([_frac(x) for x in out])


def _divmod(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    p = list(p)
    quot = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    lead = q[-1]
    while len(p) >= len(q) and p:
        shift = len(p) - len(q)
        factor = p[-1] / lead
        quot[shift] = factor
        for i, qi in enumerate(q):
            p[shift + i] -= factor * qi
        _trim(p)
    return _trim(quot), p


def _monic(p):
    return [x / p[-1] for x in p] if p else p


def _gcd(p, q):
    p, q = _monic(list(p)), _monic(list(q))
    while q:
        _, r = _divmod(p, q)
        p, q = q, _monic(r)
    return p


def _yun(h) -> list[tuple[list[Fraction], int]]:
    """Squarefree layers of a univariate polynomial of positive degree."""
    dh = _deriv(h)
    a = _gcd(h, dh)
    b, _ = _divmod(h, a)
    c, _ = _divmod(dh, a)
    d = _sub(c, _deriv(b))
    layers = []
    i = 1
    while len(b) > 1:
        a = _gcd(b, d)
        b, _ = _divmod(b, a)
        c, _ = _divmod(d, a)
        d = _sub(c, _deriv(b))
        if len(a) > 1:
            layers.append((a, i))
        i += 1
    return layers


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [k for k in range(1, isqrt(n) + 1) if n % k == 0]
    return sorted(set(small + [n // k for k in small]))


def _rational_roots(p) -> list[Fraction]:
    """Rational roots of a univariate polynomial, by the rational root test."""
    if len(p) <= 1:
        return []
    den = 1
    for x in p:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in p]
    roots = []
    low = 0
    while ints[low] == 0:
        low += 1
    if low:
        roots.append(Fraction(0))
    ints = ints[low:]
    if len(ints) == 1:
        return roots
    for num in _divisors(ints[0]):
        for den_ in _divisors(ints[-1]):
            for cand in (Fraction(num, den_), Fraction(-num, den_)):
                if cand in roots:
                    continue
                if sum(c * cand ** k for k, c in enumerate(ints)) == 0:
                    roots.append(cand)
    return sorted(roots)


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous form sum c_i u0^(d-i) u1^i with rational coefficients."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable):
        cs = tuple(_frac(c) for c in coeffs)
        if not cs:
            raise FormError("a form needs at least one coefficient")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def monomial(cls, i: int, j: int, coef=1) -> BinaryForm:
        """coef * u0^i * u1^j"""
        cs = [0] * (i + j + 1)
        cs[j] = coef
        return cls(cs)

    @classmethod
    def constant(cls, value=1) -> BinaryForm:
        return cls([value])

    @classmethod
    def linear(cls, p, q) -> BinaryForm:
        """p*u0 + q*u1"""
        return cls([p, q])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __mul__(self, other: BinaryForm) -> BinaryForm:
        if not isinstance(other, BinaryForm):
            return BinaryForm(c * other for c in self.coeffs)
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return BinaryForm(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> BinaryForm:
        out = BinaryForm.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __add__(self, other: BinaryForm) -> BinaryForm:
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise FormError("cannot add forms of different degrees")
        return BinaryForm(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> BinaryForm:
        return BinaryForm(-c for c in self.coeffs)

    def __sub__(self, other: BinaryForm) -> BinaryForm:
        return self + (-other)

    def evaluate(self, u0, u1) -> Fraction:
        d = self.degree
        return sum(c * _frac(u0) ** (d - i) * _frac(u1) ** i for i, c in enumerate(self.coeffs))

    # dehomogenization at u1 = 1: returns (h ascending in t, e) with g = u1^e * hom(h)
    def _dehomogenize(self) -> tuple[list[Fraction], int]:
        e = 0
        while e < len(self.coeffs) and self.coeffs[e] == 0:
            e += 1
        h = [self.coeffs[self.degree - j] for j in range(self.degree - e + 1)]
        return _trim(h), e

    @classmethod
    def _homogenize(cls, h, degree: int) -> BinaryForm:
        cs = [Fraction(0)] * (degree + 1)
        for j, x in enumerate(h):
            cs[degree - j] = x
        return cls(cs)

    def content(self) -> Fraction:
        """Positive rational c such that self / c has coprime integer coefficients."""
        nz = [c for c in self.coeffs if c]
        if not nz:
            return Fraction(1)
        num = 0
        den = 1
        for c in nz:
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> BinaryForm:
        """Coprime integer coefficients, first nonzero coefficient positive."""
        if self.is_zero():
            return self
        c = self.content()
        lead = next(x for x in self.coeffs if x)
        if lead < 0:
            c = -c
        return BinaryForm(x / c for x in self.coeffs)

    def is_primitive(self) -> bool:
        return self == self.primitive()

    def to_text(self) -> str:
        d = self.degree
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = []
            if d - i:
                mono.append("u0" if d - i == 1 else f"u0^{d - i}")
            if i:
                mono.append("u1" if i == 1 else f"u1^{i}")
            mag = abs(c)
            if mag != 1 or not mono:
                mono.insert(0, str(mag))
            terms.append(("-" if c < 0 else "+", "*".join(mono)))
        if not terms:
            return "0"
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"BinaryForm({self.to_text()!r})"


def multiply(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    return f * g


def divide_exact(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """The form q with f = q * g; raises FormError if g does not divide f."""
    if g.is_zero():
        raise FormError("division by the zero form")
    if f.is_zero():
        return BinaryForm([0] * (max(f.degree - g.degree, 0) + 1))
    if g.degree > f.degree:
        raise FormError(f"{g} does not divide {f}")
    hf, ef = f._dehomogenize()
    hg, eg = g._dehomogenize()
    if eg > ef:
        raise FormError(f"{g} does not divide {f}")
    q, r = _divmod(hf, hg)
    if r:
        raise FormError(f"{g} does not divide {f}")
    return BinaryForm._homogenize(q, f.degree - g.degree)


class Layer(NamedTuple):
    form: BinaryForm
    multiplicity: int


def squarefree_decomposition(g: BinaryForm) -> list[Layer]:
    """Pairwise coprime squarefree g_i with g = const * prod g_i^i.

    Layers are primitive-normalized, nonconstant, sorted by multiplicity.
    """
    if g.is_zero():
        raise FormError("the zero form has no squarefree decomposition")
    h, e = g._dehomogenize()
    layers: dict[int, BinaryForm] = {}
    if len(h) > 1:
        for p, i in _yun(h):
            layers[i] = BinaryForm._homogenize(p, len(p) - 1)
    if e:
        u1 = BinaryForm.linear(0, 1)
        layers[e] = layers[e] * u1 if e in layers else u1
    return [Layer(layers[i].primitive(), i) for i in sorted(layers)]


def odd_part(g: BinaryForm) -> BinaryForm:
    out = BinaryForm.constant(1)
    for form, i in squarefree_decomposition(g):
        if i % 2:
            out = out * form
    return out.primitive()


def is_square(g: BinaryForm) -> bool:
    """True iff g is a constant times the square of a form (over the algebraic closure)."""
    return odd_part(g).degree == 0


def is_squarefree(g: BinaryForm) -> bool:
    return all(i == 1 for _, i in squarefree_decomposition(g))


class RootStats(NamedTuple):
    degree: int
    distinct_roots: int
    odd_mult_roots: int
    repeated_roots: int


def root_stats(g: BinaryForm) -> RootStats:
    """Root counts on P^1 over the algebraic closure, without factoring."""
    layers = squarefree_decomposition(g)
    return RootStats(
        degree=g.degree,
        distinct_roots=sum(f.degree for f, _ in layers),
        odd_mult_roots=sum(f.degree for f, i in layers if i % 2),
        repeated_roots=sum(f.degree for f, i in layers if i >= 2),
    )


def rational_linear_factors(g: BinaryForm) -> list[tuple[BinaryForm, int]]:
    """Linear factors of g defined over Q, with multiplicity, primitive-normalized.

    Sorted by (multiplicity, text) for determinism.
    """
    out = []
    for form, i in squarefree_decomposition(g):
        h, e = form._dehomogenize()
        if e:
            out.append((BinaryForm.linear(0, 1), i))
        for r in _rational_roots(h):
            out.append((BinaryForm.linear(r.denominator, -r.numerator).primitive(), i))
    return sorted(out, key=lambda t: (t[1], t[0].to_text()))


# Text grammar: sums of signed monomials coef*u0^i*u1^j, with parentheses and
# implicit multiplication accepted as a convenience.

_TOKEN = re.compile(r"\s*(?:(\d+)|(u0|u1)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormSyntaxError(f"unexpected character {text[pos:].lstrip()[:1]!r}",
                                  pos + len(text[pos:]) - len(text[pos:].lstrip()))
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("num", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("var", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    # polynomials are dicts {(i, j): Fraction} for u0^i u1^j

    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def take(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            raise FormSyntaxError(f"expected {value!r}", tok[2])

    def parse(self):
        poly = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise FormSyntaxError(f"unexpected token {tok[1]!r}", tok[2])
        return poly

    def expr(self):
        poly = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            poly = _padd(poly, rhs if op == "+" else _pscale(rhs, -1))
        return poly

    def term(self):
        sign = 1
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            if self.take()[1] == "-":
                sign = -sign
        poly = self.power()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                poly = _pmul(poly, self.power())
            elif tok[0] == "op" and tok[1] == "/":
                self.take()
                at = self.peek()[2]
                rhs = self.power()
                if set(rhs) != {(0, 0)} or rhs[(0, 0)] == 0:
                    raise FormSyntaxError("can only divide by a nonzero constant", at)
                poly = _pscale(poly, 1 / rhs[(0, 0)])
            elif tok[0] in ("num", "var") or tok[1] == "(":
                poly = _pmul(poly, self.power())
            else:
                break
        return _pscale(poly, sign)

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.take()
            tok = self.take()
            if tok[0] != "num":
                raise FormSyntaxError("exponent must be a non-negative integer", tok[2])
            out = {(0, 0): Fraction(1)}
            for _ in range(tok[1]):
                out = _pmul(out, base)
            return out
        return base

    def atom(self):
        tok = self.take()
        if tok[0] == "num":
            return {(0, 0): Fraction(tok[1])}
        if tok[0] == "var":
            return {(1, 0): Fraction(1)} if tok[1] == "u0" else {(0, 1): Fraction(1)}
        if tok[1] == "(":
            poly = self.expr()
            self.expect(")")
            return poly
        raise FormSyntaxError(f"unexpected token {tok[1]!r}", tok[2])


def _padd(p, q):
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v != 0}


def _pscale(p, s):
    return {k: v * s for k, v in p.items() if v * s != 0}


def _pmul(p, q):
    out: dict = {}
    for (i, j), a in p.items():
        for (k, l), b in q.items():
            out[(i + k, j + l)] = out.get((i + k, j + l), 0) + a * b
    return {k: v for k, v in out.items() if v != 0}


def parse_form(text: str) -> BinaryForm:
    """Parse e.g. ``u0^3*u1 + u1^4`` or ``-1/2*u0^2 + u1^2``."""
    poly = _Parser(text).parse()
    if not poly:
        return BinaryForm.constant(0)
    degrees = {i + j for i, j in poly}
    if len(degrees) != 1:
        raise FormError(f"form is not homogeneous (degrees {sorted(degrees)})")
    d = degrees.pop()
    cs = [Fraction(0)] * (d + 1)
    for (i, j), v in poly.items():
        cs[j] = v
    return BinaryForm(cs)
