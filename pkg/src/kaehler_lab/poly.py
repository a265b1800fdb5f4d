"""Sparse multivariate polynomials over an exact field.

Polynomials are immutable maps ``exponent tuple -> nonzero coefficient``.
Rings are identified by their field and variable names; the projective ring
of P^n has variables ``X0..Xn`` and the affine chart ``X0 = 1`` has
``X1..Xn``.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from functools import lru_cache

from .fields import Field, ModInt
from .linalg import reciprocal
from .orders import MonomialOrder, degrevlex

__all__ = [
    "PolyRing",
    "Polynomial",
    "PolynomialSyntaxError",
    "projective_ring",
    "affine_ring",
    "poly_arith",
    "partial_derivative",
    "evaluate",
    "homogenize_dehomogenize",
    "jacobian_minors",
    "determinant",
    "monomials_of_degree",
]


class PolynomialSyntaxError(ValueError):
    """Grammar error in a polynomial string, with a 1-based position."""

    def __init__(self, message, text, pos):
        self.text = text
        self.pos = pos
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line = line
        self.column = col
        super().__init__(f"{message} at line {line}, column {col}")


@lru_cache(maxsize=None)
def monomials_of_degree(nvars: int, d: int):
    """All exponent tuples of total degree ``d`` in ``nvars`` variables."""
    if d < 0:
        return ()
    if nvars == 0:
        return ((),) if d == 0 else ()
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return tuple(out)


class PolyRing:
    """Polynomial ring ``field[names]``.

    ``kind`` is ``"projective"`` when the first variable plays the role of
    the homogenizing variable ``X0``, ``"affine"`` for the chart ring, and
    ``"other"`` for auxiliary rings (elimination, enveloping algebra).
    """

    def __init__(self, field: Field, names, kind: str = "other"):
        self.field = field
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names: {self.names}")
        self.kind = kind
        self.nvars = len(self.names)
        self._index = {name: i for i, name in enumerate(self.names)}
        if kind == "projective":
            self.default_order = degrevlex(self.nvars, last=0)
        else:
            self.default_order = degrevlex(self.nvars)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.names == other.names
        )

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"{self.field}[{', '.join(self.names)}]"

    @property
    def n(self) -> int:
        """Projective dimension for projective rings, else number of variables."""
        return self.nvars - 1 if self.kind == "projective" else self.nvars

    def index(self, name: str) -> int:
        return self._index[name]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self._index[i]
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps, coeff=1) -> "Polynomial":
        c = self.field(coeff)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def from_dict(self, terms) -> "Polynomial":
        conv = self.field.convert
        return Polynomial(self, {tuple(e): conv(c) for e, c in terms.items()})

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if value.ring == self:
                return value
            return value.change_ring(self)
        if isinstance(value, str):
            return self.parse(value)
        return self.constant(value)

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()


def projective_ring(field: Field, n: int) -> PolyRing:
    return PolyRing(field, [f"X{i}" for i in range(n + 1)], "projective")


def affine_ring(field: Field, n: int) -> PolyRing:
    return PolyRing(field, [f"X{i}" for i in range(1, n + 1)], "affine")


def _coerce(field, c):
    # plain ints (and rationals over GF(p)) are brought into the field
    if type(c) is int or (field.characteristic and not isinstance(c, ModInt)):
        return field.convert(c)
    return c


class Polynomial:
    """Immutable sparse polynomial; arithmetic via the usual operators."""

    __slots__ = ("ring", "terms", "_hom")

    def __init__(self, ring: PolyRing, terms):
        self.ring = ring
        self.terms = {e: _coerce(ring.field, c) for e, c in terms.items() if c}
        self._hom = None

    # -- basic queries -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    @property
    def is_homogeneous(self) -> bool:
        if self._hom is None:
            self._hom = len({sum(e) for e in self.terms}) <= 1
        return self._hom

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.ring.field.zero)

    def leading_term(self, order: MonomialOrder | None = None):
        """``(exponents, coefficient)`` of the largest term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = (order or self.ring.default_order).key_function()
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def leading_monomial(self, order=None):
        return self.leading_term(order)[0]

    def leading_coefficient(self, order=None):
        return self.leading_term(order)[1]

    def monic(self, order=None) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.leading_coefficient(order)
        return self.scale(reciprocal(lc)) if lc != 1 else self

    def variables(self):
        """Indices of variables occurring in the polynomial."""
        used = set()
        for e in self.terms:
            used.update(i for i, a in enumerate(e) if a)
        return sorted(used)

    # -- arithmetic ----------------------------------------------------
    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction, ModInt)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t[e] + c if e in t else c
        return Polynomial(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t[e] - c if e in t else -c
        return Polynomial(self.ring, t)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ModInt)):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                t[e] = t[e] + c if e in t else c
        return Polynomial(self.ring, t)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()})

    def mul_monomial(self, exps, c=None) -> "Polynomial":
        t = {}
        for e, v in self.terms.items():
            t[tuple(a + b for a, b in zip(e, exps))] = v if c is None else v * c
        return Polynomial(self.ring, t)

    def exact_divide(self, other: "Polynomial") -> "Polynomial":
        """Quotient of an exact division; raises if a remainder is left."""
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        key = self.ring.default_order.key_function()
        le = max(other.terms, key=key)
        lc = other.terms[le]
        rem = dict(self.terms)
        q = {}
        while rem:
            e = max(rem, key=key)
            d = tuple(a - b for a, b in zip(e, le))
            if min(d) < 0:
                raise ValueError("polynomial division is not exact")
            c = rem[e] / lc
            q[d] = c
            for e2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(e2, d))
                v = rem.get(m)
                v = -c * c2 if v is None else v - c * c2
                if v:
                    rem[m] = v
                else:
                    rem.pop(m, None)
        return Polynomial(self.ring, q)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, ModInt)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- calculus and substitution --------------------------------------
    def derivative(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self.ring.index(i)
        t = {}
        for e, c in self.terms.items():
            a = e[i]
            if a:
                d = e[:i] + (a - 1,) + e[i + 1:]
                t[d] = c * a
        return Polynomial(self.ring, t)

    def __call__(self, *point):
        return self.evaluate(point[0] if len(point) == 1 and isinstance(point[0], (list, tuple)) else point)

    def evaluate(self, point):
        if len(point) != self.ring.nvars:
            raise ValueError(f"point has {len(point)} coordinates, ring has {self.ring.nvars} variables")
        conv = self.ring.field.convert
        pt = [conv(a) for a in point]
        total = self.ring.field.zero
        for e, c in self.terms.items():
            v = c
            for a, k in zip(pt, e):
                if k:
                    v = v * a ** k
            total = total + v
        return total

    def change_ring(self, ring: PolyRing, mapping=None) -> "Polynomial":
        """Re-embed into ``ring``, matching variables by name unless ``mapping``
        (old index -> new index) is given.  Unmatched variables must not occur."""
        if mapping is None:
            mapping = {}
            for i, name in enumerate(self.ring.names):
                if name in ring._index:
                    mapping[i] = ring._index[name]
        t = {}
        conv = ring.field.convert
        for e, c in self.terms.items():
            new = [0] * ring.nvars
            for i, a in enumerate(e):
                if a:
                    if i not in mapping:
                        raise ValueError(f"variable {self.ring.names[i]} does not exist in {ring}")
                    new[mapping[i]] += a
            new = tuple(new)
            c = conv(c)
            t[new] = t[new] + c if new in t else c
        return Polynomial(ring, t)

    def dehomogenize(self, ring: PolyRing | None = None) -> "Polynomial":
        """Set ``X0 = 1`` (the first variable) and move to the affine chart ring."""
        if self.ring.kind != "projective":
            raise ValueError("dehomogenization needs a projective ring")
        ring = ring or affine_ring(self.ring.field, self.ring.nvars - 1)
        t = {}
        for e, c in self.terms.items():
            d = e[1:]
            t[d] = t[d] + c if d in t else c
        return Polynomial(ring, t)

    def homogenize(self, ring: PolyRing | None = None) -> "Polynomial":
        """Multiply each term by the power of ``X0`` reaching the top degree."""
        if self.ring.kind != "affine":
            raise ValueError("homogenization needs an affine ring")
        ring = ring or projective_ring(self.ring.field, self.ring.nvars)
        top = self.degree()
        return Polynomial(ring, {(top - sum(e),) + e: c for e, c in self.terms.items()})

    # -- printing -------------------------------------------------------
    def sorted_terms(self, order=None):
        key = (order or self.ring.default_order).key_function()
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        fmt = self.ring.field.format
        names = self.ring.names
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                names[i] if a == 1 else f"{names[i]}^{a}" for i, a in enumerate(e) if a
            )
            s = fmt(c)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            if mono:
                s = mono if s == "1" else f"{s}*{mono}"
            parts.append(("-" if neg else "+", s))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, s in parts[1:]:
            out += f" {sign} {s}"
        return out

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


# -- functional helpers -----------------------------------------------

def poly_arith(a: Polynomial, b, op: str) -> Polynomial:
    """Apply ``op`` in {add, sub, mul, scale}; ``b`` is a scalar for scale."""
    if op == "scale":
        return a.scale(b)
    if not isinstance(b, Polynomial) or a.ring != b.ring:
        raise ValueError("ring or field mismatch")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(f: Polynomial, i) -> Polynomial:
    return f.derivative(i)


def evaluate(f: Polynomial, point):
    return f.evaluate(point)


def homogenize_dehomogenize(f: Polynomial, direction: str) -> Polynomial:
    if direction == "to_affine":
        return f.dehomogenize()
    if direction == "to_projective":
        return f.homogenize()
    raise ValueError(f"unknown direction {direction!r}")


def determinant(matrix):
    """Determinant of a square matrix of field elements or polynomials.

    Scalar matrices use Bareiss fraction-free elimination; polynomial
    matrices use Laplace expansion along the first row (they are small).
    """
    n = len(matrix)
    if n == 0:
        return 1
    if any(isinstance(x, Polynomial) for row in matrix for x in row):
        return _laplace(matrix)
    a = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not a[k][k]:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return a[k][k] * 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def _laplace(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for j in range(n):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _laplace(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return m[0][0] * 0
    return total


def jacobian_minors(gens, variables=None):
    """All maximal minors of the Jacobian of ``gens`` w.r.t. ``variables``.

    ``variables`` defaults to ``X1..Xn`` of a projective ring.  The matrix has
    one row per variable and one column per generator; every choice of
    ``len(variables)`` columns gives one determinant, in the order of
    :func:`itertools.combinations`.  Zeros and duplicates are kept.
    """
    gens = list(gens)
    if not gens:
        return []
    ring = gens[0].ring
    if variables is None:
        variables = range(1, ring.nvars) if ring.kind == "projective" else range(ring.nvars)
    variables = [ring.index(v) if isinstance(v, str) else v for v in variables]
    k = len(variables)
    if len(gens) < k:
        return []
    if k == 0:
        return [ring.one()]
    jac = [[g.derivative(i) for g in gens] for i in variables]
    out = []
    for cols in itertools.combinations(range(len(gens)), k):
        out.append(determinant([[jac[i][c] for c in cols] for i in range(k)]))
    return out


# -- parser ---------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m.group(1) is not None:
                self.tokens.append(("num", int(m.group(1)), m.start(1)))
            elif m.group(2) is not None:
                self.tokens.append(("name", m.group(2), m.start(2)))
            elif m.group(3) is not None:
                ch = m.group(3)
                if ch not in "+-*^/()":
                    raise PolynomialSyntaxError(f"unexpected character {ch!r}", text, m.start(3))
                self.tokens.append(("op", ch, m.start(3)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            raise PolynomialSyntaxError(f"expected {value!r}", self.text, tok[2])

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise PolynomialSyntaxError("empty polynomial", self.text, 0)
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            msg = "implicit multiplication is not allowed" if tok[0] in ("num", "name") or tok[1] == "(" else f"unexpected {tok[1]!r}"
            raise PolynomialSyntaxError(msg, self.text, tok[2])
        return p

    def expr(self):
        sign = None
        tok = self.peek()
        if tok[1] in ("+", "-"):
            self.take()
            sign = tok[1]
        p = self.term()
        if sign == "-":
            p = -p
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.factor()
        while self.peek()[1] == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self):
        p = self.atom()
        if self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num":
                raise PolynomialSyntaxError("exponent must be a non-negative integer", self.text, tok[2])
            p = p ** tok[1]
        return p

    def atom(self):
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            if self.peek()[1] == "/":
                self.take()
                den = self.take()
                if den[0] != "num":
                    raise PolynomialSyntaxError("denominator must be an integer", self.text, den[2])
                if den[1] == 0:
                    raise PolynomialSyntaxError("zero denominator", self.text, den[2])
                return self.ring.constant(Fraction(val, den[1]))
            return self.ring.constant(val)
        if kind == "name":
            if val not in self.ring._index:
                raise PolynomialSyntaxError(f"unknown variable {val!r} for ring {self.ring}", self.text, pos)
            return self.ring.gen(val)
        if val == "(":
            p = self.expr()
            self.expect(")")
            return p
        if kind == "end":
            raise PolynomialSyntaxError("unexpected end of input", self.text, pos)
        raise PolynomialSyntaxError(f"unexpected {val!r}", self.text, pos)
