"""Finite-dimensional quotient algebras ``K[x1..xn]/J`` of zero-dimensional ideals.

Elements are coordinate vectors with respect to the standard monomials of
the reduced Groebner basis of ``J`` (the normal-form basis).  The class also
carries a few helpers on univariate polynomials, used for minimal
polynomials and squarefree parts.
"""

from __future__ import annotations

from .groebner import Ideal, quotient_basis
from .linalg import Subspace, reciprocal, columns_to_rows, mat_vec, nullspace, solve

__all__ = ["FiniteAlgebra", "upoly_gcd", "upoly_squarefree", "upoly_derivative"]


# -- dense univariate polynomials, coefficient lists in increasing degree ---


def _trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def upoly_derivative(p):
    return _trim([k * p[k] for k in range(1, len(p))])


def _divmod(a, b):
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [0] * max(len(a) - len(b) + 1, 1)
    inv = reciprocal(b[-1])
    while len(a) >= len(b) and a:
        c = a[-1] * inv
        shift = len(a) - len(b)
        q[shift] = c
        for k, bk in enumerate(b):
            a[shift + k] = a[shift + k] - c * bk
        a = _trim(a)
    return _trim(q), a


def upoly_gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _divmod(a, b)[1]
    if not a:
        return a
    inv = reciprocal(a[-1])
    return [c * inv for c in a]


def upoly_squarefree(p):
    """Squarefree part ``p / gcd(p, p')`` (monic)."""
    g = upoly_gcd(p, upoly_derivative(p))
    q, r = _divmod(p, g)
    assert not r
    inv = reciprocal(q[-1])
    return [c * inv for c in q]


class FiniteAlgebra:
    """``K[x1..xn]/J`` for a zero-dimensional ideal ``J`` of an affine ring.

    ``mats[i]`` is the matrix (list of rows) of multiplication by ``x_{i+1}``.
    """

    def __init__(self, ideal: Ideal):
        qb = quotient_basis(ideal)
        if not qb.finite:
            raise ValueError("ideal is not zero-dimensional")
        self.ideal = ideal
        self.ring = ideal.ring
        self.field = ideal.ring.field
        self.nvars = ideal.ring.nvars
        self.basis = list(qb.standard_monomials)
        self.dim = len(self.basis)
        self.index = {e: k for k, e in enumerate(self.basis)}
        self.degrees = [sum(e) for e in self.basis]
        self._vec = {}
        self._prod = {}
        self._reducer = ideal._reducer()
        self.mats = []
        for i in range(self.nvars):
            cols = []
            for b in self.basis:
                e = list(b)
                e[i] += 1
                cols.append(self._normal_vector_of_monomial(tuple(e)))
            self.mats.append(columns_to_rows(cols, self.dim))

    # -- conversions --------------------------------------------------
    def zero(self):
        return [0] * self.dim

    def unit(self):
        return self.monomial_vector((0,) * self.nvars)

    def basis_vector(self, k):
        v = [0] * self.dim
        v[k] = self.field.one
        return v

    def _coords(self, terms):
        v = [0] * self.dim
        for e, c in terms.items():
            v[self.index[e]] = c
        return v

    def _normal_vector_of_monomial(self, e):
        if e in self.index:
            return self.basis_vector(self.index[e])
        return self._coords(self._reducer.reduce({e: self.field.one}))

    def monomial_vector(self, e):
        """Coordinates of the class of ``x^e``."""
        e = tuple(e)
        v = self._vec.get(e)
        if v is None:
            if e in self.index:
                v = self.basis_vector(self.index[e])
            else:
                i = next(k for k, a in enumerate(e) if a)
                prev = list(e)
                prev[i] -= 1
                v = mat_vec(self.mats[i], self.monomial_vector(tuple(prev)))
            self._vec[e] = v
        return v

    def element(self, f):
        """Coordinates of the class of an affine polynomial ``f``."""
        if f.ring.nvars != self.nvars:
            raise ValueError("polynomial ring does not match the algebra")
        v = [0] * self.dim
        for e, c in f.terms.items():
            c = self.field.convert(c)
            for k, x in enumerate(self.monomial_vector(e)):
                if x:
                    v[k] = v[k] + c * x
        return v

    def to_polynomial(self, v):
        return self.ring.from_dict({b: c for b, c in zip(self.basis, v) if c})

    # -- arithmetic ---------------------------------------------------
    def _basis_product(self, k, l):
        """Sparse coordinates ``[(t, c), ...]`` of ``b_k * b_l``."""
        if k > l:
            k, l = l, k
        key = (k, l)
        v = self._prod.get(key)
        if v is None:
            e = tuple(a + b for a, b in zip(self.basis[k], self.basis[l]))
            v = [(t, x) for t, x in enumerate(self.monomial_vector(e)) if x]
            self._prod[key] = v
        return v

    def product_vector(self, k, l):
        """Dense coordinates of ``b_k * b_l``."""
        out = [0] * self.dim
        for t, x in self._basis_product(k, l):
            out[t] = x
        return out

    def mul(self, u, v):
        out = [0] * self.dim
        us = [(k, a) for k, a in enumerate(u) if a]
        vs = [(l, b) for l, b in enumerate(v) if b]
        if len(vs) < len(us):
            us, vs = vs, us
        for k, a in us:
            for l, b in vs:
                c = a * b
                for t, x in self._basis_product(k, l):
                    out[t] += c * x
        return out

    def mul_basis(self, u, k):
        """``u * b_k`` for the ``k``-th basis vector."""
        out = [0] * self.dim
        for l, a in enumerate(u):
            if a:
                for t, x in self._basis_product(k, l):
                    out[t] += a * x
        return out

    def mult_matrix(self, u):
        """Matrix of ``v -> u*v``."""
        cols = [self.mul_basis(u, k) for k in range(self.dim)]
        return columns_to_rows(cols, self.dim)

    def mul_var(self, i, v):
        """Multiply by ``x_{i+1}``."""
        return mat_vec(self.mats[i], v)

    def power(self, u, k):
        out = self.unit()
        for _ in range(k):
            out = self.mul(out, u)
        return out

    def ideal_span(self, elements) -> Subspace:
        """K-span of the ideal generated by ``elements``."""
        s = Subspace(self.dim)
        for u in elements:
            if not any(u):
                continue
            for k in range(self.dim):
                s.add(self.mul_basis(u, k))
        return s

    def product_space(self, a: Subspace, b: Subspace) -> Subspace:
        s = Subspace(self.dim)
        for u in a.basis():
            for v in b.basis():
                s.add(self.mul(u, v))
        return s

    def annihilator(self, elements) -> Subspace:
        """``{v : u*v = 0 for all u}`` for the given elements."""
        rows = []
        for u in elements:
            rows.extend(self.mult_matrix(u))
        return Subspace(self.dim, nullspace(rows, self.dim) if rows else [self.basis_vector(k) for k in range(self.dim)])

    # -- univariate structure -----------------------------------------
    def minimal_polynomial(self, i):
        """Monic minimal polynomial of ``x_{i+1}`` (coefficients, low degree first)."""
        vecs = [self.unit()]
        while True:
            w = self.mul_var(i, vecs[-1])
            rows = columns_to_rows(vecs, self.dim)
            c = solve(rows, w)
            if c is not None:
                return [-x for x in c] + [self.field.one]
            vecs.append(w)

    def evaluate_univariate(self, i, coeffs):
        """Class of ``p(x_{i+1})`` for coefficients ``coeffs``."""
        out = self.zero()
        power = self.unit()
        for k, c in enumerate(coeffs):
            if k:
                power = self.mul_var(i, power)
            if c:
                out = [a + c * b if b else a for a, b in zip(out, power)]
        return out

    def radical_generators(self):
        """Elements generating the nilradical (Seidenberg's squarefree parts)."""
        gens = []
        for i in range(self.nvars):
            sq = upoly_squarefree(self.minimal_polynomial(i))
            gens.append((i, sq, self.evaluate_univariate(i, sq)))
        return gens

    def __repr__(self):
        return f"FiniteAlgebra(dim={self.dim}, nvars={self.nvars})"
