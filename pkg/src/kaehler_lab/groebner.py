"""Buchberger-based ideal arithmetic.

The reduced Groebner basis of an :class:`Ideal` is computed on first use and
cached.  Pair selection uses the sugar strategy and the Gebauer-Moeller
criteria.  Intersections, colons and saturation go through elimination of
an auxiliary variable.
"""

from __future__ import annotations

import heapq
import itertools
import logging
from dataclasses import dataclass, field

from .orders import MonomialOrder, block_elimination
from .poly import PolyRing, Polynomial, monomials_of_degree

__all__ = [
    "Ideal",
    "QuotientBasis",
    "buchberger",
    "normal_form",
    "ideal_binary",
    "intersection",
    "colon",
    "eliminate",
    "saturate_x0",
    "quotient_basis",
]

log = logging.getLogger(__name__)


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a, b):
    return all(not (x and y) for x, y in zip(a, b))


class _Reducer:
    """Division by a list of (leading exponent, leading coeff, terms) triples."""

    def __init__(self, key):
        self.key = key
        self.basis = []

    def add(self, lead, lc, terms):
        self.basis.append((lead, lc, terms))

    def reduce(self, terms, full=True):
        key = self.key
        p = dict(terms)
        r = {}
        basis = self.basis
        while p:
            e = max(p, key=key)
            c = p[e]
            for lead, lc, g in basis:
                if _divides(lead, e):
                    q = c / lc
                    shift = tuple(a - b for a, b in zip(e, lead))
                    for e2, c2 in g.items():
                        m = tuple(a + b for a, b in zip(e2, shift))
                        v = p.get(m)
                        if v is None:
                            p[m] = -q * c2
                        else:
                            v = v - q * c2
                            if v:
                                p[m] = v
                            else:
                                del p[m]
                    break
            else:
                r[e] = c
                del p[e]
                if not full:
                    r.update(p)
                    return r
        return r


def _groebner(polys, order: MonomialOrder):
    """Reduced Groebner basis of dict-polynomials; returns list of dicts."""
    key = order.key_function()
    gens = [dict(p) for p in polys if p]
    if not gens:
        return []
    # basis entries: [terms, lead, sugar]
    basis = []
    active = []
    pairs = []  # heap of (sugar, lcm key, counter, i, j)
    counter = itertools.count()

    def lead_of(t):
        return max(t, key=key)

    def update(h):
        lead_h = basis[h][1]
        sugar_h = basis[h][2]
        cand = [(g, _lcm(basis[g][1], lead_h)) for g in active]
        kept = []
        for idx, (g, l) in enumerate(cand):
            if _coprime(basis[g][1], lead_h):
                kept.append((g, l, True))
                continue
            others = [l2 for j, (g2, l2) in enumerate(cand) if j != idx]
            if any(_divides(l2, l) and l2 != l for l2 in others):
                continue
            # among equal lcms keep the first one
            if any(l2 == l for (g2, l2, _) in kept):
                continue
            kept.append((g, l, False))
        new_pairs = []
        for g, l, cop in kept:
            if cop:
                continue
            s = max(basis[g][2] + sum(l) - sum(basis[g][1]), sugar_h + sum(l) - sum(lead_h))
            new_pairs.append((s, key(l), next(counter), g, h))
        # old pairs eliminated by the new lead
        survivors = []
        for item in pairs:
            _, _, _, i, j = item
            l = _lcm(basis[i][1], basis[j][1])
            if (
                _divides(lead_h, l)
                and _lcm(basis[i][1], lead_h) != l
                and _lcm(basis[j][1], lead_h) != l
            ):
                continue
            survivors.append(item)
        survivors.extend(new_pairs)
        heapq.heapify(survivors)
        pairs[:] = survivors
        active[:] = [g for g in active if not _divides(lead_h, basis[g][1])] + [h]

    reducer = _Reducer(key)

    def insert(t):
        lead = lead_of(t)
        lc = t[lead]
        inv = 1 / lc
        t = {e: c * inv for e, c in t.items()}
        sugar = max(sum(e) for e in t)
        basis.append([t, lead, sugar])
        reducer.add(lead, t[lead], t)
        update(len(basis) - 1)

    # initial generators, reduced against what is already there
    gens.sort(key=lambda t: key(lead_of(t)))
    for g in gens:
        r = reducer.reduce(g)
        if r:
            insert(r)

    while pairs:
        sugar, _, _, i, j = heapq.heappop(pairs)
        fi, li = basis[i][0], basis[i][1]
        fj, lj = basis[j][0], basis[j][1]
        l = _lcm(li, lj)
        si = tuple(a - b for a, b in zip(l, li))
        sj = tuple(a - b for a, b in zip(l, lj))
        spoly = {}
        for e, c in fi.items():
            spoly[tuple(a + b for a, b in zip(e, si))] = c
        for e, c in fj.items():
            m = tuple(a + b for a, b in zip(e, sj))
            v = spoly.get(m)
            if v is None:
                spoly[m] = -c
            else:
                v = v - c
                if v:
                    spoly[m] = v
                else:
                    del spoly[m]
        if not spoly:
            continue
        r = reducer.reduce(spoly)
        if r:
            insert(r)

    # minimalize and interreduce
    minimal = []
    for g in active:
        lead = basis[g][1]
        if any(_divides(basis[h][1], lead) and (basis[h][1] != lead or h < g) for h in active if h != g):
            continue
        minimal.append(g)
    result = []
    for g in minimal:
        red = _Reducer(key)
        for h in minimal:
            if h != g:
                red.add(basis[h][1], basis[h][0][basis[h][1]], basis[h][0])
        t = basis[g][0]
        lead = basis[g][1]
        tail = {e: c for e, c in t.items() if e != lead}
        tail = red.reduce(tail)
        tail[lead] = t[lead]
        result.append(tail)
    result.sort(key=lambda t: key(max(t, key=key)))
    return result


class Ideal:
    """Ideal of a polynomial ring given by generators and a monomial order.

    The reduced Groebner basis is computed lazily and cached.
    """

    def __init__(self, generators, order: MonomialOrder | None = None, ring: PolyRing | None = None):
        gens = [g for g in generators]
        if ring is None:
            if not gens:
                raise ValueError("need a ring for an ideal without generators")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise ValueError(f"generator {g} lives in {g.ring}, not {ring}")
        self.ring = ring
        self.generators = tuple(g for g in gens if g)
        self.order = order or ring.default_order
        if self.order.nvars != ring.nvars:
            raise ValueError("monomial order does not match the number of variables")
        self._gb = None

    @classmethod
    def from_groebner_basis(cls, basis, order=None, ring=None):
        """Wrap polynomials already known to form a reduced Groebner basis."""
        I = cls(basis, order, ring)
        key = I.order.key_function()
        I._gb = tuple(sorted((g.monic(I.order) for g in I.generators), key=lambda g: key(g.leading_monomial(I.order))))
        return I

    def groebner_basis(self):
        if self._gb is None:
            raw = _groebner([g.terms for g in self.generators], self.order)
            self._gb = tuple(Polynomial(self.ring, t) for t in raw)
        return self._gb

    @property
    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous for g in self.generators)

    def leading_monomials(self):
        return [g.leading_monomial(self.order) for g in self.groebner_basis()]

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise ValueError("ring mismatch in normal form")
        red = self._reducer()
        return Polynomial(self.ring, red.reduce(f.terms))

    def _reducer(self):
        red = getattr(self, "_red", None)
        if red is None:
            red = _Reducer(self.order.key_function())
            for g in self.groebner_basis():
                lead = g.leading_monomial(self.order)
                red.add(lead, g.terms[lead], g.terms)
            self._red = red
        return red

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    __contains__ = contains

    def is_whole_ring(self) -> bool:
        return any(g.degree() == 0 for g in self.groebner_basis())

    def is_zero(self) -> bool:
        return not self.generators

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.ring != other.ring:
            return False
        if self.order == other.order:
            return self.groebner_basis() == other.groebner_basis()
        return all(other.contains(g) for g in self.generators) and all(
            self.contains(g) for g in other.generators
        )

    def __hash__(self):
        return hash((self.ring, self.groebner_basis()))

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.generators + other.generators, self.order, self.ring)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal([f * g for f in self.generators for g in other.generators], self.order, self.ring)

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.generators)})"


def buchberger(I: Ideal) -> Ideal:
    """Fill the Groebner basis cache of ``I`` and return it."""
    I.groebner_basis()
    return I


def normal_form(f: Polynomial, I: Ideal) -> Polynomial:
    return I.normal_form(f)


def eliminate(I: Ideal, drop_vars) -> Ideal:
    """``I`` intersected with the subring without ``drop_vars``.

    The result lives in a ring whose variables are the remaining ones, in
    their original order, and uses that ring's default order.
    """
    ring = I.ring
    drop = [ring.index(v) if isinstance(v, str) else v for v in drop_vars]
    keep = [i for i in range(ring.nvars) if i not in drop]
    perm = drop + keep
    big = PolyRing(ring.field, [ring.names[i] for i in perm], "other")
    mapping = {old: new for new, old in enumerate(perm)}
    last = None
    if ring.kind == "projective" and 0 in keep:
        last = mapping[0]
    order = block_elimination(big.nvars, len(drop), last=last)
    gens = [g.change_ring(big, mapping) for g in I.generators]
    gb = _groebner([g.terms for g in gens], order)
    kind = ring.kind if not drop else "other"
    names = [ring.names[i] for i in keep]
    if ring.kind == "projective" and names == list(ring.names[: len(names)]) and keep == list(range(len(keep))):
        kind = "projective"
    elif ring.kind == "affine" and keep == list(range(len(keep))):
        kind = "affine"
    small = PolyRing(ring.field, names, kind)
    out = []
    nd = len(drop)
    for t in gb:
        if all(not any(e[:nd]) for e in t):
            out.append(Polynomial(small, {e[nd:]: c for e, c in t.items()}))
    if not drop:
        return Ideal(out, I.order, small)
    return Ideal(out, None, small) if out else Ideal([], None, small)


def intersection(I: Ideal, J: Ideal) -> Ideal:
    """``I`` meet ``J`` via eliminating ``t`` from ``t*I + (1-t)*J``."""
    ring = I.ring
    if J.ring != ring:
        raise ValueError("ideals live in different rings")
    if not I.generators or not J.generators:
        return Ideal([], I.order, ring)
    tname = "_t"
    while tname in ring.names:
        tname += "_"
    big = PolyRing(ring.field, (tname,) + ring.names, "other")
    shift = {i: i + 1 for i in range(ring.nvars)}
    t = big.gen(0)
    gens = [t * f.change_ring(big, shift) for f in I.generators]
    gens += [(1 - t) * g.change_ring(big, shift) for g in J.generators]
    elim = eliminate(Ideal(gens, None, big), [0])
    out = [g.change_ring(ring, {i: i for i in range(ring.nvars)}) for g in elim.groebner_basis()]
    return Ideal(out, I.order, ring)


def colon(I: Ideal, J) -> Ideal:
    """``(I : J)`` for an ideal or a single polynomial ``J``."""
    if isinstance(J, Polynomial):
        g = J
        if not g:
            return Ideal([I.ring.one()], I.order, I.ring)
        meet = intersection(I, Ideal([g], I.order, I.ring))
        return Ideal([h.exact_divide(g) for h in meet.groebner_basis()], I.order, I.ring)
    result = None
    for g in J.generators:
        part = colon(I, g)
        result = part if result is None else intersection(result, part)
    if result is None:
        return Ideal([I.ring.one()], I.order, I.ring)
    return Ideal(result.groebner_basis(), I.order, I.ring)


def ideal_binary(I: Ideal, J: Ideal, op: str) -> Ideal:
    if I.ring != J.ring:
        raise ValueError("ideals live in different rings")
    if op == "sum":
        return I + J
    if op == "product":
        return I * J
    if op == "intersection":
        return intersection(I, J)
    if op == "colon":
        return colon(I, J)
    raise ValueError(f"unknown ideal operation {op!r}")


def saturate_x0(I: Ideal, var: int = 0) -> Ideal:
    """``(I : X0^oo)`` by iterating single colons until they stabilize."""
    x = I.ring.gen(var)
    current = Ideal(I.groebner_basis(), I.order, I.ring)
    while True:
        nxt = colon(current, x)
        if nxt.groebner_basis() == current.groebner_basis():
            return current
        current = nxt


@dataclass
class QuotientBasis:
    """Standard monomials of an ideal.

    ``finite`` is True when the quotient is a finite-dimensional vector
    space; otherwise the list is truncated at ``degree_cap``.
    """

    standard_monomials: list
    finite: bool
    per_degree: list = field(default_factory=list)

    def __len__(self):
        return len(self.standard_monomials)


def quotient_basis(I: Ideal, degree_cap: int | None = None) -> QuotientBasis:
    """Enumerate standard monomials degree by degree."""
    leads = I.leading_monomials()
    nv = I.ring.nvars
    if any(sum(l) == 0 for l in leads):
        return QuotientBasis([], True, [])
    pure = set()
    for l in leads:
        support = [i for i, a in enumerate(l) if a]
        if len(support) == 1:
            pure.add(support[0])
    finite = len(pure) == nv
    cap = degree_cap if degree_cap is not None else 10
    key = I.order.key_function()
    out = []
    per_degree = []
    d = 0
    while True:
        if not finite and d > cap:
            break
        layer = [m for m in monomials_of_degree(nv, d) if not any(_divides(l, m) for l in leads)]
        if finite and not layer:
            break
        layer.sort(key=key)
        out.extend(layer)
        per_degree.append(len(layer))
        d += 1
    return QuotientBasis(out, finite, per_degree)
