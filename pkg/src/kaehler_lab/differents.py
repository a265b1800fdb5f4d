"""Kaehler and Noether differents and homogeneous ideals of ``R``.

A homogeneous ideal ``a`` of ``R = P/I_X`` is handled through its images
``a_d -> S``.  These are injective because ``x0`` is a non-zerodivisor, so
``HF_a(d)`` is the dimension of a subspace of ``S``, and once it reaches the
dimension of the dehomogenized ideal it stays there.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations

from .groebner import Ideal, colon
from .linalg import Subspace, nullspace
from .poly import PolyRing, Polynomial, jacobian_minors
from .scheme import SchemeError, SchemeSpec

__all__ = [
    "GradedIdealView",
    "graded_ideal_hilbert",
    "kaehler_different",
    "kaehler_minor_vectors",
    "affine_and_reduced_kaehler",
    "local_kaehler_different",
    "LocalDifferentReport",
    "noether_different",
    "noether_different_colon",
    "different_inclusions",
    "StabilizationError",
]

log = logging.getLogger(__name__)


class StabilizationError(RuntimeError):
    """The Hilbert function of a graded ideal did not stabilize under the cap."""


@dataclass
class GradedIdealView:
    """A homogeneous ideal of ``R`` seen through its pieces in ``S``.

    ``pieces[d]`` is the image of the degree ``d`` part for ``d <= ri``; above
    ``ri`` every piece equals the dehomogenized ideal.
    """

    scheme: SchemeSpec
    hf: list
    hp: int
    ri: int | None
    affine_dim: int
    pieces: list
    minimal_generators: list
    generators: list = field(default_factory=list)

    def __call__(self, d: int) -> int:
        if d < 0:
            return 0
        if d < len(self.hf):
            return self.hf[d]
        return self.hp

    def piece(self, d: int) -> Subspace:
        if d < 0:
            return Subspace(self.scheme.degree)
        return self.pieces[min(d, len(self.pieces) - 1)]

    @property
    def stable_from(self) -> int:
        return len(self.pieces) - 1

    def hf_list(self, upto: int):
        return [self(d) for d in range(upto + 1)]

    def is_zero(self) -> bool:
        return self.hp == 0

    def is_principal(self) -> bool:
        return len(self.minimal_generators) == 1

    def contains(self, other: "GradedIdealView") -> bool:
        top = max(self.stable_from, other.stable_from)
        return all(other.piece(d).is_subspace_of(self.piece(d)) for d in range(top + 1))

    def __eq__(self, other):
        if not isinstance(other, GradedIdealView):
            return NotImplemented
        return self.contains(other) and other.contains(self)

    def generator_vectors(self):
        """Pairs ``(vector in S, degree)`` for the minimal generators."""
        X = self.scheme
        return [(X.image(g), g.degree()) for g in self.minimal_generators]

    def power(self, k: int) -> "GradedIdealView":
        if k < 1:
            raise ValueError("power exponent must be positive")
        out = self
        # multiply one factor at a time so intermediate generators stay minimal
        for _ in range(k - 1):
            out = out.product(self)
        return out

    def product(self, other: "GradedIdealView") -> "GradedIdealView":
        alg = self.scheme.algebra
        prods = [
            (alg.mul(u, v), a + b) for u, a in self.generator_vectors() for v, b in other.generator_vectors()
        ]
        return view_from_vectors(self.scheme, prods, cap=self.stable_from + other.stable_from + 1)

    def summary(self, upto=None):
        upto = upto if upto is not None else max(self.stable_from + 1, self.scheme.r_X + 1)
        return {
            "hf": self.hf_list(upto),
            "hp": self.hp,
            "ri": self.ri,
            "generators": [str(g) for g in self.minimal_generators],
        }


def _cap(X: SchemeSpec) -> int:
    return (X.n + 1) * X.r_X + X.n


def _build_view(X: SchemeSpec, new_vectors, hp: int, cap=None) -> GradedIdealView:
    """Assemble a view degree by degree.

    ``new_vectors(d)`` yields vectors spanning the degree ``d`` piece together
    with the degree ``d-1`` piece.
    """
    alg = X.algebra
    cap = _cap(X) if cap is None else cap
    D = X.degree
    W = Subspace(D)
    hf, pieces, mingens = [], [], []
    ri = None
    d = 0
    while True:
        prev = W.copy()
        # R_1 * a_{d-1}: multiples by x0 (identity in S) and by x1..xn
        lower = prev.copy()
        for w in prev.basis():
            for i in range(alg.nvars):
                lower.add(alg.mul_var(i, w))
        for v in new_vectors(d):
            if W.add(v) and lower.add(v):
                g = X.lift(v, d)
                mingens.append(g.monic(X.proj_ring.default_order))
        hf.append(W.dim)
        pieces.append(W.copy())
        if W.dim == hp:
            ri = d if hp else None
            break
        if W.dim > hp:
            raise AssertionError("graded piece exceeds the dehomogenized ideal")
        d += 1
        if d > cap:
            raise StabilizationError(f"Hilbert function did not stabilize by degree {cap}")
    if hp == 0:
        ri = None
    return GradedIdealView(
        scheme=X,
        hf=hf,
        hp=hp,
        ri=ri,
        affine_dim=hp,
        pieces=pieces,
        minimal_generators=mingens,
    )


def view_from_vectors(X: SchemeSpec, elements, cap=None, generators=None) -> GradedIdealView:
    """View of the ideal generated by homogeneous elements given as
    ``(vector in S, degree)`` pairs."""
    alg = X.algebra
    elements = [(u, e) for u, e in elements if any(u)]
    hp = alg.ideal_span([u for u, _ in elements]).dim
    by_degree = {}
    for k, deg in enumerate(alg.degrees):
        by_degree.setdefault(deg, []).append(k)

    def new_vectors(d):
        for u, e in elements:
            if e <= d:
                for k in by_degree.get(d - e, ()):
                    yield alg.mul_basis(u, k)

    view = _build_view(X, new_vectors, hp, cap)
    view.generators = list(generators) if generators is not None else []
    return view


def graded_ideal_hilbert(gens, X: SchemeSpec, cap=None) -> GradedIdealView:
    """Hilbert function, Hilbert polynomial and regularity index of the ideal of
    ``R`` generated by the homogeneous polynomials ``gens``."""
    elements = []
    for g in gens:
        g = X.proj_ring(g)
        if not g:
            continue
        if not g.is_homogeneous:
            raise ValueError(f"generator {g} is not homogeneous")
        elements.append((X.image(g), g.degree()))
    nf = [X.I_X.normal_form(X.proj_ring(g)) for g in gens]
    return view_from_vectors(X, elements, cap, [g for g in nf if g])


def graded_ideal_hilbert_by_normal_forms(gens, X: SchemeSpec, upto: int):
    """Reference route: ranks of normal forms of ``g * m`` in ``R_d``.

    Slower, used to cross-check :func:`graded_ideal_hilbert`.
    """
    ring = X.proj_ring
    from .poly import monomials_of_degree

    out = []
    for d in range(upto + 1):
        std = [m for m in monomials_of_degree(ring.nvars, d) if not any(
            all(a <= b for a, b in zip(l, m)) for l in X.I_X.leading_monomials())]
        index = {m: k for k, m in enumerate(std)}
        s = Subspace(len(std))
        for g in gens:
            g = ring(g)
            e = g.degree()
            if not g or e > d:
                continue
            for m in monomials_of_degree(ring.nvars, d - e):
                h = X.I_X.normal_form(g.mul_monomial(m))
                v = [0] * len(std)
                for t, c in h.terms.items():
                    v[index[t]] = c
                s.add(v)
        out.append(s.dim)
    return out


# -- Kaehler different --------------------------------------------------------


def _det(alg, mat):
    n = len(mat)
    if n == 1:
        return mat[0][0]
    if n == 2:
        a = alg.mul(mat[0][0], mat[1][1])
        b = alg.mul(mat[0][1], mat[1][0])
        return [x - y for x, y in zip(a, b)]
    out = alg.zero()
    for c in range(n):
        if not any(mat[0][c]):
            continue
        minor = [row[:c] + row[c + 1 :] for row in mat[1:]]
        t = alg.mul(mat[0][c], _det(alg, minor))
        sign = 1 if c % 2 == 0 else -1
        out = [x + sign * y for x, y in zip(out, t)]
    return out


def kaehler_minor_vectors(X: SchemeSpec, gens=None):
    """Images in ``S`` of the n-minors of the Jacobian of ``gens`` (default:
    the reduced Groebner basis of ``I_X``), with their degrees."""
    alg = X.algebra
    aff = X.aff_ring
    n = X.n
    if gens is None:
        gens = list(X.I_X.groebner_basis())
    gens = [X.proj_ring(g) for g in gens if g]
    deh = [g.dehomogenize(aff) for g in gens]
    degs = [g.degree() for g in gens]
    # (dF/dX_i)^deh = d(F^deh)/dx_i for i >= 1
    jac = [[alg.element(f.derivative(i)) for i in range(n)] for f in deh]
    out = []
    for combo in combinations(range(len(gens)), n):
        mat = [[jac[k][i] for k in combo] for i in range(n)]
        u = _det(alg, mat)
        out.append((u, sum(degs[k] - 1 for k in combo)))
    return out


def kaehler_different(X: SchemeSpec, gens=None, cap=None) -> GradedIdealView:
    """The Kaehler different of ``X``, generated by the Jacobian minors."""
    minors = kaehler_minor_vectors(X, gens)
    seen = []
    polys = []
    for u, e in minors:
        if not any(u):
            continue
        g = X.lift(u, e).monic(X.proj_ring.default_order)
        if g not in seen:
            seen.append(g)
            polys.append(g)
    polys.sort(key=lambda g: (g.degree(), X.proj_ring.default_order.key(g.leading_monomial())))
    return view_from_vectors(X, minors, cap, polys)


def affine_and_reduced_kaehler(X: SchemeSpec, view: GradedIdealView | None = None) -> dict:
    """Dimension of the affine Kaehler different and whether the reduced one
    (modulo ``x0``) is nonzero."""
    minors = kaehler_minor_vectors(X)
    affine_dim = view.affine_dim if view is not None else X.algebra.ideal_span([u for u, _ in minors]).dim
    # f lies in I_X + <X0> iff its image sits in the smaller filtration piece
    reduced_nonzero = any(any(u) and X.filtration_degree(u) == e for u, e in minors)
    return {"affine_dim": affine_dim, "reduced_nonzero": reduced_nonzero}


@dataclass
class LocalDifferentReport:
    component: int
    kappa: int
    kaehler_local_dim: int
    is_ci_point: bool
    is_gorenstein_point: bool
    socle_dim: int
    socle_dim_over_residue: int | None

    def as_dict(self):
        return dict(self.__dict__)


def local_kaehler_different(X: SchemeSpec, j: int, minors=None) -> LocalDifferentReport:
    if not X.components:
        raise SchemeError("per-point data needs a scheme built from components", "no-components")
    c = X.components[j]
    if minors is None:
        minors = kaehler_minor_vectors(X)
    local = [X.project(u, j) for u, _ in minors]
    dim = c.algebra.ideal_span(local).dim
    socle_over = c.socle_dim // c.kappa if c.socle_dim % c.kappa == 0 else None
    return LocalDifferentReport(
        component=j,
        kappa=c.kappa,
        kaehler_local_dim=dim,
        is_ci_point=dim > 0,
        is_gorenstein_point=c.is_gorenstein,
        socle_dim=c.socle_dim,
        socle_dim_over_residue=socle_over,
    )


# -- Noether different -------------------------------------------------------


def _diagonal_annihilator(X: SchemeSpec):
    """Basis of ``Ann(x_i (x) 1 - 1 (x) x_i : i)`` inside ``S (x) S``."""
    alg = X.algebra
    D = alg.dim
    rows = []
    for L in alg.mats:
        # (L (x) 1 - 1 (x) L) z, z indexed by k*D + l
        for a in range(D):
            for b in range(D):
                row = [0] * (D * D)
                for k in range(D):
                    c = L[a][k]
                    if c:
                        row[k * D + b] = row[k * D + b] + c
                for l in range(D):
                    c = L[b][l]
                    if c:
                        row[a * D + l] = row[a * D + l] - c
                if any(row):
                    rows.append(row)
    return nullspace(rows, D * D)


def noether_different(X: SchemeSpec, cap=None) -> GradedIdealView:
    """The Noether different, computed inside ``S (x) S``.

    The degree ``d`` part of ``R (x)_{K[x0]} R`` maps injectively onto the span
    of ``b_k (x) b_l`` with ``deg b_k + deg b_l <= d``.  The annihilator of the
    diagonal ideal is computed once in ``S (x) S`` and cut down degree by
    degree, then multiplied out.
    """
    alg = X.algebra
    D = alg.dim
    degs = alg.degrees
    ann = _diagonal_annihilator(X)
    images = []
    for z in ann:
        out = alg.zero()
        for idx, c in enumerate(z):
            if c:
                k, l = divmod(idx, D)
                p = alg.product_vector(k, l)
                out = [x + c * y if y else x for x, y in zip(out, p)]
        images.append(out)
    hp = Subspace(D, images).dim

    def new_vectors(d):
        bad = [k * D + l for k in range(D) for l in range(D) if degs[k] + degs[l] > d]
        rows = [[z[p] for z in ann] for p in bad]
        if rows:
            coeffs = nullspace(rows, len(ann))
        else:
            coeffs = [[1 if i == t else 0 for i in range(len(ann))] for t in range(len(ann))]
        for c in coeffs:
            v = alg.zero()
            for t, ct in enumerate(c):
                if ct:
                    v = [x + ct * y if y else x for x, y in zip(v, images[t])]
            yield v

    view = _build_view(X, new_vectors, hp, cap)
    view.generators = list(view.minimal_generators)
    return view


def noether_different_colon(X: SchemeSpec, cap=None) -> GradedIdealView:
    """Noether different through the colon ideal in ``K[X0..Xn, Y1..Yn]``.

    Independent of :func:`noether_different`; much slower, meant for small
    cross-checks.
    """
    n = X.n
    proj = X.proj_ring
    names = list(proj.names) + [f"Y{i}" for i in range(1, n + 1)]
    big = PolyRing(X.field, names, "other")
    from .orders import degrevlex

    order = degrevlex(len(names), last=0)
    ident = {i: i for i in range(n + 1)}
    to_y = {0: 0}
    to_y.update({i: n + i for i in range(1, n + 1)})
    gens = []
    for g in X.I_X.groebner_basis():
        gens.append(g.change_ring(big, ident))
        gens.append(g.change_ring(big, to_y))
    Ie = Ideal(gens, order, big)
    diag = Ideal([big.gen(i) - big.gen(n + i) for i in range(1, n + 1)], order, big)
    C = colon(Ie, diag)
    back = {i: i for i in range(n + 1)}
    back.update({n + i: i for i in range(1, n + 1)})
    images = []
    for g in C.groebner_basis():
        if not g.is_homogeneous:
            raise AssertionError("colon ideal lost homogeneity")
        h = g.change_ring(proj, back)
        if h:
            images.append(h)
    return graded_ideal_hilbert(images, X, cap)


def different_inclusions(X: SchemeSpec, kaehler: GradedIdealView, noether: GradedIdealView) -> dict:
    """Check ``theta_N^n <= theta_X <= theta_N`` degreewise."""
    power = noether.power(X.n)
    return {
        "kaehler_in_noether": noether.contains(kaehler),
        "noether_pow_in_kaehler": kaehler.contains(power),
    }
