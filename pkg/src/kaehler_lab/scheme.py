"""Zero-dimensional subschemes of projective space.

A scheme is given either by its components (a point, a primary ideal, or
both, per point of the support) or by a raw homogeneous ideal.  In both
cases we end up with

* the homogeneous vanishing ideal ``I_X`` and its affine chart ``J_X``,
* the affine coordinate ring ``S = K[x1..xn]/J_X`` as a :class:`FiniteAlgebra`,
* per component, the local ring ``O_j`` with its maximal ideal and socle.

Everything downstream works inside ``S`` in the normal-form basis of
``J_X``.  Because the order is degrevlex with ``X0`` smallest, the
homogeneous standard monomials of degree ``i`` are the affine standard
monomials of degree ``<= i``.  So the image of ``R_i`` in ``S`` is spanned by
the basis vectors of degree at most ``i``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb

from .algebra import FiniteAlgebra
from .fields import Field
from .groebner import Ideal, quotient_basis, saturate_x0
from .linalg import Subspace, columns_to_rows, inverse, mat_vec
from .poly import PolyRing, Polynomial, affine_ring, monomials_of_degree, projective_ring

__all__ = [
    "SchemeError",
    "PointComponent",
    "SchemeSpec",
    "HilbertTable",
    "build_scheme",
    "hilbert_function",
    "generic_position_check",
    "local_ring",
]

log = logging.getLogger(__name__)


class SchemeError(ValueError):
    """Invalid scheme description; ``code`` is a short machine-readable tag."""

    def __init__(self, message, code="invalid-scheme"):
        super().__init__(message)
        self.code = code


@dataclass
class HilbertTable:
    values: list
    r_X: int
    alpha_X: int
    degree: int
    n: int

    def __call__(self, i: int) -> int:
        if i < 0:
            return 0
        if i < len(self.values):
            return self.values[i]
        return self.degree

    def difference(self, i: int) -> int:
        return self(i) - self(i - 1)


@dataclass
class PointComponent:
    """One point of the support together with its local ring ``O_j``.

    ``algebra`` is ``K[x1..xn]/q_j`` for the dehomogenized primary ideal
    ``q_j``.  ``maximal_ideal`` is a subspace of it, ``socle`` its annihilator.
    """

    coords: tuple | None
    primary: tuple | None
    ideal: Ideal
    algebra: FiniteAlgebra
    maximal_generators: list
    maximal_ideal: Subspace
    socle: Subspace
    residue_basis: list

    @property
    def multiplicity(self) -> int:
        return self.algebra.dim

    m = multiplicity

    @property
    def kappa(self) -> int:
        return self.algebra.dim - self.maximal_ideal.dim

    @property
    def socle_dim(self) -> int:
        return self.socle.dim

    @property
    def is_gorenstein(self) -> bool:
        return self.socle.dim == self.kappa

    @property
    def is_reduced(self) -> bool:
        return self.maximal_ideal.dim == 0

    @property
    def is_rational(self) -> bool:
        return self.kappa == 1

    def point(self):
        """Affine coordinates of a rational point (from the data or the algebra)."""
        if self.coords is not None:
            c0 = self.coords[0]
            return tuple(c / c0 for c in self.coords[1:])
        if not self.is_rational:
            return None
        # the residue of x_i is a scalar multiple of the residue of 1
        out = []
        one = self.algebra.unit()
        r1 = self.maximal_ideal.reduce(one)
        piv = next(k for k, x in enumerate(r1) if x)
        for i in range(self.algebra.nvars):
            rv = self.maximal_ideal.reduce(self.algebra.mul_var(i, one))
            out.append(rv[piv] / r1[piv])
        return tuple(out)

    def socle_element(self):
        """Deterministic socle generator for a Gorenstein point."""
        if not self.is_gorenstein:
            return None
        basis = self.socle.basis()
        # smallest support in the lex sense, then normalize its leading entry
        basis.sort(key=lambda v: [k for k, x in enumerate(v) if x])
        v = basis[0]
        lead = next(x for x in v if x)
        return [x / lead if x else 0 for x in v]


@dataclass
class SchemeSpec:
    field: Field
    n: int
    components: list
    I_X: Ideal
    J_X: Ideal
    algebra: FiniteAlgebra
    hilbert: HilbertTable
    warnings: list = field(default_factory=list)
    source_generators: tuple = ()
    # block coordinates (when components are present)
    to_blocks: list | None = None
    from_blocks: list | None = None
    offsets: list = field(default_factory=list)
    nilradical: Subspace | None = None
    socle: Subspace | None = None

    @property
    def degree(self) -> int:
        return self.algebra.dim

    @property
    def proj_ring(self) -> PolyRing:
        return self.I_X.ring

    @property
    def aff_ring(self) -> PolyRing:
        return self.J_X.ring

    @property
    def has_components(self) -> bool:
        return bool(self.components)

    @property
    def r_X(self) -> int:
        return self.hilbert.r_X

    @property
    def kappa_total(self) -> int:
        """Sum of the residue field degrees over the support."""
        return self.degree - self.nilradical.dim

    @property
    def is_reduced(self) -> bool:
        return self.nilradical.dim == 0

    @property
    def is_locally_gorenstein(self) -> bool:
        # each local socle has K-dimension >= kappa_j, with equality iff Gorenstein
        return self.socle.dim == self.kappa_total

    @property
    def std_degrees(self):
        return self.algebra.degrees

    def degree_space(self, d: int) -> Subspace:
        """Image ``V_d`` of ``R_d`` in ``S``."""
        s = Subspace(self.degree)
        for k, deg in enumerate(self.algebra.degrees):
            if deg <= d:
                s.add(self.algebra.basis_vector(k))
        return s

    def filtration_degree(self, v) -> int | None:
        """Least ``d`` with ``v`` in ``V_d``; None for the zero vector."""
        degs = [self.algebra.degrees[k] for k, x in enumerate(v) if x]
        return max(degs) if degs else None

    def lift(self, v, d: int) -> Polynomial:
        """The form of degree ``d`` in ``R`` mapping to ``v`` (standard monomials only)."""
        deg = self.filtration_degree(v)
        if deg is not None and deg > d:
            raise ValueError(f"vector is not in the degree {d} piece")
        ring = self.proj_ring
        terms = {}
        for k, c in enumerate(v):
            if c:
                e = self.algebra.basis[k]
                terms[(d - sum(e),) + tuple(e)] = c
        return Polynomial(ring, terms)

    def image(self, f: Polynomial):
        """Image in ``S`` of a projective or affine polynomial."""
        if f.ring.kind == "projective":
            f = f.dehomogenize(self.aff_ring)
        return self.algebra.element(f)

    # -- blocks ---------------------------------------------------------
    def project(self, v, j: int):
        """Component ``j`` of ``v`` in the local ring ``O_j``."""
        if self.to_blocks is None:
            raise SchemeError("scheme has no component data", "no-components")
        lo = self.offsets[j]
        hi = lo + self.components[j].multiplicity
        return mat_vec(self.to_blocks[lo:hi], v)

    def pad(self, a, j: int):
        """The element of ``S`` equal to ``a`` at ``p_j`` and zero elsewhere."""
        if self.from_blocks is None:
            raise SchemeError("scheme has no component data", "no-components")
        full = [0] * self.degree
        lo = self.offsets[j]
        full[lo : lo + len(a)] = list(a)
        return mat_vec(self.from_blocks, full)


# -- construction -----------------------------------------------------------


def _convert_point(field, coords, n):
    if len(coords) != n + 1:
        raise SchemeError(f"point {coords} needs {n + 1} coordinates", "bad-point")
    pt = tuple(field.convert(c) for c in coords)
    if not pt[0]:
        raise SchemeError(f"point {coords} lies on the hyperplane X0 = 0", "meets-hyperplane")
    return pt


def _meets_hyperplane(I: Ideal) -> bool:
    """True if ``V(I)`` has a point on ``X0 = 0`` (or is not zero-dimensional)."""
    ring = I.ring
    J = Ideal(tuple(I.groebner_basis()) + (ring.gen(0),), I.order, ring)
    pure = set()
    for l in J.leading_monomials():
        support = [i for i, a in enumerate(l) if a]
        if len(support) == 1:
            pure.add(support[0])
        if not support:
            return False
    return not all(i in pure for i in range(1, ring.nvars))


def _as_affine(polys, aff: PolyRing):
    return [p.dehomogenize(aff) for p in polys]


def _component(field, n, proj, aff, coords=None, primary=None, index=0):
    pt = _convert_point(field, coords, n) if coords is not None else None
    if primary:
        gens = [proj(g) for g in primary]
        if all(g.is_homogeneous for g in gens):
            I = Ideal(gens, None, proj)
            if I.is_whole_ring():
                raise SchemeError(f"component {index} has the unit ideal", "empty-component")
            if _meets_hyperplane(I):
                raise SchemeError(
                    f"component {index} meets the hyperplane X0 = 0 or is not zero-dimensional",
                    "meets-hyperplane",
                )
            q_gens = _as_affine(gens, aff)
        else:
            if any(any(e[0] for e in g.terms) for g in gens):
                raise SchemeError(
                    f"component {index}: generators mixing X0 with non-homogeneous terms", "bad-component"
                )
            q_gens = _as_affine(gens, aff)
        q = Ideal(q_gens, None, aff)
    elif pt is not None:
        q = Ideal([aff.gen(i) - pt[i + 1] / pt[0] for i in range(n)], None, aff)
    else:
        raise SchemeError(f"component {index} has neither a point nor an ideal", "bad-component")
    if q.is_whole_ring():
        raise SchemeError(f"component {index} has the unit ideal", "empty-component")
    try:
        alg = FiniteAlgebra(q)
    except ValueError:
        raise SchemeError(f"component {index} is not zero-dimensional", "not-zero-dimensional") from None

    radical = alg.radical_generators()
    nil = alg.ideal_span([g for _, _, g in radical])
    if pt is not None:
        lin = [aff.gen(i) - pt[i + 1] / pt[0] for i in range(n)]
        max_gens = lin
        elems = [alg.element(g) for g in lin]
        span = alg.ideal_span(elems)
        if span.dim == alg.dim or not span.is_subspace_of(nil) or span.dim != nil.dim:
            raise SchemeError(f"point {coords} is not the support of component {index}", "point-mismatch")
        gen_vectors = elems
    else:
        max_gens = list(q.groebner_basis())
        for i, sq, _ in radical:
            exps = [tuple(k if v == i else 0 for v in range(n)) for k in range(len(sq))]
            max_gens.append(aff.from_dict({e: c for e, c in zip(exps, sq) if c}))
        gen_vectors = [g for _, _, g in radical]
        span = nil
    socle = alg.annihilator([v for v in gen_vectors if any(v)])
    residue = []
    quot = span.copy()
    for k in range(alg.dim):
        b = alg.basis_vector(k)
        if quot.add(b):
            residue.append(b)
    return PointComponent(
        coords=pt,
        primary=tuple(str(proj(g)) for g in primary) if primary else None,
        ideal=q,
        algebra=alg,
        maximal_generators=max_gens,
        maximal_ideal=span,
        socle=socle,
        residue_basis=residue,
    )


def _buchberger_moeller(aff: PolyRing, blocks):
    """Reduced GB and standard monomials of the ideal of the evaluation map
    ``K[x] -> prod_j O_j``."""
    total = sum(b.dim for b in blocks)
    nv = aff.nvars
    key = aff.default_order.key_function()
    tagged = Subspace(2 * total)
    std, std_vectors, gb, leads = [], [], [], []
    d = 0
    while True:
        grew = False
        for m in sorted(monomials_of_degree(nv, d), key=key):
            if any(all(a <= b for a, b in zip(l, m)) for l in leads):
                continue
            v = []
            for blk in blocks:
                v.extend(blk.monomial_vector(m))
            w = tagged.reduce(v + [0] * total)
            if not any(w[:total]):
                terms = {m: aff.field.one}
                for k, c in enumerate(w[total : total + len(std)]):
                    if c:
                        terms[std[k]] = c
                gb.append(Polynomial(aff, terms))
                leads.append(m)
            else:
                tag = [0] * total
                tag[len(std)] = aff.field.one
                tagged.add(v + tag)
                std.append(m)
                std_vectors.append(v)
                grew = True
        if not grew:
            break
        d += 1
    return gb, std, std_vectors


def _hilbert_table(alg: FiniteAlgebra, n: int, cap=None) -> HilbertTable:
    deg = alg.dim
    counts = {}
    for e in alg.degrees:
        counts[e] = counts.get(e, 0) + 1
    top = max(alg.degrees)
    r = top  # HF reaches deg exactly at the largest standard monomial degree
    values = []
    acc = 0
    i_max = max((n + 1) * r, r + 1) if cap is None else max(cap, r + 1)
    for i in range(i_max + 1):
        acc += counts.get(i, 0)
        values.append(acc)
    alpha = 0
    while (values[alpha] if alpha < len(values) else deg) == comb(n + alpha, n):
        alpha += 1
    return HilbertTable(values=values, r_X=r, alpha_X=alpha, degree=deg, n=n)


def build_scheme(field: Field, n: int, components=None, ideal=None, *, max_degree=None) -> SchemeSpec:
    """Validate the input and assemble a :class:`SchemeSpec`.

    ``components`` is a list of dicts with keys ``point`` and/or ``primary``
    (lists of coordinates / polynomials or polynomial strings).  ``ideal`` is a
    list of homogeneous generators.  Exactly one of the two must be given.

    Each ``primary`` list is trusted to generate a primary ideal; only
    coprimality of the components is verified.
    """
    if n < 1:
        raise SchemeError("n must be at least 1", "bad-n")
    if (components is None) == (ideal is None):
        raise SchemeError("give exactly one of components or ideal", "bad-input")
    proj = projective_ring(field, n)
    aff = affine_ring(field, n)
    warnings = []
    comps = []
    if components is not None:
        if not components:
            raise SchemeError("empty list of components", "bad-input")
        for idx, c in enumerate(components):
            if isinstance(c, PointComponent):
                comps.append(c)
                continue
            comps.append(_component(field, n, proj, aff, c.get("point"), c.get("primary"), idx))
        blocks = [c.algebra for c in comps]
        gb, std, std_vectors = _buchberger_moeller(aff, blocks)
        total = sum(b.dim for b in blocks)
        if len(std) != total:
            _raise_overlap(comps, aff)
        J = Ideal.from_groebner_basis(gb, None, aff)
        source = ()
    else:
        gens = [proj(g) for g in ideal]
        if not gens or all(not g for g in gens):
            raise SchemeError("the zero ideal does not define a zero-dimensional scheme", "not-zero-dimensional")
        for g in gens:
            if not g.is_homogeneous:
                raise SchemeError(f"generator {g} is not homogeneous", "not-homogeneous")
        I = Ideal(gens, None, proj)
        if I.is_whole_ring():
            raise SchemeError("the unit ideal defines the empty scheme", "empty-scheme")
        J0 = Ideal([g.dehomogenize(aff) for g in I.groebner_basis()], None, aff)
        if J0.is_whole_ring():
            raise SchemeError("the scheme has no point off the hyperplane X0 = 0", "meets-hyperplane")
        if not quotient_basis(J0, degree_cap=1).finite:
            raise SchemeError("the ideal is not zero-dimensional", "not-zero-dimensional")
        if _meets_hyperplane(I):
            raise SchemeError("the scheme has a point on the hyperplane X0 = 0", "meets-hyperplane")
        sat = saturate_x0(I)
        if sat.groebner_basis() != I.groebner_basis():
            warnings.append("input ideal was not saturated; replaced by its X0-saturation")
        J = Ideal(J0.groebner_basis(), None, aff)
        source = tuple(gens)
    alg = FiniteAlgebra(J)
    p = field.characteristic
    if p and p <= alg.dim:
        raise SchemeError(f"characteristic {p} must exceed the degree {alg.dim}", "char-guard")
    I_X = Ideal.from_groebner_basis([g.homogenize(proj) for g in J.groebner_basis()], None, proj)
    hilbert = _hilbert_table(alg, n, max_degree)
    spec = SchemeSpec(
        field=field,
        n=n,
        components=comps,
        I_X=I_X,
        J_X=J,
        algebra=alg,
        hilbert=hilbert,
        warnings=warnings,
        source_generators=source,
    )
    if comps:
        # columns: block coordinates of the standard monomials
        spec.to_blocks = columns_to_rows(std_vectors, alg.dim)
        spec.from_blocks = inverse(spec.to_blocks)
        off = 0
        for c in comps:
            spec.offsets.append(off)
            off += c.multiplicity
    radical = alg.radical_generators()
    spec.nilradical = alg.ideal_span([g for _, _, g in radical])
    spec.socle = alg.annihilator([g for _, _, g in radical if any(g)])
    log.info("built scheme of degree %d in P^%d, r_X = %d", alg.dim, n, hilbert.r_X)
    return spec


def _raise_overlap(comps, aff):
    for a in range(len(comps)):
        for b in range(a + 1, len(comps)):
            s = Ideal(
                tuple(comps[a].ideal.groebner_basis()) + tuple(comps[b].ideal.groebner_basis()), None, aff
            )
            if not s.is_whole_ring():
                raise SchemeError(f"components {a} and {b} share a point", "duplicate-point")
    raise SchemeError("components are not pairwise coprime", "duplicate-point")  # pragma: no cover


# -- queries ----------------------------------------------------------------


def hilbert_function(X: SchemeSpec) -> HilbertTable:
    return X.hilbert


def generic_position_check(X: SchemeSpec) -> dict:
    H = X.hilbert
    n, deg = X.n, X.degree
    is_generic = all(H(i) == min(deg, comb(n + i, n)) for i in range(H.r_X + 2))
    a = H.alpha_X
    low, high = comb(n + a - 1, n), comb(n + a, n)
    if deg == low:
        boundary = "deg = C(n+alpha-1, n)"
    elif low < deg < high:
        boundary = "strict-between"
    else:
        boundary = "none"
    return {"is_generic": is_generic, "alpha_X": a, "r_X": H.r_X, "boundary_case": boundary}


def local_ring(X: SchemeSpec, j: int) -> dict:
    if not X.components:
        raise SchemeError("per-point data needs a scheme built from components", "no-components")
    c = X.components[j]
    alg = c.algebra
    return {
        "basis": list(alg.basis),
        "mult_table": alg.mats,
        "maximal_ideal": list(c.maximal_generators),
        "kappa_j": c.kappa,
        "m_j": c.multiplicity,
        "socle": c.socle.basis(),
        "socle_dim": c.socle.dim,
        "is_gorenstein": c.is_gorenstein,
    }
