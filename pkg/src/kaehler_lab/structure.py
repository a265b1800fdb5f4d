"""Separators, conductor and the structural classification of a scheme.

Everything lives in ``S`` through the embedding ``R_i -> S``.  The image
``V_i`` of ``R_i`` is spanned by the standard monomials of degree at most
``i``.  The degree ``i`` part of the conductor of ``R`` in ``S[x0]`` is then
``F_i = {v in S : v*S in V_i}``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb

from .differents import (
    GradedIdealView,
    _build_view,
    affine_and_reduced_kaehler,
    different_inclusions,
    kaehler_different,
    kaehler_minor_vectors,
    local_kaehler_different,
    noether_different,
)
from .linalg import Subspace, nullspace, rank
from .poly import jacobian_minors, monomials_of_degree
from .scheme import SchemeError, SchemeSpec, generic_position_check

__all__ = [
    "ItildeFrame",
    "itilde_frame",
    "mu_value",
    "separators",
    "ConductorProfile",
    "conductor",
    "conductor_ideal",
    "cb_test",
    "cb_rank_criterion",
    "ClassificationReport",
    "classify",
    "genpos_equivalence_check",
    "Analysis",
]

log = logging.getLogger(__name__)


# -- the embedding R_i -> S ---------------------------------------------------


@dataclass
class ItildeFrame:
    """Per-degree matrices of ``R_i -> S`` and their images ``V_i``.

    Columns of ``matrices[i]`` are the images of the standard monomials of
    ``R_i`` (listed in ``monomials[i]``), in block coordinates when the scheme
    has components and in normal-form coordinates otherwise.
    """

    monomials: list
    matrices: list
    spaces: list

    def dims(self):
        return [s.dim for s in self.spaces]


def itilde_frame(X: SchemeSpec, top: int | None = None) -> ItildeFrame:
    top = X.r_X if top is None else top
    alg = X.algebra
    mons, mats, spaces = [], [], []
    for i in range(top + 1):
        ks = [k for k, d in enumerate(alg.degrees) if d <= i]
        mons.append([(i - alg.degrees[k],) + tuple(alg.basis[k]) for k in ks])
        cols = [alg.basis_vector(k) for k in ks]
        if X.to_blocks is not None:
            cols = [[X.to_blocks[r][k] for r in range(X.degree)] for k in ks]
        mats.append([[c[r] for c in cols] for r in range(X.degree)])
        spaces.append(X.degree_space(i))
    return ItildeFrame(monomials=mons, matrices=mats, spaces=spaces)


def mu_value(X: SchemeSpec, j: int, a) -> int:
    """Least ``i`` such that ``a`` placed at ``p_j`` (zero elsewhere) lies in ``V_i``."""
    if not any(a):
        raise ValueError("mu is undefined for the zero element")
    return X.filtration_degree(X.pad(a, j))


def separators(X: SchemeSpec, j: int) -> dict:
    """Minimal separators of a maximal ``p_j``-subscheme and their full-degree versions."""
    if not X.components:
        raise SchemeError("separators need a scheme built from components", "no-components")
    c = X.components[j]
    if not c.is_gorenstein:
        raise SchemeError(
            f"component {j} is not Gorenstein; its maximal subschemes are not unique", "unsupported"
        )
    s = c.socle_element()
    alg = c.algebra
    r = X.r_X
    x0 = X.proj_ring.gen(0)
    minimal, full, mus = [], [], []
    for e in c.residue_basis:
        a = alg.mul(e, s)
        v = X.pad(a, j)
        mu = X.filtration_degree(v)
        f_star = X.lift(v, mu)
        minimal.append(f_star)
        full.append(f_star * x0 ** (r - mu))
        mus.append(mu)
    return {"minimal": minimal, "degrees": mus, "full": full, "socle": s}


# -- conductor -------------------------------------------------------------------


@dataclass
class ConductorProfile:
    pieces: list
    dims: list
    point_degrees: list | None
    len_tilde_over_R: int
    len_R_over_F: int
    len_tilde_over_F: int

    def as_dict(self):
        return {
            "dims": self.dims,
            "point_degrees": self.point_degrees,
            "len_tilde_over_R": self.len_tilde_over_R,
            "len_R_over_F": self.len_R_over_F,
            "len_tilde_over_F": self.len_tilde_over_F,
        }


def conductor(X: SchemeSpec) -> ConductorProfile:
    alg = X.algebra
    D, r = X.degree, X.r_X
    H = X.hilbert
    degs = alg.degrees
    pieces = []
    for i in range(r):
        rows = []
        for b in range(D):
            prods = [alg.product_vector(k, b) for k in range(D)]
            for c in range(D):
                if degs[c] > i:
                    row = [p[c] for p in prods]
                    if any(row):
                        rows.append(row)
        pieces.append(Subspace(D, nullspace(rows, D)))
    pieces.append(Subspace(D, [alg.basis_vector(k) for k in range(D)]))
    dims = [p.dim for p in pieces]
    len_R_F = sum(H(i) - dims[i] for i in range(r))
    len_T_R = sum(D - H(i) for i in range(r))
    point_degrees = None
    if X.components:
        point_degrees = []
        for j in range(len(X.components)):
            for i, p in enumerate(pieces):
                if any(any(X.project(v, j)) for v in p.basis()):
                    point_degrees.append(i)
                    break
    return ConductorProfile(
        pieces=pieces,
        dims=dims,
        point_degrees=point_degrees,
        len_tilde_over_R=len_T_R,
        len_R_over_F=len_R_F,
        len_tilde_over_F=len_T_R + len_R_F,
    )


def conductor_ideal(X: SchemeSpec, profile: ConductorProfile) -> GradedIdealView:
    """The conductor as a homogeneous ideal of ``R``."""
    r = X.r_X

    def new_vectors(d):
        return profile.pieces[min(d, r)].basis()

    return _build_view(X, new_vectors, X.degree)


def cb_test(X: SchemeSpec, profile: ConductorProfile | None = None) -> dict:
    profile = profile or conductor(X)
    r = X.r_X
    is_cb = all(d == 0 for d in profile.dims[:r])
    return {"is_cb": is_cb, "point_degrees": profile.point_degrees, "r_X": r}


def _rational_points(X: SchemeSpec):
    if not X.components or not all(c.is_reduced and c.is_rational for c in X.components):
        raise SchemeError("needs a set of reduced K-rational points given by components", "hypothesis")
    return [(X.field.one,) + tuple(X.field.convert(a) for a in c.point()) for c in X.components]


def cb_rank_criterion(X: SchemeSpec) -> dict:
    """Rank test on the evaluation matrix of the Jacobian minors of ``(I_X)_alpha``."""
    pts = _rational_points(X)
    gp = generic_position_check(X)
    n, deg = X.n, X.degree
    alpha, r = X.hilbert.alpha_X, X.r_X
    if not gp["is_generic"] or alpha != r or r < 2:
        raise SchemeError("needs generic position with r_X = alpha_X >= 2", "hypothesis")
    t = comb(n + alpha, n) - deg
    if t < n:
        raise SchemeError(f"needs t = {t} >= n = {n}", "hypothesis")
    ring = X.proj_ring
    mons = monomials_of_degree(ring.nvars, alpha)
    ev = [[_eval_monomial(m, p) for m in mons] for p in pts]
    basis = nullspace(ev, len(mons))
    assert len(basis) == t
    F = [ring.from_dict({m: c for m, c in zip(mons, v) if c}) for v in basis]
    h = jacobian_minors(F)
    A = [[g.evaluate(p) for g in h] for p in pts]
    rk = rank(A, len(h))
    ranks_j = []
    for j in range(len(pts)):
        Aj = [row + [X.field.one if k == j else X.field.zero] for k, row in enumerate(A)]
        ranks_j.append(rank(Aj, len(h) + 1))
    return {
        "sufficient_cb": all(x > rk for x in ranks_j),
        "rank_A": rk,
        "rank_A_j": ranks_j,
        "t": t,
        "delta": len(h),
        "converse_holds": n == 2 or (n, r) == (3, 2),
    }


def _eval_monomial(m, p):
    v = 1
    for a, x in zip(m, p):
        if a:
            v = v * x**a
    return v


# -- classification -----------------------------------------------------------


class Analysis:
    """Lazily computed invariants of one scheme, shared by the classifiers."""

    def __init__(self, X: SchemeSpec, cap=None):
        self.X = X
        self.cap = cap

    @cached_property
    def kaehler(self) -> GradedIdealView:
        return kaehler_different(self.X, cap=self.cap)

    @cached_property
    def noether(self) -> GradedIdealView:
        return noether_different(self.X, cap=self.cap)

    @cached_property
    def minors(self):
        return kaehler_minor_vectors(self.X)

    @cached_property
    def conductor(self) -> ConductorProfile:
        return conductor(self.X)

    @cached_property
    def generic(self) -> dict:
        return generic_position_check(self.X)

    @cached_property
    def local_reports(self):
        if not self.X.components:
            return None
        return [local_kaehler_different(self.X, j, self.minors) for j in range(len(self.X.components))]

    @cached_property
    def reduced_kaehler(self) -> dict:
        return affine_and_reduced_kaehler(self.X, self.kaehler)


@dataclass
class ClassificationReport:
    is_generic: bool
    is_cb: bool
    point_degrees: list | None
    is_locally_gorenstein: bool
    is_arith_gorenstein: bool
    ag_routes: dict
    is_locally_ci: bool
    is_ci: bool
    ci_routes: dict
    ci_witness: int
    noether_witness: int
    ags_lengths: dict
    symmetric_hf: bool
    kappa_total: int
    points: list | None = None
    consistency_failures: list = field(default_factory=list)
    observations: list = field(default_factory=list)

    def as_dict(self):
        return dict(self.__dict__)


def _symmetric(X: SchemeSpec) -> bool:
    H, r, D = X.hilbert, X.r_X, X.degree
    return all(H(i) == D - H(r - 1 - i) for i in range(r))


def classify(X: SchemeSpec, analysis: Analysis | None = None) -> ClassificationReport:
    """Run every applicable criterion and record disagreements."""
    an = analysis or Analysis(X)
    K, N, prof = an.kaehler, an.noether, an.conductor
    n, r, D = X.n, X.r_X, X.degree
    fails, notes = [], []

    is_generic = an.generic["is_generic"]
    if is_generic != (X.hilbert.alpha_X >= r):
        fails.append("generic position disagrees with alpha_X >= r_X")
    cb = cb_test(X, prof)
    is_cb = cb["is_cb"]
    kappa = X.kappa_total

    # local Gorenstein: global socle count, Noether different, per point
    loc_gor = X.is_locally_gorenstein
    if (N.hp == kappa) != loc_gor:
        fails.append("HP(theta_N) = sum kappa disagrees with the socle test")
    points = None
    if X.components:
        comps = X.components
        if sum(c.kappa for c in comps) != kappa:
            fails.append("sum of local kappa differs from the global count")
        if all(c.is_gorenstein for c in comps) != loc_gor:
            fails.append("per-point Gorenstein test disagrees with the global socle test")
        reps = an.local_reports
        points = [
            {
                "m": c.multiplicity,
                "kappa": c.kappa,
                "is_gorenstein": c.is_gorenstein,
                "is_ci_point": rep.is_ci_point,
                "kaehler_local_dim": rep.kaehler_local_dim,
                "deg_X": prof.point_degrees[j],
            }
            for j, (c, rep) in enumerate(zip(comps, reps))
        ]
        for rep, c in zip(reps, comps):
            if rep.is_ci_point and rep.kaehler_local_dim != c.kappa:
                fails.append(f"local Kaehler different at point {rep.component} has wrong dimension")
            if rep.is_ci_point and not c.is_gorenstein:
                fails.append(f"point {rep.component} is CI but not Gorenstein")
        ci_kappa = sum(c.kappa for c, rep in zip(comps, reps) if rep.is_ci_point)
        if K.hp != ci_kappa:
            fails.append("HP(theta_X) differs from the sum of kappa over CI points")
        gor_kappa = sum(c.kappa for c in comps if c.is_gorenstein)
        if N.hp != gor_kappa:
            fails.append("HP(theta_N) differs from the sum of kappa over Gorenstein points")
        if is_cb != all(d == r for d in prof.point_degrees):
            fails.append("CB via conductor disagrees with the point degrees")
    loc_ci = K.hp == kappa
    if X.components and loc_ci != all(p["is_ci_point"] for p in points):
        fails.append("HP(theta_X) = sum kappa disagrees with per-point CI tests")
    if loc_ci and not loc_gor:
        fails.append("locally CI but not locally Gorenstein")

    sym = _symmetric(X)
    lengths_equal = prof.len_tilde_over_R == prof.len_R_over_F
    wN, wK = N(r), K(r)
    ag = {
        "noether_hf": is_cb and loc_gor and wN != 0,
        "noether_hp": is_cb and N.hp == kappa and wN != 0,
        "symmetric_hf": is_cb and loc_gor and sym,
        "cb_lengths": (is_cb and lengths_equal) if loc_gor else False,
        "ags_generic": lengths_equal if (loc_gor and is_generic) else None,
    }
    is_ag = ag["noether_hf"]
    if any(v is not None and v != is_ag for v in ag.values()):
        fails.append(f"arithmetically Gorenstein routes disagree: {ag}")
    ci = {
        "reduced_kaehler": an.reduced_kaehler["reduced_nonzero"],
        "kaehler_hf": loc_gor and is_cb and wK != 0,
        "kaehler_hp": is_cb and K.hp == kappa and wK != 0,
    }
    is_ci = ci["reduced_kaehler"]
    if any(v != is_ci for v in ci.values()):
        fails.append(f"complete intersection routes disagree: {ci}")

    # implications and further invariants
    if is_ci and not is_ag:
        fails.append("complete intersection but not arithmetically Gorenstein")
    if is_ag and not (is_cb and loc_gor):
        fails.append("arithmetically Gorenstein but not a locally Gorenstein CB-scheme")
    if is_ci and not loc_ci:
        fails.append("complete intersection but not locally CI")
    if is_ag:
        if not sym:
            fails.append("arithmetically Gorenstein with non-symmetric Hilbert function")
        gens = N.minimal_generators
        if len(gens) != 1 or gens[0].degree() != r:
            fails.append("theta_N of an arithmetically Gorenstein scheme is not principal in degree r_X")
    if is_ci and K != N:
        fails.append("differents differ on a complete intersection")
    if is_cb and loc_gor and any(K(i) or N(i) for i in range(r)):
        fails.append("locally Gorenstein CB-scheme with nonzero differents below r_X")
    incl = different_inclusions(X, K, N)
    if not all(incl.values()):
        fails.append(f"inclusion chain fails: {incl}")
    if prof.len_tilde_over_F != prof.len_tilde_over_R + prof.len_R_over_F:
        fails.append("conductor lengths do not add up")
    if K.ri is not None and K.ri > (n + 1) * r:
        fails.append("ri(theta_X) exceeds (n+1) r_X")
    if n >= 2 and K.ri is not None and K.ri > n * r:
        notes.append(f"ri(theta_X) = {K.ri} exceeds n*r_X = {n * r}")
    if n == 1 and K.ri is not None and K.ri != r + K.hp - 1:
        fails.append("ri(theta_X) differs from r_X + sum kappa - 1 on the line")
    if X.is_reduced:
        if K.hp != D:
            fails.append("reduced scheme with HP(theta_X) != deg")
        if n >= 2 and not (2 * r <= K.ri <= n * r):
            fails.append("reduced scheme violates 2 r_X <= ri(theta_X) <= n r_X")
        if n == 2 and K.ri != 2 * r:
            fails.append("reduced scheme in the plane with ri(theta_X) != 2 r_X")
        if K(n * r - n) == 0 and not is_cb:
            fails.append("HF(theta_X)(n r_X - n) = 0 but not a CB-scheme")
    if is_generic and r * D < 2 * sum(X.hilbert(i) for i in range(r)):
        fails.append("generic scheme violates r_X deg >= 2 sum HF")

    return ClassificationReport(
        is_generic=is_generic,
        is_cb=is_cb,
        point_degrees=prof.point_degrees,
        is_locally_gorenstein=loc_gor,
        is_arith_gorenstein=is_ag,
        ag_routes=ag,
        is_locally_ci=loc_ci,
        is_ci=is_ci,
        ci_routes=ci,
        ci_witness=wK,
        noether_witness=wN,
        ags_lengths={
            "len_tilde_over_R": prof.len_tilde_over_R,
            "len_R_over_F": prof.len_R_over_F,
            "len_tilde_over_F": prof.len_tilde_over_F,
        },
        symmetric_hf=sym,
        kappa_total=kappa,
        points=points,
        consistency_failures=fails,
        observations=notes,
    )


def genpos_equivalence_check(X: SchemeSpec, analysis: Analysis | None = None, assert_iii: bool = False) -> dict:
    """Compare the three characterizations of generic position for reduced schemes."""
    if not X.is_reduced:
        raise SchemeError("the equivalence needs a reduced scheme", "hypothesis")
    if X.n < 2:
        # on the line ri(theta_X) = 2 r_X > r_X once there are two points
        raise SchemeError("the equivalence needs n >= 2", "hypothesis")
    an = analysis or Analysis(X)
    K = an.kaehler
    n, r, D = X.n, X.r_X, X.degree
    alpha = X.hilbert.alpha_X
    gp = an.generic["is_generic"]
    a = gp and D == comb(n + alpha - 1, n)
    top = max(n * r, K.stable_from) + 1
    b = all(K(i) == (0 if i < n * r else D) for i in range(top + 1))
    prof = an.conductor
    is_cb = all(d == 0 for d in prof.dims[:r])
    F = conductor_ideal(X, prof)
    c = is_cb and K == F.power(n)
    out = {"a": a, "b": b, "c": c, "three_way": a == b == c}
    # generic position through a single value of HF(theta_X)
    al = 1
    while comb(n + al, n) <= D:
        al += 1
    if al > 1 and comb(n + al - 1, n) < D < comb(n + al, n):
        hyp_i = X.hilbert(al) == D
        hyp_ii = comb(n + al, n) - X.hilbert(al) >= n
        if hyp_i and hyp_ii and assert_iii:
            out["single_value"] = {"alpha": al, "agrees": gp == (K(n * al - n - 1) == 0)}
    return out
