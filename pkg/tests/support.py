"""Shared helpers for the test suite: fixtures, random schemes and oracles."""

from __future__ import annotations

import json
import random
from itertools import combinations
from math import comb
from pathlib import Path

from kaehler_lab import QQ, PrimeField, build_scheme, projective_ring
from kaehler_lab.linalg import Subspace, rank
from kaehler_lab.poly import monomials_of_degree
from kaehler_lab.scheme import SchemeError

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
GF = PrimeField(32003)
FIELDS = {"QQ": QQ, "GF32003": GF}

# one "criterion k: PASS|FAIL ..." line per acceptance criterion that ran
ACCEPTANCE = []


def load_fixture(name: str) -> dict:
    return json.loads((FIXTURES / f"{name}.json").read_text())


def scheme_from_fixture(name: str):
    doc = load_fixture(name)
    from kaehler_lab.cli import parse_input

    return parse_input(doc).build()


# -- oracles -------------------------------------------------------------------


def brute_hilbert(gens, ring, i: int) -> int:
    """``dim (P/I)_i`` by ranking all products ``m*g`` in the monomial basis of ``P_i``."""
    mons = monomials_of_degree(ring.nvars, i)
    index = {m: k for k, m in enumerate(mons)}
    rows = []
    for g in gens:
        e = g.degree()
        if e > i:
            continue
        for m in monomials_of_degree(ring.nvars, i - e):
            h = g.mul_monomial(m)
            row = [0] * len(mons)
            for t, c in h.terms.items():
                row[index[t]] = c
            rows.append(row)
    return len(mons) - (rank(rows, len(mons)) if rows else 0)


def brute_member(f, gens, ring) -> bool:
    """Degreewise linear algebra membership test for a homogeneous ``f``."""
    d = f.degree()
    mons = monomials_of_degree(ring.nvars, d)
    index = {m: k for k, m in enumerate(mons)}
    space = Subspace(len(mons))
    for g in gens:
        e = g.degree()
        if e > d:
            continue
        for m in monomials_of_degree(ring.nvars, d - e):
            row = [0] * len(mons)
            for t, c in g.mul_monomial(m).terms.items():
                row[index[t]] = c
            space.add(row)
    v = [0] * len(mons)
    for t, c in f.terms.items():
        v[index[t]] = c
    return space.contains(v)


def proportional_mod(X, f, g) -> bool:
    """True when ``f`` and ``g`` agree up to a nonzero scalar modulo ``I_X``."""
    a = X.I_X.normal_form(X.proj_ring(f))
    b = X.I_X.normal_form(X.proj_ring(g))
    if not a or not b:
        return False
    lm = a.leading_monomial()
    if b.coefficient(lm) == 0:
        return False
    c = a.coefficient(lm) / b.coefficient(lm)
    return a == b.scale(c)


# -- random schemes ----------------------------------------------------------


def random_points(field, n, s, rng: random.Random, box=6):
    pts = set()
    while len(pts) < s:
        pts.add(tuple(rng.randint(-box, box) for _ in range(n)))
    return [tuple(field.convert(a) for a in p) for p in sorted(pts)]


def points_scheme(field, pts, max_degree=None):
    n = len(pts[0])
    comps = [{"point": [field.one, *p]} for p in pts]
    return build_scheme(field, n, components=comps, max_degree=max_degree)


def is_generic_hf(X) -> bool:
    H, n, D = X.hilbert, X.n, X.degree
    return all(H(i) == min(D, comb(n + i, n)) for i in range(H.r_X + 2))


def generic_points_scheme(field, n, s, rng, tries=50):
    for _ in range(tries):
        X = points_scheme(field, random_points(field, n, s, rng))
        if is_generic_hf(X):
            return X
    raise RuntimeError("no generic configuration found")


def _random_local_primary(n, a, rng):
    """Generators of a random non-reduced primary ideal at the affine point ``a``."""
    lin = [f"(X{i + 1} - ({a[i]})*X0)" for i in range(n)]
    kind = rng.choice(["square", "curvilinear", "curvilinear"])
    if kind == "square" and n > 1:
        # m^2: not Gorenstein
        return [f"{u}*{v}" for u, v in combinations(lin, 2)] + [f"{u}^2" for u in lin]
    # curvilinear: a complete intersection of length k
    k = rng.choice([2, 3])
    i = rng.randrange(n)
    gens = [f"{lin[t]} - ({rng.randint(-2, 2)})*{lin[i]}" for t in range(n) if t != i]
    gens.append(f"{lin[i]}^{k}")
    return gens


def random_fat_scheme(field, n, s, rng, fat=1):
    """``s`` distinct rational points of which ``fat`` carry a non-reduced structure."""
    pts = random_points(field, n, s, rng)
    comps = []
    fat_idx = set(rng.sample(range(s), min(fat, s)))
    for k, p in enumerate(pts):
        c = {"point": [field.one, *p]}
        if k in fat_idx:
            c["primary"] = _random_local_primary(n, [str(x) for x in p], rng)
        comps.append(c)
    return build_scheme(field, n, components=comps)


def random_form(ring, d, rng, box=3):
    terms = {}
    for m in monomials_of_degree(ring.nvars, d):
        if rng.random() < 0.6:
            c = rng.randint(-box, box)
            if c:
                terms[m] = c
    if not terms:
        terms[(0,) * (ring.nvars - 1) + (d,)] = 1
    return ring.from_dict(terms)


def random_ci(field, rng, degrees, tries=100):
    """A complete intersection in P^2 cut out by random forms of the given degrees."""
    ring = projective_ring(field, 2)
    for _ in range(tries):
        gens = [random_form(ring, d, rng) for d in degrees]
        try:
            X = build_scheme(field, 2, ideal=gens)
        except SchemeError:
            continue
        if X.degree == degrees[0] * degrees[1] and not X.warnings:
            return X, gens
    raise RuntimeError("no complete intersection found")
