"""Exact dense linear algebra over QQ or GF(p).

Vectors are plain lists of field elements (the integer ``0`` is accepted as
zero).  :class:`Subspace` keeps a reduced row echelon basis so membership,
rank and coordinates are exact.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = [
    "Subspace",
    "rref",
    "rank",
    "nullspace",
    "solve",
    "mat_vec",
    "mat_mul",
    "transpose",
    "identity",
    "kron",
    "reciprocal",
    "inverse",
    "columns_to_rows",
]


def reciprocal(x):
    """``1/x`` that stays exact when ``x`` is a plain integer."""
    if isinstance(x, int):
        return Fraction(1, x)
    return 1 / x


def _axpy(v, c, row, support):
    # v <- v - c * row, touching only the support of row
    for j in support:
        v[j] = v[j] - c * row[j]


class Subspace:
    """Subspace of ``K^ambient`` with a reduced row echelon basis."""

    __slots__ = ("ambient", "_rows", "_support")

    def __init__(self, ambient: int, vectors=()):
        self.ambient = ambient
        self._rows = {}  # pivot -> normalized row
        self._support = {}  # pivot -> nonzero column indices of the row
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self._rows)

    def __len__(self):
        return len(self._rows)

    def copy(self) -> "Subspace":
        s = Subspace(self.ambient)
        s._rows = {p: list(r) for p, r in self._rows.items()}
        s._support = dict(self._support)
        return s

    def basis(self):
        return [list(self._rows[p]) for p in sorted(self._rows)]

    def pivots(self):
        return sorted(self._rows)

    def reduce(self, v):
        """Residual of ``v`` after eliminating all pivot coordinates."""
        if len(v) != self.ambient:
            raise ValueError(f"vector of length {len(v)} in ambient dimension {self.ambient}")
        v = list(v)
        for p in self._rows:
            c = v[p]
            if c:
                _axpy(v, c, self._rows[p], self._support[p])
        return v

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    __contains__ = contains

    def add(self, v) -> bool:
        """Insert ``v``; return True if the dimension grew."""
        w = self.reduce(v)
        piv = next((j for j, x in enumerate(w) if x), None)
        if piv is None:
            return False
        inv = reciprocal(w[piv])
        w = [x * inv if x else 0 for x in w]
        sup = [j for j, x in enumerate(w) if x]
        for p, row in self._rows.items():
            c = row[piv]
            if c:
                _axpy(row, c, w, sup)
                self._support[p] = [j for j, x in enumerate(row) if x]
        self._rows[piv] = w
        self._support[piv] = sup
        return True

    def extend(self, vectors) -> int:
        return sum(1 for v in vectors if self.add(v))

    def coordinates(self, v):
        """Coefficients of ``v`` in :meth:`basis` order, or None if outside."""
        if not self.contains(v):
            return None
        return [v[p] for p in sorted(self._rows)]

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self._rows.values())

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.dim == other.dim and self.is_subspace_of(other)

    def __add__(self, other: "Subspace") -> "Subspace":
        s = self.copy()
        s.extend(other._rows.values())
        return s

    def annihilator(self):
        """Basis of linear functionals (as vectors) vanishing on the subspace."""
        return nullspace(self.basis(), self.ambient)

    def intersection(self, other: "Subspace") -> "Subspace":
        funcs = self.annihilator() + other.annihilator()
        return Subspace(self.ambient, nullspace(funcs, self.ambient))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def rref(rows, ncols=None):
    """Reduced row echelon basis and pivot columns of the row span."""
    rows = list(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    s = Subspace(ncols, rows)
    return s.basis(), s.pivots()


def rank(rows, ncols=None) -> int:
    rows = list(rows)
    if not rows:
        return 0
    return Subspace(ncols if ncols is not None else len(rows[0]), rows).dim


def nullspace(rows, ncols: int):
    """Basis of ``{x : A x = 0}`` where ``A`` is given by its rows."""
    s = Subspace(ncols, rows)
    pivots = set(s._rows)
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        x = [0] * ncols
        x[f] = 1
        for p, row in s._rows.items():
            c = row[f]
            if c:
                x[p] = -c
        basis.append(x)
    return basis


def solve(rows, b):
    """One solution ``x`` of ``A x = b`` or None."""
    m = len(rows)
    if m == 0:
        return None if any(b) else []
    k = len(rows[0])
    aug = Subspace(k + 1, [list(r) + [bi] for r, bi in zip(rows, b)])
    if k in aug._rows:
        return None
    x = [0] * k
    for p, row in aug._rows.items():
        x[p] = row[k]
    return x


def mat_vec(a, v):
    return [sum((x * y for x, y in zip(row, v) if x and y), 0) for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_mul(a, b):
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col) if x and y), 0) for col in bt] for row in a]


def identity(n, one=1):
    return [[one if i == j else 0 for j in range(n)] for i in range(n)]


def kron(u, v):
    return [a * b if a and b else 0 for a in u for b in v]


def inverse(a):
    """Inverse of a square matrix; raises ValueError if singular."""
    n = len(a)
    aug = Subspace(2 * n, [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)])
    if sorted(aug._rows) != list(range(n)):
        raise ValueError("matrix is singular")
    return [aug._rows[i][n:] for i in range(n)]


def columns_to_rows(columns, nrows):
    """Matrix (list of rows) whose columns are the given vectors."""
    return [[col[r] for col in columns] for r in range(nrows)]
