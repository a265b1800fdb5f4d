"""Monomial orders as sort keys on exponent tuples.

A larger key means a larger monomial.  The projective default is degrevlex
with ``X0`` as the smallest variable, so dehomogenizing a Groebner basis
keeps its leading terms.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["MonomialOrder", "degrevlex", "lex", "block_elimination"]


def _degrevlex_key(e, perm):
    # perm lists variable indices from most to least significant
    return (sum(e), tuple(-e[perm[k]] for k in range(len(perm) - 1, -1, -1)))


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on ``nvars`` variables.

    ``kind`` is one of ``"degrevlex"``, ``"lex"`` or ``"block"``.  For
    ``degrevlex`` the variable listed in ``last`` (if any) is made the
    smallest one.  A ``block`` order eliminates the first ``front`` variables:
    it compares their degrevlex key first and the remaining block after.
    """

    kind: str
    nvars: int
    front: int = 0
    last: int | None = None

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and not 0 < self.front < self.nvars:
            raise ValueError("block order needs 0 < front < nvars")

    @property
    def perm(self):
        idx = list(range(self.nvars))
        if self.last is not None:
            idx.remove(self.last)
            idx.append(self.last)
        return tuple(idx)

    @property
    def is_graded(self) -> bool:
        return self.kind == "degrevlex"

    def key_function(self):
        """Return a fast ``exponents -> key`` callable for this order."""
        if self.kind == "lex":
            perm = self.perm
            return lambda e: tuple(e[i] for i in perm)
        if self.kind == "degrevlex":
            perm = self.perm
            if perm == tuple(range(self.nvars)):
                return lambda e: (sum(e), tuple(-x for x in reversed(e)))
            return lambda e: _degrevlex_key(e, perm)
        f = self.front
        rest = tuple(range(self.nvars - f))
        if self.last is not None:
            rest = tuple(i for i in rest if i != self.last - f) + (self.last - f,)
        head = tuple(range(f))
        return lambda e: (_degrevlex_key(e[:f], head), _degrevlex_key(e[f:], rest))

    def key(self, e):
        return self.key_function()(e)


def degrevlex(nvars: int, last: int | None = None) -> MonomialOrder:
    return MonomialOrder("degrevlex", nvars, last=last)


def lex(nvars: int) -> MonomialOrder:
    return MonomialOrder("lex", nvars)


def block_elimination(nvars: int, front: int, last: int | None = None) -> MonomialOrder:
    return MonomialOrder("block", nvars, front=front, last=last)
