"""Intersection lattice, Moebius function and characteristic polynomial.

Flats are keyed by the canonical RREF of the span of their defining forms,
so deduplication and the containment order are exact dictionary operations.
For a central arrangement every intersection of hyperplanes is nonempty,
hence the lattice is the closure of the hyperplanes under joins.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arrangement import Arrangement
from .linalg import RowSpace, rref


@dataclass(frozen=True)
class Flat:
    """One element of the intersection lattice.

    ``space`` is the row space spanned by the forms vanishing on the flat,
    ``J`` the sorted 1-based indices of those forms, ``codim`` the rank of
    the span (the codimension of the flat as a subspace), and ``mobius``
    the Moebius value relative to the bottom flat.
    """

    space: RowSpace
    J: tuple[int, ...]
    codim: int
    mobius: int


@dataclass(frozen=True)
class IntersectionLattice:
    ambient_dim: int
    flats: tuple[Flat, ...]

    @property
    def bottom(self) -> Flat:
        return self.flats[0]

    def __iter__(self):
        return iter(self.flats)

    def __len__(self) -> int:
        return len(self.flats)

    def flat_with_J(self, J) -> Flat | None:
        key = tuple(sorted(J))
        return next((f for f in self.flats if f.J == key), None)


@lru_cache(maxsize=None)
def intersection_lattice(A: Arrangement) -> IntersectionLattice:
    """All nonempty intersections of subfamilies of hyperplanes.

    Fixpoint closure: seed with the whole space, then repeatedly join the
    known flats with each single form's span, canonicalizing through RREF
    and deduplicating, until stable. J-sets follow by membership tests,
    and the Moebius values by the usual top-down recursion (containment of
    row spaces is containment of J-sets, so subset tests suffice).

    Flats are sorted by (codim, J) and the bottom flat comes first.
    """
    n = A.ambient_dim
    vectors = A.form_vectors()
    bottom, _ = rref([], n)
    spaces = {bottom}
    frontier = [bottom]
    while frontier:
        fresh = []
        for sp in frontier:
            for v in vectors:
                if sp.contains(v):
                    continue
                joined = sp.extended([v])
                if joined not in spaces:
                    spaces.add(joined)
                    fresh.append(joined)
        frontier = fresh

    keyed = []
    for sp in spaces:
        J = tuple(i for i, v in enumerate(vectors, start=1) if sp.contains(v))
        keyed.append((sp.rank, J, sp))
    keyed.sort(key=lambda t: (t[0], t[1]))

    mobius: dict[tuple[int, ...], int] = {}
    flats = []
    for codim, J, sp in keyed:
        if codim == 0:
            mu = 1
        else:
            js = frozenset(J)
            mu = -sum(m for J2, m in mobius.items() if frozenset(J2) < js)
        mobius[J] = mu
        flats.append(Flat(sp, J, codim, mu))
    return IntersectionLattice(n, tuple(flats))


@dataclass(frozen=True)
class IntPoly:
    """Univariate integer polynomial, coefficients ascending by degree."""

    coeffs: tuple[int, ...]

    @classmethod
    def from_coeffs(cls, coeffs) -> IntPoly:
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return cls(tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divide_root(self, r: int) -> IntPoly | None:
        """Exact quotient by (t - r), or None when r is not a root."""
        if self.degree < 1:
            return None
        quot = [0] * self.degree
        acc = 0
        for k in range(self.degree, 0, -1):
            acc = acc * r + self.coeffs[k]
            quot[k - 1] = acc
        if acc * r + self.coeffs[0] != 0:
            return None
        return IntPoly(tuple(quot))

    def render(self, var: str = "t", power: str = "^{}") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                mono = ""
            elif k == 1:
                mono = var
            else:
                mono = var + power.format(k)
            a = abs(c)
            body = mono if (a == 1 and mono) else f"{a}{mono}"
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.render()


@lru_cache(maxsize=None)
def char_poly(A: Arrangement) -> IntPoly:
    """Characteristic polynomial: sum over flats of mobius * t^(dim flat).

    Monic of degree ambient_dim, with integer coefficients of alternating
    sign; it vanishes at t = 1 whenever the arrangement is nonempty.
    """
    n = A.ambient_dim
    coeffs = [0] * (n + 1)
    for flat in intersection_lattice(A):
        coeffs[n - flat.codim] += flat.mobius
    return IntPoly.from_coeffs(coeffs)
