"""Bernstein ideal generator of a free arrangement, bounds, symmetry, slopes.

Everything here is a product of integer-affine linear factors in the
variables s_1..s_p, kept in factored form. A factor (sum_{i in J} s_i + c)
is stored as its support J and the constant c. The flats that matter are
those whose localization is irreducible (a single matroid block); the
bottom flat, with empty J, never contributes.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .arrangement import Arrangement, localize
from .errors import AsymmetryError, FreenessRequiredError, NotIrreducibleError
from .lattice import Flat, intersection_lattice
from .structure import FreenessVerdict, Outcome, irreducible_components


@dataclass(frozen=True)
class LinearFactor:
    """The factor (sum_{i in support} s_i + constant), support sorted 1-based."""

    support: tuple[int, ...]
    constant: int

    def __post_init__(self):
        if not self.support:
            raise ValueError("a factor needs a nonempty support")
        if tuple(sorted(set(self.support))) != self.support:
            raise ValueError("support must be sorted and duplicate-free")
        if self.constant < 1:
            raise ValueError("constant must be a positive integer")

    def sort_key(self):
        return (len(self.support), self.support, self.constant)

    def render(self, fmt: str = "s{}") -> str:
        body = "+".join(fmt.format(i) for i in self.support)
        return f"({body}+{self.constant})"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class FactoredSPolynomial:
    """A multiset of linear factors in s_1..s_p, canonically ordered.

    Factors sort by (support size, support, constant) so that singleton
    factors print first; equality is multiset equality.
    """

    factors: tuple[LinearFactor, ...]
    variable_count: int

    @classmethod
    def from_factors(cls, factors: Iterable[LinearFactor],
                     variable_count: int) -> FactoredSPolynomial:
        return cls(tuple(sorted(factors, key=LinearFactor.sort_key)),
                   variable_count)

    def factor_counter(self) -> Counter:
        return Counter((f.support, f.constant) for f in self.factors)

    def support_sets(self) -> set[frozenset[int]]:
        return {frozenset(f.support) for f in self.factors}

    def render(self, fmt: str = "s{}") -> str:
        if not self.factors:
            return "1"
        return "".join(f.render(fmt) for f in self.factors)

    def __str__(self) -> str:
        return self.render()


def _require_free(verdict: FreenessVerdict | None, assume_free: bool) -> None:
    if assume_free:
        return
    if verdict is None:
        raise FreenessRequiredError("no freeness verdict supplied")
    if verdict.outcome is Outcome.NOT_FREE:
        raise FreenessRequiredError(
            "characteristic polynomial has non-integral roots")
    if verdict.outcome is not Outcome.FREE:
        raise FreenessRequiredError(
            "freeness could not be certified (pass an explicit override to proceed)")


def _contributing_flats(A: Arrangement) -> list[Flat]:
    """Flats with nonempty J whose localization is a single matroid block."""
    out = []
    for flat in intersection_lattice(A):
        if not flat.J:
            continue
        if irreducible_components(localize(A, flat.J)).is_irreducible:
            out.append(flat)
    return out


def bernstein_generator(A: Arrangement, verdict: FreenessVerdict | None = None,
                        *, assume_free: bool = False) -> FactoredSPolynomial:
    """Principal generator of the Bernstein ideal of a free arrangement.

    One bundle of factors per irreducible-localization flat X: the factors
    (sum_{i in J(X)} s_i + r(X) + j) for j = 0 .. 2(|J(X)| - r(X)). The
    result is reduced -- distinct flats have distinct supports, and within
    a flat the constants are distinct.

    Requires a Free verdict (or ``assume_free=True``); on anything else a
    FreenessRequiredError is raised, since the product below is only known
    to generate the ideal in the free case.
    """
    _require_free(verdict, assume_free)
    factors = []
    for flat in _contributing_flats(A):
        width = 2 * (len(flat.J) - flat.codim)
        for j in range(width + 1):
            factors.append(LinearFactor(flat.J, flat.codim + j))
    return FactoredSPolynomial.from_factors(factors, A.p)


def lower_bound_irreducible(A: Arrangement) -> FactoredSPolynomial:
    """Divisor forced by the top flat of a free irreducible arrangement.

    The product over j = 0 .. 2(p - r) of (s_1 + ... + s_p + r + j), where
    r is the rank of the forms (the codimension of their common
    intersection, i.e. the essential dimension). Every member of the
    Bernstein ideal is a multiple of this product.
    """
    dec = irreducible_components(A)
    if not dec.is_irreducible:
        raise NotIrreducibleError(
            f"arrangement splits into {len(dec.blocks)} blocks")
    r = A.rank()
    support = tuple(range(1, A.p + 1))
    factors = [LinearFactor(support, r + j) for j in range(2 * (A.p - r) + 1)]
    return FactoredSPolynomial.from_factors(factors, A.p)


def evident_multiple(A: Arrangement, N: int | None = None) -> FactoredSPolynomial:
    """A Bernstein-ideal member that exists without any freeness hypothesis.

    Same flats as the generator, but each contributes constants
    r(X) + 0 .. r(X) + N with one shared truncation level N. The default
    N = max over flats of 2(|J(X)| - r(X)) is the smallest uniform level
    at which the generator's factor multiset is contained in this one.
    """
    flats = _contributing_flats(A)
    if N is None:
        N = max((2 * (len(f.J) - f.codim) for f in flats), default=0)
    if N < 0:
        raise ValueError("truncation level must be nonnegative")
    factors = []
    for flat in flats:
        for j in range(N + 1):
            factors.append(LinearFactor(flat.J, flat.codim + j))
    return FactoredSPolynomial.from_factors(factors, A.p)


def symmetry_check(F: FactoredSPolynomial) -> int:
    """Verify invariance under s_i -> -s_i - 2 and return the overall sign.

    Each factor (sum_J s + c) maps to -(sum_J s + 2|J| - c), so the check
    is that the multiset of (support, 2|support| - constant) equals the
    original multiset; the pulled-out sign is (-1)^(number of factors).
    A mismatch raises AsymmetryError -- on a generator that means a bug.
    """
    original = F.factor_counter()
    transformed = Counter(
        (f.support, 2 * len(f.support) - f.constant) for f in F.factors)
    if original != transformed:
        missing = transformed - original
        raise AsymmetryError(
            f"factor multiset is not reflection-symmetric; unmatched: "
            f"{sorted(missing.elements())}")
    return -1 if len(F.factors) % 2 else 1


@dataclass(frozen=True)
class UnivariateFactored:
    """Product of factors (m*s + c) in a single variable s, with multiplicity."""

    factors: tuple[tuple[int, int], ...]

    @classmethod
    def from_factors(cls, factors: Iterable[tuple[int, int]]) -> UnivariateFactored:
        return cls(tuple(sorted(factors)))

    def render(self, var: str = "s") -> str:
        if not self.factors:
            return "1"
        parts = []
        for (m, c), count in sorted(Counter(self.factors).items()):
            head = var if m == 1 else f"{m}{var}"
            body = f"({head}+{c})"
            parts.append(body if count == 1 else f"{body}^{count}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.render()


def specialize(F: FactoredSPolynomial, mode: str = "all_equal") -> UnivariateFactored:
    """Set every s_i to a single s: (sum_J s + c) becomes (|J|*s + c).

    Only the all_equal mode exists. This is a convenience output; no claim
    is made that it equals the classical one-variable b-function.
    """
    if mode != "all_equal":
        raise ValueError(f"unknown specialization mode {mode!r}")
    return UnivariateFactored.from_factors(
        (len(f.support), f.constant) for f in F.factors)


@dataclass(frozen=True)
class SlopeSet:
    """Supports J of the slope hyperplanes sum_{i in J} s_i = 0."""

    slopes: tuple[tuple[int, ...], ...]

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[int]]) -> SlopeSet:
        keys = {tuple(sorted(s)) for s in sets}
        return cls(tuple(sorted(keys, key=lambda t: (len(t), t))))

    def as_frozensets(self) -> set[frozenset[int]]:
        return {frozenset(s) for s in self.slopes}

    def __iter__(self):
        return iter(self.slopes)

    def __len__(self) -> int:
        return len(self.slopes)


def slopes(A: Arrangement, verdict: FreenessVerdict | None = None,
           *, assume_free: bool = False) -> SlopeSet:
    """Slope supports of the characteristic variety of a free arrangement.

    Exactly the J-sets of the flats with irreducible localization -- the
    same index sets that carry the generator's factors.
    """
    _require_free(verdict, assume_free)
    return SlopeSet.from_sets(flat.J for flat in _contributing_flats(A))
