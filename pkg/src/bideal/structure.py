"""Structure theory: irreducible decomposition, exponents, freeness, derivations.

The decomposition uses matroid connectivity over the forms: fundamental
circuits of one fixed basis, merged by union-find, give exactly the
connected components. Freeness is three-valued -- the search never claims
NotFree without characteristic-polynomial evidence, and never claims Free
without a checkable certificate.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .arrangement import Arrangement, delete, restrict
from .errors import EmptyArrangementError, NotLogarithmicError
from .lattice import IntPoly, char_poly
from .linalg import (
    MultiPoly,
    Vector,
    coordinate_names,
    det_poly,
    rref,
    solve_combination,
)


# ---------------------------------------------------------------------------
# irreducible decomposition


@dataclass(frozen=True)
class IrreducibleDecomposition:
    """Partition of {1..p} into the connected components of the form matroid.

    Rank is additive across blocks, and each block's sub-arrangement is
    connected; e0 is the number of inessential directions.
    """

    blocks: tuple[tuple[int, ...], ...]
    e0: int

    @property
    def is_irreducible(self) -> bool:
        return len(self.blocks) == 1


def irreducible_components(A: Arrangement) -> IrreducibleDecomposition:
    """Connected components of the linear matroid on the forms.

    Greedily pick a basis; every non-basis form has a unique expression in
    it, whose support is its fundamental circuit. Union-find over all
    fundamental circuits yields the component partition: no circuit ever
    crosses two true components, and if no circuit crosses a part then the
    part splits off as a direct summand.
    """
    if A.p == 0:
        raise EmptyArrangementError("decomposition needs at least one hyperplane")
    vectors = A.form_vectors()
    space, _ = rref([], A.ambient_dim)
    basis: list[int] = []
    for i, v in enumerate(vectors):
        if not space.contains(v):
            space = space.extended([v])
            basis.append(i)

    parent = list(range(A.p))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    basis_rows = [vectors[b] for b in basis]
    for e in range(A.p):
        if e in basis:
            continue
        coeffs = solve_combination(basis_rows, vectors[e])
        assert coeffs is not None  # e lies in the span of the basis
        for k, c in enumerate(coeffs):
            if c != 0:
                union(e, basis[k])

    groups: dict[int, list[int]] = {}
    for i in range(A.p):
        groups.setdefault(find(i), []).append(i + 1)
    blocks = tuple(sorted((tuple(sorted(g)) for g in groups.values())))
    return IrreducibleDecomposition(blocks, A.ambient_dim - space.rank)


# ---------------------------------------------------------------------------
# exponents


@dataclass(frozen=True)
class ExponentMultiset:
    """Multiset of n nonnegative integers summing to p."""

    exponents: tuple[int, ...]

    def count_of(self, value: int) -> int:
        return self.exponents.count(value)


@dataclass(frozen=True)
class NonIntegralRootsReport:
    """Witness that the characteristic polynomial does not split over the
    nonnegative integers; doubles as not-free evidence."""

    integer_roots: tuple[int, ...]
    remainder: IntPoly


@lru_cache(maxsize=None)
def exponents(A: Arrangement) -> ExponentMultiset | NonIntegralRootsReport:
    """Exponents via integral factorization of the characteristic polynomial.

    All integer roots lie in [0, p]: the polynomial has no negative roots
    (its coefficients alternate in sign) and the roots sum to p, so the
    search range is complete. If a nontrivial factor survives, the report
    carries it along with whatever integer roots were extracted.
    """
    poly = char_poly(A)
    roots: list[int] = []
    for r in range(A.p + 1):
        while poly.degree > 0 and poly(r) == 0:
            quotient = poly.divide_root(r)
            assert quotient is not None
            poly = quotient
            roots.append(r)
    if poly.degree == 0:
        return ExponentMultiset(tuple(roots))
    return NonIntegralRootsReport(tuple(roots), poly)


# ---------------------------------------------------------------------------
# freeness


class Outcome(Enum):
    FREE = "free"
    NOT_FREE = "not_free"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class RankAtMostTwo:
    """Certificate: arrangements of essential rank <= 2 are always free."""

    rank: int


@dataclass(frozen=True)
class InductiveChain:
    """Certificate tree for inductive freeness.

    ``form`` is the coefficient vector removed at this step (None at the
    empty-arrangement leaf) and ``index`` its 1-based position in the
    node's canonically sorted form list. ``deleted`` and ``restricted``
    certify the two smaller arrangements; the exponents recorded at each
    node satisfy exponents(restricted) subset-of exponents(deleted).
    """

    form: Vector | None
    index: int | None
    exponents: tuple[int, ...]
    deleted: InductiveChain | None
    restricted: InductiveChain | None

    @property
    def length(self) -> int:
        """Number of deletion steps along the spine down to the empty leaf."""
        node, steps = self, 0
        while node.deleted is not None:
            steps += 1
            node = node.deleted
        return steps


@dataclass(frozen=True)
class SaitoWitness:
    """Certificate: a derivation basis whose determinant is c * Q."""

    basis: tuple[Derivation, ...]
    scale: Fraction


@dataclass(frozen=True)
class FreenessVerdict:
    outcome: Outcome
    certificate: RankAtMostTwo | InductiveChain | SaitoWitness | None = None
    evidence: NonIntegralRootsReport | None = None

    def __post_init__(self):
        if self.outcome is Outcome.FREE and self.certificate is None:
            raise ValueError("a Free verdict requires a certificate")
        if self.outcome is Outcome.NOT_FREE and self.evidence is None:
            raise ValueError("a NotFree verdict requires evidence")
        if self.outcome is Outcome.UNKNOWN and (
                self.certificate is not None or self.evidence is not None):
            raise ValueError("an Unknown verdict carries nothing")


class _BudgetExhausted(Exception):
    pass


def _canonical(A: Arrangement) -> Arrangement:
    forms = tuple(sorted(A.forms, key=lambda f: f.coeffs))
    return Arrangement(A.ambient_dim, forms, None)


def _multiset_subset(small: Sequence[int], large: Sequence[int]) -> bool:
    return not (Counter(small) - Counter(large))


def _inductive_search(A: Arrangement, budget: list[int],
                      memo: dict) -> InductiveChain | None:
    """Memoized search for an inductive-freeness certificate.

    A is inductively free iff it is empty, or some form i has both
    delete(A, i) and restrict(A, i) inductively free with
    exponents(restrict) contained in exponents(delete) as multisets.
    Candidates are tried in form order; sub-arrangements are memoized by
    their canonical (sorted, label-free) form list, and each distinct
    expansion spends one unit of budget.
    """
    key = (A.ambient_dim, tuple(f.coeffs for f in A.forms))
    if key in memo:
        return memo[key]
    if budget[0] <= 0:
        raise _BudgetExhausted
    budget[0] -= 1

    exps = exponents(A)
    if isinstance(exps, NonIntegralRootsReport):
        memo[key] = None
        return None
    if A.p == 0:
        leaf = InductiveChain(None, None, exps.exponents, None, None)
        memo[key] = leaf
        return leaf

    result = None
    for i in range(1, A.p + 1):
        smaller = delete(A, i)
        induced = restrict(A, i)
        exp_d = exponents(smaller)
        exp_r = exponents(induced)
        if isinstance(exp_d, NonIntegralRootsReport):
            continue
        if isinstance(exp_r, NonIntegralRootsReport):
            continue
        if not _multiset_subset(exp_r.exponents, exp_d.exponents):
            continue
        chain_r = _inductive_search(_canonical(induced), budget, memo)
        if chain_r is None:
            continue
        chain_d = _inductive_search(_canonical(smaller), budget, memo)
        if chain_d is None:
            continue
        result = InductiveChain(A.forms[i - 1].coeffs, i, exps.exponents,
                                chain_d, chain_r)
        break
    memo[key] = result
    return result


@lru_cache(maxsize=None)
def freeness(A: Arrangement, depth_limit: int = 10_000) -> FreenessVerdict:
    """Three-valued freeness test with certificates.

    Tried in order: (a) essential rank <= 2 is always free; (b) a
    characteristic polynomial without a full nonnegative-integer root
    multiset proves not-free; (c) a memoized inductive search over
    deletions and restrictions. Exhausting the search space without a
    chain, or spending more than ``depth_limit`` node expansions, yields
    Unknown -- never a wrong answer.
    """
    r = A.rank()
    if r <= 2:
        return FreenessVerdict(Outcome.FREE, certificate=RankAtMostTwo(r))
    exps = exponents(A)
    if isinstance(exps, NonIntegralRootsReport):
        return FreenessVerdict(Outcome.NOT_FREE, evidence=exps)
    try:
        chain = _inductive_search(_canonical(A), [depth_limit], {})
    except _BudgetExhausted:
        return FreenessVerdict(Outcome.UNKNOWN)
    if chain is None:
        return FreenessVerdict(Outcome.UNKNOWN)
    return FreenessVerdict(Outcome.FREE, certificate=chain)


# ---------------------------------------------------------------------------
# derivations


@dataclass(frozen=True)
class Derivation:
    """Polynomial vector field sum(a_j * d/dx_j) with exact coefficients."""

    coeffs: tuple[MultiPoly, ...]

    @property
    def ambient_dim(self) -> int:
        return len(self.coeffs)

    @property
    def degree(self) -> int | None:
        """Homogeneity degree, or None when inhomogeneous.

        Zero coefficients are compatible with any degree; the all-zero
        derivation counts as homogeneous of degree 0.
        """
        degs = set()
        for a in self.coeffs:
            if a.is_zero():
                continue
            d = a.homogeneous_degree()
            if d is None:
                return None
            degs.add(d)
        if not degs:
            return 0
        if len(degs) == 1:
            return degs.pop()
        return None

    def __str__(self) -> str:
        names = coordinate_names(self.ambient_dim)
        parts = []
        for a, name in zip(self.coeffs, names):
            if a.is_zero():
                continue
            parts.append(_scaled_symbol(a, f"D{name}"))
        return " + ".join(parts) if parts else "0"


def _scaled_symbol(poly: MultiPoly, symbol: str) -> str:
    """Render poly * symbol, parenthesizing multi-term coefficients."""
    if poly.is_constant() and poly.constant_value() == 1:
        return symbol
    body = str(poly)
    if len(poly.terms) > 1:
        body = f"({body})"
    return f"{body}*{symbol}"


def euler_derivation(n: int) -> Derivation:
    """The Euler field sum(x_j * d/dx_j)."""
    return power_derivation(n, 1)


def power_derivation(n: int, k: int) -> Derivation:
    """The field sum(x_j^k * d/dx_j); k = 0..n-1 gives the classical
    homogeneous basis for the braid family."""
    names = coordinate_names(n)
    coeffs = tuple(
        MultiPoly.variable(j, names) ** k for j in range(n))
    return Derivation(coeffs)


@dataclass(frozen=True)
class TildeOperator:
    """A logarithmic derivation packaged with its s-linear correction.

    Represents base - sum(b_j * s_j) where base(l_j) = b_j * l_j exactly;
    these are the order-one operators annihilating l_1^s_1 ... l_p^s_p.
    """

    base: Derivation
    s_coeffs: tuple[MultiPoly, ...]

    def __str__(self) -> str:
        parts = []
        for j, b in enumerate(self.s_coeffs, start=1):
            if b.is_zero():
                continue
            parts.append(_scaled_symbol(b, f"s{j}"))
        head = str(self.base)
        if not parts:
            return head
        return f"{head} - ({' + '.join(parts)})"


def check_logarithmic(A: Arrangement, d: Derivation) -> tuple[MultiPoly, ...] | int:
    """Per-form logarithmic test: divide d(l_j) exactly by l_j.

    Returns the tuple of quotients b_j on success, or the 1-based index of
    the first form where exact division fails. Since each l_j is linear,
    d(l_j) is just the coefficient combination sum(a_k * l_j[k]).
    """
    if d.ambient_dim != A.ambient_dim:
        raise ValueError("derivation and arrangement dimensions differ")
    names = coordinate_names(A.ambient_dim)
    out = []
    for j, form in enumerate(A.forms, start=1):
        value = MultiPoly.zero(names)
        for a, c in zip(d.coeffs, form.coeffs):
            if c != 0:
                value = value + a * c
        quotient = value.div_exact(MultiPoly.linear(form.coeffs, names))
        if quotient is None:
            return j
        out.append(quotient)
    return tuple(out)


def defining_polynomial(A: Arrangement) -> MultiPoly:
    """Q = product of the (normalized) defining forms."""
    names = coordinate_names(A.ambient_dim)
    q = MultiPoly.constant(1, names)
    for form in A.forms:
        q = q * MultiPoly.linear(form.coeffs, names)
    return q


def saito_check(A: Arrangement, basis: Sequence[Derivation]) -> tuple[bool, Fraction | None]:
    """Determinant test for a derivation basis.

    All candidates must be logarithmic (otherwise NotLogarithmicError with
    the offending position). Accepts iff det(a_ij) = c * Q for a nonzero
    rational c, in which case the basis freely generates the module of
    logarithmic derivations and (True, c) is returned. No homogeneity is
    required: exact division does the degree bookkeeping by itself.
    """
    n = A.ambient_dim
    if len(basis) != n:
        raise ValueError(f"need exactly {n} derivations, got {len(basis)}")
    for k, d in enumerate(basis, start=1):
        res = check_logarithmic(A, d)
        if isinstance(res, int):
            raise NotLogarithmicError(
                f"derivation {k} is not logarithmic: fails at form {res}",
                derivation_index=k, form_index=res)
    det = det_poly([list(d.coeffs) for d in basis])
    quotient = det.div_exact(defining_polynomial(A))
    if quotient is None or not quotient.is_constant():
        return False, None
    c = quotient.constant_value()
    if c == 0:
        return False, None
    return True, c


def tilde(A: Arrangement, d: Derivation) -> TildeOperator:
    """Attach the s-linear correction to a logarithmic derivation."""
    res = check_logarithmic(A, d)
    if isinstance(res, int):
        raise NotLogarithmicError(
            f"derivation is not logarithmic: fails at form {res}",
            form_index=res)
    return TildeOperator(d, res)


def annihilator_presentation(A: Arrangement,
                             basis: Sequence[Derivation]) -> tuple[TildeOperator, ...]:
    """Generators of the annihilator of l_1^s_1 ... l_p^s_p.

    For a basis accepted by the Saito test, the tilde transforms of the
    basis generate the annihilator over the operator ring; this returns
    them as a display artifact (no operator algebra is computed).
    """
    accepted, _ = saito_check(A, basis)
    if not accepted:
        raise ValueError(
            "determinant is not a nonzero scalar multiple of the defining "
            "polynomial; the given derivations are not a basis")
    return tuple(tilde(A, d) for d in basis)
