"""Exact linear algebra over the rationals, plus sparse multivariate polynomials.

Every scalar is a ``fractions.Fraction``; nothing in this package ever
touches floating point. Row spaces are kept in reduced row echelon form,
which is a unique normal form and therefore doubles as a hashable key for
subspace identity -- no tolerances anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Rational = Fraction

Vector = tuple[Fraction, ...]


def coordinate_names(n: int) -> tuple[str, ...]:
    """Default polynomial variable names x1..xn."""
    return tuple(f"x{i}" for i in range(1, n + 1))


def _to_fractions(row: Iterable) -> Vector:
    return tuple(Fraction(x) for x in row)


@dataclass(frozen=True)
class RowSpace:
    """A subspace of rational row vectors, stored as its unique RREF basis.

    ``matrix`` has no zero rows, so ``rank == len(matrix)``. Two RowSpaces
    are equal iff their matrices agree entrywise, hence value equality is
    subspace equality.
    """

    matrix: tuple[Vector, ...]
    ambient_dim: int

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x != 0) for row in self.matrix)

    def reduce(self, vector: Sequence) -> Vector:
        """Residual of ``vector`` after eliminating every pivot coordinate."""
        v = list(_to_fractions(vector))
        if len(v) != self.ambient_dim:
            raise ValueError(
                f"vector has length {len(v)}, expected {self.ambient_dim}")
        for row, p in zip(self.matrix, self.pivots):
            c = v[p]
            if c != 0:
                # row is zero left of its pivot, so only j >= p changes
                for j in range(p, self.ambient_dim):
                    v[j] -= c * row[j]
        return tuple(v)

    def contains(self, vector: Sequence) -> bool:
        return all(x == 0 for x in self.reduce(vector))

    def contains_space(self, other: RowSpace) -> bool:
        return all(self.contains(row) for row in other.matrix)

    def coordinates(self, vector: Sequence) -> Vector | None:
        """Coefficients of ``vector`` on the RREF rows, or None if outside."""
        if not self.contains(vector):
            return None
        v = _to_fractions(vector)
        return tuple(v[p] for p in self.pivots)

    def extended(self, vectors: Iterable[Sequence]) -> RowSpace:
        """Join with the span of additional vectors."""
        rows = [list(r) for r in self.matrix] + [list(v) for v in vectors]
        space, _ = rref(rows, self.ambient_dim)
        return space


def rref(matrix: Sequence[Sequence], ambient_dim: int | None = None) -> tuple[RowSpace, int]:
    """Unique reduced row echelon form, zero rows dropped.

    Returns the canonical RowSpace together with its rank. ``ambient_dim``
    may be omitted when the matrix has at least one row.
    """
    rows = [list(_to_fractions(r)) for r in matrix]
    if ambient_dim is None:
        if not rows:
            raise ValueError("ambient_dim is required when the matrix has no rows")
        ambient_dim = len(rows[0])
    for r in rows:
        if len(r) != ambient_dim:
            raise ValueError("ragged matrix: rows of unequal length")
    pivot_row = 0
    for col in range(ambient_dim):
        pr = next((i for i in range(pivot_row, len(rows)) if rows[i][col] != 0), None)
        if pr is None:
            continue
        rows[pivot_row], rows[pr] = rows[pr], rows[pivot_row]
        lead = rows[pivot_row][col]
        if lead != 1:
            rows[pivot_row] = [x / lead for x in rows[pivot_row]]
        for i in range(len(rows)):
            if i != pivot_row and rows[i][col] != 0:
                c = rows[i][col]
                rows[i] = [a - c * b for a, b in zip(rows[i], rows[pivot_row])]
        pivot_row += 1
        if pivot_row == len(rows):
            break
    body = tuple(tuple(r) for r in rows[:pivot_row])
    return RowSpace(body, ambient_dim), pivot_row


def solve_combination(rows: Sequence[Sequence], target: Sequence) -> Vector | None:
    """Coefficients c with sum(c[i] * rows[i]) == target, or None.

    Free coefficients are set to zero, so the answer is unique whenever the
    given rows are linearly independent.
    """
    k = len(rows)
    tgt = _to_fractions(target)
    n = len(tgt)
    cols = [list(_to_fractions(r)) for r in rows]
    for c in cols:
        if len(c) != n:
            raise ValueError("ragged matrix: rows of unequal length")
    aug = [[cols[i][j] for i in range(k)] + [tgt[j]] for j in range(n)]
    space, _ = rref(aug, k + 1)
    sol = [Fraction(0)] * k
    for row, p in zip(space.matrix, space.pivots):
        if p == k:
            return None  # pivot in the target column: inconsistent system
        sol[p] = row[k]
    return tuple(sol)


class MultiPoly:
    """Sparse polynomial in named variables with exact rational coefficients.

    ``terms`` maps exponent tuples (one slot per variable) to nonzero
    coefficients. Instances are immutable by convention; every operation
    returns a fresh object. Printing uses total-degree-then-lex term order
    so output is reproducible.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Iterable[str], terms=None):
        self.variables = tuple(variables)
        nv = len(self.variables)
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for exps, coeff in items:
                exps = tuple(int(e) for e in exps)
                if len(exps) != nv or any(e < 0 for e in exps):
                    raise ValueError(f"bad exponent vector {exps} for {nv} variables")
                c = clean.get(exps, Fraction(0)) + Fraction(coeff)
                if c:
                    clean[exps] = c
                else:
                    clean.pop(exps, None)
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, variables: Iterable[str]) -> MultiPoly:
        return cls(variables)

    @classmethod
    def constant(cls, value, variables: Iterable[str]) -> MultiPoly:
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): Fraction(value)})

    @classmethod
    def variable(cls, index: int, variables: Iterable[str]) -> MultiPoly:
        variables = tuple(variables)
        exps = [0] * len(variables)
        exps[index] = 1
        return cls(variables, {tuple(exps): Fraction(1)})

    @classmethod
    def linear(cls, coeffs: Sequence, variables: Iterable[str]) -> MultiPoly:
        """The linear form sum(coeffs[j] * x_j)."""
        variables = tuple(variables)
        if len(coeffs) != len(variables):
            raise ValueError("coefficient count does not match variable count")
        terms = {}
        for j, c in enumerate(coeffs):
            c = Fraction(c)
            if c:
                exps = [0] * len(variables)
                exps[j] = 1
                terms[tuple(exps)] = c
        return cls(variables, terms)

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def total_degree(self) -> int:
        """Maximal term degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous_degree(self) -> int | None:
        """The common degree of all terms, or None if inhomogeneous/zero."""
        degs = {sum(e) for e in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    # -- arithmetic ----------------------------------------------------

    def _check(self, other: MultiPoly) -> None:
        if self.variables != other.variables:
            raise ValueError("polynomials live in different variable sets")

    def _coerce(self, other) -> MultiPoly | None:
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(other, self.variables)
        return None

    def __add__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            nc = terms.get(e, Fraction(0)) + c
            if nc:
                terms[e] = nc
            else:
                terms.pop(e, None)
        out = MultiPoly(self.variables)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        out = MultiPoly(self.variables)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> MultiPoly:
        return (-self) + other

    def __mul__(self, other) -> MultiPoly:
        if isinstance(other, (int, Fraction)):
            scale = Fraction(other)
            out = MultiPoly(self.variables)
            if scale:
                out.terms = {e: c * scale for e, c in self.terms.items()}
            return out
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                nc = terms.get(e, Fraction(0)) + c1 * c2
                if nc:
                    terms[e] = nc
                else:
                    terms.pop(e, None)
        out = MultiPoly(self.variables)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPoly:
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = MultiPoly.constant(1, self.variables)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.variables, frozenset(self.terms.items())))

    # -- division ------------------------------------------------------

    def _lead(self) -> tuple[tuple[int, ...], Fraction]:
        e = max(self.terms, key=lambda t: (sum(t), t))
        return e, self.terms[e]

    def div_exact(self, divisor: MultiPoly) -> MultiPoly | None:
        """Exact quotient self / divisor, or None when it does not divide.

        Greedy graded-lex reduction: if at any point the remainder's lead
        monomial is not a multiple of the divisor's, no quotient exists.
        """
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        de, dc = divisor._lead()
        rem = dict(self.terms)
        quot: dict[tuple[int, ...], Fraction] = {}
        while rem:
            e = max(rem, key=lambda t: (sum(t), t))
            qe = tuple(a - b for a, b in zip(e, de))
            if any(x < 0 for x in qe):
                return None
            qc = rem[e] / dc
            quot[qe] = quot.get(qe, Fraction(0)) + qc
            for ee, cc in divisor.terms.items():
                t = tuple(a + b for a, b in zip(qe, ee))
                nc = rem.get(t, Fraction(0)) - qc * cc
                if nc:
                    rem[t] = nc
                else:
                    rem.pop(t, None)
        out = MultiPoly(self.variables)
        out.terms = {e: c for e, c in quot.items() if c}
        return out

    # -- printing --------------------------------------------------------

    def _sorted_terms(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        for e in sorted(self.terms, key=lambda t: (sum(t), t), reverse=True):
            yield e, self.terms[e]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self._sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}"
                for v, k in zip(self.variables, e) if k)
            a = abs(c)
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


def det_poly(matrix: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Exact determinant of a square MultiPoly matrix.

    Minor expansion along rows, memoized on the surviving column subset,
    so the cost is O(2^n) polynomial operations instead of n!.
    """
    n = len(matrix)
    for row in matrix:
        if len(row) != n:
            raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return MultiPoly.constant(1, ())
    variables = matrix[0][0].variables
    one = MultiPoly.constant(1, variables)
    zero = MultiPoly.zero(variables)
    memo: dict[tuple[int, ...], MultiPoly] = {(): one}

    def minor(cols: tuple[int, ...]) -> MultiPoly:
        if cols in memo:
            return memo[cols]
        i = n - len(cols)
        acc = zero
        for j, c in enumerate(cols):
            a = matrix[i][c]
            if a.is_zero():
                continue
            sub = minor(cols[:j] + cols[j + 1:])
            if j % 2 == 0:
                acc = acc + a * sub
            else:
                acc = acc - a * sub
        memo[cols] = acc
        return acc

    return minor(tuple(range(n)))
