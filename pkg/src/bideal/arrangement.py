"""Central hyperplane arrangements: construction, named families, surgery.

An arrangement is an ordered list of pairwise non-proportional rational
linear forms. The order matters: form i owns the variable s_i in every
downstream polynomial, so duplicates are an error rather than silently
merged. All indices in the public API are 1-based, matching the s_i
numbering used in output.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DuplicateHyperplaneError,
    InvalidFormError,
    InvalidIndexError,
    InvalidParameterError,
    NotAFlatError,
)
from .linalg import RowSpace, Vector, rref


def normalize_form(coeffs: Sequence) -> Vector:
    """Scale so the first nonzero coefficient is 1; reject the zero form."""
    v = tuple(Fraction(x) for x in coeffs)
    lead = next((x for x in v if x != 0), None)
    if lead is None:
        raise InvalidFormError("a linear form must be nonzero")
    if lead != 1:
        v = tuple(x / lead for x in v)
    return v


@dataclass(frozen=True)
class LinearForm:
    """A nonzero linear form, normalized so proportional forms compare equal."""

    coeffs: Vector

    @property
    def ambient_dim(self) -> int:
        return len(self.coeffs)

    def render(self, names: Sequence[str]) -> str:
        parts = []
        for c, name in zip(self.coeffs, names):
            if c == 0:
                continue
            a = abs(c)
            body = name if a == 1 else f"{a}*{name}"
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        from .linalg import coordinate_names

        return self.render(coordinate_names(self.ambient_dim))


@dataclass(frozen=True)
class Arrangement:
    """A central arrangement: ambient dimension plus ordered distinct forms."""

    ambient_dim: int
    forms: tuple[LinearForm, ...]
    labels: tuple[str, ...] | None = None

    @property
    def p(self) -> int:
        return len(self.forms)

    def form_vectors(self) -> list[Vector]:
        return [f.coeffs for f in self.forms]

    def label(self, i: int) -> str:
        """Display label of form i (1-based)."""
        if self.labels is not None:
            return self.labels[i - 1]
        return f"H{i}"

    def rank(self) -> int:
        if not self.forms:
            return 0
        _, r = rref(self.form_vectors(), self.ambient_dim)
        return r

    def span(self) -> RowSpace:
        space, _ = rref(self.form_vectors(), self.ambient_dim)
        return space


def make_arrangement(dim: int, raw_forms: Iterable[Sequence],
                     labels: Sequence[str] | None = None) -> Arrangement:
    """Build an arrangement from raw coefficient vectors.

    Forms are normalized but keep their input order (form i is the s_i
    variable). A zero form raises InvalidFormError; two proportional forms
    raise DuplicateHyperplaneError.
    """
    if dim < 0:
        raise InvalidFormError("ambient dimension must be nonnegative")
    forms: list[LinearForm] = []
    seen: dict[Vector, int] = {}
    for pos, raw in enumerate(raw_forms, start=1):
        raw = tuple(raw)
        if len(raw) != dim:
            raise InvalidFormError(
                f"form {pos} has length {len(raw)}, expected {dim}")
        v = normalize_form(raw)
        if v in seen:
            raise DuplicateHyperplaneError(
                f"forms {seen[v]} and {pos} define the same hyperplane")
        seen[v] = pos
        forms.append(LinearForm(v))
    if labels is not None:
        labels = tuple(str(s) for s in labels)
        if len(labels) != len(forms):
            raise ValueError("label count does not match form count")
    return Arrangement(dim, tuple(forms), labels)


FAMILY_NAMES = ("braid", "boolean", "generic2d")


def family(name: str, parameter: int) -> Arrangement:
    """Named arrangement families.

    braid(n):     forms x_i - x_j for 1 <= i < j <= n, ordered lexicographically
                  by (i, j), in dimension n (n >= 2).
    boolean(n):   the coordinate hyperplanes x_1, ..., x_n (n >= 1).
    generic2d(p): p pairwise non-proportional forms in dimension 2, concretely
                  x, y, x+y, x+2y, ..., x+(p-2)y (p >= 1).
    """
    if name == "braid":
        n = parameter
        if n < 2:
            raise InvalidParameterError("braid family needs n >= 2")
        raw = []
        for i in range(n):
            for j in range(i + 1, n):
                row = [0] * n
                row[i] = 1
                row[j] = -1
                raw.append(row)
        return make_arrangement(n, raw)
    if name == "boolean":
        n = parameter
        if n < 1:
            raise InvalidParameterError("boolean family needs n >= 1")
        raw = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
        return make_arrangement(n, raw)
    if name == "generic2d":
        p = parameter
        if p < 1:
            raise InvalidParameterError("generic2d family needs p >= 1")
        raw = [[1, 0], [0, 1]] + [[1, k] for k in range(1, p - 1)]
        return make_arrangement(2, raw[:p])
    raise InvalidParameterError(f"unknown family {name!r}; choose from {FAMILY_NAMES}")


def _check_index(A: Arrangement, i: int) -> None:
    if not 1 <= i <= A.p:
        raise InvalidIndexError(f"index {i} outside 1..{A.p}")


def localize(A: Arrangement, J: Iterable[int]) -> Arrangement:
    """Sub-arrangement of the forms indexed by a flat's J-set.

    J must be closed: every form vanishing on the common intersection of
    {H_i : i in J} must itself be listed in J. Otherwise J is not the
    J-set of any flat and NotAFlatError is raised.
    """
    idx = sorted(set(J))
    for i in idx:
        _check_index(A, i)
    vectors = A.form_vectors()
    space, _ = rref([vectors[i - 1] for i in idx], A.ambient_dim)
    closure = [i for i in range(1, A.p + 1) if space.contains(vectors[i - 1])]
    if closure != idx:
        raise NotAFlatError(
            f"index set {idx} is not closed; its closure is {closure}")
    forms = tuple(A.forms[i - 1] for i in idx)
    labels = tuple(A.label(i) for i in idx)
    return Arrangement(A.ambient_dim, forms, labels)


def delete(A: Arrangement, i: int) -> Arrangement:
    """The arrangement with form i removed, in the same space."""
    _check_index(A, i)
    forms = A.forms[:i - 1] + A.forms[i:]
    labels = None
    if A.labels is not None:
        labels = A.labels[:i - 1] + A.labels[i:]
    return Arrangement(A.ambient_dim, forms, labels)


def restrict(A: Arrangement, i: int) -> Arrangement:
    """The induced arrangement on the hyperplane ker(l_i).

    Coordinates on ker(l_i) are the standard coordinates minus the last one
    with a nonzero coefficient in l_i (the lexicographically smallest subset
    that still projects isomorphically). Each remaining form is rewritten in
    those coordinates; zero images are dropped and proportional images merged,
    keeping the first contributor's label.
    """
    _check_index(A, i)
    c = A.forms[i - 1].coeffs
    drop = max(j for j, x in enumerate(c) if x != 0)
    kept = [j for j in range(A.ambient_dim) if j != drop]
    out_forms: list[LinearForm] = []
    out_labels: list[str] = []
    seen: set[Vector] = set()
    for k, g in enumerate(A.forms, start=1):
        if k == i:
            continue
        gv = g.coeffs
        image = tuple(gv[j] - gv[drop] * c[j] / c[drop] for j in kept)
        if all(x == 0 for x in image):
            continue
        v = normalize_form(image)
        if v in seen:
            continue
        seen.add(v)
        out_forms.append(LinearForm(v))
        out_labels.append(A.label(k))
    return Arrangement(A.ambient_dim - 1, tuple(out_forms), tuple(out_labels))


def essentialize(A: Arrangement) -> tuple[Arrangement, int]:
    """Quotient out the common kernel of all forms.

    Returns the arrangement rewritten on a basis of the span of its forms,
    together with e0 = ambient_dim - rank, the number of inessential
    directions removed. Applying it twice always gives e0 = 0 the second
    time. Every invariant computed downstream (lattice shape, exponents up
    to the e0 zeros, Bernstein factors) is unchanged by this operation.
    """
    space = A.span()
    r = space.rank
    e0 = A.ambient_dim - r
    if e0 == 0:
        return A, 0
    pivots = space.pivots
    forms = tuple(
        LinearForm(normalize_form(tuple(f.coeffs[p] for p in pivots)))
        for f in A.forms)
    return Arrangement(r, forms, A.labels), e0
