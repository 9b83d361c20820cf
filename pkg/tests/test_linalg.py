import random
from fractions import Fraction
from itertools import permutations

import pytest

from bideal.linalg import (
    MultiPoly,
    coordinate_names,
    det_poly,
    rref,
    solve_combination,
)

from _oracles import oracle_rank


def F(x):
    return Fraction(x)


# ---------------------------------------------------------------------------
# rref


def test_rref_identity():
    space, rank = rref([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert rank == 3
    assert space.matrix == (
        (F(1), F(0), F(0)), (F(0), F(1), F(0)), (F(0), F(0), F(1)))


def test_rref_all_zero_matrix():
    space, rank = rref([[0, 0, 0], [0, 0, 0]])
    assert rank == 0
    assert space.matrix == ()
    assert space.ambient_dim == 3


def test_rref_proportional_rows():
    space, rank = rref([[1, 1], [2, 2]])
    assert rank == 1
    assert space.matrix == ((F(1), F(1)),)


def test_rref_ragged_rows_rejected():
    with pytest.raises(ValueError):
        rref([[1, 0], [1, 0, 0]])


def test_rref_empty_needs_ambient_dim():
    with pytest.raises(ValueError):
        rref([])
    space, rank = rref([], 4)
    assert rank == 0 and space.ambient_dim == 4


def test_rref_is_idempotent_and_preserves_row_space():
    rng = random.Random(7)
    for _ in range(40):
        rows = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                 for _ in range(rng.randint(1, 5))]]
        ncols = len(rows[0])
        rows += [[Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                  for _ in range(ncols)] for _ in range(rng.randint(0, 4))]
        space, _ = rref(rows, ncols)
        again, _ = rref(space.matrix, ncols)
        assert again == space
        assert all(space.contains(r) for r in rows)


def test_rank_equals_transpose_rank():
    rng = random.Random(11)
    for _ in range(40):
        nrows, ncols = rng.randint(1, 5), rng.randint(1, 5)
        rows = [[rng.randint(-3, 3) for _ in range(ncols)] for _ in range(nrows)]
        _, r1 = rref(rows, ncols)
        _, r2 = rref(list(map(list, zip(*rows))), nrows)
        assert r1 == r2
        assert r1 == oracle_rank(rows, ncols)


def test_rowspace_membership_and_coordinates():
    space, _ = rref([[1, 1, 0], [0, 1, 1]])
    assert space.contains([1, 2, 1])  # row0 + row1
    assert not space.contains([0, 0, 1])
    coords = space.coordinates([1, 2, 1])
    assert coords is not None
    recon = [sum(c * row[j] for c, row in zip(coords, space.matrix))
             for j in range(3)]
    assert recon == [1, 2, 1]
    assert space.coordinates([1, 0, 0]) is None


def test_solve_combination():
    rows = [(1, -1, 0), (1, 0, -1)]
    coeffs = solve_combination(rows, (0, 1, -1))  # row1 - row0
    assert coeffs == (F(-1), F(1))
    assert solve_combination(rows, (1, 1, 1)) is None


# ---------------------------------------------------------------------------
# MultiPoly


def _rand_poly(rng, names, max_terms=3, max_deg=2):
    terms = []
    for _ in range(rng.randint(0, max_terms)):
        exps = tuple(rng.randint(0, max_deg) for _ in names)
        coeff = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
        terms.append((exps, coeff))
    return MultiPoly(names, terms)


def test_ring_axioms_on_random_triples():
    rng = random.Random(23)
    names = coordinate_names(3)
    for _ in range(60):
        a, b, c = (_rand_poly(rng, names) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)


def test_div_exact_roundtrip_and_failure():
    rng = random.Random(5)
    names = coordinate_names(2)
    for _ in range(40):
        a = _rand_poly(rng, names)
        b = _rand_poly(rng, names)
        if b.is_zero():
            continue
        q = (a * b).div_exact(b)
        assert q == a
    x = MultiPoly.variable(0, names)
    y = MultiPoly.variable(1, names)
    assert (x * x - y * y).div_exact(x - y) == x + y
    assert (x * x + y).div_exact(x - y) is None
    with pytest.raises(ZeroDivisionError):
        x.div_exact(MultiPoly.zero(names))


def test_multipoly_str_is_deterministic():
    names = ("x1", "x2")
    p = (MultiPoly.variable(0, names) ** 2
         + 3 * MultiPoly.variable(1, names)
         - MultiPoly.constant(Fraction(1, 2), names))
    assert str(p) == "x1^2 + 3*x2 - 1/2"
    assert str(MultiPoly.zero(names)) == "0"


# ---------------------------------------------------------------------------
# det_poly


def test_det_diagonal():
    names = ("x", "y")
    x = MultiPoly.variable(0, names)
    y = MultiPoly.variable(1, names)
    zero = MultiPoly.zero(names)
    assert det_poly([[x, zero], [zero, y]]) == x * y


def test_det_zero_row_is_zero():
    names = ("x", "y")
    x = MultiPoly.variable(0, names)
    zero = MultiPoly.zero(names)
    assert det_poly([[x, x], [zero, zero]]).is_zero()


def test_det_vandermonde_3x3():
    names = coordinate_names(3)
    xs = [MultiPoly.variable(i, names) for i in range(3)]
    one = MultiPoly.constant(1, names)
    matrix = [[one, one, one], xs, [x * x for x in xs]]
    expected = (xs[1] - xs[0]) * (xs[2] - xs[0]) * (xs[2] - xs[1])
    assert det_poly(matrix) == expected


def test_det_non_square_rejected():
    names = ("x",)
    x = MultiPoly.variable(0, names)
    with pytest.raises(ValueError):
        det_poly([[x, x]])


def _sign(perm):
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm))
              if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def _leibniz_det(matrix, names):
    n = len(matrix)
    acc = MultiPoly.zero(names)
    for perm in permutations(range(n)):
        term = MultiPoly.constant(_sign(perm), names)
        for i in range(n):
            term = term * matrix[i][perm[i]]
        acc = acc + term
    return acc


def test_det_matches_leibniz_oracle_up_to_4x4():
    rng = random.Random(31)
    names = coordinate_names(2)
    for n in range(1, 5):
        for _ in range(8):
            matrix = [[_rand_poly(rng, names, max_terms=2, max_deg=1)
                       for _ in range(n)] for _ in range(n)]
            assert det_poly(matrix) == _leibniz_det(matrix, names)


def test_det_empty_matrix_is_one():
    assert det_poly([]).constant_value() == 1


def test_det_multiplicative_on_block_diagonal():
    rng = random.Random(43)
    names = coordinate_names(2)
    zero = MultiPoly.zero(names)
    for _ in range(10):
        a = [[_rand_poly(rng, names, 2, 1) for _ in range(2)] for _ in range(2)]
        b = [[_rand_poly(rng, names, 2, 1) for _ in range(2)] for _ in range(2)]
        block = [a[0] + [zero, zero], a[1] + [zero, zero],
                 [zero, zero] + b[0], [zero, zero] + b[1]]
        assert det_poly(block) == det_poly(a) * det_poly(b)
