import random

import pytest

from bideal.arrangement import family, make_arrangement
from bideal.lattice import IntPoly, char_poly, intersection_lattice

from _oracles import oracle_charpoly, oracle_lattice, poly_mul, random_form_vectors


def flat_triples(A):
    return {(f.J, f.codim, f.mobius) for f in intersection_lattice(A)}


# ---------------------------------------------------------------------------
# lattice contents


def test_boolean2_lattice():
    assert flat_triples(family("boolean", 2)) == {
        ((), 0, 1),
        ((1,), 1, -1),
        ((2,), 1, -1),
        ((1, 2), 2, 1),
    }


def test_braid3_lattice():
    assert flat_triples(family("braid", 3)) == {
        ((), 0, 1),
        ((1,), 1, -1),
        ((2,), 1, -1),
        ((3,), 1, -1),
        ((1, 2, 3), 2, 2),
    }


def test_empty_arrangement_lattice():
    lat = intersection_lattice(make_arrangement(3, []))
    assert len(lat) == 1
    assert lat.bottom.J == () and lat.bottom.mobius == 1


def test_braid4_has_bell_number_of_flats():
    assert len(intersection_lattice(family("braid", 4))) == 15


def test_flats_sorted_and_bottom_first():
    lat = intersection_lattice(family("braid", 4))
    keys = [(f.codim, f.J) for f in lat]
    assert keys == sorted(keys)
    assert lat.bottom.codim == 0


def test_lattice_closed_under_pairwise_join():
    for A in (family("braid", 3), family("boolean", 3), family("generic2d", 4)):
        lat = intersection_lattice(A)
        spaces = {f.space for f in lat}
        for f in lat:
            for g in lat:
                assert f.space.extended(g.space.matrix) in spaces


def test_mobius_recursion_sums_to_zero():
    for A in (family("braid", 4), family("generic2d", 5)):
        lat = intersection_lattice(A)
        for f in lat:
            if f.codim == 0:
                continue
            js = frozenset(f.J)
            total = sum(g.mobius for g in lat if frozenset(g.J) <= js)
            assert total == 0


def test_mobius_absolute_sum_counts_boolean_chambers():
    for n in range(1, 5):
        lat = intersection_lattice(family("boolean", n))
        assert sum(abs(f.mobius) for f in lat) == 2 ** n


# ---------------------------------------------------------------------------
# characteristic polynomial


def test_charpoly_examples():
    assert char_poly(family("boolean", 2)) == IntPoly((1, -2, 1))
    assert char_poly(family("braid", 3)) == IntPoly((0, 2, -3, 1))
    assert char_poly(make_arrangement(4, [])) == IntPoly((0, 0, 0, 0, 1))


def test_charpoly_monic_alternating_and_vanishing_at_one():
    corpus = [family("braid", n) for n in range(2, 5)]
    corpus += [family("boolean", n) for n in range(1, 5)]
    corpus += [family("generic2d", p) for p in range(1, 6)]
    for A in corpus:
        poly = char_poly(A)
        assert poly.degree == A.ambient_dim
        assert poly.coeffs[-1] == 1
        if A.p >= 1:
            assert poly(1) == 0
        for k, c in enumerate(poly.coeffs):
            if c != 0:
                assert (c > 0) == ((A.ambient_dim - k) % 2 == 0)


def test_charpoly_text_rendering():
    assert str(char_poly(family("boolean", 2))) == "t^2 - 2t + 1"
    assert str(char_poly(family("braid", 3))) == "t^3 - 3t^2 + 2t"


def test_braid_charpoly_is_falling_factorial():
    for n in range(2, 6):
        expected = [1]
        for e in range(n):
            expected = poly_mul(expected, [-e, 1])
        assert list(char_poly(family("braid", n)).coeffs) == expected


# ---------------------------------------------------------------------------
# oracle equivalence


def _check_against_oracle(A):
    raw = [f.coeffs for f in A.forms]
    expected = oracle_lattice(raw, A.ambient_dim)
    got = {f.J: (f.codim, f.mobius) for f in intersection_lattice(A)}
    assert got == expected
    coeffs = oracle_charpoly(raw, A.ambient_dim)
    assert list(char_poly(A).coeffs) == coeffs


@pytest.mark.parametrize("name,param", [
    ("boolean", 3), ("braid", 3), ("braid", 4), ("generic2d", 5),
])
def test_lattice_matches_subset_enumeration_on_families(name, param):
    _check_against_oracle(family(name, param))


def test_lattice_matches_subset_enumeration_on_random_arrangements():
    rng = random.Random(1301)
    for _ in range(12):
        n = rng.randint(2, 4)
        p = rng.randint(1, 6)
        raw = random_form_vectors(rng, n, p)
        _check_against_oracle(make_arrangement(n, raw))
