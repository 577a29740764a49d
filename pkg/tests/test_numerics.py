import itertools
import time

import pytest

from quadweb.webquadrics.numerics import (CONIC_NOTE, CONSTANTS, class_solutions, contracted_class_enum,
                                          intersection_numbers, multiplicity_vectors, quintic_euler_identity)

TABLE_H_S = {"D3": 16, "D2E": 1, "DE2": -3, "E3": -1}
TABLE_H1_S1 = {"D3": 5, "D2E": 6, "DE2": -2, "E3": -47}


def brute_force(d, slots=10):
    """Every multiset of nonzero integers in [-b, b] (b from the square bound) meeting both constraints."""
    total, squares = 4 * d - 1, d * d + d + 1
    b = int(squares ** 0.5)
    values = [v for v in range(-b, b + 1) if v]
    out = set()
    for k in range(1, slots + 1):
        for combo in itertools.combinations_with_replacement(values, k):
            if sum(combo) == total and sum(v * v for v in combo) == squares:
                out.add(tuple(sorted(combo, reverse=True)))
    return out


def test_four_classes_exactly():
    start = time.perf_counter()
    classes = contracted_class_enum()
    assert time.perf_counter() - start < 1
    assert [(c.case, c.d, c.m, c.n_sum) for c in classes] == [
        ("a", 0, (-1,), 4),
        ("b", 1, (1, 1, 1), 3),
        ("c", 2, (1,) * 7, 2),
        ("d", 3, (2,) + (1,) * 9, 1),
    ]
    assert classes[3].note == CONIC_NOTE
    assert [c.genus_check for c in classes] == [-2, -2, -2, -2]
    assert classes[1].class_string() == "L - E1 - E2 - E3 - F1 - F2 - F3"
    assert classes[3].multiplicity_string() == "(2,1^9)"


@pytest.mark.parametrize("d", range(0, 5))
def test_pruned_search_matches_brute_force(d):
    assert set(class_solutions(d)) == brute_force(d)


def test_no_solutions_beyond_degree_three():
    # past d = 4 the square bound makes brute force slow; Cauchy-Schwarz alone rules them out
    for d in range(4, 13):
        assert class_solutions(d) == []
        assert (4 * d - 1) ** 2 > 10 * (d * d + d + 1)


def test_multiplicity_vectors_small():
    assert multiplicity_vectors(2, 2, slots=3) == [(1, 1)]
    assert multiplicity_vectors(0, 2, slots=2) == [(1, -1)]


def test_intersection_numbers():
    assert intersection_numbers(TABLE_H_S, (1, -1)) == 5
    assert intersection_numbers(TABLE_H1_S1, (3, -1)) == 2
    assert intersection_numbers([16, 1, -3, -1], (1, 0)) == 16


def test_euler_identity():
    assert quintic_euler_identity(46) == (-154, -154, True)
    assert not quintic_euler_identity(45)[2]
    assert CONSTANTS == {"h11": 2, "h12": 56, "euler": -108}
