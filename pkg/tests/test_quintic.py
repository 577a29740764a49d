import copy
import random

import pytest

from conftest import prime, web_over_prime
from quadweb import polymatrix as pm
from quadweb.exactnum import PrimeField
from quadweb.webquadrics import Web, random_web_matrices
from quadweb.webquadrics.plane import sing_on_plane
from quadweb.webquadrics.quintic import bordiga, check_a3, quintic, rank2_locus


@pytest.mark.parametrize("name", ["example_2_1", "example_5_5"])
def test_quintic_is_a_quintic_form(name):
    Q = quintic(web_over_prime(name))
    assert Q.is_homogeneous() == (True, 5)


def test_quintic_matches_pointwise_determinant():
    rng = random.Random(1)
    web = web_over_prime("example_5_5")
    F = web.field
    Q = quintic(web)
    A = web.derived.A_of_x
    for _ in range(100):
        x = [F.random(rng) for _ in range(5)]
        assert Q.evaluate(x) == pm.det(F, A.evaluate(x))


def test_rescaling_one_quadric_rescales_the_quintic(example_5_5):
    F = PrimeField(prime(0))
    scaled = copy.deepcopy(example_5_5)
    scaled[2] = [[3 * a for a in r] for r in scaled[2]]
    Q = quintic(Web.from_matrices(example_5_5, F))
    assert quintic(Web.from_matrices(scaled, F)) == Q * 3


def test_bordiga_contains_quintic_and_has_expected_hilbert_data():
    _, s = bordiga(web_over_prime("example_5_5"), samples=2)
    assert (s.projective_dimension, s.degree, s.smooth) == (2, 6, True)
    assert s.quintic_in_ideal
    assert s.rank_two_everywhere_sampled


def test_degenerate_bordiga(example_5_5):
    # with B_0 = 0 the first column of a(x) vanishes and only the cubic C_0 survives
    mats = copy.deepcopy(random_web_matrices(random.Random(4)))
    for i in range(5, 8):
        for j in range(5):
            mats[0][i][j] = mats[0][j][i] = 0
    _, s = bordiga(Web.from_matrices(mats, PrimeField(prime(0))), check_smooth=False)
    assert (s.projective_dimension, s.degree) == (3, 3)


def test_a3_and_rank2_locus_on_example_5_5():
    web = web_over_prime("example_5_5")
    v = check_a3(web)
    assert v.holds and (v.count, v.length) == (46, 46)
    r = rank2_locus(web)
    assert r.count == 10 and r.rank_le1_empty


def test_counts_stable_across_three_primes():
    counts = set()
    for k in range(3):
        web = web_over_prime("example_5_5", k)
        counts.add((sing_on_plane(web).count, check_a3(web).count))
    assert counts == {(10, 46)}
