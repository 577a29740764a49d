import copy
import random

import pytest

from conftest import fixture_matrices, prime, web_over_prime
from quadweb.exactnum import PrimeField
from quadweb.webquadrics import Web, WebError, block_extract, matrix_identities, random_web_matrices, validate_web
from quadweb.webquadrics.plane import sing_on_plane
from quadweb.webquadrics.quintic import check_a3, rank2_locus


def test_validation_reports_every_problem(example_5_5):
    bad = copy.deepcopy(example_5_5)
    bad[1][0][3] += 1
    bad[2][6][7] = bad[2][7][6] = 5
    with pytest.raises(WebError) as err:
        validate_web(bad)
    text = " ".join(err.value.problems)
    assert "q1 is not symmetric" in text
    assert "plane not contained in Q2" in text


def test_validation_shape_and_dependence(example_5_5):
    with pytest.raises(WebError, match="expected 4"):
        validate_web(example_5_5[:3])
    with pytest.raises(WebError, match="not 8x8"):
        validate_web([m[:7] for m in example_5_5])
    dep = copy.deepcopy(example_5_5)
    dep[3] = [[a + b for a, b in zip(r, s)] for r, s in zip(dep[0], dep[1])]
    with pytest.raises(WebError, match="linearly dependent"):
        validate_web(dep)


def test_block_extract(example_2_1):
    M = example_2_1[0]
    assert block_extract(M, "lower-right-3x3") == [[0] * 3] * 3
    assert block_extract(M, "upper-left-5x5") == [r[:5] for r in M[:5]]
    assert block_extract(M, "lower-left-3x5") == [list(r) for r in zip(*block_extract(M, "upper-right-5x3"))]
    with pytest.raises(ValueError):
        block_extract(M, "middle")


@pytest.mark.parametrize("name", ["example_2_1", "example_5_5"])
def test_identities_on_fixtures(name):
    assert all(matrix_identities(Web.from_matrices(fixture_matrices(name))).values())


def test_identities_on_random_webs_over_prime():
    rng = random.Random(5)
    F = PrimeField(prime(0))
    for _ in range(10):
        web = Web.from_matrices(random_web_matrices(rng), F)
        assert all(matrix_identities(web).values())


def test_pencil_matrix_is_linear(example_5_5):
    web = web_over_prime("example_5_5")
    F = web.field
    q = web.pencil_matrix([1, 0, 0, 0])
    assert q == [[F.convert(a) for a in r] for r in example_5_5[0]]


@pytest.mark.parametrize("perm", [(1, 0, 2, 3), (3, 2, 1, 0), (2, 3, 0, 1)])
def test_counts_invariant_under_reordering_the_quadrics(perm):
    base = web_over_prime("example_5_5")
    web = base.permuted(perm)
    assert sing_on_plane(web).count == sing_on_plane(base).count == 10
    assert check_a3(web).count == 46
    assert rank2_locus(web).count == 10
