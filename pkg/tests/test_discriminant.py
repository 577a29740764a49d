import random

import pytest

from conftest import certificate, prime, web_over_prime
from quadweb.exactnum import PrimeField
from quadweb.webquadrics import Web, WebError, random_web_matrices
from quadweb.webquadrics.discriminant import (A1, KFOLD, NODAL_BUDGET, check_a4, classify_point, discriminant,
                                              tjurina_ideal)


def test_octic_vanishes_at_the_rank_five_member():
    web = web_over_prime("example_5_5")
    S8 = discriminant(web)
    assert S8.is_homogeneous() == (True, 8)
    assert S8.evaluate([1, 0, 0, 0]) == 0
    assert discriminant(web_over_prime("example_2_1")).evaluate([1, 0, 0, 0]) != 0


def test_rescaling_quadrics_rescales_the_variables(example_5_5):
    F = PrimeField(prime(0))
    scales = [2, 3, 5, 7]
    scaled = [[[c * a for a in r] for r in M] for c, M in zip(scales, example_5_5)]
    S = discriminant(Web.from_matrices(example_5_5, F))
    T = discriminant(Web.from_matrices(scaled, F))
    rng = random.Random(0)
    for _ in range(5):
        y = [F.random(rng) for _ in range(4)]
        assert T.evaluate(y) == S.evaluate([F.norm(c * v) for c, v in zip(scales, y)])


def test_zero_octic_is_rejected():
    # all four members share the kernel vector e0
    mats = random_web_matrices(random.Random(2))
    for M in mats:
        for j in range(8):
            M[0][j] = M[j][0] = 0
    with pytest.raises(WebError, match="degenerate"):
        discriminant(Web.from_matrices(mats, PrimeField(prime(0))))


@pytest.mark.slow
def test_common_kernel_along_a_line_breaks_a4():
    # q0 and q1 both kill e3 and e4, so every member of their pencil has corank >= 2
    mats = random_web_matrices(random.Random(9))
    for k in (0, 1):
        for i in (3, 4):
            for j in range(8):
                mats[k][i][j] = mats[k][j][i] = 0
    web = Web.from_matrices(mats, PrimeField(prime(0)))
    verdict = check_a4(web, deadline=300)
    assert not verdict.holds and verdict.projective_dimension == 1


def test_tjurina_ideal_generators():
    ideal = tjurina_ideal(web_over_prime("example_2_1"))
    assert len(ideal.gens) == 5
    assert all(g.is_homogeneous()[1] == 7 for g in ideal.gens[1:])


def test_point_classification_at_the_rank_five_member():
    web = web_over_prime("example_5_5")
    rq, rb, ker, label, _, _ = classify_point(web, [web.field.convert(c) for c in (1, 0, 0, 0)], web.field)
    assert (rq, rb, label, len(ker)) == (5, 2, KFOLD, 3)


@pytest.mark.slow
@pytest.mark.parametrize("name", ["example_2_1", "example_5_5"])
def test_at_most_ten_non_nodal_points(name):
    d = certificate(name)["discriminant"]
    assert d["non_A_points"] <= 10
    assert sum(d["labels"].values()) == d["singular_points"]


@pytest.mark.slow
def test_all_nodal_budget():
    d = certificate("example_2_1")["discriminant"]
    assert d["labels"] == {A1: 94}
    assert d["budget"]["sum_tau_plus_1"] == NODAL_BUDGET and d["budget"]["certified_188"]


@pytest.mark.slow
def test_example_5_5_discriminant_profile():
    d = certificate("example_5_5")["discriminant"]
    assert d["singular_points"] == 90
    assert d["labels"] == {A1: 89, KFOLD: 1}
    assert not d["budget"]["all_ade"] and not d["budget"]["certified_188"]
