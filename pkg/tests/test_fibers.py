import random

import pytest

from conftest import certificate, fixture_matrices, web_over_prime
from quadweb.exactnum import PrimeField
from quadweb.webquadrics.fibers import FIBER_DESCRIPTIONS, fiber_type, ternary_factor_degrees
from quadweb.multipoly import PolyRing
from quadweb.webquadrics import Web


def test_rank_five_member_has_a_cubic_fiber():
    web = web_over_prime("example_5_5")
    r = fiber_type(web, [1, 0, 0, 0])
    assert (r.rank_q, r.rank_B, r.type) == (5, 2, "a")
    assert r.cubic.is_homogeneous() == (True, 3)
    assert r.factor_degrees == [3]
    assert r.description == FIBER_DESCRIPTIONS["a"]


def test_general_point_has_two_point_fiber():
    web = web_over_prime("example_5_5")
    rng = random.Random(3)
    r = fiber_type(web, [web.field.random(rng) for _ in range(4)])
    assert (r.rank_q, r.rank_B, r.type) == (8, 3, "d")


def test_zero_point_is_rejected():
    with pytest.raises(ValueError):
        fiber_type(web_over_prime("example_5_5"), [0, 0, 0, 0])


def test_factor_degrees_of_ternary_cubics():
    web = web_over_prime("example_5_5")
    F = web.field
    R = PolyRing(3, F, names=["u0", "u1", "u2"])
    u0, u1, u2 = R.gens()
    rng = random.Random(1)
    assert ternary_factor_degrees(u0 * u1 * (u0 + u1 + u2 * 3), rng) == [1, 1, 1]
    assert ternary_factor_degrees(u0 * (u1 * u1 + u0 * u2 + u2 * u2 * 5), rng) == [2, 1]
    assert ternary_factor_degrees(u0 ** 3 + u1 ** 3 * 2 + u2 ** 3 * 7 + u0 * u1 * u2, rng) == [3]


@pytest.mark.slow
def test_rank_six_points_give_line_fibers():
    cert = certificate("example_2_1")
    web = Web.from_matrices(fixture_matrices("example_2_1"))
    rational = [o for o in cert["discriminant"]["orbits"] if o["orbit_degree"] == 1 and o["rank_q"] == 6]
    if not rational:
        pytest.skip("no rank-6 singular point of the octic is defined over this prime")
    web = web.over(PrimeField(cert["field"]["primes"][0]))
    r = fiber_type(web, rational[0]["y"])
    assert (r.rank_q, r.type) == (6, "b")


@pytest.mark.slow
def test_rank_two_points_of_B_are_cubic_fibers():
    for name in ("example_2_1", "example_5_5"):
        assert certificate(name)["fibers_at_rank2_points"]["type_counts"] == {"a": 10}
