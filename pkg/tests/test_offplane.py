import random

import pytest

from conftest import certificate, prime, web_over_prime
from quadweb.exactnum import PrimeField
from quadweb.webquadrics import Web, random_web_matrices
from quadweb.webquadrics.discriminant import classify_discriminant
from quadweb.webquadrics.offplane import (CERTIFIED, INCONCLUSIVE, SINGULAR, SKIPPED, OffPlaneResult,
                                          RouteDisagreement, chart_route, kernel_route)


def singular_at_e0():
    """Every quadric passes through e0 (off the plane) and q0 e0 = 0, so the Jacobian drops rank there."""
    mats = random_web_matrices(random.Random(8))
    for M in mats:
        M[0][0] = 0
    for j in range(8):
        mats[0][0][j] = mats[0][j][0] = 0
    return Web.from_matrices(mats, PrimeField(prime(0)))


def test_status_combines_routes():
    assert OffPlaneResult(CERTIFIED, SKIPPED).status == CERTIFIED
    assert OffPlaneResult(INCONCLUSIVE, SINGULAR).status == SINGULAR
    assert OffPlaneResult(INCONCLUSIVE, INCONCLUSIVE).status == INCONCLUSIVE
    with pytest.raises(RouteDisagreement):
        OffPlaneResult(CERTIFIED, SINGULAR).status


@pytest.mark.slow
def test_both_routes_find_the_planted_singular_point():
    web = singular_at_e0()
    assert chart_route(web, deadline=300) == SINGULAR
    report = classify_discriminant(web, deadline=300)
    assert kernel_route(web, report, deadline=300) == SINGULAR


def test_chart_route_times_out_as_inconclusive():
    result = OffPlaneResult()
    assert chart_route(web_over_prime("example_5_5"), deadline=0.01, result=result) == INCONCLUSIVE
    assert result.charts_done == []


@pytest.mark.slow
@pytest.mark.parametrize("name", ["example_2_1", "example_5_5"])
def test_fixtures_are_smooth_off_the_plane(name):
    a1 = certificate(name)["verdicts"]["a1"]
    assert a1["kernel_route"] == CERTIFIED
    assert a1["chart_route"] == CERTIFIED
    assert a1["charts_done"] == [0, 1, 2, 3, 4]
